"""括号 ⌈⌉ 的展开

1-态射的字是以 H 元素为叶子的二叉树；叶子可以是符号 HExpr，
也可以是任何支持 + 的具体元素。规范形为左梳 ((ab)c)d…，
改写 a(bc) → (ab)c 产生一个 α¹(a, b, c)。
⌈X⌉ = (左梳 → X 的源的 α¹ 路径) · X · (X 的靶 → 左梳的 α¹ 路径)。
"""
from dataclasses import dataclass
from typing import Optional, Union

from neostate.statesum.program import Arg, HExpr, Term, ZERO


@dataclass(frozen=True)
class Node:
    left: "Word"
    right: "Word"


Word = Union[HExpr, Node]


def word(*letters: Union[HExpr, Node]) -> Word:
    """左结合地拼接若干字"""
    if not letters:
        raise ValueError("a word needs at least one letter")
    out = letters[0]
    for x in letters[1:]:
        out = Node(out, x)
    return out


def value(w: Word) -> HExpr:
    """字所表示的 H 元素（各叶子之和）"""
    if not isinstance(w, Node):
        return w
    return value(w.left) + value(w.right)


def letters(w: Word) -> list[HExpr]:
    if not isinstance(w, Node):
        return [w]
    return letters(w.left) + letters(w.right)


def is_left_normal(w: Word) -> bool:
    while isinstance(w, Node):
        if isinstance(w.right, Node):
            return False
        w = w.left
    return True


AlphaStep = tuple[HExpr, HExpr, HExpr]


def normalize_word(w: Word, right_first: bool = False) -> tuple[Word, list[AlphaStep]]:
    """把字改写为左梳

    默认先规范左子树，再在根部反复改写；right_first=True 时先规范右子树，
    两种策略给出的 α¹ 序列在 MOR4 成立时取值相同。

    Returns:
        (左梳, α¹ 参数序列)，序列中每一项对应一次 a(bc) → (ab)c
    """
    if not isinstance(w, Node):
        return w, []
    path: list[AlphaStep] = []
    left, right = w.left, w.right
    if right_first:
        right, steps = normalize_word(right, True)
        path += steps
    left, steps = normalize_word(left, right_first)
    path += steps
    while isinstance(right, Node):
        path.append((value(left), value(right.left), value(right.right)))
        left, steps = normalize_word(Node(left, right.left), right_first)
        path += steps
        right = right.right
    return Node(left, right), path


@dataclass(frozen=True)
class BracketedFactor:
    """带源字与靶字的结构 2-态射

    symbol 为映射名（None 表示恒等 2-态射），sign 为 ±1。
    relations 是已知在可容许标号下为零的 H 表达式，用于源靶一致性检查。
    """

    symbol: Optional[str]
    sign: int
    args: tuple[Arg, ...]
    source: Word
    target: Word
    relations: tuple[HExpr, ...] = ()

    def term(self) -> Optional[Term]:
        return None if self.symbol is None else Term(self.symbol, self.sign, self.args)


def check_composable(factor: BracketedFactor) -> None:
    diff = value(factor.source) - value(factor.target)
    if diff.is_zero():
        return
    for rel in factor.relations:
        if diff == rel or diff == -rel:
            return
    raise ValueError(f"non-composable words: source and target differ by {diff}")


def expand_brackets(factor: BracketedFactor, check: bool = True) -> list[Term]:
    """⌈factor⌉ 展开为初等因子列表（原因子加上 α¹ 串）

    Args:
        factor: 带括号的因子
        check: 是否检查源与靶表示同一 H 元素

    Returns:
        按作用顺序排列的 Term 列表
    """
    if check:
        check_composable(factor)
    _, into_source = normalize_word(factor.source)
    _, from_target = normalize_word(factor.target)
    out = [Term("alpha1", -1, step) for step in reversed(into_source)]
    core = factor.term()
    if core is not None:
        out.append(core)
    out += [Term("alpha1", 1, step) for step in from_target]
    return out


def mu_string(w: Word) -> list[tuple[HExpr, HExpr]]:
    """字的 μ 串：M((L R)) = M(L) + M(R) + μ(val L, val R)"""
    if not isinstance(w, Node):
        return []
    return mu_string(w.left) + mu_string(w.right) + [(value(w.left), value(w.right))]


def mu_transport(factor: BracketedFactor) -> list[tuple[int, tuple[HExpr, HExpr]]]:
    """μ 吸收括号带来的修正：+M(靶) − M(源)"""
    return [(1, pair) for pair in mu_string(factor.target)] + [
        (-1, pair) for pair in mu_string(factor.source)
    ]


def alpha_terms(path: list[AlphaStep], sign: int = 1) -> list[Term]:
    return [Term("alpha1", sign, step) for step in path]


__all__ = [
    "AlphaStep",
    "BracketedFactor",
    "Node",
    "Word",
    "ZERO",
    "alpha_terms",
    "check_composable",
    "expand_brackets",
    "is_left_normal",
    "letters",
    "mu_string",
    "mu_transport",
    "normalize_word",
    "value",
    "word",
]
