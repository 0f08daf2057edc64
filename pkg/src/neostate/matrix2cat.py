"""2-范畴 N(G, H, R) 的矩阵模型

1-态射是以群半环 N(H) 为系数的分块对角矩阵，2-态射是以分圆数矩阵为元素的分块矩阵。
此模块只作为组合律的测试面，态和计算本身不依赖它。
"""
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from neostate.algebra import Cyclotomic, FiniteAbelianGroup, FiniteGroup


@dataclass(frozen=True)
class RigElement:
    """N(H) 中的元素：H 元素的非负整数系数形式和"""

    group: FiniteAbelianGroup
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.group.order or any(c < 0 for c in self.counts):
            raise ValueError("rig element needs one non-negative count per group element")

    @classmethod
    def zero(cls, group: FiniteAbelianGroup) -> "RigElement":
        return cls(group, (0,) * group.order)

    @classmethod
    def of(cls, group: FiniteAbelianGroup, *elements: int) -> "RigElement":
        counts = [0] * group.order
        for h in elements:
            counts[h] += 1
        return cls(group, tuple(counts))

    @property
    def degree(self) -> int:
        return sum(self.counts)

    def terms(self) -> list[int]:
        """按下标顺序展开的元素列表，决定 2-态射基底的顺序"""
        return [h for h, c in enumerate(self.counts) for _ in range(c)]

    def __add__(self, other: "RigElement") -> "RigElement":
        return RigElement(self.group, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __mul__(self, other: "RigElement") -> "RigElement":
        counts = [0] * self.group.order
        table = self.group.add_table
        for a, ca in enumerate(self.counts):
            if ca:
                for b, cb in enumerate(other.counts):
                    if cb:
                        counts[int(table[a, b])] += ca * cb
        return RigElement(self.group, tuple(counts))


@dataclass(frozen=True)
class CycMatrix:
    """分圆数矩阵，允许行数或列数为 0"""

    rows: int
    cols: int
    data: tuple[tuple[Cyclotomic, ...], ...]

    @classmethod
    def build(cls, rows: int, cols: int, fn) -> "CycMatrix":
        return cls(rows, cols, tuple(tuple(fn(r, c) for c in range(cols)) for r in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "CycMatrix":
        return cls.build(n, n, lambda r, c: Cyclotomic.one() if r == c else Cyclotomic.zero())

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")

        def entry(r, c):
            acc = Cyclotomic.zero()
            for k in range(self.cols):
                acc = acc + self.data[r][k] * other.data[k][c]
            return acc

        return CycMatrix.build(self.rows, other.cols, entry)

    def kron(self, other: "CycMatrix") -> "CycMatrix":
        return CycMatrix.build(
            self.rows * other.rows,
            self.cols * other.cols,
            lambda r, c: self.data[r // other.rows][c // other.cols]
            * other.data[r % other.rows][c % other.cols],
        )

    def conjugate_transpose(self) -> "CycMatrix":
        return CycMatrix.build(self.cols, self.rows, lambda r, c: self.data[c][r].conjugate())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix) or (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            a == b for ra, rb in zip(self.data, other.data) for a, b in zip(ra, rb)
        )

    __hash__ = None


def direct_sum(blocks: Sequence[CycMatrix]) -> CycMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    grid = [[Cyclotomic.zero() for _ in range(cols)] for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for r in range(b.rows):
            for c in range(b.cols):
                grid[r0 + r][c0 + c] = b.data[r][c]
        r0 += b.rows
        c0 += b.cols
    return CycMatrix(rows, cols, tuple(tuple(row) for row in grid))


Block = tuple[tuple[RigElement, ...], ...]


@dataclass(frozen=True)
class OneMorphismMatrix:
    """分块对角 1-态射，键为 G 中的元素，block[g] 的形状为 (源系数, 靶系数)"""

    group: FiniteAbelianGroup
    blocks: tuple[tuple[int, Block], ...]

    @classmethod
    def from_blocks(
        cls, group: FiniteAbelianGroup, blocks: Mapping[int, Sequence[Sequence[RigElement]]]
    ) -> "OneMorphismMatrix":
        items = []
        for g in sorted(blocks):
            rows = tuple(tuple(row) for row in blocks[g])
            width = {len(row) for row in rows}
            if len(width) > 1:
                raise ValueError(f"block {g} is ragged")
            items.append((g, rows))
        return cls(group, tuple(items))

    @classmethod
    def identity(cls, group: FiniteAbelianGroup, objects: Mapping[int, int]) -> "OneMorphismMatrix":
        unit, zero = RigElement.of(group, 0), RigElement.zero(group)
        return cls.from_blocks(
            group,
            {
                g: [[unit if r == c else zero for c in range(n)] for r in range(n)]
                for g, n in objects.items()
            },
        )

    def block(self, g: int) -> Block:
        return dict(self.blocks)[g]

    @property
    def source(self) -> dict[int, int]:
        return {g: len(rows) for g, rows in self.blocks}

    @property
    def target(self) -> dict[int, int]:
        return {g: (len(rows[0]) if rows else 0) for g, rows in self.blocks}

    def degrees(self, g: int) -> list[list[int]]:
        return [[x.degree for x in row] for row in self.block(g)]


def compose_1(f: OneMorphismMatrix, g: OneMorphismMatrix) -> OneMorphismMatrix:
    """1-态射的复合：先 f 后 g，按 N(H) 系数做矩阵乘法"""
    if f.target != g.source:
        raise ValueError(f"cannot compose: target {f.target} != source {g.source}")
    zero = RigElement.zero(f.group)
    out = {}
    for key, fb in f.blocks:
        gb = g.block(key)
        inner = len(gb)
        width = len(gb[0]) if gb else 0
        rows = []
        for fr in fb:
            row = []
            for c in range(width):
                acc = zero
                for k in range(inner):
                    acc = acc + fr[k] * gb[k][c]
                row.append(acc)
            rows.append(row)
        out[key] = rows
    return OneMorphismMatrix.from_blocks(f.group, out)


def tensor_1(f: OneMorphismMatrix, g: OneMorphismMatrix, G: FiniteGroup) -> OneMorphismMatrix:
    """单块 1-态射的张量积，元素 ((i,j),(k,l)) = f_ik·g_jl"""
    if len(f.blocks) != 1 or len(g.blocks) != 1:
        raise ValueError("tensor product is only implemented for single-block 1-morphisms")
    (kf, fb), (kg, gb) = f.blocks[0], g.blocks[0]
    rows = [
        [fb[i][k] * gb[j][l] for k in range(len(fb[0])) for l in range(len(gb[0]))]
        for i in range(len(fb))
        for j in range(len(gb))
    ]
    return OneMorphismMatrix.from_blocks(f.group, {int(G.mul[kf, kg]): rows})


EntryGrid = tuple[tuple[CycMatrix, ...], ...]


@dataclass(frozen=True)
class TwoMorphismMatrix:
    """source ⇒ target 的 2-态射，entries[g][i][j] 形状为 deg(source_ij)×deg(target_ij)"""

    source: OneMorphismMatrix
    target: OneMorphismMatrix
    entries: tuple[tuple[int, EntryGrid], ...]

    def __post_init__(self):
        if self.source.source != self.target.source or self.source.target != self.target.target:
            raise ValueError("source and target 1-morphisms must have equal shapes")
        for key, grid in self.entries:
            src, tgt = self.source.degrees(key), self.target.degrees(key)
            for i, row in enumerate(grid):
                for j, entry in enumerate(row):
                    if (entry.rows, entry.cols) != (src[i][j], tgt[i][j]):
                        raise ValueError(
                            f"entry ({key},{i},{j}) has shape {entry.rows}x{entry.cols}, "
                            f"expected {src[i][j]}x{tgt[i][j]}"
                        )

    def entry_grid(self, g: int) -> EntryGrid:
        return dict(self.entries)[g]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwoMorphismMatrix):
            return False
        return (
            self.source == other.source
            and self.target == other.target
            and all(
                a == b
                for (ka, ga), (kb, gb) in zip(self.entries, other.entries)
                for ra, rb in zip(ga, gb)
                for a, b in zip(ra, rb)
            )
        )

    __hash__ = None


def _grid(rows) -> EntryGrid:
    return tuple(tuple(row) for row in rows)


def identity_2(f: OneMorphismMatrix) -> TwoMorphismMatrix:
    entries = tuple(
        (key, _grid([[CycMatrix.identity(x.degree) for x in row] for row in rows]))
        for key, rows in f.blocks
    )
    return TwoMorphismMatrix(f, f, entries)


def vcompose_2(alpha: TwoMorphismMatrix, beta: TwoMorphismMatrix) -> TwoMorphismMatrix:
    """竖直复合：先 α 后 β，逐元素矩阵乘法"""
    if alpha.target != beta.source:
        raise ValueError("vertical composition needs target(α) = source(β)")
    entries = tuple(
        (key, _grid([[a @ b for a, b in zip(ra, rb)] for ra, rb in zip(grid, beta.entry_grid(key))]))
        for key, grid in alpha.entries
    )
    return TwoMorphismMatrix(alpha.source, beta.target, entries)


def hcompose_2(alpha: TwoMorphismMatrix, beta: TwoMorphismMatrix) -> TwoMorphismMatrix:
    """水平复合 (α∘β)^i_j = ⊕_k α^i_k ⊗ β^k_j"""
    source = compose_1(alpha.source, beta.source)
    target = compose_1(alpha.target, beta.target)
    entries = []
    for key, agrid in alpha.entries:
        bgrid = beta.entry_grid(key)
        inner = len(bgrid)
        width = len(bgrid[0]) if bgrid else 0
        rows = [
            [direct_sum([arow[k].kron(bgrid[k][j]) for k in range(inner)]) for j in range(width)]
            for arow in agrid
        ]
        entries.append((key, _grid(rows)))
    return TwoMorphismMatrix(source, target, tuple(entries))


def dual_2(alpha: TwoMorphismMatrix) -> TwoMorphismMatrix:
    """逐元素共轭转置，给出 target ⇒ source 的 2-态射"""
    entries = tuple(
        (key, _grid([[e.conjugate_transpose() for e in row] for row in grid]))
        for key, grid in alpha.entries
    )
    return TwoMorphismMatrix(alpha.target, alpha.source, entries)


def swap_matrix(a: int, b: int) -> CycMatrix:
    """C^a⊗C^b → C^b⊗C^a 的交换算子，(P)_{rs}^{mn} = δ^m_s δ^n_r"""
    return CycMatrix.build(
        a * b,
        b * a,
        lambda row, col: Cyclotomic.one()
        if (col // a, col % a) == (row % b, row // b)
        else Cyclotomic.zero(),
    )


def tensorator_matrix(f: OneMorphismMatrix, g: OneMorphismMatrix, G: FiniteGroup) -> TwoMorphismMatrix:
    """张量子：元素为 P_{f^i_k g^j_l} 的 2-态射 f⊗g ⇒ f⊗g"""
    fg = tensor_1(f, g, G)
    (_, fb), (_, gb) = f.blocks[0], g.blocks[0]
    (key, _) = fg.blocks[0]
    rows = [
        [swap_matrix(fb[i][k].degree, gb[j][l].degree) for k in range(len(fb[0])) for l in range(len(gb[0]))]
        for i in range(len(fb))
        for j in range(len(gb))
    ]
    return TwoMorphismMatrix(fg, fg, ((key, _grid(rows)),))


def random_one_morphism(
    rng: random.Random,
    group: FiniteAbelianGroup,
    source: Mapping[int, int],
    target: Mapping[int, int],
    max_degree: int = 3,
) -> OneMorphismMatrix:
    def entry():
        return RigElement.of(group, *(rng.randrange(group.order) for _ in range(rng.randint(0, max_degree))))

    return OneMorphismMatrix.from_blocks(
        group, {g: [[entry() for _ in range(target[g])] for _ in range(n)] for g, n in source.items()}
    )


def random_two_morphism(
    rng: random.Random,
    source: OneMorphismMatrix,
    target: OneMorphismMatrix,
    m: int = 4,
    bound: int = 2,
) -> TwoMorphismMatrix:
    def value():
        return Cyclotomic(m, [rng.randint(-bound, bound) for _ in Cyclotomic.zero(m).coeffs])

    entries = []
    for key, rows in source.blocks:
        tgt = target.degrees(key)
        entries.append(
            (
                key,
                _grid(
                    [
                        [CycMatrix.build(x.degree, tgt[i][j], lambda r, c: value()) for j, x in enumerate(row)]
                        for i, row in enumerate(rows)
                    ]
                ),
            )
        )
    return TwoMorphismMatrix(source, target, tuple(entries))


def random_like(
    rng: random.Random, f: OneMorphismMatrix, max_degree: int = 3
) -> OneMorphismMatrix:
    """与 f 形状相同的随机 1-态射"""
    return random_one_morphism(rng, f.group, f.source, f.target, max_degree)


__all__ = [
    "CycMatrix",
    "OneMorphismMatrix",
    "RigElement",
    "TwoMorphismMatrix",
    "compose_1",
    "dual_2",
    "hcompose_2",
    "identity_2",
    "random_like",
    "random_one_morphism",
    "random_two_morphism",
    "swap_matrix",
    "tensor_1",
    "tensorator_matrix",
    "vcompose_2",
]

