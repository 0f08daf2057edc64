"""有限群与有限阿贝尔群

群以乘法表存储，元素用 0..order-1 的下标表示，0 总是单位元。
"""
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

ASSOCIATIVITY_CHECK_LIMIT = 64


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """乘法表表示的有限群

    Args:
        mul: order×order 乘法表，mul[a, b] = a·b
        name: 显示名称
    """

    mul: np.ndarray
    name: str = ""
    inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mul = np.asarray(self.mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise ValueError(f"multiplication table must be square and non-empty, got {mul.shape}")
        n = mul.shape[0]
        if mul.min() < 0 or mul.max() >= n:
            raise ValueError("multiplication table entries out of range")
        ids = np.arange(n)
        if not (np.array_equal(mul[0], ids) and np.array_equal(mul[:, 0], ids)):
            raise ValueError("element 0 must be a two-sided identity")
        for row in mul:
            if len(set(row.tolist())) != n:
                raise ValueError("multiplication table is not a Latin square")
        inv = np.argmax(mul == 0, axis=1)
        mul.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "inv", inv)
        if n <= ASSOCIATIVITY_CHECK_LIMIT and not self.is_associative():
            raise ValueError("multiplication table is not associative")

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.mul, other.mul)

    __hash__ = None

    def elements(self) -> range:
        return range(self.order)

    def multiply(self, *elements: int) -> int:
        """按顺序计算乘积 e1·e2·…"""
        result = 0
        for e in elements:
            result = int(self.mul[result, e])
        return result

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = int(self.mul[y, x])
            k += 1
        return k

    def is_associative(self) -> bool:
        n = self.order
        a = self.mul[self.mul[:, :, None], np.arange(n)[None, None, :]]
        b = self.mul[np.arange(n)[:, None, None], self.mul[None, :, :]]
        return bool(np.array_equal(a, b))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def automorphisms(self, limit: int = 8) -> Iterator[tuple[int, ...]]:
        """枚举群自同构（按置换表示，仅限小群）

        Args:
            limit: 允许穷举的最大阶

        Yields:
            长度为 order 的像元组
        """
        n = self.order
        if n > limit:
            raise ValueError(f"automorphism enumeration limited to order <= {limit}")
        for perm in itertools.permutations(range(1, n)):
            image = np.array((0,) + perm)
            if np.array_equal(image[self.mul], self.mul[image[:, None], image[None, :]]):
                yield tuple(int(v) for v in image)


def cyclic_group(n: int) -> FiniteGroup:
    """构造循环群 Z/n

    Args:
        n: 群的阶，必须 >= 1

    Returns:
        FiniteGroup
    """
    if n < 1:
        raise ValueError(f"cyclic group order must be positive, got {n}")
    ids = np.arange(n)
    return FiniteGroup((ids[:, None] + ids[None, :]) % n, name=f"Z/{n}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """直积 G1×G2，元素 (a, b) 的下标为 a·|G2| + b"""
    n1, n2 = g1.order, g2.order
    a = np.repeat(np.arange(n1), n2)
    b = np.tile(np.arange(n2), n1)
    mul = g1.mul[a[:, None], a[None, :]] * n2 + g2.mul[b[:, None], b[None, :]]
    name = f"{g1.name or 'G1'}x{g2.name or 'G2'}"
    return FiniteGroup(mul, name=name)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """循环群直积 Z/n1 × … × Z/nr

    元素下标采用混合进制，最后一个分量变化最快。
    """

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.cyclic_orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic orders must be positive, got {orders}")
        # Z/1 因子不携带信息
        orders = tuple(n for n in orders if n > 1)
        object.__setattr__(self, "cyclic_orders", orders)

    @classmethod
    def cyclic(cls, *orders: int) -> "FiniteAbelianGroup":
        return cls(tuple(orders))

    @cached_property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.cyclic_orders) if self.cyclic_orders else 1

    @cached_property
    def strides(self) -> tuple[int, ...]:
        strides, acc = [], 1
        for n in reversed(self.cyclic_orders):
            strides.append(acc)
            acc *= n
        return tuple(reversed(strides))

    @cached_property
    def components(self) -> np.ndarray:
        """(order, rank) 的分量表"""
        ids = np.arange(self.order)
        cols = [(ids // s) % n for s, n in zip(self.strides, self.cyclic_orders)]
        table = np.stack(cols, axis=1) if cols else np.zeros((self.order, 0), dtype=np.int64)
        table.setflags(write=False)
        return table

    def element(self, index: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.components[index])

    def index(self, vector: Sequence[int]) -> int:
        if len(vector) != self.rank:
            raise ValueError(f"expected {self.rank} components, got {len(vector)}")
        return int(sum((int(c) % n) * s for c, n, s in zip(vector, self.cyclic_orders, self.strides)))

    def index_array(self, components: np.ndarray) -> np.ndarray:
        """将 (..., rank) 分量数组转换为下标数组"""
        orders = np.asarray(self.cyclic_orders, dtype=np.int64)
        strides = np.asarray(self.strides, dtype=np.int64)
        return ((np.asarray(components) % orders) * strides).sum(axis=-1)

    @cached_property
    def add_table(self) -> np.ndarray:
        comps = self.components
        table = self.index_array(comps[:, None, :] + comps[None, :, :])
        table.setflags(write=False)
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        table = self.index_array(-self.components)
        table.setflags(write=False)
        return table

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def scale(self, a: int, k: int) -> int:
        return self.index([k * c for c in self.element(a)])

    def elements(self) -> range:
        return range(self.order)

    def as_group(self) -> FiniteGroup:
        return FiniteGroup(self.add_table, name=str(self))

    def automorphisms(self) -> Iterator[tuple[int, ...]]:
        """由生成元像确定的全部自同构，按下标像元组给出"""
        candidates = [
            [x for x in self.elements() if (self.scale(x, n) == 0)] for n in self.cyclic_orders
        ]
        for images in itertools.product(*candidates):
            table = [0] * self.order
            for idx in self.elements():
                acc = 0
                for c, img in zip(self.element(idx), images):
                    acc = self.add(acc, self.scale(img, c))
                table[idx] = acc
            if len(set(table)) == self.order:
                yield tuple(table)

    def __str__(self) -> str:
        if self.order == 1:
            return "1"
        return "x".join(f"Z/{n}" for n in self.cyclic_orders)
