"""Exact arithmetic on Q/Z and on finite abelian groups.

A finite abelian group is stored as a list of cyclic orders
``(n_1, ..., n_k)``; elements are coordinate tuples with ``0 <= x_i < n_i``.
Nothing requires the orders to be invariant factors.  The character group
is modelled concretely on the same orders list, with pairing

    <phi, a> = sum_i phi_i * a_i / n_i   (mod 1)

so a homomorphism between a group and a dual is an ordinary integer matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, prod
from typing import Iterable, Sequence

from .config import check_candidates, check_order
from .errors import ParseError, WellDefinednessError

Element = tuple  # coordinate tuple of ints


class QZ:
    """An element of Q/Z, kept as a reduced fraction in [0, 1)."""

    __slots__ = ("num", "den")

    def __init__(self, num: int = 0, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("QZ denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        self.num = num // g
        self.den = den // g

    @classmethod
    def parse(cls, text) -> "QZ":
        if isinstance(text, QZ):
            return text
        if isinstance(text, int):
            return cls(text, 1)
        s = str(text).strip()
        try:
            if "/" in s:
                a, b = s.split("/")
                return cls(int(a), int(b))
            return cls(int(s), 1)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational 'num/den': {text!r}") from None

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "QZ":
        return cls(fr.numerator, fr.denominator)

    def __add__(self, other):
        if isinstance(other, int):
            return self
        d = self.den * other.den // gcd(self.den, other.den)
        return QZ(self.num * (d // self.den) + other.num * (d // other.den), d)

    __radd__ = __add__

    def __neg__(self):
        return QZ(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return QZ(self.num * k, self.den)

    __rmul__ = __mul__

    def __truediv__(self, k: int):
        """One preimage under multiplication by ``k`` (Q/Z is divisible)."""
        return QZ(self.num, self.den * k)

    def __eq__(self, other):
        if isinstance(other, QZ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self.num == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return self.num != 0

    def __lt__(self, other):
        return (self.num * other.den) < (other.num * self.den)

    @property
    def order(self) -> int:
        return self.den

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self):
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"QZ({self.num}, {self.den})"


ZERO = QZ(0, 1)


def qz(num: int, den: int = 1) -> QZ:
    if den == 0:
        raise ValueError("den must be >= 1")
    return QZ(num, den)


@dataclass(frozen=True)
class FinAbGroup:
    orders: tuple

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    def zero(self) -> Element:
        return (0,) * len(self.orders)

    def gen(self, i: int) -> Element:
        return tuple(1 % n if j == i else 0 for j, n in enumerate(self.orders))

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.rank)]

    def reduce(self, x: Iterable[int]) -> Element:
        return tuple(v % n for v, n in zip(x, self.orders))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def sub(self, x: Element, y: Element) -> Element:
        return tuple((a - b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x: Element) -> Element:
        return tuple(-a % n for a, n in zip(x, self.orders))

    def scale(self, k: int, x: Element) -> Element:
        return tuple(k * a % n for a, n in zip(x, self.orders))

    def element_order(self, x: Element) -> int:
        return lcm(*(n // gcd(a, n) for a, n in zip(x, self.orders))) if x else 1

    def contains(self, x) -> bool:
        return (len(x) == len(self.orders)
                and all(isinstance(a, int) and 0 <= a < n for a, n in zip(x, self.orders)))

    @cached_property
    def elements(self) -> tuple:
        """All elements in mixed-radix order (first coordinate most significant)."""
        return tuple(itertools.product(*(range(n) for n in self.orders)))

    @cached_property
    def _strides(self) -> tuple:
        s, out = 1, []
        for n in reversed(self.orders):
            out.append(s)
            s *= n
        return tuple(reversed(out))

    def index(self, x: Element) -> int:
        """Canonical rank of an element (its position in ``elements``)."""
        return sum(a * s for a, s in zip(x, self._strides))

    def unindex(self, r: int) -> Element:
        return tuple((r // s) % n for s, n in zip(self._strides, self.orders))

    def dual(self) -> "FinAbGroup":
        """The character group, realized on the same orders list."""
        return self

    def pairing(self, phi: Element, a: Element) -> QZ:
        """<phi, a> for a character ``phi`` of this group and an element ``a``."""
        d = self.exponent
        return QZ(sum(p * x * (d // n) for p, x, n in zip(phi, a, self.orders)), d)

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup(self.orders + other.orders)

    def invariant_factors(self) -> tuple:
        """Display-only canonical decomposition n_1 | n_2 | ... ."""
        from .snf import smith_diagonal
        diag = smith_diagonal([[n if i == j else 0 for j in range(self.rank)]
                               for i, n in enumerate(self.orders)])
        return tuple(sorted(d for d in diag if d > 1))

    def __str__(self):
        if not self.orders or all(n == 1 for n in self.orders):
            return "trivial"
        return " x ".join(f"Z/{n}" for n in self.orders)


def cyclic(n: int) -> FinAbGroup:
    return FinAbGroup((n,))


class GroupHom:
    """A homomorphism ``source -> target`` given by an integer matrix.

    ``matrix[i][j]`` is the i-th target coordinate of the image of the j-th
    source generator, so ``f(x)_i = sum_j M_ij x_j mod n_i``.
    """

    __slots__ = ("source", "target", "matrix", "_hash")

    def __init__(self, source: FinAbGroup, target: FinAbGroup, matrix, *, check: bool = True):
        rows = tuple(tuple(int(v) % n for v in row) for row, n in zip(matrix, target.orders))
        if check:
            if len(matrix) != target.rank or any(len(r) != source.rank for r in matrix):
                raise WellDefinednessError(
                    f"matrix shape does not match {source} -> {target}")
            for i, n in enumerate(target.orders):
                for j, m in enumerate(source.orders):
                    if (m * rows[i][j]) % n:
                        raise WellDefinednessError(
                            f"entry ({i},{j})={rows[i][j]}: {m}*{rows[i][j]} != 0 mod {n}")
        self.source = source
        self.target = target
        self.matrix = rows
        self._hash = None

    # construction helpers

    @classmethod
    def identity(cls, G: FinAbGroup) -> "GroupHom":
        return cls(G, G, [[1 if i == j else 0 for j in range(G.rank)] for i in range(G.rank)],
                   check=False)

    @classmethod
    def zero(cls, G: FinAbGroup, H: FinAbGroup) -> "GroupHom":
        return cls(G, H, [[0] * G.rank for _ in range(H.rank)], check=False)

    @classmethod
    def from_images(cls, G: FinAbGroup, H: FinAbGroup, images: Sequence[Element]) -> "GroupHom":
        """The hom sending the j-th generator of ``G`` to ``images[j]``."""
        return cls(G, H, [[images[j][i] for j in range(G.rank)] for i in range(H.rank)])

    # evaluation and algebra

    def __call__(self, x: Element) -> Element:
        return tuple(sum(m * v for m, v in zip(row, x)) % n
                     for row, n in zip(self.matrix, self.target.orders))

    def images(self) -> list:
        """Images of the source generators (the matrix columns)."""
        return [tuple(row[j] for row in self.matrix) for j in range(self.source.rank)]

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        return hom_compose(self, other)

    def _same_shape(self, other):
        if self.source != other.source or self.target != other.target:
            raise WellDefinednessError("homs have different source/target")

    def __add__(self, other: "GroupHom") -> "GroupHom":
        self._same_shape(other)
        return GroupHom(self.source, self.target,
                        [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)],
                        check=False)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        self._same_shape(other)
        return GroupHom(self.source, self.target,
                        [[a - b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)],
                        check=False)

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.source, self.target, [[-a for a in r] for r in self.matrix],
                        check=False)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def is_identity(self) -> bool:
        return self.source == self.target and self == GroupHom.identity(self.source)

    def kernel_elements(self) -> list:
        z = self.target.zero()
        return [x for x in self.source.elements if self(x) == z]

    def image_elements(self) -> list:
        return sorted({self(x) for x in self.source.elements}, key=self.target.index)

    def is_injective(self) -> bool:
        z = self.target.zero()
        return all(self(x) != z for x in self.source.elements[1:])

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def inverse(self) -> "GroupHom | None":
        """Two-sided inverse, or None when the map is not bijective."""
        if self.source.order != self.target.order:
            return None
        pre = {}
        for x in self.source.elements:
            y = self(x)
            if y in pre:
                return None
            pre[y] = x
        inv = GroupHom.from_images(self.target, self.source,
                                   [pre[e] for e in self.target.gens()])
        assert (inv @ self).is_identity() and (self @ inv).is_identity()
        return inv

    def dual(self) -> "GroupHom":
        return dual_hom(self)

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (self.matrix == other.matrix and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source.orders, self.target.orders, self.matrix))
        return self._hash

    def sort_key(self):
        return self.matrix

    def to_list(self) -> list:
        return [list(r) for r in self.matrix]

    def __repr__(self):
        return f"GroupHom({self.source.orders}->{self.target.orders}, {self.to_list()})"


def hom_new(source: FinAbGroup, target: FinAbGroup, matrix) -> GroupHom:
    return GroupHom(source, target, matrix)


def hom_compose(g: GroupHom, f: GroupHom) -> GroupHom:
    """``g o f``."""
    if f.target != g.source:
        raise WellDefinednessError(f"cannot compose: {f.target} != {g.source}")
    cols = [tuple(row[j] for row in f.matrix) for j in range(f.source.rank)]
    rows = [[sum(a * b for a, b in zip(grow, col)) for col in cols] for grow in g.matrix]
    return GroupHom(f.source, g.target, rows, check=False)


def dual_hom(f: GroupHom) -> GroupHom:
    """The transpose ``f*: H^ -> G^`` with <f*(psi), x> = <psi, f(x)>."""
    m, n = f.source.orders, f.target.orders
    rows = [[(m[j] * f.matrix[i][j]) // n[i] for i in range(len(n))] for j in range(len(m))]
    return GroupHom(f.target.dual(), f.source.dual(), rows, check=False)


def hom_count(G: FinAbGroup, H: FinAbGroup) -> int:
    return prod(gcd(m, n) for n in H.orders for m in G.orders)


def enumerate_homs(G: FinAbGroup, H: FinAbGroup) -> list:
    """All homomorphisms ``G -> H``, sorted by matrix."""
    check_candidates(f"Hom({G}, {H})", hom_count(G, H))
    choices = []
    for n in H.orders:
        for m in G.orders:
            step = n // gcd(m, n)
            choices.append(range(0, n, step))
    out = []
    for flat in itertools.product(*choices):
        rows = [flat[i * G.rank:(i + 1) * G.rank] for i in range(H.rank)]
        out.append(GroupHom(G, H, rows, check=False))
    return sorted(out, key=GroupHom.sort_key)


def enumerate_automorphisms(G: FinAbGroup) -> list:
    """All automorphisms of ``G``; each is certified by its inverse."""
    return [f for f in enumerate_homs(G, G) if f.inverse() is not None]


# subgroups


def _span(G: FinAbGroup, gens: Iterable[Element]) -> frozenset:
    zero = G.zero()
    span = {zero}
    for g in gens:
        if g in span:
            continue
        cyc, m = [zero], g
        while m != zero:
            cyc.append(m)
            m = G.add(m, g)
        span = {G.add(s, c) for s in span for c in cyc}
    return frozenset(span)


@dataclass(frozen=True, eq=False)
class Subgroup:
    ambient: FinAbGroup
    elements: tuple
    basis: tuple = field(default=())
    basis_orders: tuple = field(default=())

    @classmethod
    def from_elements(cls, G: FinAbGroup, elements: Iterable[Element]) -> "Subgroup":
        elems = tuple(sorted(set(elements), key=G.index))
        basis, orders = _extract_basis(G, elems)
        sub = cls(G, elems, tuple(basis), tuple(orders))
        regenerated = _span(G, basis)
        if regenerated != frozenset(elems) or prod(orders) != len(elems):
            raise AssertionError("basis extraction failed to regenerate the subgroup")
        return sub

    @classmethod
    def generated_by(cls, G: FinAbGroup, gens: Iterable[Element]) -> "Subgroup":
        return cls.from_elements(G, _span(G, gens))

    @classmethod
    def whole(cls, G: FinAbGroup) -> "Subgroup":
        return cls.from_elements(G, G.elements)

    @classmethod
    def trivial(cls, G: FinAbGroup) -> "Subgroup":
        return cls.from_elements(G, [G.zero()])

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.element_set

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.elements == other.elements

    def __hash__(self):
        return hash((self.ambient.orders, self.elements))

    def __le__(self, other: "Subgroup") -> bool:
        return self.element_set <= other.element_set

    def abstract(self) -> FinAbGroup:
        """The group Z/o_1 x ... x Z/o_r on the basis orders."""
        return FinAbGroup(self.basis_orders)

    def inclusion(self) -> GroupHom:
        return GroupHom.from_images(self.abstract(), self.ambient, list(self.basis))

    @cached_property
    def _coords(self) -> dict:
        inc = self.inclusion()
        return {inc(c): c for c in self.abstract().elements}

    def coords(self, x: Element) -> Element:
        """Coordinates of ``x`` in the basis."""
        return self._coords[x]

    def sort_key(self):
        return (self.order, tuple(self.ambient.index(x) for x in self.elements))

    def __repr__(self):
        return f"Subgroup({self.ambient.orders}, basis={list(self.basis)}, orders={list(self.basis_orders)})"


def _extract_basis(G: FinAbGroup, elems: Sequence[Element]):
    """Independent generators: repeatedly take an element of maximal order
    modulo the span so far whose cyclic group meets that span trivially."""
    span = frozenset([G.zero()])
    basis, orders = [], []
    while len(span) < len(elems):
        best, best_ord = None, 0
        for x in elems:
            if x in span:
                continue
            k, y = 1, x
            while y not in span:
                y = G.add(y, x)
                k += 1
            if k > best_ord and G.element_order(x) == k:
                best, best_ord = x, k
        assert best is not None
        basis.append(best)
        orders.append(best_ord)
        span = _span(G, basis)
    return basis, orders


def enumerate_subgroups(G: FinAbGroup) -> list:
    """Every subgroup exactly once, sorted by (order, element ranks)."""
    check_order(f"subgroups of {G}", G.order)
    seen = {frozenset([G.zero()])}
    frontier = [frozenset([G.zero()])]
    while frontier:
        nxt = []
        for S in frontier:
            for g in G.elements:
                if g in S:
                    continue
                T = _extend(G, S, g)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    subs = [Subgroup.from_elements(G, S) for S in seen]
    return sorted(subs, key=Subgroup.sort_key)


def _extend(G: FinAbGroup, S: frozenset, g: Element) -> frozenset:
    return frozenset(G.add(s, c) for s in S for c in _span(G, [g]))


def subgroup_sum(A: Subgroup, B: Subgroup) -> Subgroup:
    return Subgroup.generated_by(A.ambient, list(A.basis) + list(B.basis))


def solve_linear_qz(C, b):
    """Solve ``C x = b`` over Q/Z; see :func:`premetric.snf.solve_linear_qz`."""
    from .snf import solve_linear_qz as _solve
    return _solve(C, b)
