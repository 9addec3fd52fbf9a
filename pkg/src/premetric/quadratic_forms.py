"""Quadratic forms q: A -> Q/Z on finite abelian groups.

A form is given by generator data: ``diag[i] = q(e_i)`` and, for i < j,
``offdiag[(i, j)] = sigma(e_i, e_j)``.  Then

    q(x) = sum_i x_i^2 q(e_i) + sum_{i<j} x_i x_j sigma(e_i, e_j)

on canonical coordinates, and sigma(x, y) = q(x+y) - q(x) - q(y).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, lcm
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .abelian_groups import (QZ, ZERO, Element, FinAbGroup, GroupHom, Subgroup,
                             enumerate_automorphisms)
from .config import check_order
from .errors import InvalidForm
from .search import element_array, search_images


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    group: FinAbGroup
    diag: tuple
    offdiag: tuple = ()  # sorted ((i, j), value) pairs, i < j, zero values dropped
    name: str = field(default="", compare=False)

    def __post_init__(self):
        G = self.group
        diag = tuple(QZ.parse(v) for v in self.diag)
        if len(diag) != G.rank:
            raise InvalidForm(f"q_diag has {len(diag)} entries for a group of rank {G.rank}")
        raw = self.offdiag.items() if isinstance(self.offdiag, Mapping) else self.offdiag
        off = {}
        for key, v in raw:
            i, j = key
            if not (0 <= i < G.rank and 0 <= j < G.rank) or i == j:
                raise InvalidForm(f"sigma_offdiag key {key} is not a pair i != j of generators")
            i, j = min(i, j), max(i, j)
            v = QZ.parse(v)
            if v:
                off[(i, j)] = v
        for i, (n, v) in enumerate(zip(G.orders, diag)):
            if v * (gcd(2, n) * n):
                raise InvalidForm(
                    f"q(e_{i}) = {v} is not a quadratic value on Z/{n}: "
                    f"{gcd(2, n) * n} * q(e_{i}) != 0")
        for (i, j), v in off.items():
            g = gcd(G.orders[i], G.orders[j])
            if v * g:
                raise InvalidForm(
                    f"sigma(e_{i}, e_{j}) = {v} violates torsion: {g} * sigma != 0")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", tuple(sorted(off.items())))

    # generator data

    @cached_property
    def _off(self) -> dict:
        return dict(self.offdiag)

    def gram(self, i: int, j: int) -> QZ:
        """sigma(e_i, e_j)."""
        if i == j:
            return self.diag[i] * 2
        return self._off.get((min(i, j), max(i, j)), ZERO)

    @cached_property
    def level(self) -> int:
        """A common denominator for every value of q, sigma and the pairing."""
        dens = [v.den for v in self.diag] + [v.den for _, v in self.offdiag]
        return lcm(self.group.exponent, *dens)

    @cached_property
    def int_diag(self) -> np.ndarray:
        D = self.level
        return np.array([v.num * (D // v.den) for v in self.diag], dtype=np.int64)

    @cached_property
    def int_gram(self) -> np.ndarray:
        D, r = self.level, self.group.rank
        G = np.zeros((r, r), dtype=np.int64)
        for i in range(r):
            for j in range(r):
                v = self.gram(i, j)
                G[i, j] = v.num * (D // v.den)
        return G

    def int_values(self, X: np.ndarray) -> np.ndarray:
        """``level * q`` (mod level) on the rows of ``X``."""
        D = self.level
        out = (X * X) @ self.int_diag
        for (i, j), v in self.offdiag:
            out = out + X[:, i] * X[:, j] * (v.num * (D // v.den))
        return out % D

    # evaluation

    def __call__(self, x: Element) -> QZ:
        return evaluate(self, x)

    def sigma(self, x: Element, y: Element) -> QZ:
        return bilinear(self, x, y)

    @cached_property
    def values(self) -> dict:
        return {x: evaluate(self, x) for x in self.group.elements}

    def is_zero(self) -> bool:
        return not any(self.diag) and not self.offdiag

    def is_symmetric(self) -> bool:
        """sigma identically zero."""
        r = self.group.rank
        return all(not self.gram(i, j) for i in range(r) for j in range(r))

    def negate(self) -> "QuadraticForm":
        return QuadraticForm(self.group, tuple(-v for v in self.diag),
                             tuple((k, -v) for k, v in self.offdiag))

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        if self.group != other.group:
            raise InvalidForm("forms live on different groups")
        off = dict(self.offdiag)
        for k, v in other.offdiag:
            off[k] = off.get(k, ZERO) + v
        return QuadraticForm(self.group, tuple(a + b for a, b in zip(self.diag, other.diag)),
                             tuple(off.items()))

    def __eq__(self, other):
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return (self.group == other.group and self.diag == other.diag
                and self.offdiag == other.offdiag)

    def __hash__(self):
        return hash((self.group.orders, self.diag, self.offdiag))

    def to_spec(self) -> dict:
        return {
            "name": self.name,
            "orders": list(self.group.orders),
            "q_diag": [str(v) for v in self.diag],
            "sigma_offdiag": {f"{i},{j}": str(v) for (i, j), v in self.offdiag},
        }

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"QuadraticForm({label}{self.group}, q={[str(v) for v in self.diag]}, sigma={ {f'{i},{j}': str(v) for (i, j), v in self.offdiag} })"


def form_new(group: FinAbGroup, diag: Sequence, offdiag=(), name: str = "") -> QuadraticForm:
    return QuadraticForm(group, tuple(diag), offdiag, name)


def zero_form(group: FinAbGroup) -> QuadraticForm:
    return QuadraticForm(group, (ZERO,) * group.rank)


def evaluate(q: QuadraticForm, x: Element) -> QZ:
    total = ZERO
    for xi, v in zip(x, q.diag):
        if xi and v:
            total = total + v * (xi * xi)
    for (i, j), v in q.offdiag:
        if x[i] and x[j]:
            total = total + v * (x[i] * x[j])
    return total


def bilinear(q: QuadraticForm, x: Element, y: Element) -> QZ:
    """sigma(x, y) from the Gram data."""
    total = ZERO
    for i, (xi, yi) in enumerate(zip(x, y)):
        if xi and yi and q.diag[i]:
            total = total + q.diag[i] * (2 * xi * yi)
    for (i, j), v in q.offdiag:
        k = x[i] * y[j] + x[j] * y[i]
        if k:
            total = total + v * k
    return total


def sigma_tilde(q: QuadraticForm) -> GroupHom:
    """The map A -> A^ with <sigma~(a), x> = sigma(a, x)."""
    cached = q.__dict__.get("_sigma_tilde")
    if cached is not None:
        return cached
    A = q.group
    rows = []
    for i, n in enumerate(A.orders):
        row = []
        for j in range(A.rank):
            v = q.gram(i, j) * n
            assert not v, "torsion invariant guarantees an integral entry"
            g = q.gram(i, j)
            row.append(g.num * n // g.den)
        rows.append(row)
    st = GroupHom(A, A.dual(), rows)
    q.__dict__["_sigma_tilde"] = st
    return st


class Radical(NamedTuple):
    subgroup: Subgroup
    tannakian: bool  # q vanishes on the radical


def radical(q: QuadraticForm) -> Radical:
    R = Subgroup.from_elements(q.group, sigma_tilde(q).kernel_elements())
    return Radical(R, all(not q(x) for x in R.elements))


def orthogonal_complement(q: QuadraticForm, B: Subgroup) -> Subgroup:
    A = q.group
    return Subgroup.from_elements(
        A, [a for a in A.elements if all(not bilinear(q, a, b) for b in B.basis)])


def is_nondegenerate(q: QuadraticForm) -> bool:
    return radical(q).subgroup.order == 1


def restrict(q: QuadraticForm, B: Subgroup) -> QuadraticForm:
    """q on the abstract group of B's basis, read off from q and sigma."""
    bs = B.basis
    off = {(r, s): bilinear(q, bs[r], bs[s])
           for r in range(len(bs)) for s in range(r + 1, len(bs))}
    return QuadraticForm(B.abstract(), tuple(q(b) for b in bs), off)


def pullback(q: QuadraticForm, f: GroupHom) -> QuadraticForm:
    """The form x -> q(f(x)) on the source of ``f``."""
    ims = f.images()
    r = f.source.rank
    off = {(i, j): bilinear(q, ims[i], ims[j]) for i in range(r) for j in range(i + 1, r)}
    return QuadraticForm(f.source, tuple(q(y) for y in ims), off)


def preserves(q: QuadraticForm, g: GroupHom) -> bool:
    """q o g == q, decided on generator data."""
    ims = g.images()
    r = q.group.rank
    if any(q(y) != q.diag[i] for i, y in enumerate(ims)):
        return False
    return all(bilinear(q, ims[i], ims[j]) == q.gram(i, j)
               for i in range(r) for j in range(i + 1, r))


def preserves_exhaustive(q: QuadraticForm, g: GroupHom) -> bool:
    vals = q.values
    return all(vals[g(x)] == vals[x] for x in q.group.elements)


def orthogonal_group(q: QuadraticForm) -> list:
    """O(A, q), sorted by matrix."""
    A = q.group
    check_order(f"O({A}, q)", A.order)
    E = element_array(A)
    D = q.level
    qv = q.int_values(E)
    G = q.int_gram
    unary = [qv == q.int_diag[k] % D for k in range(A.rank)]

    def pair(l, k, yl, C):
        return (C @ ((G @ yl) % D)) % D == G[l, k] % D

    found = search_images(A, A.orders, unary, pair, injective=True)
    out = [GroupHom.from_images(A, A, list(ims)) for ims in found]
    return sorted(out, key=GroupHom.sort_key)


def orthogonal_group_bruteforce(q: QuadraticForm) -> list:
    """Filter Aut(A) by the full value table (oracle for orthogonal_group)."""
    return [g for g in enumerate_automorphisms(q.group) if preserves_exhaustive(q, g)]
