"""Smith normal form over the integers and linear systems over Q/Z.

``smith_normal_form(C)`` returns unimodular ``L``, ``R`` and diagonal ``S``
with ``L @ C @ R == S`` and ``S[0][0] | S[1][1] | ...``.  Because Q/Z is
divisible, ``C x = b (mod 1)`` is solvable iff ``(L b)_i = 0`` for every row
without a nonzero pivot.
"""

from __future__ import annotations

import random
from typing import Sequence

from .abelian_groups import QZ, ZERO


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(C: Sequence[Sequence[int]]):
    A = [list(map(int, row)) for row in C]
    m = len(A)
    n = len(A[0]) if m else 0
    L, R = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for M in (A, R):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        for M in (A, L):
            rd, rs = M[dst], M[src]
            for c in range(len(rd)):
                if rs[c]:
                    rd[c] += k * rs[c]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for M in (A, R):
            for row in M:
                if row[src]:
                    row[dst] += k * row[src]

    for t in range(min(m, n)):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder in row/column t into the pivot
                best = (t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < abs(A[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < abs(A[best[0]][best[1]]):
                        best = (t, j)
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            for M in (A, L):
                M[t] = [-v for v in M[t]]
    return L, A, R


def smith_diagonal(C) -> list:
    _, S, _ = smith_normal_form(C)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


class QZLinearSystem:
    """``C x = b`` over Q/Z for a fixed integer matrix ``C`` (factorized once)."""

    def __init__(self, C: Sequence[Sequence[int]], ncols: int | None = None):
        self.C = [list(map(int, row)) for row in C]
        self.nrows = len(self.C)
        self.ncols = len(self.C[0]) if self.C else (ncols or 0)
        if self.C:
            self.L, S, self.R = smith_normal_form(self.C)
        else:
            self.L, S, self.R = [], [], _identity(self.ncols)
        self.diag = []
        for i in range(min(self.nrows, self.ncols)):
            if S[i][i] == 0:
                break
            self.diag.append(S[i][i])

    @property
    def rank(self) -> int:
        return len(self.diag)

    def solve(self, b: Sequence[QZ], rng: random.Random | None = None):
        """One solution, or None.  With ``rng`` the solution is drawn at random
        from the torsion choices and free directions instead of the canonical one."""
        if len(b) != self.nrows:
            raise ValueError("right-hand side has the wrong length")
        Lb = [sum((row[j] * b[j] for j in range(self.nrows) if row[j]), ZERO) for row in self.L]
        for i in range(self.rank, self.nrows):
            if Lb[i]:
                return None
        y = []
        for i, s in enumerate(self.diag):
            v = Lb[i] / s
            if rng is not None:
                v = v + QZ(rng.randrange(s), s)
            y.append(v)
        for _ in range(self.rank, self.ncols):
            y.append(QZ(rng.randrange(12), 12) if rng is not None else ZERO)
        x = [sum((row[j] * y[j] for j in range(self.ncols) if row[j]), ZERO) for row in self.R]
        return x

    def residual(self, x: Sequence[QZ], b: Sequence[QZ]) -> list:
        return [sum((c * v for c, v in zip(row, x) if c), ZERO) - bb
                for row, bb in zip(self.C, b)]


def solve_linear_qz(C, b, rng: random.Random | None = None):
    """A vector ``x`` with ``C x = b`` (mod 1), or None when none exists."""
    ncols = len(C[0]) if C else 0
    return QZLinearSystem(C, ncols).solve(list(b), rng=rng)
