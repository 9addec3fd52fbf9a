"""Backtracking over images of generators.

Orthogonal groups, Picard homomorphisms and trivializable center
automorphisms are all found the same way: choose the image of each source
generator in turn, keep only candidates that satisfy every unary
condition, and filter by pairwise conditions against the images already
chosen.  Candidate sets are numpy arrays so each filter is one vectorized
pass over a level.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from .abelian_groups import FinAbGroup
from .config import current_limits


def element_array(G: FinAbGroup) -> np.ndarray:
    return np.array(G.elements, dtype=np.int64).reshape(G.order, G.rank)


def search_images(
    target: FinAbGroup,
    source_orders: Sequence[int],
    unary: Sequence[np.ndarray],
    pair: Callable[[int, int, np.ndarray, np.ndarray], np.ndarray] | None,
    injective: bool = False,
    threads: int | None = None,
) -> list:
    """All tuples ``(y_0, ..., y_{r-1})`` of target elements such that

    * ``source_orders[k] * y_k == 0`` (so the tuple defines a hom),
    * ``unary[k]`` (a mask over ``target.elements``) holds for ``y_k``,
    * ``pair(l, k, y_l, C)`` is true for ``y_k`` among rows ``C`` for l < k,
    * if ``injective``, the resulting hom is injective.

    Returns image tuples sorted lexicographically.
    """
    E = element_array(target)
    ords = np.array(target.orders, dtype=np.int64)
    strides = np.array([target.index(target.gen(i)) for i in range(target.rank)], dtype=np.int64)
    r = len(source_orders)
    if r == 0:
        return [()]
    cands = []
    for k, m in enumerate(source_orders):
        ok = ((E * m) % ords == 0).all(axis=1) & unary[k]
        cands.append(E[ok])

    rows = {}

    def compat(l, k, i, y):
        # pair(l, k, y, cands[k]) for the i-th candidate y at level l, memoized
        key = (l, k, i)
        row = rows.get(key)
        if row is None:
            row = rows[key] = pair(l, k, y, cands[k])
        return row

    def filtered(k, chosen, span):
        C = cands[k]
        if pair is not None and k:
            mask = np.ones(len(C), dtype=bool)
            for l in range(k):
                i, y = chosen[l]
                mask &= compat(l, k, i, y)
                if not mask.any():
                    break
            idx = np.flatnonzero(mask)
        else:
            idx = np.arange(len(C))
        if injective and len(idx):
            m = source_orders[k]
            keep = np.ones(len(idx), dtype=bool)
            for t in range(1, m):
                keep &= ~span[((t * C[idx]) % ords) @ strides]
            idx = idx[keep]
        return idx

    def grow(span, y, m):
        S = E[np.flatnonzero(span)]
        new = span.copy()
        for t in range(1, m):
            new[((S + t * y) % ords) @ strides] = True
        return new

    def rec(k, chosen, span, out, idx=None):
        if k == r:
            out.append(tuple(tuple(y.tolist()) for _, y in chosen))
            return
        if idx is None:
            idx = filtered(k, chosen, span)
        C = cands[k]
        for i in idx:
            y = C[i]
            rec(k + 1, chosen + [(i, y)], grow(span, y, source_orders[k]) if injective else span, out)

    span0 = np.zeros(target.order, dtype=bool)
    span0[0] = True
    first = filtered(0, [], span0)
    threads = threads or current_limits().threads
    if threads <= 1 or len(first) < 2:
        out = []
        rec(0, [], span0, out, first)
        return sorted(out)
    chunks = [first[i::threads] for i in range(threads)]

    def run(chunk):
        part = []
        rec(0, [], span0, part, chunk)
        return part

    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(run, chunks))
    return sorted(t for part in parts for t in part)


def is_injective_matrix(M: np.ndarray, source: FinAbGroup, target: FinAbGroup,
                        E: np.ndarray | None = None) -> bool:
    """Injectivity of the hom with integer matrix ``M`` by checking every element."""
    if E is None:
        E = element_array(source)
    img = (E @ M.T) % np.array(target.orders, dtype=np.int64)
    return int((~img.any(axis=1)).sum()) == 1
