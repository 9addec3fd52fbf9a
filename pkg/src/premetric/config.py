"""Size guards and worker configuration.

Limits live in a context variable so the CLI (or a test) can widen them
for a block of code without threading arguments through every call::

    with limits(max_group_order=64):
        orthogonal_group(q)
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

from .errors import SizeGuard

ENV_VAR = "METRIC_GROUP_GUARD"


@dataclass(frozen=True)
class Limits:
    max_group_order: int = 36
    max_candidates: int = 10**7
    max_center_order: int = 12
    max_cohomology_order: int = 9
    threads: int = 1

    def __post_init__(self):
        for name in ("max_group_order", "max_candidates", "max_center_order",
                     "max_cohomology_order", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


def _from_env() -> Limits:
    """Parse ``METRIC_GROUP_GUARD`` as ``ORDER`` or ``ORDER,CANDIDATES``."""
    raw = os.environ.get(ENV_VAR)
    if not raw:
        return Limits()
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be 'ORDER' or 'ORDER,CANDIDATES', got {raw!r}")
    lim = Limits(max_group_order=values[0])
    if len(values) > 1:
        lim = replace(lim, max_candidates=values[1])
    return lim


_current: ContextVar[Limits | None] = ContextVar("premetric_limits", default=None)


def current_limits() -> Limits:
    lim = _current.get()
    return lim if lim is not None else _from_env()


@contextmanager
def limits(**overrides):
    token = _current.set(replace(current_limits(), **overrides))
    try:
        yield current_limits()
    finally:
        _current.reset(token)


def check_order(what: str, order: int, bound: int | None = None) -> None:
    bound = current_limits().max_group_order if bound is None else bound
    if order > bound:
        raise SizeGuard(f"{what}: group order {order} exceeds limit {bound}")


def check_candidates(what: str, count: int) -> None:
    bound = current_limits().max_candidates
    if count > bound:
        raise SizeGuard(f"{what}: {count} candidates exceed limit {bound}")
