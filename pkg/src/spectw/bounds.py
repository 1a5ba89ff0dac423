"""Spectral lower bounds on treewidth.

Four bounds of increasing strength are evaluated from the vertex count ``n``,
the maximum degree, and the second smallest / largest Laplacian eigenvalues:

* ``cs03``:    3 n l2 / (4 D + 8 l2) - 1
* ``ghnoo24``: 3 n l2 / max(4 D + 3 l2, 3 D + 4.5 l2) - 1
* ``thm1``:    n l2 / (D + l2) - 1
* ``thm2``:    2 n l2 / (3 lmax - l2) - 1

The ``ghnoo24`` denominator takes the larger of the two arms, as published.
The smaller arm would give a stronger bound, but that variant is not a claim
this package relies on.

A bound whose precondition fails (no edges, so ``D < 1``) is *not applicable*
and is reported as ``None`` rather than raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Graph
from .spectrum import eigenvalues

__all__ = [
    "BOUND_NAMES",
    "BoundReport",
    "INTEGER_SLACK",
    "bound_cs03",
    "bound_ghnoo24",
    "bound_thm1",
    "bound_thm2",
    "bounds_report",
    "integerize",
]

BOUND_NAMES = ("cs03", "ghnoo24", "thm1", "thm2")

#: Guard subtracted before rounding a real bound up to an integer.
INTEGER_SLACK = 1e-6


def bound_cs03(n: int, max_degree: float, l2: float) -> float | None:
    if max_degree < 1:
        return None
    return 3 * n * l2 / (4 * max_degree + 8 * l2) - 1


def bound_ghnoo24(n: int, max_degree: float, l2: float) -> float | None:
    if max_degree < 1:
        return None
    denom = max(4 * max_degree + 3 * l2, 3 * max_degree + 4.5 * l2)
    return 3 * n * l2 / denom - 1


def bound_thm1(n: int, max_degree: float, l2: float) -> float | None:
    if max_degree < 1:
        return None
    return n * l2 / (max_degree + l2) - 1


def bound_thm2(n: int, l2: float, lmax: float) -> float | None:
    """Returns None when the graph has no edge (``lmax == 0``)."""
    denom = 3 * lmax - l2
    if lmax <= 0 or denom <= 0:
        return None
    return 2 * n * l2 / denom - 1


def integerize(value: float | None) -> int | None:
    """Smallest integer treewidth compatible with the real bound ``value``."""
    if value is None:
        return None
    return max(0, math.ceil(value - INTEGER_SLACK))


@dataclass(frozen=True)
class BoundReport:
    n: int
    m: int
    max_degree: int
    lambda2: float | None
    lambda_max: float
    cs03: float | None
    ghnoo24: float | None
    thm1: float | None
    thm2: float | None

    @property
    def bounds(self) -> dict[str, float | None]:
        return {name: getattr(self, name) for name in BOUND_NAMES}

    @property
    def best_integer(self) -> int:
        vals = [integerize(v) for v in self.bounds.values() if v is not None]
        return max(vals, default=0)

    @property
    def best_bound(self) -> str | None:
        """Name of the largest applicable bound."""
        live = {k: v for k, v in self.bounds.items() if v is not None}
        return max(live, key=live.get) if live else None

    def to_dict(self) -> dict:
        return {
            "graph": {"n": self.n, "m": self.m, "max_degree": self.max_degree},
            "spectrum": {"lambda2": self.lambda2, "lambda_max": self.lambda_max},
            "bounds": self.bounds,
            "best_integer_lower_bound": self.best_integer,
        }


def bounds_report(g: Graph, spectrum=None) -> BoundReport:
    """Evaluate all four bounds for ``g``, computing its spectrum once.

    A precomputed :class:`~spectw.spectrum.SpectrumResult` may be passed in.
    """
    if g.n < 1:
        raise ValueError("bounds need at least one vertex")
    spec = spectrum if spectrum is not None else eigenvalues(g)
    n, D = g.n, g.max_degree
    lmax = spec.lambda_max
    l2 = spec.lambda2 if n >= 2 else None
    applicable = g.m >= 1
    return BoundReport(
        n=n,
        m=g.m,
        max_degree=D,
        lambda2=l2,
        lambda_max=lmax,
        cs03=bound_cs03(n, D, l2) if applicable else None,
        ghnoo24=bound_ghnoo24(n, D, l2) if applicable else None,
        thm1=bound_thm1(n, D, l2) if applicable else None,
        thm2=bound_thm2(n, l2, lmax) if applicable else None,
    )
