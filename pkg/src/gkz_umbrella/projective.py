"""Bookkeeping on the charts of the product of projective lines.

A chart inverts the variables in ``P``. Components of the projectivized
system are indexed by pairs ``(tau, T)`` with ``tau`` an umbrella face and
``T`` disjoint from it; their multiplicities pick up a factor ``2^|T|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .slopes import SlopeFamily, SlopeReport, filter_pyramids, slopes_along
from .umbrella import Face, ToricMatrix, as_weights, compute_umbrella


class ChartMissesY(ValueError):
    """The chart does not meet the coordinate variety."""


@dataclass(frozen=True)
class ChartSpec:
    """Chart inverting the variables in ``P`` (0-based)."""

    P: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "P", frozenset(self.P))
        if any(not isinstance(j, int) or j < 0 for j in self.P):
            raise ValueError("chart indices must be non-negative integers")

    def meets(self, fam: SlopeFamily) -> bool:
        return fam.vinf <= self.P and not (fam.v0 & self.P)


def chart_weights(fam: SlopeFamily, chart: ChartSpec, s) -> tuple[Fraction, ...]:
    """Weights of ``d_1..d_n`` on the chart at parameter ``s``.

    On the chart a variable at infinity has effective weight ``1 - s``.
    """
    if not chart.meets(fam):
        raise ChartMissesY("the chart must contain Vinf and avoid V0")
    if any(j >= fam.A.n for j in chart.P):
        raise ValueError("chart index out of range")
    return fam.weights(s)


@dataclass(frozen=True)
class BarFace:
    tau: Face
    T: frozenset

    def __post_init__(self):
        object.__setattr__(self, "T", frozenset(self.T))
        if self.T & set(self.tau.members):
            raise ValueError("T must be disjoint from the face")

    @property
    def key(self) -> tuple[frozenset, frozenset]:
        return frozenset(self.tau.members), self.T

    def label(self) -> tuple[list[int], list[int]]:
        return self.tau.label(), sorted(j + 1 for j in self.T)


def bar_umbrella(A, L) -> list[BarFace]:
    """All pairs ``(tau, T)`` with ``tau`` an umbrella face and ``T`` off ``tau``."""
    A = ToricMatrix.of(A, strict=False)
    umb = compute_umbrella(A, as_weights(L, A.n))
    out = []
    for f in umb:
        free = [j for j in range(A.n) if j not in f.members]
        for k in range(len(free) + 1):
            out.extend(BarFace(f, frozenset(T)) for T in combinations(free, k))
    return out


def bar_leq(lower, upper) -> bool:
    """``(tau', T') <= (tau, T)`` iff ``tau' ⊆ tau`` and ``tau \\ tau' ⊆ T' ⊇ T``."""
    t1, T1 = lower.key if isinstance(lower, BarFace) else map(frozenset, lower)
    t2, T2 = upper.key if isinstance(upper, BarFace) else map(frozenset, upper)
    return t1 <= t2 and (t2 - t1) <= T1 and T2 <= T1


def slopes_at_infinity(A, v0=(), vinf=()) -> SlopeReport:
    """Slope candidates along ``Y``; a prediction only when ``vinf`` is non-empty.

    With ``vinf`` empty this is exactly :func:`slopes_along`. Otherwise the
    jumps are recomputed on the faces that are not pyramids with a vertex at
    infinity, and the report carries the conjectural flag.
    """
    # disjointness of v0 and vinf, checked by SlopeFamily, is exactly what
    # makes the chart inverting vinf meet Y
    fam = SlopeFamily(A, frozenset(v0), frozenset(vinf))
    report = slopes_along(fam)
    if not fam.vinf:
        return report
    return filter_pyramids(report, fam)
