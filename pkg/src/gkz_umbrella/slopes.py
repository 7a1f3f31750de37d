"""Jumps of the umbrella along the family ``L(s) = F + s V``.

With ``p = 1`` and ``s = q/p`` the weight of ``d_j`` is ``1 + s v_j`` where
``v_j = +1`` for variables vanishing on Y, ``-1`` for variables inverted
at infinity and ``0`` otherwise. A jump at ``s*`` is reported as the slope
``p/q = 1/s*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable

from .exactmath import dot
from .umbrella import (
    ToricMatrix,
    Umbrella,
    ValidationError,
    _square_inverses,
    compute_facets,
    compute_umbrella,
    is_pyramid,
)


@dataclass(frozen=True)
class SlopeFamily:
    """The family ``pF + qV`` along ``Y = Var(x_{V0}, x'_{Vinf})`` (0-based index sets)."""

    A: ToricMatrix
    v0: frozenset = frozenset()
    vinf: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "A", ToricMatrix.of(self.A, strict=False))
        object.__setattr__(self, "v0", frozenset(self.v0))
        object.__setattr__(self, "vinf", frozenset(self.vinf))
        if self.v0 & self.vinf:
            raise ValidationError("overlapping-subsets", "V0 and Vinf must be disjoint")
        if any(not 0 <= j < self.A.n for j in self.v0 | self.vinf):
            raise ValidationError("index-out-of-range", "subspace index out of range")

    @property
    def increments(self) -> tuple[int, ...]:
        return tuple(1 if j in self.v0 else -1 if j in self.vinf else 0 for j in range(self.A.n))

    def weights(self, s) -> tuple[Fraction, ...]:
        s = Fraction(s)
        return tuple(1 + s * v for v in self.increments)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction | None  # None: unbounded above
    facets: frozenset


@dataclass
class SlopeReport:
    """Critical parameters ``s*`` of a sweep and the slopes ``1/s*``.

    ``visible_slopes`` is only set for families with variables at infinity:
    it holds the jumps left after discarding faces that are pyramids with a
    vertex at infinity, a prediction that is conjectural.
    """

    family: SlopeFamily
    critical_params: tuple[Fraction, ...]
    intervals: tuple[Interval, ...]
    conjectural: bool = False
    visible_slopes: tuple[Fraction, ...] | None = None
    umbrellas: dict = field(default_factory=dict, repr=False)

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(1 / s for s in self.critical_params)


def candidate_critical_values(fam: SlopeFamily) -> list[Fraction]:
    """Finite superset of the jump parameters.

    For each d-subset ``tau`` of independent columns, ``h(s)`` solving
    ``h . a_j = w_j(s)`` on ``tau`` is affine in ``s``; a jump can only
    happen where some other column satisfies ``h(s) . a_i = w_i(s)``.
    """
    A = fam.A
    v = fam.increments
    if not any(v):
        return []
    cols = A.columns
    roots = set()
    for tau, inv in _square_inverses(A):
        ones = [1] * A.d
        incs = [v[j] for j in tau]
        h0 = [dot(row, ones) for row in inv]
        h1 = [dot(row, incs) for row in inv]
        for i in range(A.n):
            if i in tau:
                continue
            const = dot(h0, cols[i]) - 1
            slope = dot(h1, cols[i]) - v[i]
            if slope != 0:
                root = -const / slope
                if root > 0:
                    roots.add(root)
    return sorted(roots)


def _sample_points(cands):
    if not cands:
        return [Fraction(1)]
    pts = [cands[0] / 2]
    for a, b in zip(cands, cands[1:]):
        pts += [a, (a + b) / 2]
    pts += [cands[-1], cands[-1] + 1]
    return pts


def _sweep(cands, value: Callable[[Fraction], Hashable], facets_at: Callable[[Fraction], frozenset], pointwise=True):
    pts = _sample_points(cands)
    vals = {s: value(s) for s in pts}
    critical = []
    for k, c in enumerate(cands):
        left, right = vals[pts[2 * k]], vals[pts[2 * k + 2]]
        if left != right or (pointwise and vals[c] != left):
            critical.append(c)
    bounds = [Fraction(0)] + critical + [None]
    intervals = []
    for lo, hi in zip(bounds, bounds[1:]):
        inside = next(s for s in pts if s > lo and (hi is None or s < hi) and s not in cands)
        intervals.append(Interval(lo, hi, facets_at(inside)))
    return tuple(critical), tuple(intervals)


def slopes_along(fam: SlopeFamily, facets_only: bool = False) -> SlopeReport:
    """Jump parameters of the umbrella (or just its facet set) along the family."""
    A = fam.A
    cands = candidate_critical_values(fam)
    umbrellas: dict[Fraction, Umbrella] = {}

    if facets_only:
        cache: dict[Fraction, frozenset] = {}

        def facets_at(s):
            if s not in cache:
                cache[s] = compute_facets(A, fam.weights(s))
            return cache[s]

        value = facets_at
    else:

        def umbrella_at(s):
            if s not in umbrellas:
                umbrellas[s] = compute_umbrella(A, fam.weights(s))
            return umbrellas[s]

        def value(s):
            return umbrella_at(s).member_sets()

        def facets_at(s):
            return umbrella_at(s).facet_sets()

    critical, intervals = _sweep(cands, value, facets_at)
    return SlopeReport(fam, critical, intervals, conjectural=bool(fam.vinf), umbrellas=umbrellas)


def visible_faces(A: ToricMatrix, umb: Umbrella, vinf) -> frozenset:
    """Faces that are not pyramids with a vertex in ``vinf``."""
    keep = []
    for f in umb.faces:
        if any(is_pyramid(A, f.members, i) for i in f.members if i in vinf):
            continue
        keep.append(frozenset(f.members))
    return frozenset(keep)


def filter_pyramids(report: SlopeReport, fam: SlopeFamily, mode: str = "pointwise") -> SlopeReport:
    """Recompute jumps after dropping pyramids with vertex at infinity.

    ``mode="pointwise"`` flags ``s*`` when the filtered face set is not
    locally constant there, the same rule as :func:`slopes_along`.
    ``mode="limits"`` only compares the two one-sided limits and ignores the
    face set at ``s*`` itself. The result is a conjectural prediction and is
    flagged as such; with no variables at infinity the report is returned
    unchanged.
    """
    if mode not in ("pointwise", "limits"):
        raise ValueError(f"unknown mode {mode!r}")
    if not fam.vinf:
        return report
    A = fam.A
    cands = candidate_critical_values(fam)
    umbrellas = dict(report.umbrellas)

    def umbrella_at(s):
        if s not in umbrellas:
            umbrellas[s] = compute_umbrella(A, fam.weights(s))
        return umbrellas[s]

    critical, intervals = _sweep(
        cands,
        lambda s: visible_faces(A, umbrella_at(s), fam.vinf),
        lambda s: umbrella_at(s).facet_sets(),
        pointwise=mode == "pointwise",
    )
    return SlopeReport(
        fam,
        critical,
        intervals,
        conjectural=True,
        visible_slopes=tuple(1 / s for s in critical),
        umbrellas=umbrellas,
    )
