"""Exact rational LP, affine hulls and normalized lattice volumes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactmath import LatticeBasis, det, dot, rank, rref, solve

Vector = Sequence[Fraction]

RELATIONS = ("<=", ">=", "==", "<", ">")


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


INFEASIBLE = LPStatus.INFEASIBLE


class NotContained(ValueError):
    pass


@dataclass
class LPProblem:
    """Linear constraints over free rational variables.

    Constraints are ``(coeffs, relation, rhs)`` with relation one of
    ``"<=", ">=", "==", "<", ">"``. Strict relations are only allowed in
    feasibility queries.
    """

    variables: int
    constraints: list = field(default_factory=list)
    objective: Sequence[Fraction] | None = None

    def add(self, coeffs, relation: str, rhs) -> "LPProblem":
        if relation not in RELATIONS:
            raise ValueError(f"unknown relation {relation!r}")
        if len(coeffs) != self.variables:
            raise ValueError("coefficient vector has the wrong length")
        self.constraints.append((tuple(Fraction(c) for c in coeffs), relation, Fraction(rhs)))
        return self

    def satisfied_by(self, x) -> bool:
        for a, rel, b in self.constraints:
            v = dot(a, x)
            ok = {"<=": v <= b, ">=": v >= b, "==": v == b, "<": v < b, ">": v > b}[rel]
            if not ok:
                return False
        return True


def _pivot(T, basis, r, c):
    inv = 1 / T[r][c]
    T[r] = [x * inv if x else x for x in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b if b else a for a, b in zip(row, T[r])]
    basis[r] = c


def _run_simplex(T, basis, allowed):
    """Maximize with Bland's rule; the last row of ``T`` holds reduced costs.

    ``T[-1][j]`` is ``-(c_j - z_j)``, so a negative entry marks an improving
    column. Returns False when unbounded.
    """
    m = len(T) - 1
    while True:
        enter = next((j for j in allowed if T[-1][j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], enter)


def _standard_max(A, b, c):
    """Maximize ``c x`` subject to ``A x = b``, ``x >= 0`` (two-phase simplex)."""
    m = len(A)
    n = len(c)
    A = [list(row) for row in A]
    b = list(b)
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # phase 1: artificial variables n .. n+m-1
    T = [A[i] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    basis = list(range(n, n + m))
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        obj = [o - t for o, t in zip(obj, T[i])]
    for k in range(n, n + m):
        obj[k] = Fraction(0)
    T.append(obj)
    _run_simplex(T, basis, range(n + m))
    if T[-1][-1] != 0:
        return LPStatus.INFEASIBLE, None, None
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)
    keep = [i for i in range(m) if basis[i] < n]
    T = [T[i][:n] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    # phase 2
    obj = [-Fraction(x) for x in c] + [Fraction(0)]
    for i, bv in enumerate(basis):
        if obj[bv] != 0:
            f = obj[bv]
            obj = [o - f * t for o, t in zip(obj, T[i])]
    T.append(obj)
    if not _run_simplex(T, basis, range(n)):
        return LPStatus.UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = T[i][-1]
    return LPStatus.OPTIMAL, x, dot(c, x)


def maximize(prob: LPProblem):
    """Solve ``max objective . x`` over the (non-strict) constraints.

    Returns ``(status, x, value)``.
    """
    if any(rel in ("<", ">") for _, rel, _ in prob.constraints):
        raise ValueError("strict constraints are only allowed in feasibility queries")
    nv = prob.variables
    objective = prob.objective or [0] * nv
    rows = [(a, rel, b) for a, rel, b in prob.constraints]
    n_slack = sum(rel != "==" for _, rel, _ in rows)
    A, b = [], []
    s = 0
    for a, rel, rhs in rows:
        row = list(a) + [-x for x in a] + [Fraction(0)] * n_slack
        if rel == "<=":
            row[2 * nv + s] = Fraction(1)
            s += 1
        elif rel == ">=":
            row[2 * nv + s] = Fraction(-1)
            s += 1
        A.append(row)
        b.append(rhs)
    c = [Fraction(x) for x in objective] + [-Fraction(x) for x in objective] + [Fraction(0)] * n_slack
    if not A:
        if any(c):
            return LPStatus.UNBOUNDED, None, None
        return LPStatus.OPTIMAL, [Fraction(0)] * nv, Fraction(0)
    status, x, value = _standard_max(A, b, c)
    if status is not LPStatus.OPTIMAL:
        return status, None, None
    return status, [x[i] - x[nv + i] for i in range(nv)], value


def lp_feasible_with_witness(prob: LPProblem):
    """An exact feasible point of ``prob``, or :data:`INFEASIBLE`.

    Strict constraints are handled with a gap variable ``t <= 1`` that is
    maximized; the system is feasible iff the optimum is positive.
    """
    if prob.objective is not None:
        raise ValueError("feasibility queries take no objective")
    nv = prob.variables
    if not prob.constraints:
        return [Fraction(0)] * nv
    strict = any(rel in ("<", ">") for _, rel, _ in prob.constraints)
    if not strict:
        status, x, _ = maximize(prob)
        return x if status is LPStatus.OPTIMAL else INFEASIBLE
    lifted = LPProblem(nv + 1, objective=[0] * nv + [1])
    for a, rel, b in prob.constraints:
        if rel == "<":
            lifted.add(list(a) + [1], "<=", b)
        elif rel == ">":
            lifted.add(list(a) + [-1], ">=", b)
        else:
            lifted.add(list(a) + [0], rel, b)
    lifted.add([0] * nv + [1], "<=", 1)
    status, x, value = maximize(lifted)
    if status is not LPStatus.OPTIMAL or value <= 0:
        return INFEASIBLE
    return x[:nv]


# ---------------------------------------------------------------------------
# Hulls and volumes


def linear_span_dim(points) -> int:
    return rank([list(p) for p in points]) if points else 0


def affine_dim(points) -> int:
    points = [list(p) for p in points]
    if not points:
        raise ValueError("affine_dim of an empty point set")
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


@dataclass(frozen=True)
class Polytope:
    """Convex hull of ``points`` given in coordinates of ``lattice``.

    ``lattice`` defaults to the standard lattice of the coordinate space;
    volumes are normalized so that its unit simplex has volume 1.
    """

    points: tuple[tuple[Fraction, ...], ...]
    lattice: LatticeBasis | None = None

    def __post_init__(self):
        pts = tuple(tuple(Fraction(x) for x in p) for p in self.points)
        if not pts:
            raise ValueError("a polytope needs at least one point")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("points have inconsistent dimensions")
        object.__setattr__(self, "points", pts)
        if self.lattice is not None and self.lattice.rank != len(pts[0]):
            raise ValueError("point coordinates do not match the lattice rank")

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def contains(self, q) -> bool:
        """Exact LP membership test ``q in conv(points)``."""
        if tuple(q) in self.points:
            return True
        m = len(self.points)
        prob = LPProblem(m)
        for i in range(m):
            prob.add([int(j == i) for j in range(m)], ">=", 0)
        prob.add([1] * m, "==", 1)
        for k in range(self.dim):
            prob.add([p[k] for p in self.points], "==", q[k])
        return lp_feasible_with_witness(prob) is not INFEASIBLE


def _affine_coordinates(points):
    """Coordinates of ``points`` in a basis of their affine hull (origin at points[0])."""
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points]
    basis = []
    for d in diffs:
        if any(d) and rank(basis + [d]) > len(basis):
            basis.append(d)
    if not basis:
        return [() for _ in points]
    Bt = [[v[i] for v in basis] for i in range(len(base))]
    return [tuple(solve(Bt, d)) for d in diffs]


def _hyperplane(points):
    """Normal ``n`` and offset ``c`` with ``n . p = c`` through r affinely independent points of Q^r."""
    base = points[0]
    rows = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    r = len(base)
    if not rows:
        normal = [Fraction(1)]
    else:
        R, pivots = rref(rows)
        free = next(j for j in range(r) if j not in pivots)
        normal = [Fraction(0)] * r
        normal[free] = Fraction(1)
        for i, p in enumerate(pivots):
            normal[p] = -R[i][free]
    return normal, dot(normal, base)


def facets(points) -> list[frozenset[int]]:
    """Facets of a full-dimensional ``conv(points)`` as sets of point indices."""
    points = [tuple(Fraction(x) for x in p) for p in points]
    r = len(points[0])
    if r == 0:
        return []
    found = set()
    for subset in combinations(range(len(points)), r):
        pts = [points[i] for i in subset]
        if affine_dim(pts) != r - 1:
            continue
        normal, c = _hyperplane(pts)
        values = [dot(normal, p) - c for p in points]
        if all(v <= 0 for v in values) or all(v >= 0 for v in values):
            found.add(frozenset(i for i, v in enumerate(values) if v == 0))
    return sorted(found, key=lambda s: sorted(s))


def triangulate(points, order: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Pulling triangulation of ``conv(points)`` into full-dimensional simplices.

    Cones from the first point (in ``order``) over the facets not containing
    it, recursing on facets. Returns tuples of point indices.
    """
    points = [tuple(Fraction(x) for x in p) for p in points]
    idx = list(order) if order is not None else list(range(len(points)))
    return _triangulate(points, idx)


def _triangulate(points, idx):
    sub = [points[i] for i in idx]
    r = affine_dim(sub)
    if r == 0:
        return [(idx[0],)]
    coords = _affine_coordinates(sub)
    apex = 0
    simplices = []
    for facet in facets(coords):
        if apex in facet:
            continue
        child = [idx[k] for k in sorted(facet)]
        for s in _triangulate(points, child):
            simplices.append((idx[apex],) + s)
    return simplices


def simplex_volume(vertices) -> Fraction:
    """Normalized volume ``|det(v_1 - v_0, ..., v_r - v_0)|`` of an r-simplex in Q^r."""
    v0 = vertices[0]
    return abs(det([[a - b for a, b in zip(v, v0)] for v in vertices[1:]]))


def normalized_volume(P: Polytope, order: Sequence[int] | None = None) -> Fraction:
    """Lattice-normalized volume ``dim! * vol`` of ``P``; 0 when ``P`` is not full-dimensional."""
    pts = list(dict.fromkeys(P.points))
    r = P.dim
    if r == 0:
        return Fraction(1)
    if affine_dim(pts) < r:
        return Fraction(0)
    if r == 1:
        xs = [p[0] for p in pts]
        return max(xs) - min(xs)
    if order is not None:
        order = [i for i in order if i < len(pts)]
    return sum((simplex_volume([pts[i] for i in s]) for s in triangulate(pts, order)), Fraction(0))


def volume_difference(P: Polytope, Q: Polytope) -> Fraction:
    """``vol(P) - vol(Q)`` after checking ``Q`` is inside ``P``."""
    if P.dim != Q.dim:
        raise ValueError("P and Q live in different dimensions")
    for q in Q.points:
        if not P.contains(q):
            raise NotContained(f"{q} is not in P")
    return normalized_volume(P) - normalized_volume(Q)


def shoelace(polygon) -> Fraction:
    """Twice the signed area of a polygon given by its vertices in order."""
    total = Fraction(0)
    for (x0, y0), (x1, y1) in zip(polygon, polygon[1:] + polygon[:1]):
        total += Fraction(x0) * y1 - Fraction(x1) * y0
    return total
