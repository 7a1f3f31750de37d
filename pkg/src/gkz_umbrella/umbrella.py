"""The (A, L)-umbrella: faces of the weighted polyhedron that avoid the origin.

A subset ``tau`` of columns is a face when some functional ``h`` satisfies
``h . a_j = L_j`` on ``tau`` and ``h . a_i < L_i`` off ``tau``. The same
inequalities cover positive, zero and negative weights, so points at
infinity and behind the origin never have to be built explicitly.

Equivalently, faces are the equality sets of the faces of the pointed
polyhedron ``{h : h . a_i <= L_i}``; facets correspond to its vertices.
Column indices are 0-based here and 1-based in user-facing output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .exactmath import LatticeBasis, dot, inverse, lattice_index, rank, solve, to_fraction
from .polyhedral import INFEASIBLE, LPProblem, lp_feasible_with_witness, linear_span_dim

WeightVector = tuple[Fraction, ...]


class ValidationError(ValueError):
    """Input rejected; ``reason`` is a short machine-readable tag."""

    def __init__(self, reason: str, message: str = ""):
        super().__init__(message or reason)
        self.reason = reason


@dataclass(frozen=True)
class ToricMatrix:
    """A validated integer matrix with pointed column semigroup.

    ``ZA = Z^d`` is enforced unless ``strict=False``; slope sweeps and toric
    ideals do not depend on it, lattice indices do.
    """

    rows: tuple[tuple[int, ...], ...]
    strict: bool = field(default=True, compare=False, repr=False)
    pointed_witness: tuple[Fraction, ...] = field(default=(), compare=False, repr=False)
    full_lattice: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        rows = self.rows
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValidationError("bad-dimensions", "A must be a non-empty rectangular matrix")
        if any(isinstance(x, bool) or not isinstance(x, int) for r in rows for x in r):
            raise ValidationError("bad-dimensions", "A must have integer entries")
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        object.__setattr__(self, "rows", rows)
        cols = self.columns
        if any(not any(c) for c in cols):
            raise ValidationError("zero-column", "A has a zero column")
        if rank(rows) != len(rows):
            raise ValidationError("rank-deficient", "A must have rank d")
        h0 = pointedness_witness(cols)
        if h0 is None:
            raise ValidationError("not-pointed", "no functional is positive on every column")
        object.__setattr__(self, "pointed_witness", tuple(h0))
        full = lattice_index(LatticeBasis.from_generators(cols, self.d), LatticeBasis.standard(self.d)) == 1
        object.__setattr__(self, "full_lattice", full)
        if self.strict:
            self.require_full_lattice()

    def require_full_lattice(self):
        if not self.full_lattice:
            raise ValidationError("not-full-lattice", "the columns do not generate Z^d")

    @classmethod
    def of(cls, A, strict: bool = True) -> "ToricMatrix":
        if isinstance(A, ToricMatrix):
            return A
        return cls(tuple(tuple(r) for r in A), strict)

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.rows))

    def submatrix(self, tau: Iterable[int]) -> list[tuple[int, ...]]:
        return [self.columns[j] for j in sorted(tau)]

    def grading(self) -> tuple[int, ...]:
        """A positive integer grading ``g_j = h0 . a_j`` of the columns."""
        den = 1
        for x in self.pointed_witness:
            den = den * x.denominator // _gcd(den, x.denominator)
        h = [int(x * den) for x in self.pointed_witness]
        return tuple(dot(h, a) for a in self.columns)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def pointedness_witness(columns) -> list[Fraction] | None:
    d = len(columns[0])
    prob = LPProblem(d)
    for a in columns:
        prob.add(a, ">=", 1)
    h = lp_feasible_with_witness(prob)
    return None if h is INFEASIBLE else h


def as_weights(L, n: int | None = None) -> WeightVector:
    """Coerce ints, Fractions or ``"p/q"`` strings into a weight vector."""
    w = tuple(to_fraction(x) for x in L)
    if n is not None and len(w) != n:
        raise ValidationError("bad-weight", f"weight vector has length {len(w)}, expected {n}")
    return w


@dataclass(frozen=True)
class Face:
    """A face of the umbrella with its supporting functional."""

    members: tuple[int, ...]
    dim: int
    witness: tuple[Fraction, ...]

    @property
    def is_empty(self) -> bool:
        return not self.members

    def label(self) -> list[int]:
        return [j + 1 for j in self.members]

    def dim_label(self):
        return "empty" if self.is_empty else self.dim

    def __contains__(self, j) -> bool:
        return j in self.members


@dataclass(frozen=True)
class Umbrella:
    """Deduplicated, canonically ordered face list of an umbrella."""

    d: int
    faces: tuple[Face, ...]

    @cached_property
    def _index(self) -> dict[frozenset, Face]:
        return {frozenset(f.members): f for f in self.faces}

    def __contains__(self, tau) -> bool:
        return frozenset(tau) in self._index

    def __iter__(self):
        return iter(self.faces)

    def __len__(self):
        return len(self.faces)

    def face(self, tau) -> Face:
        return self._index[frozenset(tau)]

    def by_dim(self, k: int) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.dim == k and not f.is_empty)

    @property
    def facets(self) -> tuple[Face, ...]:
        return self.by_dim(self.d - 1)

    def member_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(self._index)

    def facet_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(f.members) for f in self.facets)

    def leq(self, sigma, tau) -> bool:
        """Containment order on faces."""
        return frozenset(sigma) <= frozenset(tau)

    def without(self, tau) -> "Umbrella":
        """Copy with one face removed (used for negative controls)."""
        drop = frozenset(tau)
        return Umbrella(self.d, tuple(f for f in self.faces if frozenset(f.members) != drop))


def face_dim(A: ToricMatrix, tau) -> int:
    return linear_span_dim(A.submatrix(tau)) - 1 if tau else -1


def is_face(A, L, tau) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Decide whether ``tau`` is an umbrella face; returns ``(ok, witness)``."""
    A = ToricMatrix.of(A, strict=False)
    L = as_weights(L, A.n)
    tau = set(tau)
    prob = LPProblem(A.d)
    for j, a in enumerate(A.columns):
        prob.add(a, "==" if j in tau else "<", L[j])
    h = lp_feasible_with_witness(prob)
    if h is INFEASIBLE:
        return False, None
    return True, tuple(h)


@lru_cache(maxsize=4096)
def _square_inverses(A: ToricMatrix):
    """``(tau, inverse of A_tau^T)`` for every d-subset of linearly independent columns."""
    out = []
    for tau in combinations(range(A.n), A.d):
        inv = inverse([A.columns[j] for j in tau])
        if inv is not None:
            out.append((tau, inv))
    return tuple(out)


def facet_functionals(A: ToricMatrix, L: WeightVector) -> dict[tuple[int, ...], tuple[Fraction, ...]]:
    """Facets (equality sets of vertices of ``{h : h . a_i <= L_i}``) with their functionals."""
    found = {}
    cols = A.columns
    for tau, inv in _square_inverses(A):
        # h . a_j = L_j on tau: h = M^{-1} L_tau where M has rows a_j
        rhs = [L[j] for j in tau]
        h = tuple(sum(inv[i][k] * rhs[k] for k in range(A.d)) for i in range(A.d))
        values = [dot(h, a) for a in cols]
        if all(v <= L[i] for i, v in enumerate(values)):
            members = tuple(i for i, v in enumerate(values) if v == L[i])
            found.setdefault(members, h)
    return found


def compute_facets(A, L) -> frozenset[frozenset[int]]:
    A = ToricMatrix.of(A, strict=False)
    return frozenset(frozenset(m) for m in facet_functionals(A, as_weights(L, A.n)))


def compute_umbrella(A, L) -> Umbrella:
    """All faces of the (A, L)-umbrella, sorted by dimension then index set."""
    A = ToricMatrix.of(A, strict=False)
    L = as_weights(L, A.n)
    faces: dict[tuple[int, ...], Face] = {}
    facets = facet_functionals(A, L)
    for members, h in facets.items():
        faces[members] = Face(members, A.d - 1, h)
    frontier = list(faces)
    rejected: set[tuple[int, ...]] = set()
    while frontier:
        nxt = []
        for tau in frontier:
            r = faces[tau].dim + 1
            if r == 0:
                continue
            for sigma in _codim_one_flats(A, tau, r):
                if sigma in faces or sigma in rejected:
                    continue
                ok, h = _averaged_witness(A, L, sigma, facets)
                if not ok:
                    ok, h = is_face(A, L, sigma)
                if ok:
                    faces[sigma] = Face(sigma, r - 2, h)
                    nxt.append(sigma)
                else:
                    rejected.add(sigma)
        frontier = nxt
    if () not in faces:
        ok, h = is_face(A, L, ())
        assert ok, "the empty face always exists for pointed A"
        faces[()] = Face((), -1, h)
    ordered = sorted(faces.values(), key=lambda f: (f.dim, f.members))
    return Umbrella(A.d, tuple(ordered))


def _averaged_witness(A: ToricMatrix, L, sigma, facets):
    """Shortcut for bounded faces: average the functionals of the facets through ``sigma``.

    The average is tight exactly on the intersection of those facets, so
    it certifies ``sigma`` whenever that intersection is ``sigma`` itself.
    """
    through = [h for members, h in facets.items() if set(sigma) <= set(members)]
    if not through:
        return False, None
    h = tuple(sum(c) / len(through) for c in zip(*through))
    tight = tuple(i for i, a in enumerate(A.columns) if dot(h, a) == L[i])
    return (True, h) if tight == tuple(sigma) else (False, None)


def _codim_one_flats(A: ToricMatrix, tau, r):
    """Subsets ``tau ∩ span(S)`` for (r-1)-subsets S of tau spanning rank r-1."""
    if r == 1:
        yield ()
        return
    seen = set()
    cols = A.columns
    for S in combinations(tau, r - 1):
        basis = [cols[j] for j in S]
        if rank(basis) != r - 1:
            continue
        flat = tuple(j for j in tau if rank(basis + [cols[j]]) == r - 1)
        if flat not in seen:
            seen.add(flat)
            yield flat


def zero_umbrella(A) -> Umbrella:
    A = ToricMatrix.of(A, strict=False)
    return compute_umbrella(A, (0,) * A.n)


def is_pyramid(A, tau, i: int) -> bool:
    """True iff dropping column ``i`` lowers the linear span dimension of ``tau``."""
    A = ToricMatrix.of(A, strict=False)
    members = tuple(tau.members) if isinstance(tau, Face) else tuple(tau)
    if i not in members:
        raise ValueError("the vertex must belong to the face")
    rest = [j for j in members if j != i]
    return linear_span_dim(A.submatrix(rest)) < linear_span_dim(A.submatrix(members))


def is_L_homogeneous(A, L) -> bool:
    """True iff a single functional ``h`` has ``h . a_j = L_j`` for every column."""
    A = ToricMatrix.of(A, strict=False)
    L = as_weights(L, A.n)
    return solve([list(a) for a in A.columns], list(L)) is not None


def order_weights(n: int) -> WeightVector:
    """The order filtration: every ``d_j`` has weight 1."""
    return (Fraction(1),) * n


def format_faces(faces: Sequence) -> list[list[int]]:
    return [[j + 1 for j in (f.members if isinstance(f, Face) else sorted(f))] for f in faces]
