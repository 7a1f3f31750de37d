"""Exact integer and rational linear algebra.

Rationals are :class:`fractions.Fraction`; integers are Python ints, so
nothing here ever rounds. Matrices are plain nested sequences (row-major).
Lattices are stored as :class:`LatticeBasis` in column-HNF, which makes
lattice equality a plain ``==``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

Rational = Fraction
IntMatrix = Sequence[Sequence[int]]


class NotSublattice(ValueError):
    pass


class NonFreeQuotient(ValueError):
    pass


class Index(enum.Enum):
    INFINITE = "infinite"


def to_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q'")
    return Fraction(x)


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def shape(M: IntMatrix) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(r) != cols for r in M):
        raise ValueError("matrix is not rectangular")
    return rows, cols


def transpose(M):
    return [list(col) for col in zip(*M)]


def matmul(M, N):
    Nt = transpose(N)
    return [[sum(a * b for a, b in zip(row, col)) for col in Nt] for row in M]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# Rational elimination


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the list of pivot columns."""
    R = [[Fraction(x) for x in row] for row in M]
    rows, cols = (len(R), len(R[0]) if R else 0)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv if x else x for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b if b else a for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def solve(M, b) -> list[Fraction] | None:
    """One exact solution of ``M x = b`` (free variables set to 0), or None."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    aug = [list(M[i]) + [b[i]] for i in range(rows)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = R[i][cols]
    return x


def det(M) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    R = [[Fraction(x) for x in row] for row in M]
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if R[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            R[c], R[p] = R[p], R[c]
            result = -result
        result *= R[c][c]
        for i in range(c + 1, n):
            if R[i][c] != 0:
                f = R[i][c] / R[c][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[c])]
    return result


def inverse(M) -> list[list[Fraction]] | None:
    n = len(M)
    aug = [list(M[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R]


# ---------------------------------------------------------------------------
# Integer normal forms


def hnf(M: IntMatrix) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``H = M U``, ``U`` unimodular and ``H`` in column
    echelon form: pivots are positive, and entries to the left of a pivot in
    its row lie in ``[0, pivot)``. Zero columns are pushed to the right.
    """
    m, n = shape(M)
    H = [list(map(int, row)) for row in M]
    U = identity(n)

    def colop(j, k, q):
        # column j -= q * column k
        for row in H:
            row[j] -= q * row[k]
        for row in U:
            row[j] -= q * row[k]

    def swap(j, k):
        for row in H:
            row[j], row[k] = row[k], row[j]
        for row in U:
            row[j], row[k] = row[k], row[j]

    def negate(j):
        for row in H:
            row[j] = -row[j]
        for row in U:
            row[j] = -row[j]

    k = 0
    for i in range(m):
        if k == n:
            break
        while True:
            nz = [j for j in range(k, n) if H[i][j] != 0]
            if not nz:
                break
            p = min(nz, key=lambda j: abs(H[i][j]))
            if p != k:
                swap(p, k)
            done = True
            for j in range(k + 1, n):
                if H[i][j] != 0:
                    colop(j, k, H[i][j] // H[i][k])
                    if H[i][j] != 0:
                        done = False
            if done:
                break
        if all(H[i][j] == 0 for j in range(k, n)):
            continue
        if H[i][k] < 0:
            negate(k)
        for j in range(k):
            colop(j, k, H[i][j] // H[i][k])
        k += 1
    return H, U


def _snf_with_transforms(M: IntMatrix):
    """Smith form ``D = P M Q`` with ``P``, ``Q`` unimodular."""
    m, n = shape(M)
    D = [list(map(int, row)) for row in M]
    P = identity(m)
    Q = identity(n)

    def rowop(i, k, q):  # row i -= q * row k
        D[i] = [a - q * b for a, b in zip(D[i], D[k])]
        P[i] = [a - q * b for a, b in zip(P[i], P[k])]

    def colop(j, k, q):  # col j -= q * col k
        for row in D:
            row[j] -= q * row[k]
        for row in Q:
            row[j] -= q * row[k]

    def rowswap(i, k):
        D[i], D[k] = D[k], D[i]
        P[i], P[k] = P[k], P[i]

    def colswap(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in Q:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        rowswap(t, i)
        colswap(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    rowop(i, t, D[i][t] // D[t][t])
                    if D[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if D[t][j]:
                    colop(j, t, D[t][j] // D[t][t])
                    if D[t][j]:
                        changed = True
            if changed:
                entries = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
                entries += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
                _, i, j = min(entries)
                rowswap(t, i)
                colswap(t, j)
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            i, _ = bad
            D[t] = [a + b for a, b in zip(D[t], D[i])]
            P[t] = [a + b for a, b in zip(P[t], P[i])]
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            P[t] = [-a for a in P[t]]
        t += 1
    return D, P, Q


def snf(M: IntMatrix) -> tuple[int, ...]:
    """Elementary divisors ``d_1 | d_2 | ...`` (length ``min(rows, cols)``)."""
    m, n = shape(M)
    D, _, _ = _snf_with_transforms(M)
    return tuple(D[i][i] for i in range(min(m, n)))


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class LatticeBasis:
    """A sublattice of ``Z^ambient_dim`` in canonical column-HNF form."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, vectors, ambient_dim: int | None = None) -> "LatticeBasis":
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if ambient_dim is None:
            if not vectors:
                raise ValueError("ambient_dim required for an empty generator list")
            ambient_dim = len(vectors[0])
        if not vectors:
            return cls(ambient_dim, ())
        M = transpose(vectors)
        H, _ = hnf(M)
        cols = [tuple(row[j] for row in H) for j in range(len(vectors))]
        return cls(ambient_dim, tuple(c for c in cols if any(c)))

    @classmethod
    def standard(cls, d: int) -> "LatticeBasis":
        return cls.from_generators(identity(d), d)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> list[list[int]]:
        """Basis vectors as the columns of a ``ambient_dim x rank`` matrix."""
        return [[v[i] for v in self.basis] for i in range(self.ambient_dim)]

    def coordinates(self, v) -> tuple[int, ...] | None:
        """Integer coordinates of ``v`` in this basis, or None if ``v`` is not in the lattice."""
        if self.rank == 0:
            return () if not any(v) else None
        v = tuple(v)
        if self._pivots is not None:
            return self._forward(v)
        x = solve(self.matrix(), list(v))
        if x is None or any(c.denominator != 1 for c in x):
            return None
        x = tuple(int(c) for c in x)
        if tuple(dot(row, x) for row in self.matrix()) != tuple(v):
            return None
        return x

    @cached_property
    def _pivots(self) -> tuple[int, ...] | None:
        """Leading rows of the basis vectors if they form an echelon pattern."""
        leads = []
        for b in self.basis:
            lead = next(i for i, x in enumerate(b) if x)
            if leads and lead <= leads[-1]:
                return None
            leads.append(lead)
        return tuple(leads)

    def _forward(self, v) -> tuple[int, ...] | None:
        rest = list(v)
        x = []
        for b, p in zip(self.basis, self._pivots):
            if any(rest[:p]):
                return None
            q, r = divmod(rest[p], b[p])
            if r:
                return None
            x.append(q)
            if q:
                rest = [a - q * c for a, c in zip(rest, b)]
        return tuple(x) if not any(rest) else None

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: "LatticeBasis") -> bool:
        return all(v in self for v in other.basis)


def integer_kernel(M: IntMatrix) -> LatticeBasis:
    """Basis of the saturated lattice ``{u in Z^n : M u = 0}``."""
    m, n = shape(M)
    H, U = hnf(M)
    kernel = [tuple(U[i][j] for i in range(n)) for j in range(n) if not any(row[j] for row in H)]
    return LatticeBasis.from_generators(kernel, n)


def lattice_index(sub: LatticeBasis, sup: LatticeBasis) -> int | Index:
    """``[sup : sub]``, or :attr:`Index.INFINITE` when ``sub`` has smaller rank."""
    coords = []
    for v in sub.basis:
        c = sup.coordinates(v)
        if c is None:
            raise NotSublattice(f"{v} is not in the super-lattice")
        coords.append(c)
    if sub.rank < sup.rank:
        return Index.INFINITE
    if sub.rank == 0:
        return 1
    return abs(int(det(transpose(coords))))


def saturation(sub: LatticeBasis, ambient: LatticeBasis) -> LatticeBasis:
    """``ambient`` intersected with the rational span of ``sub``."""
    coords = []
    for v in sub.basis:
        c = ambient.coordinates(v)
        if c is None:
            raise NotSublattice(f"{v} is not in the ambient lattice")
        coords.append(c)
    k = ambient.rank
    if not coords:
        return LatticeBasis(ambient.ambient_dim, ())
    # saturated span in Z^k = vectors orthogonal to the left kernel of C
    left = integer_kernel(coords)  # coords is (#sub x k): rows are sub vectors
    if left.rank == 0:
        sat = identity(k)
    else:
        sat_lat = integer_kernel([list(v) for v in left.basis])
        sat = [list(v) for v in sat_lat.basis]
    B = ambient.matrix()
    vectors = [[dot(row, c) for row in B] for c in sat]
    return LatticeBasis.from_generators(vectors, ambient.ambient_dim)


@dataclass(frozen=True)
class QuotientMap:
    """Integer-linear surjection ``sup -> Z^rank`` with kernel ``sub``."""

    sup: LatticeBasis
    rows: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __call__(self, v) -> tuple[int, ...]:
        c = self.sup.coordinates(v)
        if c is None:
            raise NotSublattice(f"{v} is not in the source lattice")
        return tuple(dot(row, c) for row in self.rows)


def quotient_coordinates(sup: LatticeBasis, sub: LatticeBasis) -> QuotientMap:
    """Coordinates on ``sup / sub`` for a saturated ``sub``."""
    if not sup.contains_lattice(sub):
        raise NotSublattice("sub is not contained in sup")
    if saturation(sub, sup) != sub:
        raise NonFreeQuotient("sub is not saturated in sup; the quotient has torsion")
    k, r = sup.rank, sub.rank
    if r == 0:
        return QuotientMap(sup, tuple(tuple(row) for row in identity(k)))
    C = transpose([sup.coordinates(v) for v in sub.basis])  # k x r
    _, P, _ = _snf_with_transforms(C)
    return QuotientMap(sup, tuple(tuple(row) for row in P[r:]))


def gcd_list(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
