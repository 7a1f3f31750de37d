"""Multiplicities of the L-characteristic cycle for generic parameters.

For a face ``tau`` the multiplicity is a sum over the facets ``tau'``
containing it::

    mu(tau) = sum [Z^d : Z tau'] * [(Z tau' ∩ Q tau) : Z tau] * vol(P \\ Q)

where ``P = conv(pi(tau' ∪ {0}))`` and ``Q = conv(pi(tau' \\ tau))`` live in
the quotient of ``Z tau'`` by the saturation of ``Z tau``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactmath import Index, LatticeBasis, lattice_index, quotient_coordinates, saturation
from .polyhedral import Polytope, normalized_volume, volume_difference
from .umbrella import Face, ToricMatrix, Umbrella, as_weights, compute_umbrella, order_weights


class NotAFacet(ValueError):
    pass


class NotAFace(ValueError):
    pass


class InternalConsistencyError(ArithmeticError):
    """An exact invariant failed, e.g. a multiplicity came out non-integral."""


def _index(A: ToricMatrix, members) -> int:
    sub = LatticeBasis.from_generators(A.submatrix(members), A.d)
    idx = lattice_index(sub, LatticeBasis.standard(A.d))
    if idx is Index.INFINITE:
        raise NotAFacet(f"columns {sorted(members)} do not span a full-rank lattice")
    return idx


def nu(A, tau, L=None) -> int:
    """Facet multiplicity ``[Z^d : Z tau]``.

    When ``L`` is given, ``tau`` must be a facet of the (A, L)-umbrella.
    """
    A = ToricMatrix.of(A)
    members = frozenset(tau.members if isinstance(tau, Face) else tau)
    if L is not None and members not in compute_umbrella(A, L).facet_sets():
        raise NotAFacet(f"{sorted(j + 1 for j in members)} is not a facet")
    return _index(A, members)


def _term(A: ToricMatrix, tau: frozenset, facet: frozenset) -> Fraction:
    cols = A.columns
    big = LatticeBasis.from_generators(A.submatrix(facet), A.d)
    small = LatticeBasis.from_generators(A.submatrix(tau), A.d)
    sat = saturation(small, big)
    inner = lattice_index(small, sat)
    pi = quotient_coordinates(big, sat)
    rest = sorted(facet - tau)
    P = Polytope([pi(cols[j]) for j in rest] + [(0,) * pi.rank])
    if rest:
        vol = volume_difference(P, Polytope([pi(cols[j]) for j in rest]))
    else:
        vol = normalized_volume(P)
    return _index(A, facet) * inner * vol


def mu(A, L, tau, umbrella: Umbrella | None = None) -> int:
    """Multiplicity of the conormal component for the face ``tau``."""
    A = ToricMatrix.of(A)
    umb = umbrella if umbrella is not None else compute_umbrella(A, L)
    members = frozenset(tau.members if isinstance(tau, Face) else tau)
    if members not in umb:
        raise NotAFace(f"{sorted(j + 1 for j in members)} is not an umbrella face")
    total = sum(
        (_term(A, members, F) for F in umb.facet_sets() if members <= F),
        Fraction(0),
    )
    if total.denominator != 1:
        raise InternalConsistencyError(f"non-integral multiplicity {total}")
    return int(total)


def rank_volume(A) -> int:
    """Multiplicity of the zero section for the order filtration (the generic rank)."""
    A = ToricMatrix.of(A)
    return mu(A, order_weights(A.n), ())


@dataclass(frozen=True)
class CharCycle:
    """Face -> multiplicity over the whole umbrella, valid for generic parameters."""

    weight: tuple[Fraction, ...]
    entries: dict
    generic: bool = True

    def __getitem__(self, tau) -> int:
        return self.entries[frozenset(tau)]

    def rows(self) -> list[tuple[list[int], int]]:
        """1-based ``(face, mu)`` pairs sorted by size, then indices."""
        keys = sorted(self.entries, key=lambda t: (len(t), sorted(t)))
        return [([j + 1 for j in sorted(t)], self.entries[t]) for t in keys]

    def degree(self, A) -> int:
        """Sum of the facet multiplicities."""
        A = ToricMatrix.of(A)
        return sum(v for t, v in self.entries.items() if t and _full_rank(A, t))


def _full_rank(A: ToricMatrix, members) -> bool:
    return LatticeBasis.from_generators(A.submatrix(members), A.d).rank == A.d


def char_cycle(A, L) -> CharCycle:
    A = ToricMatrix.of(A)
    L = as_weights(L, A.n)
    umb = compute_umbrella(A, L)
    entries = {frozenset(f.members): mu(A, L, f, umb) for f in umb}
    return CharCycle(L, entries)


@dataclass(frozen=True)
class BarCharCycle:
    """``(tau, T) -> 2^|T| mu(tau)`` over pairs with ``T`` disjoint from ``tau``."""

    weight: tuple[Fraction, ...]
    entries: dict

    def __getitem__(self, key) -> int:
        tau, T = key
        return self.entries[(frozenset(tau), frozenset(T))]


def bar_char_cycle(A, L) -> BarCharCycle:
    A = ToricMatrix.of(A)
    base = char_cycle(A, L)
    entries = {}
    for tau, value in base.entries.items():
        free = [j for j in range(A.n) if j not in tau]
        for k in range(len(free) + 1):
            for T in combinations(free, k):
                entries[(tau, frozenset(T))] = 2**k * value
    return BarCharCycle(base.weight, entries)
