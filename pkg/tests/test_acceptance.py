"""Acceptance criteria, one pass/fail line each.

Run under pytest (lines appear in the terminal summary) or directly::

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from itertools import combinations

import pytest

from gkz_umbrella.exactmath import det
from gkz_umbrella.multiplicity import char_cycle, mu, nu, rank_volume
from gkz_umbrella.polyhedral import shoelace
from gkz_umbrella.projective import slopes_at_infinity
from gkz_umbrella.sampling import SamplerConfig, act, matrices, random_unimodular, random_weights
from gkz_umbrella.slopes import SlopeFamily, candidate_critical_values, slopes_along
from gkz_umbrella.toric import format_poly, initial_ideal, radical_monomial_witness, toric_ideal, verify_components
from gkz_umbrella.umbrella import ToricMatrix, compute_umbrella, is_L_homogeneous, order_weights

A = [[0, 1, 1, 4], [3, 0, 2, 1]]
PROJ = [[3, 1, 0], [0, 1, 3]]
WEIGHTS = [(1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 1, 5)]
PROPERTY_COUNT = 200

TABLE = {
    (1, 1, 1, 1): {(): 13, (1,): 12, (2,): 1, (4,): 13, (1, 4): 12, (2, 4): 1},
    (1, 1, 1, 2): {(): 11, (1,): 3, (2,): 1, (3,): 10, (4,): 8, (1, 3): 3, (2, 4): 1, (3, 4): 7},
    (1, 1, 1, 5): {(): 5, (1,): 3, (2,): 2, (3,): 5, (1, 3): 3, (2, 3): 2},
}
FACET_NU = {(1, 1, 1, 1): ([12, 1], 13), (1, 1, 1, 2): ([3, 7, 1], 11), (1, 1, 1, 5): ([3, 2], 5)}
FACETS = {
    (1, 1, 1, 1): [[1, 4], [2, 4]],
    (1, 1, 1, 2): [[1, 3], [2, 4], [3, 4]],
    (1, 1, 1, 5): [[1, 3], [2, 3]],
    (1, 1, 1, 0): [[1, 4], [2, 4]],
}

RESULTS: list[tuple[str, bool, float, str]] = []


def one_based(sets):
    return sorted(sorted(j + 1 for j in s) for s in sets)


# -- criteria ---------------------------------------------------------------------


def criterion_1():
    for L, expected in TABLE.items():
        got = {tuple(face): m for face, m in char_cycle(A, L).rows()}
        assert got == expected, (L, got)


def criterion_2():
    for L, (values, degree) in FACET_NU.items():
        facets = sorted(compute_umbrella(A, L).facet_sets(), key=sorted)
        got = [nu(A, F, L) for F in facets]
        assert sorted(got) == sorted(values), (L, got)
        assert char_cycle(A, L).degree(A) == degree


def criterion_3():
    for L, expected in FACETS.items():
        assert one_based(compute_umbrella(A, L).facet_sets()) == expected, L


def midpoint_oracle(fam):
    """Candidates where the umbrella differs from a neighbouring midpoint."""
    cands = candidate_critical_values(fam)
    points = [Fraction(0)] + cands
    mids = [(a + b) / 2 for a, b in zip(points, points[1:])] + [points[-1] + 1]
    at = lambda s: compute_umbrella(fam.A, fam.weights(s)).member_sets()
    return [c for c, lo, hi in zip(cands, mids, mids[1:]) if not at(lo) == at(c) == at(hi)]


def criterion_4():
    fam = SlopeFamily(A, v0={3})
    oracle = midpoint_oracle(fam)
    assert [1 / s for s in oracle] == [Fraction(3, 2), Fraction(1, 3)], oracle
    assert slopes_along(fam).slopes == (Fraction(3, 2), Fraction(1, 3))


def criterion_5():
    M = ToricMatrix.of(PROJ, strict=False)
    report = slopes_at_infinity(M, vinf={0, 1})
    assert report.slopes == (Fraction(2),) and report.conjectural
    ideal = toric_ideal(M)
    lead = lambda s: [format_poly(f) for f in initial_ideal(ideal, (1 - s, 1 - s, 1)).leading_forms]
    eps = Fraction(1, 1000)
    assert lead(Fraction(1, 2) - eps) == ["d2^3"]
    assert lead(Fraction(1, 2)) == ["d2^3 - d1*d3"]
    assert lead(Fraction(1, 2) + eps) == ["d1*d3"]


def _property_scaling_and_faces(Ms, rng):
    for M in Ms:
        L = random_weights(rng, M.n)
        c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        umb = compute_umbrella(M, L)
        assert umb.member_sets() == compute_umbrella(M, tuple(c * x for x in L)).member_sets(), ("a", M.rows, L)
        facets = umb.facet_sets()
        assert frozenset() in umb, ("b", M.rows, L)
        assert all(any(frozenset(f.members) <= F for F in facets) for f in umb), ("b", M.rows, L)


def _property_cycles(Ms, rng):
    for M in Ms:
        L = random_weights(rng, M.n, allow_nonpositive=False)
        cyc = char_cycle(M, L)
        umb = compute_umbrella(M, L)
        for F in umb.facet_sets():
            if len(F) == M.d:
                assert mu(M, L, F, umb) == nu(M, F) == abs(det(M.submatrix(sorted(F)))), ("c", M.rows, L)
        g = random_unimodular(rng, M.d)
        assert cyc.entries == char_cycle(act(g, M), L).entries, ("d", M.rows, L, g)


def _hull(points):
    pts = sorted(set(points))

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1]) - (out[-1][1] - out[-2][1]) * (p[0] - out[-2][0]) <= 0:
                out.pop()
            out.append(p)
        return out[:-1]

    return half(pts) + half(pts[::-1])


def _property_shoelace(Ms):
    for M in Ms:
        assert rank_volume(M) == abs(shoelace(_hull([(0, 0)] + list(M.columns)))), ("e", M.rows)


def _property_homogeneity(Ms):
    for M in Ms:
        homogeneous = is_L_homogeneous(M, order_weights(M.n))
        irregular = any(
            slopes_along(SlopeFamily(M, v0=V), facets_only=True).slopes
            for k in range(1, M.n + 1)
            for V in combinations(range(M.n), k)
        )
        assert irregular != homogeneous, ("f", M.rows)


def criterion_6():
    rng = random.Random(3)
    Ms = matrices(SamplerConfig(seed=1), PROPERTY_COUNT)
    _property_scaling_and_faces(Ms, rng)
    _property_cycles(Ms, rng)
    _property_shoelace(matrices(SamplerConfig(d_max=2, seed=4), PROPERTY_COUNT))
    half = PROPERTY_COUNT // 2
    mixed = matrices(SamplerConfig(seed=2, homogeneous=True), half) + matrices(SamplerConfig(seed=3), half)
    _property_homogeneity(mixed)


def criterion_7():
    ideal = toric_ideal(A)
    for L in WEIGHTS:
        report = verify_components(initial_ideal(ideal, L), compute_umbrella(A, L))
        assert report.passed, report.summary()
    gb = initial_ideal(ideal, (1, 1, 1, 1))
    assert radical_monomial_witness(gb, {2})
    for F in compute_umbrella(A, (1, 1, 1, 1)).facet_sets():
        assert not radical_monomial_witness(gb, F)


CRITERIA = [
    ("1", "cycle table of the running matrix", criterion_1, 1.0),
    ("2", "facet multiplicities and degrees", criterion_2, 1.0),
    ("3", "umbrella facets at the reference weights", criterion_3, 1.0),
    ("4", "slopes 3/2 and 1/3 along the last coordinate", criterion_4, 1.0),
    ("5", "projectivized slope 2 and leading-form flip", criterion_5, 1.0),
    ("6", f"randomized property suite ({PROPERTY_COUNT} matrices each)", criterion_6, 60.0),
    ("7", "component verification and nilpotency witnesses", criterion_7, 10.0),
]


def evaluate(number, title, fn, budget):
    start = time.perf_counter()
    detail = ""
    try:
        fn()
        ok = True
    except AssertionError as exc:
        ok, detail = False, f"assertion: {exc}"
    elapsed = time.perf_counter() - start
    if ok and elapsed >= budget:
        ok, detail = False, f"took {elapsed:.2f}s, budget {budget:.0f}s"
    RESULTS.append((number, ok, elapsed, title))
    return ok, elapsed, detail


def format_line(number, ok, elapsed, title):
    return f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {title}"


@pytest.mark.parametrize("number, title, fn, budget", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(number, title, fn, budget):
    ok, elapsed, detail = evaluate(number, title, fn, budget)
    print(format_line(number, ok, elapsed, title))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, title, fn, budget in CRITERIA:
        ok, elapsed, detail = evaluate(number, title, fn, budget)
        print(format_line(number, ok, elapsed, title) + (f"  [{detail}]" if detail else ""))
        failed += not ok
    sys.exit(1 if failed else 0)
