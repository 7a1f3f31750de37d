from fractions import Fraction
from itertools import combinations

import pytest

from gkz_umbrella.slopes import (
    SlopeFamily,
    candidate_critical_values,
    filter_pyramids,
    slopes_along,
    visible_faces,
)
from gkz_umbrella.umbrella import ToricMatrix, ValidationError, compute_umbrella

A = [[0, 1, 1, 4], [3, 0, 2, 1]]
PROJ = ToricMatrix.of([[3, 1, 0], [0, 1, 3]], strict=False)
HOMOGENEOUS = [[1, 1, 1], [0, 1, 2]]


def facet_labels(fs):
    return sorted(sorted(j + 1 for j in t) for t in fs)


# -- oracle: grid scan, no candidate enumeration --------------------------


def grid_oracle(fam, stop=6, den=12):
    """Consecutive grid points between which the umbrella changes."""
    grid = [Fraction(k, den) for k in range(stop * den + 1)]
    values = [compute_umbrella(fam.A, fam.weights(s)).member_sets() for s in grid]
    return [(grid[k], grid[k + 1]) for k in range(len(grid) - 1) if values[k] != values[k + 1]]


def test_grid_oracle_on_running_matrix():
    # both jumps sit on grid points, so each shows up as two changes around it
    fam = SlopeFamily(A, v0={3})
    F = Fraction
    assert grid_oracle(fam) == [
        (F(7, 12), F(2, 3)),
        (F(2, 3), F(3, 4)),
        (F(35, 12), F(3)),
        (F(3), F(37, 12)),
    ]


def test_candidates_contain_the_two_transitions():
    cands = candidate_critical_values(SlopeFamily(A, v0={3}))
    assert Fraction(2, 3) in cands and Fraction(3) in cands
    assert cands == sorted(set(cands))
    assert all(c > 0 for c in cands)


def test_no_candidates_without_moving_weights():
    assert candidate_critical_values(SlopeFamily(A)) == []
    assert slopes_along(SlopeFamily(A)).slopes == ()


def test_running_matrix_slopes():
    report = slopes_along(SlopeFamily(A, v0={3}))
    assert report.critical_params == (Fraction(2, 3), Fraction(3))
    assert report.slopes == (Fraction(3, 2), Fraction(1, 3))
    assert not report.conjectural


def test_running_matrix_intervals_match_frozen_facets():
    report = slopes_along(SlopeFamily(A, v0={3}))
    assert [facet_labels(iv.facets) for iv in report.intervals] == [
        [[1, 4], [2, 4]],
        [[1, 3], [2, 4], [3, 4]],
        [[1, 3], [2, 3]],
    ]
    assert report.intervals[-1].hi is None


def test_facets_only_mode_agrees():
    fam = SlopeFamily(A, v0={3})
    assert slopes_along(fam, facets_only=True).critical_params == slopes_along(fam).critical_params


def test_projectivized_example():
    fam = SlopeFamily(PROJ, vinf={0, 1})
    assert fam.weights(Fraction(1, 2)) == (Fraction(1, 2), Fraction(1, 2), 1)
    report = slopes_along(fam)
    assert report.slopes == (Fraction(2),)
    assert report.conjectural


def test_projectivized_slope_survives_pyramid_filter():
    fam = SlopeFamily(PROJ, vinf={0, 1})
    filtered = filter_pyramids(slopes_along(fam), fam)
    assert filtered.visible_slopes == (Fraction(2),)
    assert filtered.conjectural


def test_pyramid_filter_on_each_side_of_the_jump():
    # both one-sided umbrellas reduce to {∅, {3}}; only the face {1,2,3} at
    # the jump itself is visible, which is what keeps the jump
    fam = SlopeFamily(PROJ, vinf={0, 1})
    below = visible_faces(PROJ, compute_umbrella(PROJ, fam.weights(Fraction(1, 4))), fam.vinf)
    above = visible_faces(PROJ, compute_umbrella(PROJ, fam.weights(Fraction(1))), fam.vinf)
    at = visible_faces(PROJ, compute_umbrella(PROJ, fam.weights(Fraction(1, 2))), fam.vinf)
    assert below == above == {frozenset(), frozenset({2})}
    assert frozenset({0, 1, 2}) in at


def test_jump_carried_only_by_pyramids_is_removed_in_limits_mode():
    # away from s = 1/2 every face through a1 or a2 is a pyramid with vertex
    # at infinity, so the one-sided limits of the filtered sets agree
    fam = SlopeFamily(PROJ, vinf={0, 1})
    report = slopes_along(fam)
    limits = filter_pyramids(report, fam, mode="limits")
    assert report.slopes == (Fraction(2),)
    assert limits.visible_slopes == ()
    assert limits.conjectural


def test_pyramid_filter_drops_pyramid_faces():
    umb = compute_umbrella(A, (1, 1, 1, 1))
    kept = visible_faces(ToricMatrix.of(A), umb, {3})
    assert kept == {frozenset(), frozenset({0}), frozenset({1})}


def test_filter_is_identity_without_infinity():
    fam = SlopeFamily(A, v0={3})
    report = slopes_along(fam)
    assert filter_pyramids(report, fam) is report


@pytest.mark.parametrize("k", [1, 2, 3])
def test_homogeneous_matrix_has_no_slopes(k):
    for V in combinations(range(3), k):
        assert slopes_along(SlopeFamily(HOMOGENEOUS, v0=V)).slopes == ()
        if k < 3:
            assert slopes_along(SlopeFamily(HOMOGENEOUS, vinf=V)).slopes == ()


def test_family_validation():
    with pytest.raises(ValidationError):
        SlopeFamily(A, v0={1}, vinf={1})
    with pytest.raises(ValidationError):
        SlopeFamily(A, v0={7})


def test_constant_between_critical_values():
    fam = SlopeFamily(A, v0={3})
    report = slopes_along(fam)
    for iv in report.intervals:
        hi = iv.hi if iv.hi is not None else iv.lo + 10
        for k in range(1, 8):
            s = iv.lo + (hi - iv.lo) * Fraction(k, 8)
            assert compute_umbrella(fam.A, fam.weights(s)).facet_sets() == iv.facets


def test_right_to_left_scan_agrees():
    fam = SlopeFamily(A, v0={3})
    cands = candidate_critical_values(fam)
    report = slopes_along(fam)
    pts = [cands[-1] + 1]
    for a, b in zip(reversed(cands), list(reversed(cands))[1:]):
        pts += [a, (a + b) / 2]
    pts += [cands[0], cands[0] / 2]
    vals = {s: compute_umbrella(fam.A, fam.weights(s)).member_sets() for s in pts}
    found = []
    for k, c in enumerate(reversed(cands)):
        before, after = pts[2 * k], pts[2 * k + 2]
        if vals[before] != vals[c] or vals[c] != vals[after]:
            found.append(c)
    assert tuple(sorted(found)) == report.critical_params
