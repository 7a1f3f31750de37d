"""Umbrellas of the running 2x4 matrix against frozen facet lists."""

from fractions import Fraction

import pytest

from gkz_umbrella.umbrella import (
    ToricMatrix,
    ValidationError,
    compute_umbrella,
    format_faces,
    is_face,
    is_L_homogeneous,
    is_pyramid,
    order_weights,
    zero_umbrella,
)

A = [[0, 1, 1, 4], [3, 0, 2, 1]]


def facets(L):
    return sorted(format_faces(compute_umbrella(A, L).facets))


def faces(L):
    return sorted(format_faces(compute_umbrella(A, L).faces), key=lambda f: (len(f), f))


@pytest.mark.parametrize(
    "L, expected",
    [
        ((1, 1, 1, 1), [[1, 4], [2, 4]]),
        ((1, 1, 1, 2), [[1, 3], [2, 4], [3, 4]]),
        ((1, 1, 1, 5), [[1, 3], [2, 3]]),
        ((1, 1, 1, 0), [[1, 4], [2, 4]]),
        ((1, 1, 1, -1), [[1, 4], [2, 4]]),
    ],
)
def test_facets_of_running_matrix(L, expected):
    assert facets(L) == expected


def test_full_face_lists():
    assert faces((1, 1, 1, 1)) == [[], [1], [2], [4], [1, 4], [2, 4]]
    assert faces((1, 1, 1, 2)) == [[], [1], [2], [3], [4], [1, 3], [2, 4], [3, 4]]
    assert faces((1, 1, 1, 5)) == [[], [1], [2], [3], [1, 3], [2, 3]]


def test_zero_umbrella_is_the_zero_weight_face_lattice():
    assert sorted(format_faces(zero_umbrella(A).faces), key=len) == [[], [1], [2], [1, 2, 3, 4]]


def test_is_face_witness_for_ray_edge():
    ok, h = is_face(A, (1, 1, 1, 0), (0, 3))
    assert ok and h == (Fraction(-1, 12), Fraction(1, 3))
    assert is_face(A, (1, 1, 1, 0), (2, 3)) == (False, None)


def test_interior_column_is_not_a_face():
    ok, _ = is_face(A, (1, 1, 1, 1), (2,))
    assert not ok


def test_scaling_weights_keeps_umbrella():
    U = compute_umbrella(A, (1, 1, 1, 2)).member_sets()
    assert compute_umbrella(A, (3, 3, 3, 6)).member_sets() == U
    assert compute_umbrella(A, ("1/2", "1/2", "1/2", 1)).member_sets() == U


def test_identity_gives_boolean_lattice():
    umb = compute_umbrella([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (1, 1, 1))
    assert len(umb) == 8
    assert [sorted(f.members) for f in umb.facets] == [[0, 1, 2]]


def test_face_dimensions_and_labels():
    umb = compute_umbrella(A, (1, 1, 1, 2))
    assert umb.face(()).dim_label() == "empty"
    assert umb.face((2, 3)).dim == 1
    assert umb.face((2, 3)).label() == [3, 4]
    assert umb.face((0,)).dim == 0


@pytest.mark.parametrize(
    "rows, reason",
    [
        ([[1, -1]], "not-pointed"),
        ([[2, 4]], "not-full-lattice"),
        ([[1, 2], [2, 4]], "rank-deficient"),
        ([[1, 0], [0, 0, 1]], "bad-dimensions"),
        ([[1, 0], [1, 0]], "zero-column"),
        ([[1, 2.5]], "bad-dimensions"),
    ],
)
def test_validation_reasons(rows, reason):
    with pytest.raises(ValidationError) as exc:
        ToricMatrix.of(rows)
    assert exc.value.reason == reason


def test_non_full_lattice_allowed_when_not_strict():
    M = ToricMatrix.of([[3, 1, 0], [0, 1, 3]], strict=False)
    assert not M.full_lattice
    with pytest.raises(ValidationError):
        M.require_full_lattice()


def test_weight_length_checked():
    with pytest.raises(ValidationError) as exc:
        compute_umbrella(A, (1, 1, 1))
    assert exc.value.reason == "bad-weight"


def test_pyramid_definition():
    M = [[3, 1, 0], [0, 1, 3]]
    assert is_pyramid(ToricMatrix.of(M, strict=False), (0, 2), 0)
    assert not is_pyramid(ToricMatrix.of(M, strict=False), (0, 1, 2), 0)
    assert is_pyramid(A, (0,), 0)
    with pytest.raises(ValueError):
        is_pyramid(A, (0,), 1)


def test_homogeneity():
    assert is_L_homogeneous([[1, 1, 1], [0, 1, 2]], order_weights(3))
    assert not is_L_homogeneous(A, order_weights(4))
    assert is_L_homogeneous(A, (3, 1, 3, 5))


def test_grading_is_positive():
    g = ToricMatrix.of(A).grading()
    assert all(x > 0 for x in g)
