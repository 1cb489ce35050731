from fractions import Fraction
from math import comb

import pytest

from hypertoric import exact_linalg as la
from hypertoric.arrangement import (ArrangementError, bounded_chambers, bounded_complex,
                                    build_arrangement, central_rays, compatible, core_components,
                                    enumerate_cells, enumerate_faces, is_bounded_lp,
                                    poincare_from_counts)
from hypertoric.torus_model import validate_spec

from support import (example1, example2, random_regular_alpha, random_spec, seeded,
                     sign_vector_oracle)


def small_cases(seed, count, max_N=6):
    rng = seeded(seed)
    out = []
    while len(out) < count:
        spec = random_spec(rng, max_N=max_N, max_d=3)
        alpha = random_regular_alpha(rng, spec)
        if alpha is not None:
            out.append((spec, alpha))
    return out


def test_hyperplanes_are_gale_columns():
    spec = example2()
    arr = build_arrangement(spec, [3, 1])
    assert arr.dim == 3
    for i, H in enumerate(arr.hyperplanes):
        assert H.normal == spec.gale_column(i)
    # alpha is recovered as B h
    h = [H.offset for H in arr.hyperplanes]
    assert la.matvec(spec.B, h) == [3, 1]


@pytest.mark.parametrize("spec, alpha", small_cases(5, 12))
def test_faces_match_sign_vector_oracle(spec, alpha):
    arr = build_arrangement(spec, alpha)
    faces = enumerate_faces(arr)
    assert {f.sign: (f.dim, f.bounded) for f in faces} == sign_vector_oracle(arr)
    for f in faces:
        assert arr.sign_of(f.witness) == f.sign


@pytest.mark.parametrize("spec, alpha", small_cases(7, 20, max_N=8))
def test_ray_boundedness_matches_lp(spec, alpha):
    arr = build_arrangement(spec, alpha)
    normals = [H.normal for H in arr.hyperplanes]
    for f in enumerate_faces(arr):
        assert f.bounded == is_bounded_lp(normals, f.sign, arr.dim)


@pytest.mark.parametrize("spec, alpha", small_cases(9, 20, max_N=8))
def test_bounded_complex_is_contractible(spec, alpha):
    arr = build_arrangement(spec, alpha)
    cx = bounded_complex(arr)
    assert cx.euler_characteristic == 1
    assert sum(poincare_from_counts(cx.d)) == cx.d[0]
    for f in cx.faces:
        if f.dim == 1:
            ends = [g for g in cx.faces if g.dim == 0 and compatible(g.sign, f.sign)]
            assert len(ends) == 2


@pytest.mark.parametrize("n", range(1, 6))
def test_example1_is_a_simplex(n):
    arr = build_arrangement(example1(n), [1])
    cx = bounded_complex(arr)
    assert cx.d == [comb(n + 1, k + 1) for k in range(n + 1)]
    assert poincare_from_counts(cx.d) == [1] * (n + 1)
    (chamber,) = bounded_chambers(arr)
    assert chamber.sign == (1,) * (n + 1)


def test_example2_core():
    arr = build_arrangement(example2(), [3, 1])
    faces = enumerate_faces(arr)
    cc = core_components(arr, faces)
    assert [c.sign for c in cc.components] == [(1, 1, 1, 1, 1), (1, 1, -1, 1, -1)]
    for c in cc.components:
        for v in c.vertices:
            assert all(la.dot(a, v) + a0 >= 0 for a, a0 in c.inequalities)
    meet = cc.intersections[(0, 1)]
    assert meet is not None and meet.dim == 1
    assert meet.sign == (1, 1, 0, 1, 0)


def test_split_factor_is_refused():
    spec = validate_spec([[1, 1, 0]])
    arr = build_arrangement(spec, [1])
    with pytest.raises(ArrangementError):
        core_components(arr)


def test_central_arrangement_cells():
    # three lines through the origin in the plane: 6 chambers, 6 rays, 1 point
    cells = enumerate_cells([(1, 0), (0, 1), (1, -1)], [0, 0, 0], 2)
    by_dim = [sum(1 for _, _, d in cells if d == k) for k in range(3)]
    assert by_dim == [1, 6, 6]
    assert len(central_rays([(1, 0), (0, 1), (1, -1)], 2)) == 6
    chambers = enumerate_cells([(1, 0), (0, 1), (1, -1)], [0, 0, 0], 2, chambers_only=True)
    assert len(chambers) == 6 and all(0 not in s for s, _, _ in chambers)


def test_poincare_from_counts():
    assert poincare_from_counts([8, 14, 9, 2]) == [1, 2, 3, 2]
    assert poincare_from_counts([1]) == [1]
    assert poincare_from_counts([Fraction(3), 2]) == [1, 2]
