from fractions import Fraction

import pytest

from hypertoric.topology import poincare_polynomial
from hypertoric.torus_model import enumerate_walls, validate_spec
from hypertoric.wallcross import (ISOMORPHISM, MUKAI_FLOP, WallCrossError, active_walls,
                                  chamber_of, classify_crossing, count_chambers_bruteforce,
                                  enumerate_chambers, fixed_locus_spec, period)

from support import example1, example2, random_spec, seeded


def test_example2_chambers():
    cs = enumerate_chambers(example2())
    assert cs.count == 6 == count_chambers_bruteforce(example2())
    assert cs.active == (0, 1, 2)
    assert len(cs.adjacent_pairs()) == 6
    for sign, wit in cs.chambers:
        assert chamber_of(example2(), wit).sign == sign


def test_beta_restricts_active_walls():
    spec = example2()
    assert active_walls(spec, [1, 1]) == [2]
    cs = enumerate_chambers(spec, [1, 1])
    assert cs.count == 2 == count_chambers_bruteforce(spec, [1, 1])
    assert enumerate_chambers(spec, [1, 2]).count == 1


def test_chamber_counts_match_bruteforce():
    rng = seeded(41)
    for _ in range(40):
        spec = random_spec(rng, max_N=7, max_d=3)
        beta = None
        if rng.random() < 0.3:
            beta = [rng.choice([0, 0, 1]) for _ in range(spec.d)]
        if len(active_walls(spec, beta)) > 10:
            continue
        assert enumerate_chambers(spec, beta).count == count_chambers_bruteforce(spec, beta)


def test_chamber_of_on_wall():
    loc = chamber_of(example2(), [2, 2])
    assert not loc.regular and loc.on_walls == (2,)


def test_crossing_is_symmetric_and_v0_is_valid():
    rng = seeded(42)
    seen = set()
    for _ in range(25):
        spec = random_spec(rng, max_N=6, max_d=3)
        cs = enumerate_chambers(spec)
        for i, j, s in cs.adjacent_pairs():
            a, b = cs.chambers[i][1], cs.chambers[j][1]
            fwd, bwd = classify_crossing(spec, a, b), classify_crossing(spec, b, a)
            assert fwd.wall == bwd.wall == s
            assert (fwd.kind, fwd.fiber_projective_dim) == (bwd.kind, bwd.fiber_projective_dim)
            v0 = fwd.v0_spec
            assert validate_spec([list(r) for r in v0.B], N=v0.N) == v0
            assert v0.N == spec.N - len(fwd.circuit) and v0.d == spec.d - 1
            assert v0.n == spec.n - (len(fwd.circuit) - 1)
            if fwd.kind == MUKAI_FLOP:
                assert fwd.codim == len(fwd.circuit) - 1
            assert enumerate_walls(spec)[s].pairing(fwd.alpha_on_wall) == 0
            seen.add(fwd.kind)
    assert seen == {ISOMORPHISM, MUKAI_FLOP}


def test_crossing_errors():
    spec = example2()
    with pytest.raises(WallCrossError, match="no wall crossed"):
        classify_crossing(spec, [3, 1], [4, 1])
    with pytest.raises(WallCrossError, match="not adjacent"):
        classify_crossing(spec, [3, 1], [-1, 1])
    with pytest.raises(WallCrossError, match="alpha on wall"):
        classify_crossing(spec, [1, 1], [3, 1])


def test_v0_parameter_for_example2():
    rep = classify_crossing(example2(), [3, 1], [1, 3])
    assert rep.alpha_on_wall == (2, 2)
    assert rep.v0_columns == (0,)
    assert rep.v0_spec.B == ((1,),)
    assert rep.v0_parameter.alpha == (Fraction(2),)


def test_fixed_locus_resaturation():
    # the wall along (2, 2) leaves column 3, whose restricted image is 2Z
    spec = validate_spec([[1, 0, 2], [0, 1, 2]])
    got = {w.circuit: fixed_locus_spec(spec, w) for w in enumerate_walls(spec)}
    v0, cols, resat = got[frozenset({0, 1})]
    assert resat and cols == (2,) and v0.B == ((1,),)
    assert not got[frozenset({0, 2})][2] and not got[frozenset({1, 2})][2]


def test_period():
    pr = period(example2(), [3, 1], [0, 1], [1, 0])
    assert pr.omega_1 == (3, 1) and pr.omega_c_re == (0, 1) and pr.omega_c_im == (1, 0)
    with pytest.raises(WallCrossError, match="not a regular value"):
        period(example2(), [1, 1])
    with pytest.raises(WallCrossError, match="period map hypothesis violated"):
        period(validate_spec([[1, 1, 0], [0, 0, 1]]), [1, 1])


def test_chamber_invariance_on_random_specs():
    rng = seeded(43)
    done = 0
    while done < 8:
        spec = random_spec(rng, max_N=6, max_d=2)
        cs = enumerate_chambers(spec)
        polys = {poincare_polynomial(spec, wit).coefficients for _, wit in cs.chambers}
        assert len(polys) == 1, spec.B
        done += 1


def test_example1_crossing_kinds():
    assert classify_crossing(example1(1), [1], [-1]).kind == ISOMORPHISM
    rep = classify_crossing(example1(3), [-2], [5])
    assert rep.kind == MUKAI_FLOP and rep.fiber_projective_dim == 3
    assert rep.v0_spec.N == 0 and rep.alpha_on_wall == (0,)
