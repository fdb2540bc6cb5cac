from __future__ import annotations

import itertools

import pytest

from fixtures_data import OG6_CANDIDATES, OG6_H4_OVER_SO8, OG6_H4_RESTRICTED
from llv.hodge import salamon_check
from llv.solver import (
    DisambiguationError,
    HKProfile,
    enumerate_weights,
    og6_disambiguate,
    og6_h4,
    og6_profile,
    og6_restricted_h4,
    og10_profile,
    profile_pool,
    solve_constraints,
    solve_named,
)
from llv.weightlab import Algebra, Decomposition, WeightError, is_dominant_integral, weyl_dim

D5, D13 = Algebra("D", 5), Algebra("D", 13)


def test_enumerate_og10_pool():
    got = {w.short() for w in enumerate_weights(D13, 37674, True)}
    assert got == {"(4)", "(3)", "(2,2)", "(2,1)", "(2)", "(1,1,1,1)", "(1,1,1)", "(1,1)", "(1)", "(0)"}


def test_enumerate_edge_cases():
    assert [w.short() for w in enumerate_weights(D5, 1, True)] == ["(0)"]
    small = {w.short() for w in enumerate_weights(D5, 350, True)}
    assert {"(3)", "(1,1,1)"} <= small
    with pytest.raises(ValueError):
        enumerate_weights(D5, 0, True)


@pytest.mark.parametrize("a", [Algebra("B", 3), Algebra("D", 4), Algebra("B", 4), Algebra("D", 5)])
def test_enumerate_matches_brute_force(a):
    bound = 3000
    brute = set()
    for coords in itertools.product(range(-8, 9), repeat=a.rank):
        if len({c % 2 for c in coords}) != 1:
            continue
        if is_dominant_integral(a, coords) and max(coords) <= 8 and weyl_dim(a, coords) <= bound:
            brute.add(coords)
    got = {w.doubled for w in enumerate_weights(a, bound, False)}
    assert all(weyl_dim(a, w) <= bound for w in got)
    assert {w for w in got if max(w) <= 8} == brute


def test_og10_unique():
    cs = solve_named("og10")
    assert [str(d) for d in cs.decompositions()] == ["(5):1 (2,2):1"]
    c = cs.candidates[0]
    assert c.betti.euler == 176904 and salamon_check(c.betti) and c.salamon
    assert c.decomposition.as_dict()[(10,) + (0,) * 12] == 1


def test_og10_needs_the_22_piece():
    # without (2,2) in the pool nothing fits
    pool = [w for w in profile_pool(og10_profile()) if w.short() != "(2,2)"]
    assert len(solve_constraints(og10_profile(), pool)) == 0


def test_og10_scaled_euler_equation_forces_22():
    # 2/13 of the residual dimension equation: 500 m3 + 896 m21 + ... = 5796 - ...
    dims = {w.short(): weyl_dim(D13, w) for w in profile_pool(og10_profile())}
    assert dims["(3)"] * 2 // 13 == 500 and dims["(2,1)"] * 2 // 13 == 896
    assert dims["(2,2)"] * 2 % 13 == 0 and dims["(2,2)"] * 2 // 13 == 5796


def test_og6_two_candidates_and_selection():
    cs = solve_named("og6")
    a = Algebra("D", 5)
    assert cs.decompositions() == [Decomposition.of(a, c) for c in OG6_CANDIDATES]
    for d, h4, r in zip(cs.decompositions(), OG6_H4_OVER_SO8, OG6_H4_RESTRICTED):
        assert og6_h4(d) == Decomposition.of(Algebra("D", 4), h4)
        assert og6_restricted_h4(d) == Decomposition.of(Algebra("B", 2), r)
    assert og6_h4(cs.decompositions()[0]).dim() == 199
    assert og6_disambiguate(cs) == Decomposition.of(a, OG6_CANDIDATES[0])
    with pytest.raises(DisambiguationError):
        og6_disambiguate([cs.decompositions()[1]])


def test_og6_profile():
    p = og6_profile()
    assert p.euler == 1920 and p.hodge.is_symmetric()
    assert p.hodge.betti().b[:7] == (1, 0, 8, 0, 199, 0, 1504)


def test_k3_profile():
    cs = solve_constraints(HKProfile(n=1, b2=22, euler=24))
    assert [str(d) for d in cs.decompositions()] == ["(1):1"]


def test_infeasible_profile_is_empty():
    assert len(solve_constraints(HKProfile(n=2, b2=23, euler=48))) == 0


def test_profile_validation_and_json():
    with pytest.raises(WeightError):
        HKProfile(n=2, b2=2, euler=24)
    with pytest.raises(WeightError):
        HKProfile(n=2, b2=23, euler=0)
    p = og6_profile()
    assert HKProfile.from_json(p.to_json()) == p
