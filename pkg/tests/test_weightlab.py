from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from llv.weightlab import (
    Algebra,
    Character,
    Decomposition,
    Weight,
    WeightError,
    canonical,
    fundamental_weights,
    irreducible_character,
    is_dominant_integral,
    mukai_bracket_check,
    orbit_size,
    parse_algebra,
    rho,
    weyl_dim,
    weyl_orbit,
)

B4, B12, D4, D5, D13 = Algebra("B", 4), Algebra("B", 12), Algebra("D", 4), Algebra("D", 5), Algebra("D", 13)


def W(s: str, a: Algebra) -> Weight:
    return Weight.parse(s).padded(a.rank)


def test_algebra_basics():
    assert B12.m == 25 and D13.m == 26
    assert Algebra.so(26) == D13 and Algebra.so(9) == B4
    assert parse_algebra("D13") == D13
    with pytest.raises(WeightError):
        Algebra("D", 1)
    with pytest.raises(WeightError):
        parse_algebra("C3")


def test_weight_parsing_and_parity():
    w = Weight.parse("1/2,1/2,1/2,1/2")
    assert w.doubled == (1, 1, 1, 1) and not w.is_integral
    assert Weight.of(2, 2).doubled == (4, 4)
    assert Weight.of(Fraction(3, 2), "1/2").doubled == (3, 1)
    with pytest.raises(WeightError):
        Weight((3, 2))
    assert Weight.from_json(w.to_json()) == w
    assert W("2,2", D13).short() == "(2,2)"


def test_dominance():
    assert is_dominant_integral(B12, W("2,1", B12))
    assert not is_dominant_integral(B4, Weight.of(1, 2, 0, 0))
    assert is_dominant_integral(D13, W("2,2", D13))
    assert is_dominant_integral(D4, Weight.of(1, 1, 1, -1))
    assert not is_dominant_integral(B4, Weight.of(1, 1, 1, -1))
    with pytest.raises(WeightError):
        is_dominant_integral(B4, Weight.of(1, 0))


def test_orbits():
    assert len(weyl_orbit(B4, Weight.of(1, 0, 0, 0))) == 8
    assert len(weyl_orbit(D4, W("1/2,1/2,1/2,1/2", D4))) == 8
    assert len(weyl_orbit(B4, W("1/2,1/2,1/2,1/2", B4))) == 16
    assert orbit_size(D4, (2, 2, 2, 2)) == 8
    assert orbit_size(D4, (2, 2, 2, 0)) == 32
    # a zero coordinate makes odd sign patterns reachable in type D
    assert Weight.of(1, -1, 0, 0) in weyl_orbit(D4, Weight.of(1, 1, 0, 0))
    assert canonical(D4, (-1, 1, 1, 1)) == (1, 1, 1, -1)


@pytest.mark.parametrize(
    "a,w,d",
    [
        (D13, "5", 139230),
        (D13, "2,2", 37674),
        (D13, "1", 26),
        (D13, "0", 1),
        (B4, "1/2,1/2,1/2,1/2", 16),
        (D5, "3", 210),
        (D5, "1,1,1", 120),
        (B12, "2", 324),
    ],
)
def test_weyl_dim(a, w, d):
    assert weyl_dim(a, W(w, a)) == d


def test_rho_and_fundamentals():
    assert rho(B4) == (7, 5, 3, 1)
    assert rho(D4) == (6, 4, 2, 0)
    assert [w.short() for w in fundamental_weights(D4)] == ["(1)", "(1,1)", "(1/2,1/2,1/2,-1/2)", "(1/2,1/2,1/2,1/2)"]


def test_character_dims_match_weyl_dims():
    for a in (B4, D4, D5, Algebra("B", 3)):
        for coords in itertools.product(range(3), repeat=a.rank):
            w = Weight.of(*sorted(coords, reverse=True))
            if is_dominant_integral(a, w):
                assert irreducible_character(a, w).dim() == weyl_dim(a, w)


def test_character_known_weights():
    ch = irreducible_character(B4, Weight.of(1, 0, 0, 0))
    assert ch.weights() == {**{w.doubled: 1 for w in weyl_orbit(B4, Weight.of(1, 0, 0, 0))}, (0, 0, 0, 0): 1}
    big = irreducible_character(D13, W("2,2", D13))
    assert big.dim() == 37674 and big.is_genuine


def test_character_from_weights_rejects_non_invariant():
    with pytest.raises(WeightError):
        Character.from_weights(B4, {(2, 0, 0, 0): 1})


def test_decomposition_canonical_and_json():
    d = Decomposition.of(D13, {"2,2": 1, "5": 1})
    assert str(d) == "(5):1 (2,2):1"
    assert d.dim() == 176904
    assert Decomposition.from_json(d.to_json()) == d
    with pytest.raises(WeightError):
        Decomposition.of(B4, {"1,2": 1})
    with pytest.raises(WeightError):
        Decomposition.of(B4, {"1": 0})


@pytest.mark.parametrize("b2", [3, 4, 5, 6])
def test_mukai_bracket_small(b2):
    assert mukai_bracket_check(b2)


def test_mukai_bracket_wrong_scale_fails():
    assert not mukai_bracket_check(4, wedge_scale=Fraction(1, 2))
    assert not mukai_bracket_check(4, wedge_scale=1)
