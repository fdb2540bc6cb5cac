from __future__ import annotations

import itertools

import pytest

from llv.charring import (
    IndivisibleError,
    NotACharacterError,
    branch_so,
    change_family,
    decompose,
    exact_divide,
    ext_power,
    interleaving_branch,
    mukai_grade,
    mul,
    reconstruct,
    restrict_with_trivials,
    standard_character,
    sym_power,
)
from llv.weightlab import Algebra, Character, Decomposition, Weight, irreducible_character, is_dominant_integral, weyl_dim

B3, B4, B12, D4, D5, D13 = (Algebra(f, r) for f, r in [("B", 3), ("B", 4), ("B", 12), ("D", 4), ("D", 5), ("D", 13)])


def irr(a, s):
    return irreducible_character(a, Weight.parse(s).padded(a.rank))


def test_sym_square_of_standard():
    assert decompose(sym_power(standard_character(B12), 2)) == Decomposition.of(B12, {"2": 1, "0": 1})


def test_exterior_powers():
    assert decompose(ext_power(standard_character(D5), 3)) == Decomposition.of(D5, {"1,1,1": 1})
    assert decompose(ext_power(standard_character(D5), 5)) == Decomposition.of(D5, {"1,1,1,1,1": 1, "1,1,1,1,-1": 1})
    assert ext_power(standard_character(D5), 3).dim() == 120
    assert ext_power(standard_character(B4), 0) == Character.trivial(B4)


def test_tensor_product_of_spinors():
    s = irr(B3, "1/2,1/2,1/2")
    assert decompose(mul(s, s)) == Decomposition.of(B3, {"1,1,1": 1, "1,1": 1, "1": 1, "0": 1})


def test_decompose_reconstruct_roundtrip():
    d = Decomposition.of(D5, {"2,1": 2, "1/2,1/2,1/2,1/2,-1/2": 3, "0": 7})
    assert decompose(reconstruct(d)) == d


def test_decompose_rejects_virtual():
    with pytest.raises(NotACharacterError):
        decompose(irr(B4, "1") - irr(B4, "1,1"))


def test_exact_divide():
    a, b = irr(D4, "1"), irr(D4, "1/2,1/2,1/2,1/2")
    assert exact_divide(mul(a, b), b) == a
    with pytest.raises(IndivisibleError):
        exact_divide(a + Character.trivial(D4), b)


def test_change_family():
    x = irr(B4, "2,1")
    assert change_family(change_family(x, D4), B4) == x
    with pytest.raises(NotACharacterError):
        change_family(irr(D4, "1/2,1/2,1/2,1/2"), B4)
    both = irr(D4, "1/2,1/2,1/2,1/2") + irr(D4, "1/2,1/2,1/2,-1/2")
    assert change_family(both, B4) == irr(B4, "1/2,1/2,1/2,1/2")


@pytest.mark.parametrize("a", [B3, B4, D4, D5])
def test_branching_matches_interleaving_rule(a):
    for coords in itertools.product(range(3), repeat=a.rank):
        w = Weight.of(*sorted(coords, reverse=True))
        if is_dominant_integral(a, w):
            assert decompose(branch_so(irreducible_character(a, w))) == interleaving_branch(a, w)


def test_restrict_with_trivials():
    x = restrict_with_trivials(standard_character(D4), 3)
    assert decompose(x) == Decomposition.of(Algebra("B", 2), {"1": 1, "0": 3})


def test_mukai_grade_of_og10_pieces():
    # degree-2k pieces of V_(2,2) over so(24): b_6 = 299
    pieces = mukai_grade(irr(D13, "2,2"), 5)
    assert len(pieces) == 21
    assert [p.dim() for p in pieces[:11:2]] == [0, 0, 0, 299, 4600, 27876]
    assert decompose(pieces[6]) == Decomposition.of(Algebra("D", 12), {"2": 1})
    assert sum(p.dim() for p in pieces) == weyl_dim(D13, Weight.of(2, 2).padded(13))
