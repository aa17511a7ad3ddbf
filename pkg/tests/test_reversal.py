from fractions import Fraction

import pytest

from kernel.errors import OracleClassMismatchError
from problems.base import Verdict, apply_reduction
from problems.registry import get_oracle
from problems.sep import SepInstance, verify_separator
from banach.completion import point_norm
from banach.functionals import check_bound, check_extension
from hahn_banach.pipeline import verify_hb
from hahn_banach.reversal import (
    analytic_extension,
    build_hb_instance,
    coord_norm,
    coord_norm_exact,
    decode_separator,
    delta_n,
    first_axis_point,
    first_witness,
    sep_le_hb,
    z,
)
from spaces.rationals import dyadic


@pytest.fixture
def hb_instance(evens_odds):
    return build_hb_instance(evens_odds, search_bound=16)


def test_first_hits_fix_delta(evens, odds):
    assert first_witness(evens, odds, 0, 4) == 1
    assert first_witness(evens, odds, 1, 4) == -1
    assert first_witness(evens, odds, 2, 4) == Fraction(1, 2)
    assert first_witness(evens, odds, 9, 4) is None


def test_delta_with_and_without_search_bound(evens, odds):
    assert delta_n(evens, odds, 3, search_bound=8).exact == Fraction(-1, 2)
    lazy = delta_n(evens, odds, 2)
    assert lazy.approx(0) == 0
    assert lazy.approx(3) == Fraction(1, 2)


@pytest.mark.parametrize("delta", [Fraction(1), Fraction(1, 2), Fraction(1, 8)])
def test_tilted_unit_vectors(delta):
    assert coord_norm_exact(1 + delta, delta, delta) == 1
    assert coord_norm_exact(1 + delta, -delta, -delta) == 1
    assert coord_norm_exact(2, 0, delta) == 2


def test_untilted_plane_norm():
    assert coord_norm_exact(1, 1, 0) == 2
    assert coord_norm_exact(1, -3, 0) == 4


def test_coord_norm_converges_while_the_witness_is_unseen(evens_odds):
    # 40 = p(20), so δ_40 = 2^-20 shows up only past index 20
    target = coord_norm_exact(1, 1, dyadic(-20))
    lazy = coord_norm(1, 1, 40, evens_odds)
    for k in (0, 4, 12, 25):
        assert abs(lazy.approx(k) - target) <= dyadic(-k)
    assert coord_norm(1, 1, 2, evens_odds).approx(5) == Fraction(4, 3)


def test_block_norms(hb_instance):
    space = hb_instance.space
    for n in range(5):
        assert point_norm(z(space, n)).approx(8) == dyadic(-n - 1)
    # rat(5) = 2
    point = first_axis_point(space, (5,))
    assert point_norm(point).approx(8) == 1
    assert hb_instance(point).approx(8) == 1


def test_planted_extension_is_norm_one(hb_instance):
    g = hb_instance.planted
    assert check_extension(hb_instance, g, 8, 10) is Verdict.ACCEPT
    assert verify_hb(hb_instance, g, 6) is Verdict.ACCEPT
    assert g(z(hb_instance.space, 0)).approx(4) == Fraction(-1, 2)
    assert g(z(hb_instance.space, 1)).approx(4) == Fraction(1, 4)


def test_wrong_sign_breaks_the_bound(hb_instance):
    space = hb_instance.space
    # δ_0 = 1: (2, 1) has norm 1/2 in block 0
    tilted = space.point((2, 1))
    assert point_norm(tilted).approx(8) == Fraction(1, 2)
    wrong = analytic_extension(space, lambda i: 1)
    assert check_bound(wrong, [tilted], 10, r=1) is Verdict.REJECT
    assert check_bound(hb_instance.planted, [tilted], 10, r=1) is Verdict.ACCEPT


def test_decode_separator_reads_signs(evens_odds, hb_instance):
    r = decode_separator(evens_odds, hb_instance.planted)
    assert r.prefix(10) == evens_odds.planted.prefix(10)


@pytest.mark.parametrize("search_bound", [None, 16])
def test_sep_le_hb_with_analytic_oracle(evens_odds, search_bound):
    r = apply_reduction(sep_le_hb(search_bound), get_oracle("hb", "analytic"))(evens_odds)
    assert r.prefix(16) == evens_odds.planted.prefix(16)
    assert verify_separator(evens_odds, r, 16) is Verdict.ACCEPT


def test_witness_bound_plants_signs_without_a_separator(evens, odds):
    inst = SepInstance(evens, odds, witness_bound=64, label="bounded")
    r = apply_reduction(sep_le_hb(), get_oracle("hb", "analytic"))(inst)
    assert r.prefix(12) == tuple(n % 2 for n in range(12))


def test_analytic_oracle_needs_signs(evens, odds):
    inst = SepInstance(evens, odds, label="bare")
    with pytest.raises(OracleClassMismatchError):
        apply_reduction(sep_le_hb(), get_oracle("hb", "analytic"))(inst)
