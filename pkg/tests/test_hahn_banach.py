from fractions import Fraction

import pytest

from kernel.errors import FuelExhaustedError, OracleClassMismatchError
from kernel.seq import Seq
from kernel.seqcode import encode
from problems.base import Verdict, apply_reduction
from problems.registry import get_oracle
from banach.completion import BanachName
from banach.functionals import linear_functional
from banach.pseudonorm import rational_norm
from hahn_banach.alaoglu import (
    bounded_index,
    bounded_tuple,
    chi_recover,
    find_excluding,
    phi_embed,
    relation_form,
    tilde_ball,
    tilde_ball_index,
)
from hahn_banach.identity import identity_char
from hahn_banach.independence import BasisStream, Branch, Combiner, pr_test, ueil, verify_basis_stream
from hahn_banach.pipeline import diagonal_instance, full_instance, hb_le_sel, verify_hb
from hahn_banach.product import clamp, corner_test, grid_cover, kappa_minus_name
from hyperspace.selection import SelInstance, sel_le_pathB
from problems.trees import verify_path
from spaces.metric import Ball
from spaces.rationals import dyadic


def _weights(*values):
    return lambda i: Fraction(values[i]) if i < len(values) else Fraction(0)


@pytest.fixture
def max2_basis(max2_space):
    """q = 0, 1, 0, 0, ...: every generator past e(1) is pseudo-null and lands in R."""
    return BasisStream(max2_space, Seq.eventually_periodic([0, 1], [0]), marker=0)


@pytest.fixture
def first(max2_space):
    return linear_functional(max2_space, _weights(1), 1, label="first")


# Independence tests

def test_single_vector_is_independent(max2_space):
    result = pr_test([], max2_space.e(0), 3)
    assert result.branch is Branch.INDEPENDENT
    assert result.m == 2


def test_pseudo_null_vector_is_approximable(max2_space):
    result = pr_test([], max2_space.e(2), 3)
    assert result.branch is Branch.APPROXIMABLE
    assert result.gammas == ()


def test_second_generator_is_independent_of_the_first(max2_space):
    assert pr_test([max2_space.e(0)], max2_space.e(1), 3).branch is Branch.INDEPENDENT
    assert pr_test([max2_space.e(0)], max2_space.e(0), 0).branch is Branch.APPROXIMABLE


@pytest.fixture
def tilted_pair():
    """e(0) = (1, 0), e(1) = (1, 2^-12) under the max norm: independent, but barely."""
    return BanachName(rational_norm([(1, 0), (1, Fraction(1, 4096))], "max"), label="tilted")


@pytest.mark.slow
def test_nearly_parallel_pair_is_certified_at_a_late_stage(tilted_pair):
    result = pr_test([tilted_pair.e(0)], tilted_pair.e(1), 14)
    assert result.branch is Branch.INDEPENDENT
    assert result.m >= 14


def test_pr_test_reports_fuel_exhaustion(tilted_pair):
    with pytest.raises(FuelExhaustedError):
        pr_test([tilted_pair.e(0)], tilted_pair.e(1), 14, fuel=10)


@pytest.mark.slow
def test_ueil_keeps_a_nearly_parallel_generator(tilted_pair):
    basis = ueil(tilted_pair)
    # e(1) lies within 2^-(n+1) of span e(0) until n = 11
    assert basis.q.prefix(13) == (0,) * 12 + (1,)
    assert basis.selected(13) == [0, 12]


def test_combiner_on_exact_points(plane_l1):
    comb = Combiner([plane_l1.e(0), plane_l1.e(1), plane_l1.e(2)], precision=10)
    lo, hi = comb.value([Fraction(1), Fraction(1), Fraction(-1)])
    assert lo == 0
    assert hi == Fraction(1, 2 ** 10)
    assert comb.lengths() == [1 + Fraction(1, 2 ** 10), 1 + Fraction(1, 2 ** 10), 2 + Fraction(1, 2 ** 10)]


def test_ueil_starts_with_both_generators(max2_space):
    basis = ueil(max2_space)
    assert basis.marker == 0
    assert basis.q.prefix(2) == (0, 1)
    assert basis.selected(2) == [0, 1]
    assert basis.a_prime((1, 2)) == (Fraction(1), Fraction(-1))
    assert verify_basis_stream(max2_space, basis, 2) is Verdict.ACCEPT


def test_basis_stream_with_repeated_generator_is_rejected(max2_space):
    repeated = BasisStream(max2_space, Seq.eventually_periodic([0], [1]), marker=0)
    assert verify_basis_stream(max2_space, repeated, 3) is Verdict.REJECT


# Identity over e'

def test_identity_char_sums_coefficients_on_r_star(max2_basis):
    # rat(1) = 1, rat(3) = 1/2: e(0) = 1/2·e'(0) + 1/2·e'(2)
    assert identity_char(max2_basis, (1,), (3, 0, 3))
    assert not identity_char(max2_basis, (1,), (0, 1))
    assert identity_char(max2_basis, (0, 2), (0, 2, 0))
    assert not identity_char(max2_basis, (0, 2), (0, 1))


# Boxes in ℝ^ℕ

def test_corner_test():
    quarter = lambda n: Fraction(1, 4)
    half = lambda n: Fraction(1, 2)
    # radius 1/4 pins coordinate 0 to ±1/3 and coordinate 1 to ±1
    ball = Ball((), Fraction(1, 4))
    assert corner_test(quarter, [ball])
    assert not corner_test(half, [ball])
    assert corner_test(half, [Ball((), Fraction(1))])
    assert not corner_test(quarter, [])
    assert not corner_test(quarter, [Ball((), Fraction(0))])


def test_grid_cover_covers_the_box():
    quarter = lambda n: Fraction(1, 4)
    cover = grid_cover(quarter, 2)
    assert len(cover) == 6
    assert corner_test(quarter, cover.balls)


def test_clamp_into_the_box():
    point = clamp(Seq.constant(Fraction(1, 4)), (Fraction(1), Fraction(-1, 8)))
    assert point[0].exact == Fraction(1, 4)
    assert point[1].exact == Fraction(-1, 8)
    assert point[2].exact == 0


def test_kappa_minus_lists_only_certified_covers():
    families = Seq(rule=lambda j: [Ball((), Fraction(1, 4))] if j % 2 == 0 else [Ball((), Fraction(1, 16))])
    name = kappa_minus_name(Seq.constant(Fraction(1, 4)), families)
    assert len(name.covers[0].balls) == 1
    assert name.covers[1].balls == ()


# Functionals as points of ℝ^ℕ

def test_bounded_tuples():
    assert bounded_tuple(0, 5) == (0,) * 5
    assert bounded_tuple(1, 2) == (0, 1)
    assert bounded_tuple(3, 2) == (1, 1)
    for r in range(200):
        assert bounded_index(bounded_tuple(r, 3)) == r


def test_relation_forms_merge_repeated_coordinates():
    assert relation_form((Fraction(1), Fraction(2), 3, 3, 5)) == {5: 1, 3: -3}
    assert relation_form((Fraction(1, 2), Fraction(1, 2), 4, 4, 4)) == {}


def test_phi_embed_reads_coordinates_by_code(first, max2_basis):
    phi = phi_embed(first, max2_basis)
    assert phi[encode((1,))].approx(4) == 1
    assert phi[encode((2,))].approx(4) == -1
    assert phi[encode((0, 3))].approx(4) == 0


def test_excluding_ball_for_a_nonzero_empty_coordinate(max2_basis):
    # coordinate 0 is g(a_e'(())) = g(0), which vanishes for every linear g
    index = find_excluding(max2_basis, (Fraction(1),), fuel=4)
    assert index == tilde_ball_index(0, (Fraction(1),), 2)
    assert tilde_ball(max2_basis, index) == Ball((Fraction(1),), Fraction(1, 4))
    assert find_excluding(max2_basis, (Fraction(0),), fuel=1) is None


def test_chi_recovers_a_functional_from_its_coordinates(first, max2_basis, max2_space):
    g = chi_recover(phi_embed(first, max2_basis), max2_basis)
    assert g(max2_space.e(0)).approx(5) == 1
    assert g(max2_space.point((3, 5))).approx(5) == 3
    assert g(max2_space.e(2)).approx(5) == 0


# HB

def test_verify_hb_on_the_diagonal_instance(max2_space):
    f = diagonal_instance(max2_space)
    assert verify_hb(f, f.planted, 8) is Verdict.ACCEPT
    too_long = linear_functional(max2_space, _weights(2, -1), 2)
    assert verify_hb(f, too_long, 8) is Verdict.REJECT
    wrong_sign = linear_functional(max2_space, _weights(-1), 1)
    assert verify_hb(f, wrong_sign, 8) is Verdict.REJECT


def test_full_instance_is_its_own_extension(first):
    f = full_instance(first)
    assert f.planted is first
    assert verify_hb(f, first, 8) is Verdict.ACCEPT


def test_analytic_oracle_needs_a_plant(plane_l1):
    oracle = get_oracle("hb", "analytic")
    f = diagonal_instance()
    assert oracle(f) is f.planted
    bare = full_instance(linear_functional(plane_l1, _weights(1), 1))
    bare.planted = None
    with pytest.raises(OracleClassMismatchError):
        oracle(bare)


def test_hb_le_sel_plants_the_image_of_the_extension():
    inst = hb_le_sel().H(diagonal_instance())
    assert isinstance(inst, SelInstance)
    assert inst.planted[encode((1, 1))].approx(3) == 1
    assert inst.planted[encode((0, 1))].approx(3) == 0


@pytest.mark.slow
def test_hb_le_sel_with_planted_selection():
    f = diagonal_instance()
    g = apply_reduction(hb_le_sel(), get_oracle("sel", "planted"))(f)
    space = f.space
    assert g(space.point((1, 1))).approx(6) == 1
    assert g(space.e(1)).approx(6) == 0
    assert verify_hb(f, g, 4) is Verdict.ACCEPT


@pytest.mark.slow
def test_selected_extension_meets_the_tolerances():
    f = diagonal_instance()
    g = apply_reduction(hb_le_sel(), get_oracle("sel", "planted"))(f)
    space = f.space
    k = 12
    assert abs(g(space.point((1, 1))).approx(k) - 1) <= dyadic(-8) - dyadic(-k)
    total = abs(g(space.e(0)).approx(k)) + abs(g(space.e(1)).approx(k))
    assert total <= 1 + dyadic(-6) - 2 * dyadic(-k)


@pytest.mark.slow
def test_extension_of_a_total_functional_agrees_with_it(rng, first):
    f = full_instance(first)
    g = apply_reduction(hb_le_sel(), get_oracle("sel", "planted"))(f)
    for _ in range(20):
        x = f.space.point((Fraction(rng.randint(-8, 8), 4), Fraction(rng.randint(-8, 8), 4)))
        assert abs(g(x).approx(10) - first(x).approx(10)) <= dyadic(-8)


@pytest.mark.slow
def test_selection_tree_of_an_hb_instance_tracks_the_planted_point():
    inst = hb_le_sel().H(diagonal_instance())
    tree = sel_le_pathB().H(inst)
    assert tree.planted is not None
    assert verify_path(tree, tree.planted, 4) is Verdict.ACCEPT
