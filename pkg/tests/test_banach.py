from fractions import Fraction

import pytest

from config import settings
from kernel.errors import UnknownIdError
from kernel.seq import Seq
from kernel.seqcode import cantor_pair, encode, tuple_code
from problems.base import Verdict
from banach.completion import BanachName, CPoint, point_add, point_dist, point_norm, point_scale
from banach.functionals import PFName, check_bound, check_extension, check_linearity, linear_functional, whole_space
from banach.pseudonorm import build_norm, coefficients, rational_norm
from hyperspace.closed import ClosedPlus
from spaces.creal import CReal
from spaces.metric import Ball


def _third_point(space: BanachName) -> CPoint:
    """(1/3)·e(0) through dyadic truncations; rep(i) is within 2^{-i}."""
    reps = Seq(rule=lambda i: (Fraction(int(Fraction(1, 3) * 2 ** i), 2 ** i),), label="third")
    return CPoint(space, reps, label="third")


# Pseudo-norms

def test_max_norm_on_two_generators(max2_space):
    norm = max2_space.norm
    assert norm.norm((3, -5, 7)).exact == 5
    assert point_norm(max2_space.e(2)).exact == 0
    assert point_dist(max2_space.e(0), max2_space.e(1)).exact == 1


def test_rational_l1_norm(plane_l1):
    norm = plane_l1.norm
    assert norm.norm((1, 1)).exact == 2
    assert norm.norm((0, 0, 1)).exact == 2
    assert norm.norm((1, 1, -1)).exact == 0


def test_coefficients_follow_the_rational_enumeration():
    assert coefficients((1, 2, 0)) == (Fraction(1), Fraction(-1))


def test_norm_lookup_errors():
    with pytest.raises(UnknownIdError):
        build_norm("sup-of-everything")
    with pytest.raises(ValueError):
        rational_norm([[1, 0]], kind="l2")
    assert build_norm("rational", vectors=[[1, 0]]).norm((4,)).exact == 4


# Points of the completion

def test_norm_of_an_approximate_point(max2_space):
    x = _third_point(max2_space)
    assert abs(point_norm(x).approx(10) - Fraction(1, 3)) <= Fraction(1, 2 ** 10)


def test_two_names_of_the_same_point_are_close(max2_space):
    exact = max2_space.point((Fraction(1, 3),))
    d = point_dist(exact, _third_point(max2_space))
    assert abs(d.approx(10)) <= Fraction(1, 2 ** 10)


def test_exact_vector_operations(max2_space):
    assert point_scale(2, max2_space.e(0)).exact == (Fraction(2),)
    assert point_add(max2_space.e(0), max2_space.e(1)).exact == (Fraction(1), Fraction(1))


def test_in_ball_is_strict(max2_space, monkeypatch):
    monkeypatch.setattr(settings, "DEFAULT_FUEL", 30)
    zero = max2_space.zero()
    assert max2_space.in_ball(zero, Ball(max2_space.e(0), Fraction(2)))
    assert not max2_space.in_ball(zero, Ball(max2_space.e(0), Fraction(1)))
    assert not max2_space.in_ball(zero, Ball(zero, Fraction(0)))


# Distance facts

def test_distance_facts_need_enough_fuel(max2_space):
    # 0 < d(e(0), 0) = 1 < 2, with rat(0) = 0 and rat(5) = 2
    code = tuple_code(0, encode((1,)), 0, 5)
    assert max2_space.fact_holds(code, 5)
    assert not max2_space.fact_holds(code, 0)
    assert not max2_space.fact_holds(tuple_code(5, encode((1,)), 0, 0), 5)


def test_fact_stream_slots(max2_space):
    code = tuple_code(0, encode((1,)), 0, 5)
    stream = max2_space.fact_stream()
    assert stream[cantor_pair(code, 5)] == code + 1
    assert stream[cantor_pair(code, 0)] == 0


def test_norm_recovered_from_the_fact_stream(max2_space):
    rebuilt = BanachName.from_fact_stream(max2_space.fact_stream())
    assert rebuilt.norm.norm((1,)).approx(3) == 1
    assert abs(rebuilt.norm.norm((Fraction(1, 2), Fraction(-3, 4))).approx(4) - Fraction(3, 4)) <= Fraction(1, 16)


# Functionals

def _weights(*values):
    return lambda i: Fraction(values[i]) if i < len(values) else Fraction(0)


def test_linear_functional_on_exact_and_approximate_points(max2_space):
    g = linear_functional(max2_space, _weights(2, -1), 2)
    assert g(max2_space.point((1, 1))).exact == 1
    assert abs(g(_third_point(max2_space)).approx(10) - Fraction(2, 3)) <= Fraction(1, 2 ** 10)


def test_check_bound(max2_space):
    points = [max2_space.e(0), max2_space.e(1), max2_space.point((1, -1)), max2_space.point((3, 5))]
    first = linear_functional(max2_space, _weights(1), 1)
    assert check_bound(first, points, 10) is Verdict.ACCEPT
    doubled = linear_functional(max2_space, _weights(2), 1)
    assert check_bound(doubled, points, 10) is Verdict.REJECT
    assert check_bound(doubled, points, 10, r=2) is Verdict.ACCEPT


def test_check_extension_on_a_line(max2_space):
    first = linear_functional(max2_space, _weights(1), 1)
    diagonal = ClosedPlus(max2_space, Seq.constant(max2_space.point((1, 1))))
    f = PFName(max2_space, diagonal, first.func, CReal.from_rational(1), label="f")
    second = linear_functional(max2_space, _weights(0, 1), 1)
    skew = linear_functional(max2_space, _weights(1, -1), 2)
    assert check_extension(f, second, 3, 10) is Verdict.ACCEPT
    assert check_extension(f, skew, 3, 10) is Verdict.REJECT


def test_check_linearity(max2_space):
    e0, e1 = max2_space.e(0), max2_space.e(1)
    samples = [(Fraction(1), e0, Fraction(-1), e1), (Fraction(1, 2), e0, Fraction(3), e1)]
    g = linear_functional(max2_space, _weights(1, 1), 2)
    assert check_linearity(g, samples, 10) is Verdict.ACCEPT
    norm = PFName(max2_space, whole_space(max2_space), point_norm, CReal.from_rational(1), label="‖·‖")
    assert check_linearity(norm, samples, 10) is Verdict.REJECT
