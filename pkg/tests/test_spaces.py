from fractions import Fraction

import pytest

from kernel.errors import InvalidNameError
from kernel.seq import Seq
from spaces.creal import CReal, Ordering, certify_lt, creal_arith, creal_cmp, creal_max, creal_min, creal_sum, log2_ceil
from spaces.metric import CANTOR, REAL_SEQUENCES, UNIT_INTERVAL, Ball, cylinder_half_width
from spaces.rationals import format_rational, parse_rational, rat, rat_index


def test_rational_enumeration_prefix():
    assert [rat(n) for n in range(9)] == [
        Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2),
        Fraction(2), Fraction(-2), Fraction(1, 3), Fraction(-1, 3),
    ]


def test_rational_enumeration_is_a_bijection_on_a_range():
    for n in range(3000):
        assert rat_index(rat(n)) == n


def test_rational_index_of_arbitrary_fractions(rng):
    for _ in range(200):
        q = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        assert rat(rat_index(q)) == q


def test_parse_and_format_rationals():
    assert parse_rational(" 3/6 ") == Fraction(1, 2)
    assert parse_rational("-4") == Fraction(-4)
    assert format_rational(Fraction(2)) == "2/1"


def test_log2_ceil():
    assert log2_ceil(Fraction(1)) == 0
    assert log2_ceil(Fraction(3)) == 2
    assert log2_ceil(Fraction(1, 2)) == 0


def _third() -> CReal:
    # a non-exact name of 1/3 through dyadic truncations
    return CReal.from_function(lambda k: Fraction(int(Fraction(1, 3) * 2 ** k), 2 ** k), label="third")


@pytest.mark.parametrize("k", [0, 1, 5, 12, 30])
def test_arithmetic_on_approximate_reals_meets_precision(k):
    x, y = _third(), _third()
    tol = Fraction(1, 2 ** k)
    assert abs((x + y).approx(k) - Fraction(2, 3)) <= tol
    assert abs((x - y).approx(k)) <= tol
    assert abs((x * y).approx(k) - Fraction(1, 9)) <= tol
    assert abs(x.scale(7).approx(k) - Fraction(7, 3)) <= tol
    assert abs(abs(-x).approx(k) - Fraction(1, 3)) <= tol


def test_exact_arithmetic_stays_exact():
    a, b = CReal.from_rational(Fraction(1, 3)), CReal.from_rational(2)
    assert (a + b).exact == Fraction(7, 3)
    assert (a * b).exact == Fraction(2, 3)
    assert creal_max(a, b).exact == 2
    assert creal_min(a, b).exact == Fraction(1, 3)
    assert creal_sum([a, a, a]).exact == 1
    assert creal_arith("-", b, a).exact == Fraction(5, 3)
    with pytest.raises(ValueError):
        creal_arith("/", a, b)


def test_sum_of_approximate_terms():
    total = creal_sum([_third() for _ in range(6)])
    assert abs(total.approx(20) - 2) <= Fraction(1, 2 ** 20)


def test_cauchy_name_roundtrip():
    x = _third()
    y = CReal.from_name(x.name)
    assert abs(y.approx(15) - Fraction(1, 3)) <= Fraction(1, 2 ** 14)


def test_from_name_detects_modulus_violation():
    bad = Seq.eventually_periodic([rat_index(Fraction(0)), rat_index(Fraction(5))], [0])
    with pytest.raises(InvalidNameError):
        CReal.from_name(bad).approx(0)


def test_comparison_is_fueled():
    assert creal_cmp(_third(), Fraction(1, 2), 10) is Ordering.LT
    assert creal_cmp(Fraction(1, 2), _third(), 10) is Ordering.GT
    assert creal_cmp(_third(), _third(), 6) is Ordering.UNKNOWN
    assert certify_lt(0, _third(), 10)


def test_negative_precision_rejected():
    with pytest.raises(ValueError):
        _third().approx(-1)


# Metric spaces

def test_unit_interval_dense_points_stay_inside():
    for n in range(200):
        assert 0 <= UNIT_INTERVAL.dense_point(n) <= 1


def test_unit_interval_ball_membership():
    assert UNIT_INTERVAL.in_ball(Fraction(1, 2), Ball(Fraction(1, 4), Fraction(1, 3)))
    assert not UNIT_INTERVAL.in_ball(Fraction(1, 2), Ball(Fraction(1, 4), Fraction(1, 4)))
    assert not UNIT_INTERVAL.in_ball(Fraction(1, 2), Ball(Fraction(1, 2), Fraction(0)))


def test_cantor_distance_and_limit():
    assert CANTOR.distance((0, 1, 1), (0, 1, 0)) == Fraction(1, 4)
    assert CANTOR.distance((1,), (1, 0, 0)) == 0
    ball = CANTOR.cylinder_ball((1, 0))
    assert CANTOR.in_ball((1, 0, 1, 1), ball)
    assert not CANTOR.in_ball((1, 1), ball)
    point = CANTOR.limit(lambda n: (1,) * (n + 1))
    assert point.prefix(5) == (1, 1, 1, 1, 1)


def test_cylinder_half_width():
    assert cylinder_half_width(Fraction(1, 4), 0) == Fraction(1, 3)
    assert cylinder_half_width(Fraction(1, 4), 1) == 1
    assert cylinder_half_width(Fraction(1, 4), 2) is None


def test_real_sequence_distance_matches_half_widths():
    radius = Fraction(1, 16)
    for n in range(4):
        w = cylinder_half_width(radius, n)
        inside = tuple([Fraction(0)] * n + [w * Fraction(99, 100)])
        outside = tuple([Fraction(0)] * n + [w])
        assert REAL_SEQUENCES.distance(inside, ()) < radius
        assert REAL_SEQUENCES.distance(outside, ()) == radius


def test_real_sequence_point_distance_and_limit():
    x = Seq(rule=lambda n: CReal.from_rational(Fraction(1, n + 1)))
    d = REAL_SEQUENCES.point_dist(x, (Fraction(1), Fraction(1, 2)))
    assert abs(d.approx(10) - REAL_SEQUENCES.distance((1, Fraction(1, 2), Fraction(1, 3)), (1, Fraction(1, 2)))) <= Fraction(1, 2 ** 9)
    lim = REAL_SEQUENCES.limit(lambda n: (Fraction(3),) * 4)
    assert lim[0].approx(5) == 3
    assert lim[7].approx(5) == 0
