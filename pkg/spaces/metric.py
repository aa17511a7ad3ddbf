"""
Effective metric spaces used by the selection and Hahn–Banach machinery.

Each space exposes its dense points a(n), the distance between dense
points as a CReal, and the rational balls B_n = B(a(c), a_ℚ(r)) with
⟨c, r⟩ = n. The three concrete spaces have exact rational distances
between dense points:

- the unit interval I,
- Cantor space 2^ℕ with d(p, q) = 2^{-i} for the least differing i,
- ℝ^ℕ with d(x, y) = sup_n 2^{-n}|x_n − y_n| / (1 + |x_n − y_n|).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence, Tuple

from kernel.seq import Seq
from kernel.seqcode import binary_string, cantor_unpair, decode
from spaces.creal import CReal, as_creal
from spaces.rationals import rat

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ball:
    """Open ball B(center; radius). A radius of 0 gives the empty ball."""

    center: Any
    radius: Fraction

    @property
    def is_empty(self) -> bool:
        return self.radius <= 0


class MetricSpaceDesc:
    """Base description; subclasses fix the dense points and the metric."""

    name = "metric"
    exact = True

    def dense_point(self, n: int) -> Any:
        raise NotImplementedError

    def dist(self, a: Any, b: Any) -> CReal:
        raise NotImplementedError

    def ball(self, n: int) -> Ball:
        c, r = cantor_unpair(n)
        return Ball(self.dense_point(c), abs(rat(r)))

    def in_ball(self, point: Any, ball: Ball) -> bool:
        """Exact membership of a dense point."""
        if ball.is_empty:
            return False
        return self.dist(point, ball.center).approx(0) < ball.radius

    def __repr__(self) -> str:
        return f"<{self.name}>"


class UnitInterval(MetricSpaceDesc):
    name = "I"

    def dense_point(self, n: int) -> Fraction:
        q = abs(rat(n))
        return q if q <= 1 else 1 / q

    def dist(self, a: Fraction, b: Fraction) -> CReal:
        return CReal.from_rational(abs(Fraction(a) - Fraction(b)))

    def point_dist(self, x: Any, b: Fraction) -> CReal:
        return abs(as_creal(x) - Fraction(b))

    def limit(self, center_at: Callable[[int], Fraction]) -> CReal:
        return CReal.from_function(lambda k: Fraction(center_at(k + 1)), label="lim")


class CantorSpace(MetricSpaceDesc):
    """Dense points are binary strings t, standing for t⌢0̄."""

    name = "2^N"

    def dense_point(self, n: int) -> tuple:
        return tuple(binary_string(n))

    @staticmethod
    def distance(a: Sequence[int], b: Sequence[int]) -> Fraction:
        length = max(len(a), len(b))
        for i in range(length):
            x = a[i] if i < len(a) else 0
            y = b[i] if i < len(b) else 0
            if x != y:
                return Fraction(1, 2 ** i)
        return Fraction(0)

    def dist(self, a: Sequence[int], b: Sequence[int]) -> CReal:
        return CReal.from_rational(self.distance(a, b))

    @staticmethod
    def cylinder_ball(t: Sequence[int]) -> Ball:
        """All extensions of t: B(t⌢0̄; 2^{-(|t|-1)})."""
        return Ball(tuple(t), Fraction(2) ** (1 - len(t)))

    def point_dist(self, x: Seq, b: Sequence[int]) -> CReal:
        """Distance from a point given by its bits; approx(k) reads k + 1 bits."""

        def approx_fn(k: int) -> Fraction:
            return self.distance(x.prefix(k + 1), tuple(b)[: k + 1])

        return CReal(approx_fn, label="d(x,t)")

    def limit(self, center_at: Callable[[int], Sequence[int]]) -> Seq:
        def rule(i: int) -> int:
            center = center_at(i + 2)
            return center[i] if i < len(center) else 0

        return Seq(rule=rule, label="lim")


def _squash(t: Fraction) -> Fraction:
    return t / (1 + t)


def cylinder_half_width(radius: Fraction, n: int) -> Optional[Fraction]:
    """
    Half-width of a d-ball of the given radius in coordinate n of ℝ^ℕ,
    or None when the coordinate is unconstrained (2^n·radius ≥ 1).
    """
    t = radius * (1 << n)
    if t >= 1:
        return None
    return t / (1 - t)


class RealSequenceSpace(MetricSpaceDesc):
    """ℝ^ℕ; dense points are finite tuples of rationals padded with zeros."""

    name = "R^N"

    def dense_point(self, n: int) -> Tuple[Fraction, ...]:
        return tuple(rat(k) for k in decode(n))

    @staticmethod
    def distance(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        best = Fraction(0)
        for n in range(max(len(x), len(y))):
            a = x[n] if n < len(x) else 0
            b = y[n] if n < len(y) else 0
            gap = abs(Fraction(a) - Fraction(b))
            if gap:
                best = max(best, _squash(gap) / (1 << n))
        return best

    def dist(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> CReal:
        return CReal.from_rational(self.distance(x, y))

    @staticmethod
    def point_distance(coord: Callable[[int], Any], y: Sequence[Fraction]) -> CReal:
        """Distance from a point with CReal coordinates to a dense point."""

        def approx_fn(k: int) -> Fraction:
            best = Fraction(0)
            for n in range(k + 2):
                b = Fraction(y[n]) if n < len(y) else Fraction(0)
                gap = abs(as_creal(coord(n)).approx(k + 2) - b)
                best = max(best, _squash(gap) / (1 << n))
            return best

        return CReal(approx_fn, label="d(x,y)")

    def in_ball(self, point: Sequence[Fraction], ball: Ball) -> bool:
        if ball.is_empty:
            return False
        return self.distance(point, ball.center) < ball.radius

    def point_dist(self, x: Seq, y: Sequence[Fraction]) -> CReal:
        return self.point_distance(lambda n: x[n], y)

    def truncate(self, x: Seq, n: int) -> Tuple[Fraction, ...]:
        """Coordinates m < n of x, each within 2^{-(n+2)}."""
        return tuple(as_creal(x[m]).approx(n + 2) for m in range(n))

    def limit(self, center_at: Callable[[int], Sequence[Fraction]]) -> Seq:
        """Coordinates of lim x^n, given d(x, x^n) ≤ 2^{-n+1}."""

        def coordinate(m: int) -> CReal:
            def approx_fn(k: int) -> Fraction:
                center = center_at(m + k + 2)
                return Fraction(center[m]) if m < len(center) else Fraction(0)

            return CReal(approx_fn, label=f"lim_{m}")

        return Seq(rule=coordinate, label="lim")


UNIT_INTERVAL = UnitInterval()
CANTOR = CantorSpace()
REAL_SEQUENCES = RealSequenceSpace()
