"""
Boxes ∏ [−|x_n|, |x_n|] in ℝ^ℕ as compact sets.

Under the sup metric a ball of radius 2^{-N} pins only coordinates n < N,
each to an open interval of half-width t/(1−t) with t = 2^{n−N}. The box
is named positively by clamping the dense points into it, and by finite
covers of product-grid balls. A finite family of balls covers the box
exactly when no corner point, built from the interval endpoints and the
lower box bound in each pinned coordinate, escapes all of them.
"""
import itertools
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from kernel.seq import Seq
from hyperspace.closed import KAPPA_MINUS, ClosedPlus, CompactName, FiniteCover
from spaces.creal import CReal, Number, as_creal, creal_max, creal_min
from spaces.metric import REAL_SEQUENCES, Ball, cylinder_half_width
from spaces.rationals import dyadic

logger = logging.getLogger(__name__)

RADIUS_PRECISION = 16


class ProductPoint(Seq):
    """A point (x_n) of ℝ^ℕ; coordinate n is a CReal."""

    @classmethod
    def of(cls, coord: Callable[[int], Number], label: str = "x") -> "ProductPoint":
        return cls(rule=lambda n: as_creal(coord(n)), label=label)

    @classmethod
    def from_values(cls, values: Sequence, label: str = "x") -> "ProductPoint":
        values = [Fraction(v) for v in values]
        return cls.of(lambda n: values[n] if n < len(values) else Fraction(0), label=label)

    def dist_to(self, y: Sequence[Fraction]) -> CReal:
        return REAL_SEQUENCES.point_dist(self, y)


def radius_bound(r: CReal) -> Fraction:
    """An upper bound for |r|, exact on rational radii."""
    r = as_creal(r)
    if r.exact is not None:
        return abs(r.exact)
    return abs(r.approx(RADIUS_PRECISION)) + dyadic(-RADIUS_PRECISION)


def clamp(radii: Seq, y: Sequence[Fraction]) -> ProductPoint:
    """ρ((x_n), y) = (max{−|x_n|, min{y_n, |x_n|}})."""

    def coord(n: int) -> CReal:
        r = abs(as_creal(radii[n]))
        value = Fraction(y[n]) if n < len(y) else Fraction(0)
        return creal_max(-r, creal_min(value, r))

    return ProductPoint.of(coord, label="ρ")


def ball_intervals(ball: Ball) -> Optional[Dict[int, Tuple[Fraction, Fraction]]]:
    """Open interval per pinned coordinate; None for the empty ball."""
    if ball.is_empty:
        return None
    intervals = {}
    n = 0
    while True:
        w = cylinder_half_width(ball.radius, n)
        if w is None:
            return intervals
        c = Fraction(ball.center[n]) if n < len(ball.center) else Fraction(0)
        intervals[n] = (c - w, c + w)
        n += 1


def corner_test(bounds: Callable[[int], Fraction], balls: Sequence[Ball]) -> bool:
    """True iff ∏ [−bounds(n), bounds(n)] ⊆ ⋃ balls."""
    shapes = [shape for shape in (ball_intervals(b) for b in balls) if shape is not None]
    if any(not shape for shape in shapes):
        return True
    if not shapes:
        return False
    top = max(max(shape) for shape in shapes)
    options: List[List[Fraction]] = []
    for n in range(top + 1):
        r = bounds(n)
        values = {-r}
        for shape in shapes:
            if n in shape:
                values.update(shape[n])
        options.append(sorted(v for v in values if -r <= v <= r))

    def covered(gamma: Tuple[Fraction, ...]) -> bool:
        return any(all(lo < gamma[n] < hi for n, (lo, hi) in shape.items()) for shape in shapes)

    return all(covered(gamma) for gamma in itertools.product(*options))


def grid_cover(bounds: Callable[[int], Fraction], level: int) -> FiniteCover:
    """Balls of radius 2^{-level} centered on a product grid over the pinned coordinates."""
    radius = dyadic(-level)
    axes: List[List[Fraction]] = []
    widths: List[Fraction] = []
    for n in range(level):
        w = cylinder_half_width(radius, n)
        r = bounds(n)
        widths.append(w)
        if r == 0:
            axes.append([Fraction(0)])
            continue
        count = int(2 * r / w) + 1
        axes.append(sorted({min(-r + j * w, r) for j in range(count + 1)}))
    balls = tuple(Ball(tuple(center), radius) for center in itertools.product(*axes))

    def near(point, reach: Fraction):
        ranges = []
        for n, axis in enumerate(axes):
            span = cylinder_half_width(reach, n)
            if span is None:
                ranges.append(range(len(axis)))
                continue
            x = Fraction(point[n]) if n < len(point) else Fraction(0)
            ranges.append([j for j, c in enumerate(axis) if abs(c - x) < span + widths[n]])
        indices = []
        for combo in itertools.product(*ranges):
            index = 0
            for n, j in enumerate(combo):
                index = index * len(axes[n]) + j
            indices.append(index)
        return indices

    return FiniteCover(balls, near=near)


def compact_box(radii: Seq) -> Tuple[CompactName, ClosedPlus]:
    """κ-name (grid covers, level j at index j) and ψ₊-name (clamped dense points) of ∏ [−|r_n|, |r_n|]."""
    cache: Dict[int, Fraction] = {}

    def bounds(n: int) -> Fraction:
        if n not in cache:
            cache[n] = radius_bound(radii[n])
        return cache[n]

    covers = Seq(rule=lambda j: grid_cover(bounds, j), label=f"covers({radii.label})")
    points = Seq(rule=lambda n: clamp(radii, REAL_SEQUENCES.dense_point(n)), label=f"ρ({radii.label})")
    return CompactName(REAL_SEQUENCES, covers), ClosedPlus(REAL_SEQUENCES, points)


def kappa_minus_name(radii: Seq, candidates: Seq) -> CompactName:
    """κ₋-name listing the candidate ball families certified to cover the box; the rest list as empty."""

    def rule(j: int) -> FiniteCover:
        balls = tuple(candidates[j])
        if corner_test(lambda n: radius_bound(radii[n]), balls):
            return FiniteCover(balls)
        return FiniteCover(())

    return CompactName(REAL_SEQUENCES, Seq(rule=rule, label="kappa-minus"), flavor=KAPPA_MINUS)
