"""
Names of closed and compact sets.

ClosedPlus   ψ₊: a sequence of points dense in A
ClosedMinus  ψ₋: rational balls whose union is X ∖ A (radius 0 pads)
CompactName  κ / κ₋: an enumeration of finite ball covers of K
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from config import settings
from kernel.errors import FuelExhaustedError
from kernel.seq import Seq
from kernel.seqcode import binary_string
from spaces.metric import CANTOR, UNIT_INTERVAL, Ball, CantorSpace, MetricSpaceDesc
from spaces.rationals import dyadic

logger = logging.getLogger(__name__)

KAPPA = "kappa"
KAPPA_MINUS = "kappa-minus"


@dataclass
class ClosedPlus:
    space: MetricSpaceDesc
    points: Seq


@dataclass
class ClosedMinus:
    space: MetricSpaceDesc
    balls: Seq

    def excluded_by(self, point: Any, count: int) -> Optional[int]:
        """Index of the first of the first `count` balls containing the dense point."""
        for i in range(count):
            if self.space.in_ball(point, self.balls[i]):
                return i
        return None


@dataclass(frozen=True)
class FiniteCover:
    """A finite list of balls; `near` narrows the balls worth testing around a point."""

    balls: Tuple[Ball, ...]
    near: Optional[Callable[[Any, Fraction], Iterable[int]]] = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.balls)

    @property
    def mesh(self) -> Fraction:
        return max(ball.radius for ball in self.balls)

    def centers(self) -> List[Any]:
        return [ball.center for ball in self.balls]

    def candidates(self, point: Any, radius: Fraction) -> List[int]:
        if self.near is None:
            return list(range(len(self.balls)))
        return sorted(set(self.near(point, radius)))


@dataclass
class CompactName:
    space: MetricSpaceDesc
    covers: Seq
    flavor: str = KAPPA
    fuel: int = settings.DEFAULT_FUEL
    _levels: Dict[int, FiniteCover] = field(default_factory=dict, repr=False)

    def cover_at(self, n: int) -> FiniteCover:
        """The first listed cover whose radii are all at most 2^{-n}."""
        if n not in self._levels:
            bound = dyadic(-n)
            for j in range(self.fuel):
                cover = self.covers[j]
                if len(cover) and cover.mesh <= bound:
                    self._levels[n] = cover
                    break
            else:
                raise FuelExhaustedError(f"no 2^-{n} cover among the first {self.fuel} listed covers", self.fuel)
        return self._levels[n]

    def level_size(self, n: int) -> int:
        return len(self.cover_at(n))

    def center(self, n: int, j: int) -> Any:
        return self.cover_at(n).balls[j].center


# Unit interval

def interval_grid(n: int, offset: int = 0) -> FiniteCover:
    """Balls of radius 2^{-n} at the points i/2^n of I, listed from i = offset cyclically."""
    size = (1 << n) + 1
    step = dyadic(-n)
    balls = tuple(Ball(((j + offset) % size) * step, step) for j in range(size))

    def near(point: Any, radius: Fraction) -> Iterable[int]:
        lo = max(0, int((Fraction(point) - radius) / step))
        hi = min(size - 1, int((Fraction(point) + radius) / step) + 1)
        return [(i - offset) % size for i in range(lo, hi + 1)]

    return FiniteCover(balls, near=near)


def unit_interval_name(offsets: Optional[Callable[[int], int]] = None, junk: bool = False) -> CompactName:
    """κ-name of I; optional per-level rotations and coarse junk covers listed in between."""
    shift = offsets or (lambda n: 0)
    coarse = FiniteCover((Ball(Fraction(1, 2), Fraction(1)),))

    def rule(j: int) -> FiniteCover:
        if junk:
            if j % 2 == 0:
                return coarse
            j //= 2
        return interval_grid(j, shift(j))

    return CompactName(UNIT_INTERVAL, Seq(rule=rule, label="covers(I)"))


def interval_complement(lo: Fraction, hi: Fraction) -> ClosedMinus:
    """ψ₋-name of [lo, hi] ⊆ I: balls around 0 and 1 creeping up to the endpoints."""
    lo, hi = Fraction(lo), Fraction(hi)

    def rule(i: int) -> Ball:
        j, right = divmod(i, 2)
        slack = dyadic(-4 * (j + 1))
        if right:
            return Ball(Fraction(1), max(Fraction(0), 1 - hi - slack))
        return Ball(Fraction(0), max(Fraction(0), lo - slack))

    return ClosedMinus(UNIT_INTERVAL, Seq(rule=rule, label=f"I∖[{lo},{hi}]"))


# Cantor space

def cantor_level(n: int, offset: int = 0) -> FiniteCover:
    """The cylinders of the strings of length n + 1, as balls of radius 2^{-n}."""
    length = n + 1
    size = 1 << length
    radius = dyadic(-n)

    def string(v: int) -> tuple:
        return tuple((v >> (length - 1 - i)) & 1 for i in range(length))

    balls = tuple(Ball(string((j + offset) % size), radius) for j in range(size))

    def near(point: Any, r: Fraction) -> Iterable[int]:
        agree = 0
        while dyadic(-agree) > r and agree < length:
            agree += 1
        head = tuple(point[:agree]) + (0,) * max(0, agree - len(point))
        base = 0
        for bit in head:
            base = 2 * base + bit
        free = length - agree
        return [((base << free) + tail - offset) % size for tail in range(1 << free)]

    return FiniteCover(balls, near=near)


def cantor_space_name(offsets: Optional[Callable[[int], int]] = None) -> CompactName:
    shift = offsets or (lambda n: 0)
    return CompactName(CANTOR, Seq(rule=lambda n: cantor_level(n, shift(n)), label="covers(2^N)"))


def cantor_complement_tree(tree) -> ClosedMinus:
    """A_T = 2^ℕ ∖ ⋃ {B(t⌢0̄; 2^{-(|t|-1)}) : t ∉ T}, one ball per string in shortlex order."""

    def rule(j: int) -> Ball:
        t = tuple(binary_string(j))
        if tree.member(t):
            return Ball(t, Fraction(0))
        return CantorSpace.cylinder_ball(t)

    return ClosedMinus(CANTOR, Seq(rule=rule, label=f"A_{tree.label}"))
