"""
Names of partial bounded linear functionals f_{(X, A, r)}.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, Sequence, Tuple

from banach.completion import BanachName, CPoint, point_add, point_norm, point_scale
from hyperspace.closed import ClosedPlus
from kernel.seq import Seq
from problems.base import Verdict
from spaces.creal import CReal, as_creal
from spaces.rationals import dyadic

logger = logging.getLogger(__name__)


@dataclass
class PFName:
    """
    space     the Banach space X
    subspace  ψ₊-name of the closed subspace A (a Seq of CPoints dense in A)
    func      x ↦ f(x) as a CReal, for x ∈ A
    norm_r    ‖f‖
    planted   a known norm-preserving extension to X, when one was built
    """

    space: BanachName
    subspace: ClosedPlus
    func: Callable[[CPoint], CReal]
    norm_r: CReal
    planted: Optional["PFName"] = None
    label: str = "f"

    def __call__(self, x: CPoint) -> CReal:
        return as_creal(self.func(x))

    def dense(self, i: int) -> CPoint:
        return self.subspace.points[i]


def whole_space(space: BanachName) -> ClosedPlus:
    """ψ₊-name of X itself: all the a_e(s)."""
    return ClosedPlus(space, Seq(rule=space.dense_point, label=f"dense({space.label})"))


def linear_functional(space: BanachName, weights: Callable[[int], Fraction], norm_r, label: str = "g") -> PFName:
    """g(∑ cᵢ e(i)) = ∑ cᵢ·wᵢ on all of X; the i-th representative is within 2^{-i} of the point."""

    def value(coeffs: Sequence[Fraction]) -> Fraction:
        return sum((c * weights(i) for i, c in enumerate(coeffs)), Fraction(0))

    r = as_creal(norm_r)

    def func(x: CPoint) -> CReal:
        if x.exact is not None:
            return CReal.from_rational(value(x.exact))
        shift = _bound_shift(r)
        return CReal.from_function(lambda k: value(x.rep(k + shift)), label=f"{label}({x.label})")

    return PFName(space, whole_space(space), func, r, label=label)


def _bound_shift(r: CReal) -> int:
    shift = 0
    while dyadic(shift) < r.upper_bound():
        shift += 1
    return shift


def check_linearity(f: PFName, samples: Iterable[Tuple[Fraction, CPoint, Fraction, CPoint]], k: int) -> Verdict:
    """Reject when f(αx + βy) and αf(x) + βf(y) certainly differ at precision k."""
    tolerance = dyadic(-k + 2)
    for alpha, x, beta, y in samples:
        combined = f(point_add(point_scale(alpha, x), point_scale(beta, y))).approx(k)
        separate = (f(x).scale(alpha) + f(y).scale(beta)).approx(k)
        if abs(combined - separate) > tolerance:
            logger.warning(f"Linearity check failed | functional={f.label}")
            return Verdict.REJECT
    return Verdict.ACCEPT


def check_bound(f: PFName, points: Iterable[CPoint], k: int, r: Any = None) -> Verdict:
    """Reject when |f(y)| > (r + 2^{-k})·‖y‖ is certain at precision k."""
    r = as_creal(f.norm_r if r is None else r)
    err = dyadic(-k - 2)
    r_up = r.approx(k + 2) + err + dyadic(-k)
    for y in points:
        value_lo = abs(f(y).approx(k + 2)) - err
        if value_lo > r_up * (point_norm(y).approx(k + 2) + err):
            logger.warning(f"Bound check failed | functional={f.label} | point={y}")
            return Verdict.REJECT
    return Verdict.ACCEPT


def check_extension(f: PFName, g: PFName, count: int, k: int) -> Verdict:
    """g agrees with f on the first `count` dense points of A, at precision k."""
    tolerance = dyadic(-k + 2)
    for i in range(count):
        y = f.dense(i)
        if abs(g(y).approx(k) - f(y).approx(k)) > tolerance:
            logger.warning(f"Extension check failed | f={f.label} | g={g.label} | point={i}")
            return Verdict.REJECT
    return Verdict.ACCEPT
