"""
Constructive Banach completion of a noted pseudo-normed space.

Points are effective Cauchy sequences of formal combinations: the i-th
representative lies within 2^{-i} of the point. Representatives are kept
as coefficient tuples; points known to be finite combinations also carry
that combination in `exact`, which keeps their arithmetic exact.

A BanachName also exposes its δ_𝔅 information as a raw fact stream. A
fact ⟨i, s, t, j⟩ says a_ℚ(i) < d(a_e(s), a_e(t)) < a_ℚ(j); the stream
slot ⟨c, m⟩ holds c + 1 when fact c is certified at stage m and the
padding value 0 otherwise.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from config import settings
from kernel.errors import FuelExhaustedError
from kernel.seq import Seq
from kernel.seqcode import FinSeq, cantor_pair, cantor_unpair, decode, encode, tuple_code, tuple_decode
from banach.pseudonorm import Coeffs, PseudoNorm, add_coeffs, coefficients, normalize, scale_coeffs, unit
from spaces.creal import CReal, Ordering, as_creal, creal_cmp, log2_ceil
from spaces.metric import MetricSpaceDesc
from spaces.rationals import dyadic, rat, rat_index

logger = logging.getLogger(__name__)


@dataclass
class CPoint:
    space: "BanachName"
    reps: Seq
    exact: Optional[Coeffs] = None
    label: str = "x"

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"CPoint({list(map(str, self.exact))})"
        return f"CPoint({self.label})"

    def rep(self, i: int) -> Coeffs:
        return self.reps[i]

    def code(self, i: int) -> int:
        """FinSeq code of the i-th representative over a_ℚ."""
        return encode([rat_index(c) for c in self.rep(i)])


def constant_point(space: "BanachName", coeffs: Sequence, label: Optional[str] = None) -> CPoint:
    coeffs = normalize(coeffs)
    return CPoint(space, Seq.constant(coeffs), exact=coeffs, label=label or str(list(map(str, coeffs))))


def point_add(x: CPoint, y: CPoint) -> CPoint:
    """[c_{s_i}] + [c_{t_i}] = [c_{s_{i+1}} + c_{t_{i+1}}]."""
    if x.exact is not None and y.exact is not None:
        return constant_point(x.space, add_coeffs(x.exact, y.exact))
    reps = Seq(rule=lambda i: add_coeffs(x.rep(i + 1), y.rep(i + 1)), label=f"{x.label}+{y.label}")
    return CPoint(x.space, reps, label=f"({x.label}+{y.label})")


def point_scale(a, x: CPoint) -> CPoint:
    """
    a·[c_{s_i}] = [a_{k+i}·c_{s_{k+i}}] where a_j approximates a within 2^{-j}
    and |a_0| + ‖c_{s_0}‖ + 2 < 2^k.
    """
    a = as_creal(a)
    if a.exact is not None and x.exact is not None:
        return constant_point(x.space, scale_coeffs(a.exact, x.exact))
    bound = abs(a.approx(0)) + x.space.norm.norm(x.rep(0)).upper_bound() + 2
    shift = log2_ceil(bound) + 1
    reps = Seq(rule=lambda i: scale_coeffs(a.approx(shift + i), x.rep(shift + i)), label=f"{a.label}·{x.label}")
    return CPoint(x.space, reps, label=f"{a.label}·{x.label}")


def point_sub(x: CPoint, y: CPoint) -> CPoint:
    return point_add(x, point_scale(-1, y))


def point_norm(x: CPoint) -> CReal:
    """‖[c_{s_i}]‖ = lim ‖c_{s_i}‖."""
    norm = x.space.norm
    if x.exact is not None:
        return norm.norm(x.exact)
    return CReal.from_function(lambda k: norm.norm(x.rep(k + 2)).approx(k + 2), label=f"‖{x.label}‖")


def point_dist(x: CPoint, y: CPoint) -> CReal:
    return point_norm(point_sub(x, y))


def a_e(s: Sequence[int], space: "BanachName") -> CPoint:
    """a_e(s) = ∑_{i<|s|} a_ℚ(s(i))·e(i)."""
    return constant_point(space, coefficients(s), label=f"a_e{FinSeq(s)!r}")


class BanachName(MetricSpaceDesc):
    """
    A name of an effective Banach space in 𝔅, generated from its pseudo-norm.

    Dense points are the a_e(s); the fundamental sequence is e(n) = [c_{0̄[n]*1}].
    """

    name = "banach"

    def __init__(self, norm: PseudoNorm, label: Optional[str] = None):
        self.norm = norm
        self.label = label or norm.label
        self.name = f"X({self.label})"
        self._basis = None
        logger.debug(f"BanachName initialized | norm={norm.label}")

    def e(self, n: int) -> CPoint:
        return constant_point(self, unit(n), label=f"e({n})")

    def point(self, coeffs: Sequence) -> CPoint:
        return constant_point(self, coeffs)

    def zero(self) -> CPoint:
        return constant_point(self, (), label="0")

    def dense_point(self, n: int) -> CPoint:
        return a_e(decode(n), self)

    def dist(self, a: CPoint, b: CPoint) -> CReal:
        return point_dist(a, b)

    def in_ball(self, point: CPoint, ball) -> bool:
        if ball.is_empty:
            return False
        return creal_cmp(self.dist(point, ball.center), ball.radius, settings.DEFAULT_FUEL) is Ordering.LT

    # δ_𝔅 facts

    def code_distance(self, s: Sequence[int], t: Sequence[int]) -> CReal:
        return self.norm.norm(add_coeffs(coefficients(s), scale_coeffs(-1, coefficients(t))))

    def fact_holds(self, code: int, fuel: int) -> bool:
        """⟨i, s, t, j⟩ certified: a_ℚ(i) < d(a_e(s), a_e(t)) < a_ℚ(j)."""
        i, s, t, j = tuple_decode(code, 4)
        lo, hi = rat(i), rat(j)
        if lo >= hi:
            return False
        d = self.code_distance(decode(s), decode(t))
        return creal_cmp(lo, d, fuel) is Ordering.LT and creal_cmp(d, hi, fuel) is Ordering.LT

    def fact_stream(self) -> Seq:
        def rule(slot: int) -> int:
            code, stage = cantor_unpair(slot)
            return code + 1 if self.fact_holds(code, stage) else 0

        return Seq(rule=rule, label=f"facts({self.label})")

    @classmethod
    def from_fact_stream(cls, stream: Seq, stages: int = 8, scan: int = 64, label: str = "from-facts") -> "BanachName":
        """
        Rebuild the pseudo-norm from a slot-layout fact stream: ‖c_s‖ at
        precision k is the midpoint of a listed bracket ⟨i, s, λ, j⟩ of
        width at most 2^{1−k}.
        """

        def fn(coeffs: Coeffs) -> CReal:
            s_code = encode([rat_index(c) for c in coeffs])

            def approx_fn(k: int) -> Fraction:
                step = dyadic(-k)
                for m in range(scan):
                    lo = (m - 1) * step
                    hi = lo + 2 * step
                    code = tuple_code(rat_index(lo), s_code, 0, rat_index(hi))
                    for stage in range(stages):
                        if stream[cantor_pair(code, stage)] == code + 1:
                            return lo + step
                raise FuelExhaustedError(f"no listed bracket of width 2^{1 - k} for {s_code} within {scan} steps", scan)

            return CReal.from_function(approx_fn, label=f"‖c_{s_code}‖")

        return cls(PseudoNorm(fn, label=label), label=label)
