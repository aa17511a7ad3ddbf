"""
Range and Sup.

Range(p) is the characteristic function of ran(p) for injective p.
Sup maps a sequence in I^ℕ to its least upper bound.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple

from config import settings
from kernel.errors import MalformedInstanceError
from kernel.seq import Seq
from problems.base import Verdict
from spaces.creal import CReal

logger = logging.getLogger(__name__)

SPOT_CHECK = 16


@dataclass
class RangeInstance:
    """
    Injective p together with a search modulus: every value v in ran(p)
    occurs at an index < index_bound(v).
    """

    p: Seq
    index_bound: Callable[[int], int] = lambda v: settings.WITNESS_BOUND
    sup_value: Optional[Fraction] = None
    planted: Optional[Seq] = None


def in_range(p: Seq, n: int, search: int) -> bool:
    return any(p[m] == n for m in range(search))


def range_search(inst: RangeInstance) -> Seq:
    """Range(p) by bounded search, the Range oracle on instances with a search modulus."""
    return Seq(rule=lambda n: int(in_range(inst.p, n, inst.index_bound(n))), label=f"ran({inst.p.label})")


def verify_range(inst: RangeInstance, y: Seq, depth: int) -> Verdict:
    for n in range(depth):
        value = y[n]
        if value not in (0, 1):
            return Verdict.REJECT
        if value != int(in_range(inst.p, n, inst.index_bound(n))):
            return Verdict.REJECT
    return Verdict.ACCEPT


def check_injective(inst: RangeInstance, depth: int) -> Verdict:
    values = inst.p.prefix(depth)
    return Verdict.ACCEPT if len(set(values)) == len(values) else Verdict.REJECT


@dataclass
class SupInstance:
    """
    xs with optional planted metadata: the finite support, the exact sup, or
    a modulus m with |x_j − sup| ≤ 2^{-k} for all j ≥ modulus(k) when xs is
    nondecreasing.
    """

    xs: Seq
    support: Optional[Tuple[Fraction, ...]] = None
    planted_sup: Optional[Fraction] = None
    modulus: Optional[Callable[[int], int]] = None

    @property
    def planted(self) -> Optional[CReal]:
        value = self.planted_value
        if value is not None:
            return CReal.from_rational(value)
        if self.modulus is not None:
            return CReal.from_function(lambda k: self.xs[self.modulus(k + 1)].approx(k + 1), label=f"sup({self.xs.label})")
        return None

    @property
    def planted_value(self) -> Optional[Fraction]:
        if self.planted_sup is not None:
            return self.planted_sup
        if self.support:
            return max(self.support)
        return None


def verify_sup(inst: SupInstance, y: CReal, depth: int) -> Verdict:
    """With planted metadata the value is checked to 2^{-depth}; otherwise only upper-bound violations are visible."""
    tolerance = Fraction(1, 2 ** depth)
    estimate = y.approx(depth + 1)
    for n in range(min(depth, SPOT_CHECK)):
        if inst.xs[n].approx(depth + 1) > estimate + tolerance:
            return Verdict.REJECT
    target = inst.planted
    if target is None:
        return Verdict.UNDECIDED
    return Verdict.ACCEPT if abs(estimate - target.approx(depth + 2)) <= tolerance + Fraction(1, 2 ** (depth + 1)) else Verdict.REJECT


def sup_oracle(inst: SupInstance) -> CReal:
    """The planted supremum, after spot-checking the metadata against the listed values."""
    target = inst.planted
    if target is None:
        raise MalformedInstanceError("sup oracle needs planted support, a planted sup or a modulus")
    precision = 20
    slack = Fraction(1, 2 ** (precision - 1))
    bound = target.approx(precision)
    for n in range(SPOT_CHECK):
        value = inst.xs[n].approx(precision)
        if value > bound + slack:
            raise MalformedInstanceError(f"x_{n} ≈ {value} exceeds the planted sup {bound}")
        if inst.support and not any(abs(value - v) <= slack for v in inst.support):
            raise MalformedInstanceError(f"x_{n} ≈ {value} is not among the planted values")
    return target
