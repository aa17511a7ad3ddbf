"""
Cauchy-name reals.

A CReal is given by approx(k), a rational with |approx(k) − x| ≤ 2^{-k}.
Values known to be rational keep that value in `exact` and approximate
it exactly, so arithmetic on rational inputs stays exact.
"""
import logging
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterable, Optional, Union

from kernel.errors import InvalidNameError
from kernel.seq import Seq
from spaces.rationals import rat, rat_index, to_fraction

logger = logging.getLogger(__name__)

Number = Union["CReal", Fraction, int]


def log2_ceil(q: Fraction) -> int:
    """Least m ≥ 0 with 2^m ≥ q."""
    m = 0
    while Fraction(2) ** m < q:
        m += 1
    return m


def round_dyadic(q: Fraction, k: int) -> Fraction:
    """Nearest multiple of 2^{-k}."""
    scale = 1 << k
    return Fraction(round(q * scale), scale)


class Ordering(str, Enum):
    LT = "lt"
    GT = "gt"
    UNKNOWN = "unknown"


class CReal:
    def __init__(self, approx_fn: Callable[[int], Fraction], label: str = "x", exact: Optional[Fraction] = None):
        self._approx_fn = approx_fn
        self._cache: Dict[int, Fraction] = {}
        self.label = label
        self.exact = exact

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"CReal({self.exact})"
        return f"CReal({self.label})"

    def approx(self, k: int) -> Fraction:
        if k < 0:
            raise ValueError(f"precision must be non-negative, got {k}")
        if self.exact is not None:
            return self.exact
        if k not in self._cache:
            self._cache[k] = Fraction(self._approx_fn(k))
        return self._cache[k]

    @property
    def name(self) -> Seq:
        """Cauchy name over a_ℚ: d(a(p(i)), a(p(j))) ≤ 2^{-i}."""
        return Seq(rule=lambda i: rat_index(self.approx(i + 1)), label=f"name({self.label})")

    # Constructors

    @classmethod
    def from_rational(cls, q) -> "CReal":
        q = to_fraction(q)
        return cls(lambda k: q, label=str(q), exact=q)

    @classmethod
    def from_name(cls, p: Seq, label: str = "named") -> "CReal":
        """Read a Cauchy name over a_ℚ, checking the modulus between neighbours."""

        def approx_fn(k: int) -> Fraction:
            a_k = rat(p[k])
            a_next = rat(p[k + 1])
            if abs(a_k - a_next) > Fraction(1, 2 ** k):
                raise InvalidNameError(f"{label}: modulus violated at index {k}")
            return a_k

        return cls(approx_fn, label=label)

    @classmethod
    def from_function(cls, approx_fn: Callable[[int], Fraction], label: str = "fn") -> "CReal":
        return cls(approx_fn, label=label)

    # Arithmetic

    def __add__(self, other: Number) -> "CReal":
        other = as_creal(other)
        if self.exact is not None and other.exact is not None:
            return CReal.from_rational(self.exact + other.exact)
        return CReal(
            lambda k: round_dyadic(self.approx(k + 2) + other.approx(k + 2), k + 1),
            label=f"({self.label}+{other.label})",
        )

    __radd__ = __add__

    def __neg__(self) -> "CReal":
        if self.exact is not None:
            return CReal.from_rational(-self.exact)
        return CReal(lambda k: -self.approx(k), label=f"-{self.label}")

    def __sub__(self, other: Number) -> "CReal":
        return self + (-as_creal(other))

    def __rsub__(self, other: Number) -> "CReal":
        return as_creal(other) - self

    def __mul__(self, other: Number) -> "CReal":
        other = as_creal(other)
        if self.exact is not None and other.exact is not None:
            return CReal.from_rational(self.exact * other.exact)
        if other.exact is not None:
            return self.scale(other.exact)
        if self.exact is not None:
            return other.scale(self.exact)
        bound = abs(self.approx(0)) + abs(other.approx(0)) + 3
        shift = log2_ceil(bound)

        def approx_fn(k: int) -> Fraction:
            m = k + shift + 2
            return round_dyadic(self.approx(m) * other.approx(m), k + 1)

        return CReal(approx_fn, label=f"({self.label}·{other.label})")

    __rmul__ = __mul__

    def scale(self, q) -> "CReal":
        q = to_fraction(q)
        if self.exact is not None:
            return CReal.from_rational(self.exact * q)
        if q == 0:
            return CReal.from_rational(0)
        shift = log2_ceil(abs(q))
        return CReal(lambda k: round_dyadic(q * self.approx(k + shift + 1), k + 1), label=f"{q}·{self.label}")

    def __abs__(self) -> "CReal":
        if self.exact is not None:
            return CReal.from_rational(abs(self.exact))
        return CReal(lambda k: abs(self.approx(k)), label=f"|{self.label}|")

    def upper_bound(self) -> Fraction:
        return self.approx(0) + 1

    def lower_bound(self) -> Fraction:
        return self.approx(0) - 1


def as_creal(value: Number) -> CReal:
    if isinstance(value, CReal):
        return value
    return CReal.from_rational(value)


def creal_max(x: Number, y: Number) -> CReal:
    x, y = as_creal(x), as_creal(y)
    if x.exact is not None and y.exact is not None:
        return CReal.from_rational(max(x.exact, y.exact))
    return CReal(lambda k: max(x.approx(k), y.approx(k)), label=f"max({x.label},{y.label})")


def creal_min(x: Number, y: Number) -> CReal:
    return -creal_max(-as_creal(x), -as_creal(y))


def creal_sum(terms: Iterable[Number]) -> CReal:
    terms = [as_creal(t) for t in terms]
    if not terms:
        return CReal.from_rational(0)
    if all(t.exact is not None for t in terms):
        return CReal.from_rational(sum((t.exact for t in terms), Fraction(0)))
    shift = log2_ceil(Fraction(len(terms))) + 1

    def approx_fn(k: int) -> Fraction:
        return round_dyadic(sum((t.approx(k + shift) for t in terms), Fraction(0)), k + 1)

    return CReal(approx_fn, label="sum")


def creal_arith(op: str, x: Number, y: Number) -> CReal:
    if op == "+":
        return as_creal(x) + y
    if op == "-":
        return as_creal(x) - y
    if op in ("*", "×"):
        return as_creal(x) * y
    raise ValueError(f"unsupported operation {op!r}")


def creal_cmp(x: Number, y: Number, fuel: int) -> Ordering:
    """lt/gt when separated by disjoint rational intervals at some precision ≤ fuel."""
    x, y = as_creal(x), as_creal(y)
    for k in range(fuel + 1):
        a = x.approx(k + 1)
        b = y.approx(k + 1)
        gap = Fraction(1, 2 ** k)
        if a - b > gap:
            return Ordering.GT
        if b - a > gap:
            return Ordering.LT
    return Ordering.UNKNOWN


def certify_lt(x: Number, y: Number, fuel: int) -> bool:
    return creal_cmp(x, y, fuel) is Ordering.LT
