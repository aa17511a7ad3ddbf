"""
The fixed enumeration a_ℚ of the rationals.

a_ℚ(0) = 0, a_ℚ(2k−1) = cw(k), a_ℚ(2k) = −cw(k), where cw(k) is the k-th
node (breadth first, root at k = 1) of the Calkin–Wilf tree. This gives
0, 1, −1, 1/2, −1/2, 2, −2, 1/3, −1/3, ...
"""
import itertools
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]


def calkin_wilf(k: int) -> Fraction:
    if k < 1:
        raise ValueError(f"Calkin–Wilf positions start at 1, got {k}")
    a, b = 1, 1
    # runs of equal bits act as repeated additions
    for bit, run in itertools.groupby(bin(k)[3:]):
        count = sum(1 for _ in run)
        if bit == "0":
            b += count * a
        else:
            a += count * b
    return Fraction(a, b)


def calkin_wilf_index(q: Fraction) -> int:
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"Calkin–Wilf tree holds positive rationals only, got {q}")
    a, b = q.numerator, q.denominator
    runs = []
    while (a, b) != (1, 1):
        if a < b:
            count = (b - 1) // a
            b -= count * a
            runs.append((0, count))
        else:
            count = (a - 1) // b
            a -= count * b
            runs.append((1, count))
    position = 1
    for bit, count in reversed(runs):
        position = (position << count) | (((1 << count) - 1) if bit else 0)
    return position


def rat(n: int) -> Fraction:
    """a_ℚ(n)."""
    if n < 0:
        raise ValueError(f"negative index {n}")
    if n == 0:
        return Fraction(0)
    k = (n + 1) // 2
    value = calkin_wilf(k)
    return value if n % 2 == 1 else -value


def rat_index(q: RationalLike) -> int:
    """The n with a_ℚ(n) = q."""
    q = to_fraction(q)
    if q == 0:
        return 0
    if q > 0:
        return 2 * calkin_wilf_index(q) - 1
    return 2 * calkin_wilf_index(-q)


def to_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not a rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        value = Fraction(int(num), int(den))
    else:
        value = Fraction(int(text))
    return value


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def dyadic(exponent: int) -> Fraction:
    """2^exponent as an exact rational (exponent may be negative)."""
    return Fraction(2) ** exponent
