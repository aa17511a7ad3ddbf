"""
Pseudo-norms on rational formal combinations of ℕ.

A formal combination c_s = ∑_{i<|s|} a_ℚ(s(i))·i is handled through its
coefficient tuple (a_ℚ(s(0)), a_ℚ(s(1)), ...). Trailing zeros never
change the value, so tuples are normalized before evaluation.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, Sequence, Tuple, Union

from kernel.errors import UnknownIdError
from spaces.creal import CReal, as_creal
from spaces.rationals import rat

logger = logging.getLogger(__name__)

Coeffs = Tuple[Fraction, ...]
NormValue = Union[CReal, Fraction, int]


def normalize(coeffs: Sequence) -> Coeffs:
    values = [Fraction(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def coefficients(s: Sequence[int]) -> Coeffs:
    """Coefficient tuple of c_s."""
    return normalize(rat(k) for k in s)


def add_coeffs(a: Sequence[Fraction], b: Sequence[Fraction]) -> Coeffs:
    size = max(len(a), len(b))
    return normalize((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size))


def scale_coeffs(q: Fraction, a: Sequence[Fraction]) -> Coeffs:
    return normalize(Fraction(q) * c for c in a)


def unit(n: int) -> Coeffs:
    return (Fraction(0),) * n + (Fraction(1),)


class PseudoNorm:
    """
    A computable pseudo-norm: ‖c‖ for every coefficient tuple c.

    Args:
        fn: coefficient tuple -> CReal (or an exact rational)
        label: short id used in logs and instance files
        params: constructor parameters, kept for serialization
    """

    def __init__(self, fn: Callable[[Coeffs], NormValue], label: str = "norm", params: Dict = None):
        self._fn = fn
        self.label = label
        self.params = params or {}
        self._cache: Dict[Coeffs, CReal] = {}

    def __repr__(self) -> str:
        return f"PseudoNorm({self.label})"

    def norm(self, coeffs: Sequence) -> CReal:
        key = normalize(coeffs)
        if key not in self._cache:
            self._cache[key] = as_creal(self._fn(key)) if key else CReal.from_rational(0)
        return self._cache[key]

    def eval(self, s: Sequence[int]) -> CReal:
        """‖c_s‖ for s a finite sequence of a_ℚ indices."""
        return self.norm(coefficients(s))


# Built-in pseudo-norms

def max_norm_two_generators() -> PseudoNorm:
    """‖c‖ = max(|c₀|, |c₁|); every generator past 1 is pseudo-null."""

    def fn(c: Coeffs) -> Fraction:
        head = list(c[:2]) + [Fraction(0)] * (2 - len(c[:2]))
        return max(abs(head[0]), abs(head[1]))

    return PseudoNorm(fn, label="max2")


def rational_norm(vectors: Sequence[Sequence], kind: str = "max") -> PseudoNorm:
    """
    Generator i is the rational vector vectors[i] (later generators are 0);
    ‖c‖ is the max or ℓ₁ norm of ∑ cᵢ·vectors[i].
    """
    if kind not in ("max", "l1"):
        raise ValueError(f"unsupported norm kind {kind!r}")
    vectors = [tuple(Fraction(x) for x in v) for v in vectors]
    dim = max((len(v) for v in vectors), default=0)

    def fn(c: Coeffs) -> Fraction:
        total = [Fraction(0)] * dim
        for i, coeff in enumerate(c[: len(vectors)]):
            for j, x in enumerate(vectors[i]):
                total[j] += coeff * x
        if not total:
            return Fraction(0)
        if kind == "max":
            return max(abs(x) for x in total)
        return sum((abs(x) for x in total), Fraction(0))

    params = {"vectors": [[str(x) for x in v] for v in vectors], "kind": kind}
    return PseudoNorm(fn, label=f"rational-{kind}", params=params)


NORMS: Dict[str, Callable[..., PseudoNorm]] = {
    "max2": max_norm_two_generators,
    "rational": rational_norm,
}


def build_norm(norm_id: str, **params) -> PseudoNorm:
    if norm_id not in NORMS:
        raise UnknownIdError(f"unknown pseudo-norm {norm_id!r}; known: {sorted(NORMS)}")
    return NORMS[norm_id](**params)
