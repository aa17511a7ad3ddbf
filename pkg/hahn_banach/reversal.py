"""
Sep ≤ HB.

From p, q with disjoint ranges build X(p, q): the ℓ₁-sum of planes ℚ²
whose n-th norm is tilted by δ_n, where δ_n = 2^{-k} if p first hits n at
k, −2^{-k} if q does, and 0 otherwise. Generator 2n is (1, 0) in plane n
and 2n + 1 is (0, 1). The functional f(⟨(αᵢ, 0)⟩) = ∑ 2^{-i-1}αᵢ on the
first axes has norm 1, and every norm-1 extension g is forced to
g(z_n) = −2^{-n-1} on ran(p) and 2^{-n-1} on ran(q), z_n being the
generator 2n + 1.
"""
import logging
from fractions import Fraction
from typing import Callable, Optional

from kernel.seq import Seq
from kernel.seqcode import decode
from banach.completion import BanachName, CPoint
from banach.functionals import PFName, linear_functional
from banach.pseudonorm import Coeffs, PseudoNorm
from hyperspace.closed import ClosedPlus
from problems.base import Reduction
from problems.sep import SepInstance
from spaces.creal import CReal, creal_sum, log2_ceil
from spaces.rationals import dyadic, rat

logger = logging.getLogger(__name__)


def first_witness(p: Seq, q: Seq, n: int, limit: int) -> Optional[Fraction]:
    """δ_n when p or q hits n below `limit`, else None."""
    for i in range(limit):
        if p[i] == n:
            return dyadic(-i)
        if q[i] == n:
            return -dyadic(-i)
    return None


def delta_n(p: Seq, q: Seq, n: int, search_bound: Optional[int] = None) -> CReal:
    """δ_n; with a search bound the value is decided exactly, otherwise approx(k) searches k + 1 indices."""
    if search_bound is not None:
        found = first_witness(p, q, n, search_bound)
        return CReal.from_rational(found or 0)

    def approx_fn(k: int) -> Fraction:
        found = first_witness(p, q, n, k + 1)
        return found if found is not None else Fraction(0)

    return CReal.from_function(approx_fn, label=f"δ_{n}")


def coord_norm_exact(alpha, beta, delta) -> Fraction:
    alpha, beta, delta = Fraction(alpha), Fraction(beta), Fraction(delta)
    if delta > 0:
        return max(abs((1 - delta) / (1 + delta) * alpha + beta), abs(alpha - beta))
    if delta < 0:
        return max(abs((1 + delta) / (1 - delta) * alpha - beta), abs(alpha + beta))
    return max(abs(alpha + beta), abs(alpha - beta))


def coord_norm(alpha, beta, n: int, inst: SepInstance, search_bound: Optional[int] = None) -> CReal:
    """
    ‖(α, β)‖_n. Without a search bound the sign of δ_n is not decidable:
    while no witness has shown up below k + shift, |δ_n| ≤ 2^{-(k+shift)}
    and the δ = 0 formula is within 2^{-k}.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    bound = inst.witness_bound if search_bound is None else search_bound
    if alpha == 0:
        return CReal.from_rational(abs(beta))
    if bound is not None:
        return CReal.from_rational(coord_norm_exact(alpha, beta, first_witness(inst.p, inst.q, n, bound) or 0))
    shift = log2_ceil(4 * abs(alpha) + 1) + 1

    def approx_fn(k: int) -> Fraction:
        found = first_witness(inst.p, inst.q, n, k + shift)
        return coord_norm_exact(alpha, beta, found or 0)

    return CReal.from_function(approx_fn, label=f"‖({alpha},{beta})‖_{n}")


def block_norm(inst: SepInstance, search_bound: Optional[int] = None) -> PseudoNorm:
    """‖⟨(αᵢ, βᵢ)⟩_{i<k}‖ = ∑ 2^{-i-1}·‖(αᵢ, βᵢ)‖ᵢ."""

    def fn(c: Coeffs) -> CReal:
        blocks = (len(c) + 1) // 2
        terms = []
        for i in range(blocks):
            alpha = c[2 * i]
            beta = c[2 * i + 1] if 2 * i + 1 < len(c) else Fraction(0)
            terms.append(coord_norm(alpha, beta, i, inst, search_bound).scale(dyadic(-i - 1)))
        return creal_sum(terms)

    return PseudoNorm(fn, label=f"block({inst.label})", params={"sep": inst.label})


def first_axis_point(space: BanachName, s) -> CPoint:
    """⟨(a_ℚ(s(i)), 0)⟩_{i<|s|}."""
    coeffs = []
    for k in s:
        coeffs.extend([rat(k), Fraction(0)])
    return space.point(coeffs)


def z(space: BanachName, n: int) -> CPoint:
    return space.e(2 * n + 1)


def _first_axis_value(coeffs: Coeffs) -> Fraction:
    return sum((coeffs[2 * i] * dyadic(-i - 1) for i in range((len(coeffs) + 1) // 2)), Fraction(0))


def analytic_extension(space: BanachName, sign: Callable[[int], int], label: str = "g_ε") -> PFName:
    """g(⟨(αᵢ, βᵢ)⟩) = ∑ 2^{-i-1}(αᵢ + εᵢβᵢ)."""

    def weights(index: int) -> Fraction:
        block, second = divmod(index, 2)
        return dyadic(-block - 1) * (sign(block) if second else 1)

    return linear_functional(space, weights, 1, label=label)


def _planted_signs(inst: SepInstance) -> Optional[Callable[[int], int]]:
    if inst.planted is not None:
        return lambda i: 1 if inst.planted[i] == 1 else -1
    if inst.witness_bound is not None:
        return lambda i: -1 if (first_witness(inst.p, inst.q, i, inst.witness_bound) or 0) > 0 else 1
    return None


def build_hb_instance(inst: SepInstance, search_bound: Optional[int] = None) -> PFName:
    space = BanachName(block_norm(inst, search_bound), label=f"X({inst.label})")
    subspace = ClosedPlus(space, Seq(rule=lambda n: first_axis_point(space, decode(n)), label="A"))

    def func(x: CPoint) -> CReal:
        if x.exact is not None:
            return CReal.from_rational(_first_axis_value(x.exact))
        return CReal.from_function(lambda k: _first_axis_value(x.rep(k)), label=f"f({x.label})")

    f = PFName(space, subspace, func, CReal.from_rational(1), label=f"f({inst.label})")
    signs = _planted_signs(inst)
    if signs is not None:
        f.planted = analytic_extension(space, signs)
    logger.debug(f"HB instance built | sep={inst.label} | planted={f.planted is not None}")
    return f


def decode_separator(inst: SepInstance, g: PFName) -> Seq:
    """r(n) = 1 iff the 2^{-n-2}-approximation of g(z_n) is positive."""
    return Seq(rule=lambda n: 1 if g(z(g.space, n)).approx(n + 2) > 0 else 0, label=f"sep({g.label})")


def sep_le_hb(search_bound: Optional[int] = None) -> Reduction:
    return Reduction(
        "sep_le_hb",
        "sep",
        "hb",
        H=lambda inst: build_hb_instance(inst, search_bound),
        K=decode_separator,
        description="norm-1 extensions on X(p, q) fix the sign of g(z_n)",
    )
