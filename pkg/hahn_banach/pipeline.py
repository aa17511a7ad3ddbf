"""
HB ≤ Sel_K(ℝ^ℕ) ≤ Sep.

H(f) = (X̂⁺, H(f, q)) for q the basis stream of X; a selected point (a_n)
of H(f, q) is turned back into an extension by χ((a_n), X⁺, 1). Chaining
with Sel ≤ Path_B ≤ Path₂ ≤ Sep gives HB ≤ Sep.
"""
import logging
from fractions import Fraction
from typing import Optional

from kernel.seq import Seq
from banach.completion import BanachName
from banach.functionals import PFName, check_bound, check_extension, linear_functional, whole_space
from banach.pseudonorm import max_norm_two_generators
from hyperspace.closed import ClosedPlus
from spaces.creal import CReal
from spaces.rationals import rat
from hahn_banach.alaoglu import candidate_sets, chi_recover, h_extensions, phi_embed
from hahn_banach.independence import basis_for
from hyperspace.selection import SelInstance, sel_le_pathB
from problems.base import OracleRealizer, Reduction, Verdict, chain_all
from reductions.bounded import pathB_le_path2
from reductions.sep_path import path2_le_sep

logger = logging.getLogger(__name__)

HB_CHECK_POINTS = 8
HB_CHECK_PRECISION = 10


def hb_le_sel() -> Reduction:
    def H(f: PFName) -> SelInstance:
        basis = basis_for(f.space)
        compact, _ = candidate_sets(basis)
        planted = phi_embed(f.planted, basis) if f.planted is not None else None
        return SelInstance(compact, h_extensions(f, basis), planted=planted, label=f"H({f.label})")

    def K(f: PFName, point) -> PFName:
        return chi_recover(point, basis_for(f.space), 1)

    return Reduction("hb_le_sel", "hb", "sel", H=H, K=K, description="select in H(f, q) inside X̂⁺, then χ")


def hb_le_sep() -> Reduction:
    return chain_all(hb_le_sel(), sel_le_pathB(), pathB_le_path2(), path2_le_sep(), reduction_id="hb_le_sep")


def verify_hb(f: PFName, g: PFName, depth: int) -> Verdict:
    """g extends f on dense points of A and |g(e(n))| ≤ ‖e(n)‖, at bounded precision."""
    count = min(depth, HB_CHECK_POINTS)
    k = min(depth, HB_CHECK_PRECISION)
    if check_extension(f, g, count, k) is Verdict.REJECT:
        return Verdict.REJECT
    units = [g.space.e(n) for n in range(count)]
    return check_bound(g, units, k, r=1)


def planted_hb_realizer() -> OracleRealizer:
    """Serves the analytic extension carried by planted HB instances."""
    return OracleRealizer(
        name="analytic",
        realize=lambda f: f.planted,
        accepts=lambda f: isinstance(f, PFName) and f.planted is not None,
        instance_class="HB instances carrying a planted extension",
    )


# Planted instances

def diagonal_instance(space: Optional[BanachName] = None) -> PFName:
    """
    Two-generator max-norm space, A = span{e(0) + e(1)}, f(t, t) = t.
    The first-coordinate functional is a norm-1 extension.
    """
    space = space or BanachName(max_norm_two_generators())
    first = linear_functional(space, lambda i: Fraction(int(i == 0)), 1, label="first")
    subspace = ClosedPlus(space, Seq(rule=lambda i: space.point((rat(i), rat(i))), label="span(e0+e1)"))
    return PFName(space, subspace, first.func, CReal.from_rational(1), planted=first, label="diag")


def full_instance(g: PFName) -> PFName:
    """A = X and f = g; g is its own extension."""
    return PFName(g.space, whole_space(g.space), g.func, g.norm_r, planted=g, label=f"full({g.label})")
