"""
Change of fundamental sequence e ↦ e' = e∘q and the identity problem over e'.
"""
import logging
from fractions import Fraction
from typing import Optional, Sequence

from config import settings
from kernel.errors import FuelExhaustedError
from kernel.seq import Seq
from kernel.seqcode import FinSeq
from banach.completion import CPoint
from hahn_banach.independence import BasisStream, Combiner, search_combination, stage_budget
from spaces.rationals import dyadic, rat, rat_index

logger = logging.getLogger(__name__)


def inverse_change(basis: BasisStream, n: int) -> FinSeq:
    """e'(n) = e(q(n)), named over e by 0̄[q(n)]*1."""
    return FinSeq([0] * basis.q[n] + [1])


def _one_term(basis: BasisStream, i: int, width: int) -> Optional[FinSeq]:
    for j in basis.selected(width):
        if basis.q[j] == i:
            return FinSeq([0] * j + [1])
    return None


def approximate_over(basis: BasisStream, target: CPoint, exponent: int, fuel: Optional[int] = None) -> FinSeq:
    """Some s with d(target, a_{e'}(s)) < 2^{-exponent}, searching wider prefixes of e' and larger coefficients."""
    fuel = settings.DEFAULT_FUEL if fuel is None else fuel
    epsilon = dyadic(-exponent)
    for t in range(fuel):
        width = exponent + t
        chosen = basis.selected(width)
        vectors = [basis.e_prime(j) for j in chosen]
        comb = Combiner(vectors + [target], precision=exponent + 8)
        gammas, _ = search_combination(comb, dyadic(t + 1), epsilon, stage_budget(t))
        if gammas is not None:
            s = [0] * (max(chosen) + 1 if chosen else 0)
            for j, gamma in zip(chosen, gammas):
                s[j] = rat_index(gamma)
            return FinSeq(s)
    raise FuelExhaustedError(f"no combination of e' within 2^-{exponent} of {target}", fuel)


def basis_change(basis: BasisStream, i: int) -> Seq:
    """A name of e(i) over e': d(e(i), a_{e'}(p(j))) < 2^{-(j+2)}."""
    target = basis.space.e(i)

    def rule(j: int) -> FinSeq:
        exact = _one_term(basis, i, j + 2)
        if exact is not None:
            return exact
        return approximate_over(basis, target, j + 2)

    return Seq(rule=rule, label=f"id(e({i}))")


def basis_change_point(basis: BasisStream, i: int) -> CPoint:
    """e(i) rebuilt from its e'-name, as a point of X."""
    name = basis_change(basis, i)
    reps = Seq(rule=lambda j: basis.a_prime(name[j]), label=f"e'-name({i})")
    return CPoint(basis.space, reps, label=f"e({i})'")


def identity_char(basis: BasisStream, s: Sequence[int], t: Sequence[int]) -> bool:
    """
    a_{e'}(s) = a_{e'}(t), decided over R* = {j : q(j) = q(0)}:
    coefficients agree off R*, the longer tail vanishes off R*, and the
    R*-coefficient sums agree.
    """
    s, t = tuple(s), tuple(t)
    if len(s) > len(t):
        s, t = t, s
    for j in range(len(s)):
        if not basis.in_r_star(j) and rat(s[j]) != rat(t[j]):
            return False
    for j in range(len(s), len(t)):
        if not basis.in_r_star(j) and rat(t[j]) != 0:
            return False
    left = sum((rat(s[j]) for j in range(len(s)) if basis.in_r_star(j)), Fraction(0))
    right = sum((rat(t[j]) for j in range(len(t)) if basis.in_r_star(j)), Fraction(0))
    return left == right
