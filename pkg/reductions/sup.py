"""
Sup ≅ C₁ and Range ≤ Sup.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional

from config import settings
from kernel.errors import FuelExhaustedError
from kernel.seq import Seq
from kernel.seqcode import cantor_pair, cantor_unpair
from problems.base import Reduction, chain_reductions
from problems.ck import CkInstance
from problems.reals import RangeInstance, SupInstance
from reductions.range_c1 import c1_le_range
from spaces.creal import CReal, Ordering, creal_cmp
from spaces.rationals import rat, rat_index

logger = logging.getLogger(__name__)

SUP_PRECISION = 20


def sup_le_c1(precision: int = SUP_PRECISION) -> Reduction:
    """
    A = {α ∈ ℚ : ∃n α < x_n} is read off C₁(H(xs)), where
    H(xs)(⟨a, ⟨n, k⟩⟩) = 1 iff x_n.approx(k) − 2^{-k} > a_ℚ(a).

    The witness search covers n, k < precision + 8, enough to resolve A at
    dyadic level `precision`. K picks α_k = i/2^k ∈ A with α_k + 2^{-k} ∉ A.
    """
    reach = precision + 8

    def H(inst: SupInstance) -> CkInstance:
        xs = inst.xs
        alpha = lru_cache(maxsize=None)(rat)

        def rule(code: int) -> int:
            a, m = cantor_unpair(code)
            n, k = cantor_unpair(m)
            return 1 if xs[n].approx(k) - Fraction(1, 2 ** k) > alpha(a) else 0

        planted = None
        if inst.planted_value is not None:
            target = inst.planted_value
            planted = Seq(rule=lambda a: 0 if rat(a) < target else 1, label="A")
        return CkInstance(
            Seq(rule=rule, label=f"below({xs.label})"),
            k=1,
            witness_bound=cantor_pair(reach, reach) + 1,
            planted=planted,
        )

    def K(inst: SupInstance, c: Seq) -> CReal:
        def member(alpha: Fraction) -> bool:
            return c[rat_index(alpha)] == 0

        @lru_cache(maxsize=None)
        def level(k: int) -> Fraction:
            lo, hi = -1, 1 << k
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if member(Fraction(mid, 1 << k)):
                    lo = mid
                else:
                    hi = mid
            return Fraction(lo, 1 << k)

        return CReal.from_function(lambda k: level(k + 1), label=f"sup({inst.xs.label})")

    return Reduction(
        "sup_le_c1",
        "sup",
        "c1",
        H=H,
        K=K,
        description="dyadic bisection of A = {α : ∃n α < x_n}",
    )


def partial_sums(p: Seq) -> Seq:
    """x_m = ∑_{k≤m} 2^{-(p(k)+1)} as exact reals."""
    sums: List[Fraction] = []

    def rule(m: int) -> CReal:
        while len(sums) <= m:
            previous = sums[-1] if sums else Fraction(0)
            sums.append(previous + Fraction(1, 2 ** (p[len(sums)] + 1)))
        return CReal.from_rational(sums[m])

    return Seq(rule=rule, label=f"sums({p.label})")


def range_le_sup(fuel: Optional[int] = None) -> Reduction:
    budget = settings.DEFAULT_FUEL if fuel is None else fuel

    def H(inst: RangeInstance) -> SupInstance:
        def modulus(k: int) -> int:
            # beyond this index every term is at most 2^{-(k+2)} in total
            return max(inst.index_bound(v) for v in range(k + 2))

        return SupInstance(partial_sums(inst.p), planted_sup=inst.sup_value, modulus=modulus)

    def K(inst: RangeInstance, y: CReal) -> Seq:
        xs = H(inst).xs

        def cutoff(n: int) -> int:
            """Least k with x − x_k < 2^{-(n+1)}, certified at precision n + 3."""
            target = Fraction(1, 2 ** (n + 1))
            for k in range(budget):
                if creal_cmp(y - xs[k], target, n + 3) is Ordering.LT:
                    return k
            raise FuelExhaustedError(f"no certified cutoff for {n} within {budget} terms", budget)

        def rule(n: int) -> int:
            q = cutoff(n)
            return int(any(inst.p[m] == n for m in range(q + 1)))

        return Seq(rule=rule, label=f"ran<-{y.label}")

    return Reduction(
        "range_le_sup",
        "range",
        "sup",
        H=H,
        K=K,
        description="n ∈ ran(p) iff p(m) = n for some m ≤ q(n)",
    )


def c1_le_sup() -> Reduction:
    return chain_reductions(c1_le_range(), range_le_sup(), reduction_id="c1_le_sup")
