"""
Range ≅ C₁.

range_le_c1   H(p)(⟨n, m⟩) = 1 iff p(m) = n, and Range(p)(n) = 1 − C₁(H(p))(n).
c1_le_range   H(p)(⟨n, m⟩) = ⟨n, 0⟩ when m is the first witness of p(⟨n, ·⟩) ≠ 0,
              ⟨n, m+1⟩ otherwise; then C₁(p)(n) = 1 − Range(H(p))(⟨n, 0⟩).
"""
import logging

from config import settings
from kernel.errors import ProblemTypeError
from kernel.seq import Seq
from kernel.seqcode import cantor_pair, cantor_unpair
from problems.base import Reduction
from problems.ck import CkInstance
from problems.reals import RangeInstance

logger = logging.getLogger(__name__)


def _flip(bits: Seq) -> Seq:
    return bits.map(lambda v: 1 - v, label=f"1-{bits.label}")


def range_le_c1() -> Reduction:
    def H(inst: RangeInstance) -> CkInstance:
        p = inst.p

        def rule(code: int) -> int:
            n, m = cantor_unpair(code)
            return 1 if p[m] == n else 0

        # one bound serves queries n < WITNESS_BOUND; larger n may need a larger one
        bound = max(inst.index_bound(n) for n in range(settings.WITNESS_BOUND))
        planted = _flip(inst.planted) if inst.planted is not None else None
        return CkInstance(Seq(rule=rule, label=f"graph({p.label})"), k=1, witness_bound=bound, planted=planted)

    return Reduction(
        "range_le_c1",
        "range",
        "c1",
        H=H,
        K=lambda inst, c: _flip(c),
        description="Range(p)(n) = 1 − C₁(H(p))(n)",
    )


def c1_le_range() -> Reduction:
    def H(inst: CkInstance) -> RangeInstance:
        if inst.k != 1:
            raise ProblemTypeError(f"c1_le_range needs a C₁ instance, got k={inst.k}")
        p = inst.p
        witness_bound = inst.bound

        def rule(code: int) -> int:
            n, m = cantor_unpair(code)
            if p[cantor_pair(n, m)] != 0 and all(p[cantor_pair(n, j)] == 0 for j in range(m)):
                return cantor_pair(n, 0)
            return cantor_pair(n, m + 1)

        def index_bound(v: int) -> int:
            n, j = cantor_unpair(v)
            if j == 0:
                return cantor_pair(n, witness_bound - 1) + 1
            return cantor_pair(n, j - 1) + 1

        return RangeInstance(Seq(rule=rule, label=f"first({p.label})"), index_bound=index_bound)

    def K(inst: CkInstance, y: Seq) -> Seq:
        return Seq(rule=lambda n: 1 - y[cantor_pair(n, 0)], label=f"C1<-{y.label}")

    return Reduction(
        "c1_le_range",
        "c1",
        "range",
        H=H,
        K=K,
        description="C₁(p)(n) = 1 − Range(H(p))(⟨n, 0⟩)",
    )
