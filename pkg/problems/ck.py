"""
The arithmetic-comprehension problems C_k and the omniscience problem Ω.

C_k(p)(n) = 0 iff ∃n_k ∀n_{k-1} ∃n_{k-2} ... Q n_1  p(⟨n, n_k, ..., n_1⟩) ≠ 0,
and 1 otherwise. Evaluation bounds every quantifier by a witness bound
that planted instances guarantee.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from config import settings
from kernel.seq import Seq
from kernel.seqcode import cantor_unpair, tuple_code
from problems.base import Verdict

logger = logging.getLogger(__name__)


@dataclass
class CkInstance:
    p: Seq
    k: int = 1
    witness_bound: Optional[int] = None
    planted: Optional[Seq] = None

    @property
    def bound(self) -> int:
        return settings.WITNESS_BOUND if self.witness_bound is None else self.witness_bound


def ck_value(p: Seq, n: int, k: int, witness_bound: int) -> int:
    """C_k(p)(n) with all quantifiers ranging over [0, witness_bound)."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")

    def holds(prefix: tuple, remaining: int, existential: bool) -> bool:
        if remaining == 0:
            return p[tuple_code(n, *prefix)] != 0
        branch = (holds(prefix + (m,), remaining - 1, not existential) for m in range(witness_bound))
        return any(branch) if existential else all(branch)

    return 0 if holds((), k, True) else 1


def ck_sequence(inst: CkInstance) -> Seq:
    """The bounded evaluation n ↦ C_k(p)(n), serving as the C_k oracle on planted instances."""
    return Seq(rule=lambda n: ck_value(inst.p, n, inst.k, inst.bound), label=f"C{inst.k}({inst.p.label})")


def verify_ck(inst: CkInstance, y: Seq, depth: int) -> Verdict:
    for n in range(depth):
        value = y[n]
        if value not in (0, 1):
            return Verdict.REJECT
        if value != ck_value(inst.p, n, inst.k, inst.bound):
            return Verdict.REJECT
    return Verdict.ACCEPT


def planted_c1(r: Seq, witness_bound: int = 1) -> CkInstance:
    """p(⟨n, m⟩) = 1 iff r(n) = 0 and m = 0, so that C₁(p) = r."""
    def rule(code: int) -> int:
        n, m = cantor_unpair(code)
        return 1 if m == 0 and r[n] == 0 else 0

    return CkInstance(Seq(rule=rule, label=f"plant({r.label})"), k=1, witness_bound=witness_bound, planted=r)


# Ω: 0 if p = 0̄, else 1

@dataclass
class OmegaInstance:
    p: Seq
    planted: Optional[int] = None


def verify_omega(inst: OmegaInstance, answer: int, depth: int) -> Verdict:
    nonzero_seen = any(v != 0 for v in inst.p.prefix(depth))
    if answer == 0:
        return Verdict.REJECT if nonzero_seen else Verdict.ACCEPT
    if answer == 1:
        return Verdict.ACCEPT if nonzero_seen else Verdict.UNDECIDED
    return Verdict.REJECT
