"""
Sep: given p, q with disjoint ranges, find r ∈ 2^ℕ with r(p(n)) = 0 and r(q(n)) = 1.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from kernel.seq import Seq
from problems.base import Verdict
from problems.trees import TreeChar

logger = logging.getLogger(__name__)


@dataclass
class SepInstance:
    p: Seq
    q: Seq
    planted: Optional[Seq] = None
    label: str = "sep"
    # every n in ran(p) ∪ ran(q) first occurs below this index, when known
    witness_bound: Optional[int] = None


def check_disjoint(inst: SepInstance, depth: int) -> Verdict:
    if set(inst.p.prefix(depth)) & set(inst.q.prefix(depth)):
        return Verdict.REJECT
    return Verdict.ACCEPT


def verify_separator(inst: SepInstance, r: Seq, depth: int) -> Verdict:
    """Accept iff r(p(n)) = 0 and r(q(n)) = 1 for all n < depth."""
    for n in range(depth):
        zero, one = r[inst.p[n]], r[inst.q[n]]
        if zero not in (0, 1) or one not in (0, 1):
            return Verdict.REJECT
        if zero != 0 or one != 1:
            return Verdict.REJECT
    return Verdict.ACCEPT


def separator_tree(inst: SepInstance) -> TreeChar:
    """
    h(p, q) = {t : ∀i<|t| [(∃j<|t| p(j)=i → t(i)=0) ∧ (∃j<|t| q(j)=i → t(i)=1)]}.

    Its infinite paths are exactly the separators of (p, q).
    """

    def member(t: tuple) -> bool:
        length = len(t)
        for j in range(length):
            zero = inst.p[j]
            if zero < length and t[zero] != 0:
                return False
            one = inst.q[j]
            if one < length and t[one] != 1:
                return False
        return True

    return TreeChar(member, label=f"h({inst.label})", planted=inst.planted)
