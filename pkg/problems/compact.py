"""
Heine–Borel search: from an enumeration of open rational intervals covering
I = [0, 1], find finitely many that already cover I.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from config import settings
from kernel.errors import FuelExhaustedError
from kernel.seq import Seq
from kernel.seqcode import FinSeq
from problems.base import Verdict

logger = logging.getLogger(__name__)

Interval = Tuple[Fraction, Fraction]


@dataclass
class CoverInstance:
    intervals: Seq
    planted: Optional[FinSeq] = None


def chain_cover(intervals: Sequence[Interval], lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> Optional[List[int]]:
    """
    Indices of open intervals whose union contains [lo, hi], chosen by the
    endpoint chain: each next interval strictly contains the right end of the
    previous one. None if the given intervals do not cover.
    """
    chosen: List[int] = []
    point = lo
    while True:
        best = None
        for index, (a, b) in enumerate(intervals):
            if a < point < b and (best is None or b > intervals[best][1]):
                best = index
        if best is None:
            return None
        chosen.append(best)
        point = intervals[best][1]
        if point > hi:
            return chosen


def finite_subcover(cover: Seq, fuel: Optional[int] = None) -> FinSeq:
    """Scan growing finite prefixes of the enumeration until one of them covers I."""
    budget = settings.DEFAULT_FUEL if fuel is None else fuel
    seen: List[Interval] = []
    for j in range(budget):
        a, b = cover[j]
        seen.append((Fraction(a), Fraction(b)))
        chosen = chain_cover(seen)
        if chosen is not None:
            logger.debug(f"Subcover found | intervals_read={j + 1} | size={len(chosen)}")
            return FinSeq(sorted(chosen))
    raise FuelExhaustedError(f"no finite subcover among the first {budget} intervals", budget)


def verify_subcover(inst: CoverInstance, indices: Sequence[int], depth: int) -> Verdict:
    intervals = [inst.intervals[i] for i in indices]
    return Verdict.ACCEPT if chain_cover(intervals) is not None else Verdict.REJECT
