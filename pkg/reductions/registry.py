"""
Registered reductions, built on demand from their factories.
"""
import logging
from typing import Any, Callable, Dict, List

from kernel.errors import UnknownIdError
from problems.base import Reduction
from reductions.bounded import path2_le_pathB, pathB_le_path2
from reductions.composition import sep_compose_le_path2
from reductions.range_c1 import c1_le_range, range_le_c1
from reductions.sep_path import path2_le_sep, sep_le_c1, sep_le_path2
from reductions.sup import c1_le_sup, range_le_sup, sup_le_c1
from hyperspace.selection import path2_le_sel, sel_le_pathB
from hahn_banach.pipeline import hb_le_sel, hb_le_sep
from hahn_banach.reversal import sep_le_hb

logger = logging.getLogger(__name__)

REDUCTIONS: Dict[str, Callable[[], Reduction]] = {
    "range_le_c1": range_le_c1,
    "c1_le_range": c1_le_range,
    "sup_le_c1": sup_le_c1,
    "range_le_sup": range_le_sup,
    "c1_le_sup": c1_le_sup,
    "sep_le_c1": sep_le_c1,
    "sep_le_path2": sep_le_path2,
    "sep_compose": sep_compose_le_path2,
    "path2_le_sep": path2_le_sep,
    "pathB_le_path2": pathB_le_path2,
    "path2_le_pathB": path2_le_pathB,
    "path2_le_sel": path2_le_sel,
    "sel_le_pathB": sel_le_pathB,
    "hb_le_sel": hb_le_sel,
    "hb_le_sep": hb_le_sep,
    "sep_le_hb": sep_le_hb,
}


def get_reduction(reduction_id: str) -> Reduction:
    try:
        factory = REDUCTIONS[reduction_id]
    except KeyError:
        raise UnknownIdError(f"unknown reduction: {reduction_id}") from None
    return factory()


def describe() -> List[Dict[str, Any]]:
    rows = []
    for reduction_id in REDUCTIONS:
        red = get_reduction(reduction_id)
        rows.append({"id": red.id, "source": red.source, "target": red.target, "description": red.description})
    return rows
