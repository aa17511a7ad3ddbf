"""
Sep ≤ C₁ and Sep ≅ Path₂.

Binary strings s are addressed by their shortlex index idx(s), not by
their SeqCode: the tree enumerations of path2_le_sep list idx(s) + 2, and
separators are read at idx(s) + 2 (0 and 1 are the padding values of p_T
and q_T). idx(s*b) = 2·idx(s) + 1 + b.
"""
import logging
from typing import Dict, Optional, Sequence

from config import settings
from kernel.errors import InvalidNameError
from kernel.seq import Seq
from kernel.seqcode import binary_string, cantor_unpair
from problems.base import Reduction
from problems.ck import CkInstance
from problems.sep import SepInstance, separator_tree
from problems.trees import RegularTree, TreeChar

logger = logging.getLogger(__name__)


def sep_le_c1() -> Reduction:
    """C₁(h(p, q)) is a separator: it is 0 exactly on ran(p)."""

    def H(inst: SepInstance) -> CkInstance:
        p = inst.p

        def rule(code: int) -> int:
            n, m = cantor_unpair(code)
            return 1 if p[m] == n else 0

        return CkInstance(Seq(rule=rule, label=f"graph({p.label})"), k=1, planted=inst.planted)

    return Reduction("sep_le_c1", "sep", "c1", H=H, K=lambda inst, y: y, description="C₁ of the graph of p separates")


def sep_le_path2() -> Reduction:
    return Reduction(
        "sep_le_path2",
        "sep",
        "path2",
        H=separator_tree,
        K=lambda inst, path: path,
        description="paths of h(p, q) are separators",
    )


# θ_T(n, s): some member of length n extends s

def theta(tree: TreeChar, n: int, s: Sequence[int]) -> bool:
    s = tuple(s)
    return len(s) <= n and tree.find_extension(s, n) is not None


def phi_at(tree: TreeChar, s: Sequence[int], i: int, n: int) -> bool:
    """Level n witnesses φ_T(s, i): s*i still extends to level n, s*(1−i) no longer does."""
    s = tuple(s)
    return theta(tree, n, s + (i,)) and not theta(tree, n, s + (1 - i,))


def tree_enumerations(tree: TreeChar):
    """
    (p_T, q_T): step k = ⟨a, n⟩ tests level n for the string s = binary_string(a)
    and emits idx(s) + 2 when it witnesses φ_T(s, 0) (resp. φ_T(s, 1)), the
    padding value 0 (resp. 1) otherwise.
    """

    def emit(i: int, pad: int):
        def rule(k: int) -> int:
            a, n = cantor_unpair(k)
            return a + 2 if phi_at(tree, binary_string(a), i, n) else pad

        return rule

    return (
        Seq(rule=emit(0, 0), label=f"p_{tree.label}"),
        Seq(rule=emit(1, 1), label=f"q_{tree.label}"),
    )


def planted_tree_separator(tree: RegularTree) -> Seq:
    """
    The separator r with r(idx(s) + 2) = 1 iff s*1 reaches strictly deeper
    than s*0, computed exactly from the automaton's branch heights.
    """

    def depth_of(t: tuple) -> float:
        level = tree.max_level(t)
        return float("inf") if level is None else level

    def rule(j: int) -> int:
        if j < 2:
            return j
        s = tuple(binary_string(j - 2))
        zero, one = depth_of(s + (0,)), depth_of(s + (1,))
        return 1 if one > zero and one >= len(s) + 1 else 0

    return Seq(rule=rule, label=f"sep({tree.label})")


def path_planted_separator(tree: TreeChar, path: Seq, horizon: Optional[int] = None) -> Seq:
    """
    The separator that follows an infinite path of T: r(idx(s) + 2) is the
    next bit of the path when s is one of its prefixes. Off the path, r
    names the child of s that survives the first level where exactly one
    of s*0, s*1 still extends, searching levels up to |s| + 1 + horizon;
    every witness of φ_T below that level is respected.
    """
    window = settings.WITNESS_BOUND if horizon is None else horizon
    on_path: Dict[int, int] = {}
    walked, index = 0, 0

    def walk_to(length: int) -> None:
        nonlocal walked, index
        while walked <= length:
            bit = path[walked]
            on_path[index] = bit
            index = 2 * index + 1 + bit
            walked += 1

    def rule(j: int) -> int:
        if j < 2:
            return j
        node = j - 2
        walk_to((node + 1).bit_length() - 1)
        if node in on_path:
            return on_path[node]
        s = tuple(binary_string(node))
        for n in range(len(s) + 1, len(s) + 2 + window):
            zero, one = theta(tree, n, s + (0,)), theta(tree, n, s + (1,))
            if zero != one:
                return int(one)
            if not zero:
                break
        return 0

    return Seq(rule=rule, label=f"sep({tree.label})")


def path_from_separator(r: Seq, label: str = "k(r)") -> Seq:
    """k(r)(m) = r(idx(k(r)[m]) + 2)."""

    def produce():
        index = 0
        length = 0
        while True:
            bit = r[index + 2]
            if bit not in (0, 1):
                raise InvalidNameError(f"separator value {bit} at node {length}:{index} is not a bit")
            index = 2 * index + 1 + bit
            length += 1
            yield bit

    return Seq(produce(), label=label)


def planted_separator(tree: TreeChar) -> Optional[Seq]:
    """Exact on automaton trees; follows the planted path elsewhere."""
    if isinstance(tree, RegularTree):
        return planted_tree_separator(tree)
    if tree.planted is not None:
        return path_planted_separator(tree, tree.planted)
    return None


def path2_le_sep() -> Reduction:
    def H(tree: TreeChar) -> SepInstance:
        p, q = tree_enumerations(tree)
        return SepInstance(p, q, planted=planted_separator(tree), label=f"h⁻¹({tree.label})")

    return Reduction(
        "path2_le_sep",
        "path2",
        "sep",
        H=H,
        K=lambda tree, r: path_from_separator(r, label=f"k({tree.label})"),
        description="follow the separator's choice at each node",
    )
