"""
Path_B ≅ Path₂ by block coding.

A value v at level i (v < b(i)) is written as the block 0^v 1 0^{b(i)−1−v}.
The binary image of a bounded tree T holds every prefix of an encoding of
a member of T; decoding reads the position of the single 1 in each block.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from kernel.errors import InvalidNameError, MalformedInstanceError
from kernel.seq import Seq
from problems.base import Reduction
from problems.trees import BoundedTree, RegularTree, TreeChar

logger = logging.getLogger(__name__)


def _level_bound(tree: BoundedTree, level: int) -> int:
    b = tree.bound(level)
    if b < 1:
        raise MalformedInstanceError(f"{tree.label}: bound {b} at level {level}")
    return b


def split_blocks(tree: BoundedTree, u: Sequence[int]) -> Optional[Tuple[tuple, tuple]]:
    """(decoded complete blocks, trailing partial block), None when a block is not of the form 0^v 1 0^*."""
    decoded: List[int] = []
    position = 0
    while True:
        b = _level_bound(tree, len(decoded))
        block = tuple(u[position : position + b])
        if len(block) < b:
            if sum(block) > 1:
                return None
            return tuple(decoded), block
        if sum(block) != 1:
            return None
        decoded.append(block.index(1))
        position += b


def binary_image(tree: BoundedTree) -> TreeChar:
    def member(u: tuple) -> bool:
        if any(bit not in (0, 1) for bit in u):
            return False
        split = split_blocks(tree, u)
        if split is None:
            return False
        t, partial = split
        if not tree.member(t):
            return False
        if 1 in partial:
            return tree.member(t + (partial.index(1),))
        b = tree.bound(len(t))
        return any(tree.member(t + (v,)) for v in range(len(partial), b))

    planted = encode_path(tree, tree.planted) if tree.planted is not None else None
    return TreeChar(member, label=f"bin({tree.label})", planted=planted)


def regular_binary_image(tree: RegularTree) -> RegularTree:
    """The same image as an automaton: states track (T-state, position in block, target once the 1 is read)."""
    b = tree.alphabet
    states: List[str] = []
    transitions: Dict[Tuple[str, int], Optional[str]] = {}

    def name(state: str, j: int, target: Optional[str]) -> str:
        return f"{state}|{j}|{target or ''}"

    for state in tree.states:
        if state in tree.dead:
            continue
        for j in range(b):
            open_block = name(state, j, None)
            states.append(open_block)
            if any(tree.step(state, v) is not None for v in range(j + 1, b)):
                transitions[(open_block, 0)] = name(state, j + 1, None)
            target = tree.step(state, j)
            if target is not None:
                transitions[(open_block, 1)] = name(target, 0, None) if j + 1 == b else name(state, j + 1, target)
            for target in {tree.step(state, v) for v in range(j)} - {None}:
                closing = name(state, j, target)
                states.append(closing)
                transitions[(closing, 0)] = name(target, 0, None) if j + 1 == b else name(state, j + 1, target)

    initial = name(tree.initial, 0, None)
    if initial not in states:
        states.append(initial)
    planted = encode_path(tree, tree.planted) if tree.planted is not None else None
    return RegularTree(states, transitions, initial, alphabet=2, label=f"bin({tree.label})", planted=planted)


def encode_path(tree: BoundedTree, path: Seq) -> Seq:
    def produce():
        level = 0
        while True:
            b = _level_bound(tree, level)
            v = path[level]
            yield from [0] * v + [1] + [0] * (b - 1 - v)
            level += 1

    return Seq(produce(), label=f"enc({path.label})")


def decode_path(tree: BoundedTree, binary: Seq) -> Seq:
    def produce():
        position = 0
        level = 0
        while True:
            b = _level_bound(tree, level)
            block = tuple(binary[position + j] for j in range(b))
            if sum(block) != 1:
                raise InvalidNameError(f"block {block} at level {level} does not hold exactly one 1")
            yield block.index(1)
            position += b
            level += 1

    return Seq(produce(), label=f"dec({binary.label})")


def pathB_le_path2() -> Reduction:
    def H(tree: BoundedTree) -> TreeChar:
        if isinstance(tree, RegularTree):
            return regular_binary_image(tree)
        return binary_image(tree)

    return Reduction(
        "pathB_le_path2",
        "pathB",
        "path2",
        H=H,
        K=decode_path,
        description="block coding 0^v 1 0^{b−1−v}",
    )


def path2_le_pathB() -> Reduction:
    def H(tree: TreeChar) -> BoundedTree:
        if isinstance(tree, BoundedTree):
            return tree
        return BoundedTree(tree.member, Seq.constant(2), label=tree.label, planted=tree.planted)

    return Reduction(
        "path2_le_pathB",
        "path2",
        "pathB",
        H=H,
        K=lambda tree, path: path,
        description="a binary tree is bounded by 2̄",
    )


def pathB_iso_path2() -> Tuple[Reduction, Reduction]:
    """Both directions of Path_B ≅ Path₂."""
    return pathB_le_path2(), path2_le_pathB()
