"""
Seeded acceptance suites over planted instances.

Real-valued reductions run below depth 64: their dyadic bisection reads
Calkin-Wilf indices whose size doubles with each level, and the selection
trees over I list 2^n + 1 centers at level n.
"""
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Callable, List, Sequence

import pytest

from problems.base import Verdict, apply_reduction
from problems.compact import finite_subcover, verify_subcover
from problems.registry import get_oracle, get_problem
from problems.sep import verify_separator
from problems.trees import verify_path
from banach.completion import BanachName, point_norm
from banach.pseudonorm import rational_norm
from hahn_banach.independence import Branch, pr_test
from hahn_banach.pipeline import diagonal_instance
from hahn_banach.reversal import build_hb_instance, coord_norm_exact, delta_n, sep_le_hb, z
from harness.codec import build_instance
from harness.generators import generate
from hyperspace.closed import interval_complement, unit_interval_name
from hyperspace.selection import SelInstance
from reductions.bounded import decode_path, pathB_le_path2
from reductions.registry import REDUCTIONS, get_reduction
from spaces.rationals import dyadic


def _generated(problem: str) -> Callable[[int], Any]:
    return lambda seed: build_instance(generate(problem, seed))


def _range_with_sup(seed: int):
    """Generated ranges with the exact sum ∑ 2^{-(p(i)+1)} attached."""
    doc = generate("range", seed)
    table = doc.streams["p"]
    start, step = table.affine
    head = sum((Fraction(1, 2 ** (v + 1)) for v in table.head), Fraction(0))
    tail = Fraction(1, 2 ** (start + 1)) / (1 - Fraction(1, 2 ** step))
    return replace(build_instance(doc), sup_value=head + tail)


def _interval_selection(seed: int) -> SelInstance:
    """A = [a, b] ⊆ I with dyadic ends, midpoint planted."""
    rng = random.Random(seed)
    a = Fraction(rng.randint(1, 12), 32)
    b = a + Fraction(rng.randint(4, 12), 32)
    return SelInstance(unit_interval_name(), interval_complement(a, b), planted=(a + b) / 2, label=f"[{a}, {b}]")


@dataclass(frozen=True)
class Case:
    build: Callable[[int], Any]
    oracle: str
    depth: int
    count: int = 100


CASES = {
    "range_le_c1": Case(_generated("range"), "planted", 64),
    "c1_le_range": Case(_generated("c1"), "search", 64),
    "sup_le_c1": Case(_generated("sup"), "planted", 12),
    "range_le_sup": Case(_range_with_sup, "planted", 12),
    "c1_le_sup": Case(_generated("c1"), "planted", 5, count=10),
    "sep_le_c1": Case(_generated("sep"), "bounded", 64),
    "sep_le_path2": Case(_generated("sep"), "planted", 64),
    "sep_compose": Case(_generated("sep"), "planted", 64),
    "path2_le_sep": Case(_generated("path2"), "planted", 64),
    "pathB_le_path2": Case(_generated("pathB"), "regular", 64),
    "path2_le_pathB": Case(_generated("path2"), "regular", 64),
    "path2_le_sel": Case(_generated("path2"), "planted", 64),
    "sel_le_pathB": Case(_interval_selection, "planted", 12),
    "hb_le_sel": Case(lambda seed: diagonal_instance(), "planted", 4, count=1),
    "sep_le_hb": Case(_generated("sep"), "analytic", 16),
}

# hb_le_sep reads level k + 6 of the selection tree for precision k; it runs in test_reductions
END_TO_END_ONLY = {"hb_le_sep"}


def test_every_registered_reduction_has_an_acceptance_case():
    assert set(CASES) | END_TO_END_ONLY == set(REDUCTIONS)


@pytest.mark.slow
@pytest.mark.parametrize("reduction_id", sorted(CASES))
def test_reductions_are_sound_on_planted_instances(reduction_id):
    case = CASES[reduction_id]
    red = get_reduction(reduction_id)
    source = get_problem(red.source)
    oracle = get_oracle(red.target, case.oracle)
    realizer = apply_reduction(red, oracle)
    for seed in range(case.count):
        x = case.build(seed)
        y = realizer(x)
        assert source.verify(x, y, case.depth) is Verdict.ACCEPT, f"{reduction_id} seed={seed}"


# Independence against exact rank

def _rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    width = max((len(r) for r in rows), default=0)
    rows = [r + [Fraction(0)] * (width - len(r)) for r in rows]
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col] / rows[rank][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _vector(rng: random.Random, dim: int, nonzero: bool = False) -> List[Fraction]:
    while True:
        v = [Fraction(rng.randint(-3, 3)) for _ in range(dim)]
        if any(v) or not nonzero:
            return v


def _family(rng: random.Random, kind: int) -> List[List[Fraction]]:
    """v₁..v_k then w; kinds: lone vector, pair, dependent triple, axis triple."""
    if kind == 0:
        return [_vector(rng, rng.randint(1, 3))]
    if kind == 1:
        dim = rng.randint(1, 3)
        return [_vector(rng, dim, nonzero=True), _vector(rng, dim)]
    if kind == 2:
        while True:
            v1, v2 = _vector(rng, 3), _vector(rng, 3)
            if _rank([v1, v2]) == 2:
                break
        a, b = Fraction(rng.randint(-4, 4), 2), Fraction(rng.randint(-4, 4), 2)
        return [v1, v2, [a * x + b * y for x, y in zip(v1, v2)]]
    axes = rng.sample(range(3), 3)
    family = []
    for axis in axes:
        v = [Fraction(0)] * 3
        v[axis] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        family.append(v)
    return family


@pytest.mark.slow
def test_pr_test_agrees_with_exact_rank(rng):
    for case in range(200):
        family = _family(rng, case % 4)
        vectors = family[:-1]
        space = BanachName(rational_norm(family, "max"), label=f"family{case}")
        k = len(vectors)
        result = pr_test([space.e(i) for i in range(k)], space.e(k), 8)
        independent = _rank(family) > _rank(vectors)
        assert (result.branch is Branch.INDEPENDENT) == independent, family


# Bounded trees

@pytest.mark.parametrize("seed", range(50))
def test_bounded_trees_carry_their_plant_through_the_block_code(seed):
    tree = build_instance(generate("pathB", seed))
    image = pathB_le_path2().H(tree)
    width = tree.bound(0)
    assert verify_path(image, image.planted, 32 * width) is Verdict.ACCEPT
    decoded = decode_path(tree, image.planted)
    assert decoded.prefix(32) == tree.planted.prefix(32)
    assert verify_path(tree, decoded, 32) is Verdict.ACCEPT


# Separation through X(p, q)

@pytest.mark.parametrize("seed", range(50))
def test_blocks_of_planted_separation_problems(seed):
    inst = build_instance(generate("sep", seed))
    bound = 64
    f = build_hb_instance(inst, search_bound=bound)
    space = f.space
    for n in range(4):
        assert point_norm(z(space, n)).approx(8) == dyadic(-n - 1)
        delta = delta_n(inst.p, inst.q, n, search_bound=bound).exact
        assert coord_norm_exact(1 + abs(delta), delta, delta) == 1
        tilted = space.point([Fraction(0)] * (2 * n) + [1 + abs(delta), delta])
        assert point_norm(tilted).approx(8) == dyadic(-n - 1)
    r = apply_reduction(sep_le_hb(), get_oracle("hb", "analytic"))(inst)
    assert verify_separator(inst, r, 16) is Verdict.ACCEPT


# Finite subcovers

@pytest.mark.parametrize("seed", range(50))
def test_planted_covers_have_finite_subcovers(seed):
    inst = build_instance(generate("cover", seed))
    found = finite_subcover(inst.intervals)
    assert verify_subcover(inst, found, 0) is Verdict.ACCEPT
    assert verify_subcover(inst, inst.planted, 0) is Verdict.ACCEPT
    assert max(found) < len(generate("cover", seed).streams["intervals"].head)
