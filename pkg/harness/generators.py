"""
Seeded planted-instance generators.

Each generator builds an instance backwards from a known solution, so the
"planted" oracle can serve problems that have no computable realizer.
Output depends only on (seed, size).
"""
import logging
import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from kernel.errors import UnknownIdError
from problems.compact import chain_cover
from schemas.instances import AutomatonBlock, InstanceFile, StreamTable
from spaces.rationals import format_rational

logger = logging.getLogger(__name__)

DEFAULT_SIZE = 16


def _table(head: List, period: List) -> StreamTable:
    return StreamTable(head=list(head), period=list(period))


def _enumeration(values: List[int], rng: random.Random) -> StreamTable:
    head = list(values)
    rng.shuffle(head)
    return _table(head, [head[0]])


def gen_sep(rng: random.Random, size: int) -> InstanceFile:
    """Disjoint nonempty P, Q ⊆ [0, size); p and q list them, then repeat their first value."""
    size = max(size, 2)
    universe = list(range(size))
    rng.shuffle(universe)
    split = rng.randint(1, size - 1)
    left, right = universe[:split], universe[split:]
    p_values = rng.sample(left, rng.randint(1, len(left)))
    q_values = rng.sample(right, rng.randint(1, len(right)))
    r = [1 if n in q_values else 0 for n in range(size)]
    return InstanceFile(
        problem="sep",
        streams={"p": _enumeration(p_values, rng), "q": _enumeration(q_values, rng)},
        planted=_table(r, [0]),
        params={"witness_bound": max(len(p_values), len(q_values))},
    )


def _automaton(rng: random.Random, size: int, alphabet: int) -> Tuple[AutomatonBlock, StreamTable]:
    """A spine s0 → ... → s_{m-1} closing into a cycle, with random side edges; the spine path is planted."""
    m = max(size // 4, 2)
    states = [f"s{i}" for i in range(m)]
    loop_to = rng.randrange(m)
    spine_bits = [rng.randrange(alphabet) for _ in range(m)]
    transitions = []
    for i, state in enumerate(states):
        for symbol in range(alphabet):
            if symbol == spine_bits[i]:
                target = states[i + 1] if i + 1 < m else states[loop_to]
            elif rng.random() < 0.5:
                target = rng.choice(states + ["sink"])
            else:
                target = None
            transitions.append((state, symbol, target))
    states.append("sink")
    block = AutomatonBlock(states=states, transitions=transitions, initial="s0", dead=["sink"], alphabet=alphabet)
    return block, _table(spine_bits[:loop_to], spine_bits[loop_to:])


def gen_path2(rng: random.Random, size: int) -> InstanceFile:
    block, path = _automaton(rng, size, 2)
    return InstanceFile(problem="path2", automaton=block, planted=path)


def gen_pathB(rng: random.Random, size: int) -> InstanceFile:
    block, path = _automaton(rng, size, 3)
    return InstanceFile(problem="pathB", automaton=block, planted=path)


def gen_range(rng: random.Random, size: int) -> InstanceFile:
    """Distinct values below `size`, then the affine tail size, size + 2, size + 4, ..."""
    head = rng.sample(range(size), rng.randint(1, size))
    members = set(head)
    table = StreamTable(head=head, affine=(size, 2))
    chi = [1 if n in members else 0 for n in range(size)]
    return InstanceFile(problem="range", streams={"p": table}, planted=_table(chi, [1, 0]))


def gen_c1(rng: random.Random, size: int) -> InstanceFile:
    r = [rng.randrange(2) for _ in range(size)]
    period = [rng.randrange(2) for _ in range(rng.randint(1, 3))]
    return InstanceFile(problem="c1", construction="plant", planted=_table(r, period), params={"witness_bound": 1})


def gen_sup(rng: random.Random, size: int) -> InstanceFile:
    support = sorted({Fraction(rng.randint(0, 64), 64) for _ in range(max(size // 2, 1))})
    values = [rng.choice(support) for _ in range(size)] + list(support)
    rng.shuffle(values)
    texts = [format_rational(v) for v in values]
    return InstanceFile(
        problem="sup",
        streams={"xs": _table(texts, [texts[0]])},
        params={"support": [format_rational(v) for v in support], "planted_sup": format_rational(max(support))},
    )


def gen_cover(rng: random.Random, size: int) -> InstanceFile:
    """A chain of overlapping intervals across [0, 1], shuffled among short junk intervals."""
    cuts = sorted({Fraction(rng.randint(1, 63), 64) for _ in range(max(size // 4, 1))})
    points = [Fraction(0)] + cuts + [Fraction(1)]
    pad = Fraction(1, 256)
    chain = [(points[i] - pad, points[i + 1] + pad) for i in range(len(points) - 1)]
    junk = []
    for _ in range(size):
        a = Fraction(rng.randint(0, 255), 256)
        junk.append((a, a + Fraction(1, 512)))
    intervals = chain + junk
    rng.shuffle(intervals)
    texts = [[format_rational(a), format_rational(b)] for a, b in intervals]
    return InstanceFile(
        problem="cover",
        streams={"intervals": _table(texts, [texts[0]])},
        params={"planted_indices": sorted(chain_cover(intervals))},
    )


def gen_omega(rng: random.Random, size: int) -> InstanceFile:
    if rng.random() < 0.5:
        return InstanceFile(problem="omega", streams={"p": _table([], [0])}, params={"planted": 0})
    head = [0] * size
    head[rng.randrange(size)] = rng.randint(1, 9)
    return InstanceFile(problem="omega", streams={"p": _table(head, [0])}, params={"planted": 1})


def gen_hb(rng: random.Random, size: int) -> InstanceFile:
    """X(p, q) for a planted separation problem."""
    sep = gen_sep(rng, size)
    return InstanceFile(problem="hb", construction="blocks", streams=sep.streams, planted=sep.planted, params=sep.params)


GENERATORS: Dict[str, Callable[[random.Random, int], InstanceFile]] = {
    "sep": gen_sep,
    "path2": gen_path2,
    "pathB": gen_pathB,
    "range": gen_range,
    "c1": gen_c1,
    "sup": gen_sup,
    "cover": gen_cover,
    "omega": gen_omega,
    "hb": gen_hb,
}


def generate(problem_id: str, seed: int, size: int = DEFAULT_SIZE) -> InstanceFile:
    try:
        generator = GENERATORS[problem_id]
    except KeyError:
        raise UnknownIdError(f"no generator for problem {problem_id!r}; known: {sorted(GENERATORS)}") from None
    doc = generator(random.Random(seed), size)
    doc.seed = seed
    logger.debug(f"Generated | problem={problem_id} | seed={seed} | size={size}")
    return doc
