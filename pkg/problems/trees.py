"""
Trees and path problems.

TreeChar      binary tree given by a decidable membership predicate; its
              characteristic Seq is indexed by the shortlex index of strings.
BoundedTree   finitely branching tree with level bounds b(i).
RegularTree   tree presented by a finite automaton; liveness is decided
              with networkx, which makes its leftmost path computable.
"""
import logging
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from config import settings
from kernel.errors import EmptyTreeError, MalformedInstanceError
from kernel.seq import Seq
from kernel.seqcode import binary_index, binary_string, decode
from problems.base import OracleRealizer, Verdict

logger = logging.getLogger(__name__)


class TreeChar:
    """A subtree of 2^{<ℕ}."""

    def __init__(self, member: Callable[[tuple], bool], label: str = "T", planted: Optional[Seq] = None):
        self._member = member
        self._memo: Dict[tuple, bool] = {}
        self.label = label
        self.planted = planted

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"

    def member(self, t: Sequence[int]) -> bool:
        t = tuple(t)
        if t not in self._memo:
            self._memo[t] = self._check(t)
        return self._memo[t]

    def _check(self, t: tuple) -> bool:
        if any(v >= self.bound(i) for i, v in enumerate(t)):
            return False
        return bool(self._member(t))

    def __contains__(self, t) -> bool:
        return self.member(t)

    def bound(self, level: int) -> int:
        return 2

    def candidates(self, t: tuple) -> Iterable[int]:
        """Child values to try, in increasing order."""
        return range(self.bound(len(t)))

    def children(self, t: Sequence[int]) -> Iterator[int]:
        t = tuple(t)
        for v in self.candidates(t):
            if self.member(t + (v,)):
                yield v

    @property
    def chi(self) -> Seq:
        return Seq(rule=lambda j: int(self.member(binary_string(j))), label=f"chi({self.label})")

    @classmethod
    def from_chi(cls, chi: Seq, label: str = "T") -> "TreeChar":
        return cls(lambda t: chi[binary_index(t)] == 1, label=label)

    def find_extension(self, t: Sequence[int], length: int) -> Optional[tuple]:
        """Leftmost member of the given length extending t, by depth-first search."""
        t = tuple(t)
        if not self.member(t):
            return None
        stack: List[Tuple[tuple, Iterator[int]]] = [(t, iter(self.children(t)))]
        if len(t) >= length:
            return t
        while stack:
            node, kids = stack[-1]
            child = next(kids, None)
            if child is None:
                stack.pop()
                continue
            extended = node + (child,)
            if len(extended) >= length:
                return extended
            stack.append((extended, iter(self.children(extended))))
        return None

    def level_nonempty(self, n: int) -> bool:
        return self.find_extension((), n) is not None

    def is_downward_closed(self, depth: int) -> bool:
        """Check the tree axiom on all members of length ≤ depth (binary trees only)."""
        for j in range((1 << (depth + 1)) - 1):
            t = binary_string(j)
            if self.member(t) and t and not self.member(t[:-1]):
                return False
        return True


class BoundedTree(TreeChar):
    """A tree T ⊆ ℕ^{<ℕ} with t(i) < b(i) for every member t."""

    def __init__(self, member: Callable[[tuple], bool], bound: Seq, label: str = "T", planted: Optional[Seq] = None):
        super().__init__(member, label=label, planted=planted)
        self.bound_seq = bound

    def bound(self, level: int) -> int:
        return self.bound_seq[level]

    @property
    def chi(self) -> Seq:
        """Characteristic function over SeqCode codes."""
        return Seq(rule=lambda c: int(self.member(decode(c))), label=f"chi({self.label})")


class RegularTree(BoundedTree):
    """
    A tree whose members are the strings the automaton reads without
    reaching a dead state or an undefined transition.
    """

    def __init__(
        self,
        states: Sequence[str],
        transitions: Dict[Tuple[str, int], Optional[str]],
        initial: str,
        dead: Iterable[str] = (),
        alphabet: int = 2,
        label: str = "regular",
        planted: Optional[Seq] = None,
    ):
        self.states = list(states)
        self.transitions = dict(transitions)
        self.initial = initial
        self.dead = set(dead)
        self.alphabet = alphabet
        if initial not in self.states:
            raise MalformedInstanceError(f"initial state {initial!r} is not a state")
        for (state, symbol), target in self.transitions.items():
            if state not in self.states or (target is not None and target not in self.states):
                raise MalformedInstanceError(f"transition {state!r} --{symbol}--> {target!r} names an unknown state")
            if not 0 <= symbol < alphabet:
                raise MalformedInstanceError(f"symbol {symbol} outside alphabet of size {alphabet}")
        super().__init__(self._accepts, Seq.constant(alphabet), label=label, planted=planted)
        self.live = self._live_states()
        self._heights: Dict[str, int] = {}
        logger.debug(f"RegularTree built | label={label} | states={len(self.states)} | live={len(self.live)}")

    def step(self, state: Optional[str], symbol: int) -> Optional[str]:
        if state is None or state in self.dead:
            return None
        target = self.transitions.get((state, symbol))
        if target is None or target in self.dead:
            return None
        return target

    def run(self, t: Sequence[int]) -> Optional[str]:
        state: Optional[str] = None if self.initial in self.dead else self.initial
        for symbol in t:
            state = self.step(state, symbol)
        return state

    def _accepts(self, t: tuple) -> bool:
        return self.run(t) is not None

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(s for s in self.states if s not in self.dead)
        for s in list(g.nodes):
            for symbol in range(self.alphabet):
                target = self.step(s, symbol)
                if target is not None:
                    g.add_edge(s, target)
        return g

    def _live_states(self) -> set:
        g = self.graph()
        cyclic = set()
        for component in nx.strongly_connected_components(g):
            if len(component) > 1 or any(g.has_edge(n, n) for n in component):
                cyclic |= component
        live = set(cyclic)
        for node in cyclic:
            live |= nx.ancestors(g, node)
        return live

    def max_level(self, t: Sequence[int]) -> Optional[int]:
        """Greatest n with a member of length n extending t; None when unbounded, −1 when t ∉ T."""
        state = self.run(t)
        if state is None:
            return -1
        if state in self.live:
            return None
        if state not in self._heights:
            g = self.graph()
            below = g.subgraph(nx.descendants(g, state) | {state})
            self._heights[state] = nx.dag_longest_path_length(below)
        return len(t) + self._heights[state]

    def candidates(self, t: tuple) -> Iterable[int]:
        return range(self.alphabet)

    def leftmost_path(self) -> Seq:
        if self.run(()) not in self.live:
            raise EmptyTreeError(f"{self.label}: no live state reachable from the initial state")

        def produce():
            state = self.initial
            while True:
                for symbol in range(self.alphabet):
                    target = self.step(state, symbol)
                    if target is not None and target in self.live:
                        state = target
                        yield symbol
                        break
                else:
                    raise EmptyTreeError(f"{self.label}: live state {state!r} without live successor")

        return Seq(produce(), label=f"leftmost({self.label})")


def regular_path_oracle(tree: RegularTree) -> Seq:
    """The leftmost infinite path: at each node the least child whose state is live."""
    return tree.leftmost_path()


def leftmost_path_oracle(tree: TreeChar, lookahead: Optional[int] = None) -> Seq:
    """
    Leftmost path of a decidable tree whose dead branches die within
    `lookahead` levels. Each emitted node is the least child that still has
    an extension `lookahead` levels further down.
    """
    window = settings.PATH_LOOKAHEAD if lookahead is None else lookahead

    def produce():
        prefix: tuple = ()
        while True:
            found = tree.find_extension(prefix, len(prefix) + 1 + window)
            if found is None:
                raise EmptyTreeError(f"{tree.label}: no extension of length {len(prefix) + 1 + window} above {prefix}")
            prefix = found[: len(prefix) + 1]
            yield prefix[-1]

    return Seq(produce(), label=f"leftmost({tree.label})")


def verify_path(tree: TreeChar, path: Seq, depth: int) -> Verdict:
    """Accept iff every prefix of length ≤ depth is a member."""
    prefix = path.prefix(depth)
    for n in range(depth + 1):
        if not tree.member(prefix[:n]):
            return Verdict.REJECT
    return Verdict.ACCEPT


def regular_path_realizer() -> OracleRealizer:
    return OracleRealizer(
        name="regular",
        realize=regular_path_oracle,
        accepts=lambda t: isinstance(t, RegularTree),
        instance_class="automaton-presented trees",
    )


def leftmost_path_realizer(lookahead: Optional[int] = None) -> OracleRealizer:
    return OracleRealizer(
        name="leftmost",
        realize=lambda t: leftmost_path_oracle(t, lookahead),
        accepts=lambda t: isinstance(t, TreeChar),
        instance_class="trees whose dead branches die within the lookahead",
    )
