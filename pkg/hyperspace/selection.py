"""
Selection of a point in a nonempty closed subset A of a compact K.

sel_tree builds the bounded tree T(K, A): a node s picks, at each level n,
the s(n)-th ball of the level-n cover of K. It survives while the chosen
centers stay mutually close and keep their distance from the balls that
exclude X ∖ A. Any infinite path converges to a point of A.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional

from kernel.seq import Seq
from problems.base import OracleRealizer, Reduction, Verdict
from problems.trees import BoundedTree, TreeChar
from hyperspace.closed import ClosedMinus, CompactName, cantor_complement_tree, cantor_space_name
from spaces.creal import CReal
from spaces.metric import REAL_SEQUENCES
from spaces.rationals import dyadic

logger = logging.getLogger(__name__)


@dataclass
class SelInstance:
    compact: CompactName
    closed: ClosedMinus
    planted: Any = None
    label: str = "sel"


class SelectionTree(BoundedTree):
    """
    s ∈ T iff for all n, i, k < |s|:
      s(n) < q(n),
      d(x^n_{s(n)}, x^i_{s(i)}) ≤ 2^{-n} + 2^{-i} + 2^{-k},
      d(x^n_{s(n)}, b_i) ≥ α_i − 2^{-n} − 2^{-k}.
    Membership of s is checked from that of its parent plus the triples
    that involve the new level.
    """

    def __init__(self, compact: CompactName, closed: ClosedMinus, label: str = "sel", planted: Optional[Seq] = None):
        self.compact = compact
        self.closed = closed
        self.space = compact.space
        self._distances: Dict[tuple, Fraction] = {}
        bound = Seq(rule=compact.level_size, label="q")
        super().__init__(self._fresh_conditions, bound, label=f"T({label})", planted=planted)

    def center(self, n: int, j: int) -> Any:
        return self.compact.center(n, j)

    def _distance(self, a: Any, b: Any) -> Fraction:
        key = (repr(a), repr(b))
        if key not in self._distances:
            # dense distances are exact, so their approximations are the values
            self._distances[key] = self.space.dist(a, b).approx(0)
        return self._distances[key]

    def _fresh_conditions(self, s: tuple) -> bool:
        m = len(s) - 1
        if m < 0:
            return True
        if not self.member(s[:-1]):
            return False
        centers = [self.center(n, v) for n, v in enumerate(s)]
        tight = dyadic(-m)
        # proximity: triples with n = m or i = m use k = m; older pairs see the new k = m
        for n in range(m + 1):
            for i in range(n, m + 1):
                if self._distance(centers[n], centers[i]) > dyadic(-n) + dyadic(-i) + tight:
                    return False
        # avoidance, strongest at k = m
        for n in range(m + 1):
            for i in range(m + 1):
                ball = self.closed.balls[i]
                if ball.is_empty:
                    continue
                if self._distance(centers[n], ball.center) < ball.radius - dyadic(-n) - tight:
                    return False
        return True

    def candidates(self, t: tuple) -> Iterable[int]:
        level = len(t)
        if level == 0:
            return range(self.bound(0))
        previous = self.center(level - 1, t[-1])
        return self.compact.cover_at(level).candidates(previous, dyadic(2 - level))


def sel_tree(compact: CompactName, closed: ClosedMinus, planted: Any = None, label: str = "sel") -> SelectionTree:
    tree = SelectionTree(compact, closed, label=label)
    if planted is not None:
        tree.planted = nearest_path(tree, planted)
    return tree


def nearest_path(tree: SelectionTree, point: Any) -> Seq:
    """
    At each level the index of a center nearest to a point of A. Points of
    ℝ^ℕ given by CReal coordinates are replaced at level n by their first n
    coordinates to within 2^{-(n+2)}; the chosen center then pins every
    coordinate inside its interval.
    """

    def rule(n: int) -> int:
        cover = tree.compact.cover_at(n)
        target = tree.space.truncate(point, n) if isinstance(point, Seq) else point
        options = cover.candidates(target, dyadic(-n))
        return min(options, key=lambda j: (tree._distance(cover.balls[j].center, target), j))

    return Seq(rule=rule, label="nearest")


def limit_point(compact: CompactName, path: Seq) -> Any:
    """x = lim x^n_{p(n)} with d(x, x^n_{p(n)}) ≤ 2^{-n+1}."""
    return compact.space.limit(lambda n: compact.center(n, path[n]))


def sel_point(compact: CompactName, closed: ClosedMinus, path_oracle: OracleRealizer) -> Any:
    tree = sel_tree(compact, closed)
    return limit_point(compact, path_oracle(tree))


def verify_sel(inst: SelInstance, point: Any, depth: int) -> Verdict:
    """Reject when the point certainly lies in one of the first `depth` excluded balls."""
    space = inst.compact.space
    slack = dyadic(-depth)
    for i in range(depth):
        ball = inst.closed.balls[i]
        if ball.is_empty:
            continue
        d: CReal = space.point_dist(point, ball.center)
        if d.approx(depth) + slack < ball.radius:
            return Verdict.REJECT
    return Verdict.ACCEPT


def planted_sel_realizer() -> OracleRealizer:
    return OracleRealizer(
        name="planted",
        realize=lambda inst: inst.planted,
        accepts=lambda inst: getattr(inst, "planted", None) is not None,
        instance_class="instances carrying a planted point",
    )


# Reductions

def sel_le_pathB() -> Reduction:
    return Reduction(
        "sel_le_pathB",
        "sel",
        "pathB",
        H=lambda inst: sel_tree(inst.compact, inst.closed, planted=_trackable_planted(inst), label=inst.label),
        K=lambda inst, path: limit_point(inst.compact, path),
        description="paths of T(K, A) converge into A",
    )


def _trackable_planted(inst: SelInstance) -> Any:
    # dense points, or points of ℝ^ℕ with CReal coordinates
    if isinstance(inst.planted, (Fraction, int, tuple)):
        return inst.planted
    if isinstance(inst.planted, Seq) and inst.compact.space is REAL_SEQUENCES:
        return inst.planted
    return None


def path2_le_sel() -> Reduction:
    """Path₂(T) = Sel(2^ℕ, A_T)."""

    def H(tree: TreeChar) -> SelInstance:
        return SelInstance(cantor_space_name(), cantor_complement_tree(tree), planted=tree.planted, label=tree.label)

    def K(tree: TreeChar, point: Seq) -> Seq:
        return point

    return Reduction("path2_le_sel", "path2", "sel", H=H, K=K, description="A_T removes the cylinders off T")
