"""
Uniform effective independence.

pr_test decides, for a finite independent family v₁..v_k and a candidate
w, one of
  (a) {v₁, ..., v_k, w} is linearly independent, certified by some
      m ≥ 2(k+1) with min ‖∑βᵢ uᵢ‖ over S_{m,k+1} > 2^{-m}·∑‖uᵢ‖;
  (b) ‖w − ∑γᵢvᵢ‖ < 2^{-(n+1)} for rational γ.
Both searches are branch and bound over boxes of coefficients, using
‖∑βᵢuᵢ‖ − ‖∑βᵢ'uᵢ‖ ≤ ∑|βᵢ − βᵢ'|·‖uᵢ‖. Search (a) certifies the bound on
the unit sphere, which lies below every point of S_{m,k+1} by homogeneity.

ueil builds q stage by stage: q(0) = N with ‖e(N)‖ > 0; q(n+1) is the
least i ≤ n+1 whose test answers (a), and N when every test answers (b).

One of (a), (b) always holds, so pr_test runs stages without bound and only
stops when its box count passes the fuel; that raises FuelExhaustedError.
"""
import heapq
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from config import settings
from kernel.errors import FuelExhaustedError
from kernel.seq import Seq
from banach.completion import BanachName, CPoint, point_add, point_norm, point_scale
from banach.pseudonorm import Coeffs, add_coeffs, scale_coeffs
from problems.base import OracleRealizer, Verdict
from spaces.creal import Ordering, creal_cmp
from spaces.rationals import dyadic, rat

logger = logging.getLogger(__name__)

BOX_BUDGET = 64
BUDGET_DOUBLINGS = 10


class Branch(str, Enum):
    INDEPENDENT = "independent"
    APPROXIMABLE = "approximable"


def stage_budget(t: int) -> int:
    """Boxes one search may visit at stage t."""
    return BOX_BUDGET << min(t, BUDGET_DOUBLINGS)


@dataclass(frozen=True)
class PRResult:
    branch: Branch
    m: Optional[int] = None
    gammas: Optional[Tuple[Fraction, ...]] = None


class Combiner:
    """Norm intervals of rational combinations of fixed points."""

    def __init__(self, points: Sequence[CPoint], precision: int):
        self.points = list(points)
        self.precision = precision
        self.err = dyadic(-precision)
        self.exact = all(p.exact is not None for p in self.points)
        self.norm = self.points[0].space.norm if self.points else None

    def value(self, coeffs: Sequence[Fraction]) -> Tuple[Fraction, Fraction]:
        if self.exact:
            total: Coeffs = ()
            for c, p in zip(coeffs, self.points):
                if c:
                    total = add_coeffs(total, scale_coeffs(c, p.exact))
            v = self.norm.norm(total).approx(self.precision) if total else Fraction(0)
        else:
            acc = None
            for c, p in zip(coeffs, self.points):
                term = point_scale(c, p)
                acc = term if acc is None else point_add(acc, term)
            v = point_norm(acc).approx(self.precision)
        return max(Fraction(0), v - self.err), v + self.err

    def lengths(self) -> List[Fraction]:
        return [self.value([Fraction(int(i == j)) for j in range(len(self.points))])[1] for i in range(len(self.points))]


def _split(center: Tuple[Fraction, ...], half: Fraction):
    quarter = half / 2
    for signs in itertools.product((-1, 1), repeat=len(center)):
        yield tuple(c + s * quarter for c, s in zip(center, signs)), quarter


def _sphere_band(center: Tuple[Fraction, ...], half: Fraction) -> bool:
    """The box meets the unit sphere."""
    low = sum((max(Fraction(0), abs(c) - half) ** 2 for c in center), Fraction(0))
    high = sum(((abs(c) + half) ** 2 for c in center), Fraction(0))
    return low <= 1 <= high


def _independent_at(comb: Combiner, m: int, budget: int) -> Tuple[Optional[bool], int]:
    """
    Whether min over the unit sphere certainly exceeds 2^{-m}·∑‖uᵢ‖.

    Returns:
        (True | False | None, boxes visited); False means refuted at this m,
        None means the box floor or the budget was reached first
    """
    lengths = comb.lengths()
    threshold = dyadic(-m) * sum(lengths)
    dim = len(lengths)
    floor = dyadic(-m - 4)
    stack = [(tuple(Fraction(0) for _ in range(dim)), Fraction(1))]
    visited = 0
    while stack:
        center, half = stack.pop()
        visited += 1
        if visited > budget:
            return None, visited
        if not _sphere_band(center, half):
            continue
        lo, hi = comb.value(center)
        radius_sq = sum((c * c for c in center), Fraction(0))
        if radius_sq and hi * hi <= threshold * threshold * radius_sq:
            return False, visited
        if lo - half * sum(lengths) > threshold:
            continue
        if half <= floor:
            return None, visited
        stack.extend(_split(center, half))
    return True, visited


def search_combination(
    comb: Combiner, bound: Fraction, epsilon: Fraction, budget: int
) -> Tuple[Optional[Tuple[Fraction, ...]], int]:
    """
    Best-first search for γ ∈ [−bound, bound]^k with ‖w − ∑γᵢvᵢ‖ < ε.

    Returns:
        (γ or None, boxes visited)
    """
    k = len(comb.points) - 1
    lengths = comb.lengths()[:k]

    def objective(gammas: Tuple[Fraction, ...]) -> Tuple[Fraction, Fraction]:
        coeffs = [-g for g in gammas] + [Fraction(1)]
        return comb.value(coeffs)

    root = tuple(Fraction(0) for _ in range(k))
    lo, hi = objective(root)
    if hi < epsilon:
        return root, 1
    if k == 0:
        return None, 1
    counter = itertools.count()
    heap = [(lo, next(counter), root, bound)]
    visited = 1
    while heap and visited < budget:
        _, _, center, half = heapq.heappop(heap)
        for child, quarter in _split(center, half):
            visited += 1
            lo, hi = objective(child)
            if hi < epsilon:
                return child, visited
            if lo - quarter * sum(lengths) >= epsilon:
                continue
            heapq.heappush(heap, (lo, next(counter), child, quarter))
    return None, visited


def pr_test(vectors: Sequence[CPoint], candidate: CPoint, n: int, fuel: Optional[int] = None) -> PRResult:
    """
    Dovetail search (a) over m = 2(k+1), 2(k+1)+1, ... with search (b) over
    coefficient boxes [−2^{t+1}, 2^{t+1}]^k, answering with the first success.

    Args:
        vectors: the independent family v₁..v_k
        candidate: w
        n: slack exponent for (b)
        fuel: total boxes both searches may visit, DEMAND_FUEL by default

    Raises:
        FuelExhaustedError: fuel ran out before either search succeeded
    """
    fuel = settings.DEMAND_FUEL if fuel is None else fuel
    k = len(vectors)
    epsilon = dyadic(-(n + 1))
    spent = 0
    for t in itertools.count():
        m = 2 * (k + 1) + t
        budget = min(stage_budget(t), fuel - spent)
        if budget <= 0:
            break
        comb = Combiner(list(vectors) + [candidate], precision=m + n + 8)
        gammas, visited = search_combination(comb, dyadic(t + 1), epsilon, budget)
        spent += visited
        if gammas is not None:
            logger.debug(f"pr_test | k={k} | branch=b | stage={t}")
            return PRResult(Branch.APPROXIMABLE, gammas=gammas)
        budget = min(stage_budget(t), fuel - spent)
        if budget <= 0:
            break
        certified, visited = _independent_at(comb, m, budget)
        spent += visited
        if certified:
            logger.debug(f"pr_test | k={k} | branch=a | m={m} | boxes={spent}")
            return PRResult(Branch.INDEPENDENT, m=m)
    logger.error(f"pr_test fuel exhausted | k={k} | n={n} | boxes={spent}")
    raise FuelExhaustedError(f"pr_test: neither branch found for {candidate} within {fuel} boxes", fuel)


@dataclass
class BasisStream:
    """
    q from the independence lemma: e' = e∘q, R = {j > 0 : q(j) = q(0)}.
    Off R, the e'(j) are distinct, independent, and span a dense subspace.
    """

    space: BanachName
    q: Seq
    marker: int
    planted: Optional[Seq] = None
    label: str = "q"

    def in_r(self, j: int) -> bool:
        return j > 0 and self.q[j] == self.q[0]

    def in_r_star(self, j: int) -> bool:
        return self.q[j] == self.q[0]

    def e_prime(self, n: int) -> CPoint:
        return self.space.e(self.q[n])

    def selected(self, depth: int) -> List[int]:
        """Indices j < depth off R."""
        return [j for j in range(depth) if not self.in_r(j)]

    def a_prime(self, s: Sequence[int]) -> Coeffs:
        """Coefficients over e of a_{e'}(s) = ∑ a_ℚ(s(j))·e'(j)."""
        total: Coeffs = ()
        for j, code in enumerate(s):
            value = rat(code)
            if value:
                total = add_coeffs(total, scale_coeffs(value, self.space.e(self.q[j]).exact))
        return total


def find_marker(space: BanachName, fuel: Optional[int] = None) -> int:
    """Least N with ‖e(N)‖ certified positive."""
    fuel = settings.DEFAULT_FUEL if fuel is None else fuel
    for stage in range(fuel):
        for n in range(stage + 1):
            if creal_cmp(point_norm(space.e(n)), 0, stage) is Ordering.GT:
                return n
    raise FuelExhaustedError(f"{space.label}: no generator of positive norm found", fuel)


def ueil(space: BanachName, fuel: Optional[int] = None) -> BasisStream:
    marker = find_marker(space, fuel)
    chosen: List[int] = [marker]

    def produce():
        yield marker
        stage = 0
        while True:
            vectors = [space.e(i) for i in chosen]
            picked = marker
            for i in range(stage + 2):
                result = pr_test(vectors, space.e(i), stage)
                if result.branch is Branch.INDEPENDENT:
                    picked = i
                    chosen.append(i)
                    break
            logger.debug(f"ueil stage {stage + 1} | q={picked} | selected={chosen}")
            yield picked
            stage += 1

    stream = BasisStream(space, Seq(produce(), label=f"q({space.label})"), marker)
    logger.info(f"BasisStream initialized | space={space.label} | marker={marker}")
    return stream


def basis_for(space: BanachName) -> BasisStream:
    """The basis stream of a space, built once per name."""
    if space._basis is None:
        space._basis = ueil(space)
    return space._basis


def verify_basis_stream(space: BanachName, stream: BasisStream, depth: int) -> Verdict:
    """Injective off R and independent on the selected indices below depth."""
    seen: Dict[int, int] = {}
    vectors: List[CPoint] = []
    for j in stream.selected(depth):
        target = stream.q[j]
        if target in seen:
            return Verdict.REJECT
        seen[target] = j
        result = pr_test(vectors, space.e(target), depth)
        if result.branch is Branch.APPROXIMABLE:
            return Verdict.REJECT
        vectors.append(space.e(target))
    return Verdict.ACCEPT


def ueil_realizer() -> OracleRealizer:
    return OracleRealizer(
        name="ueil",
        realize=ueil,
        accepts=lambda x: isinstance(x, BanachName),
        instance_class="Banach space names",
    )
