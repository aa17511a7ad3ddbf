"""
Multi-valued problems, oracles and computable reductions.

A Reduction f ≤ g is the realizer-level pair (H, K): whenever G solves g,
x ↦ K(x, G(H(x))) solves f. Names are typed Python objects; Seq names are
the Baire-space special case.
"""
import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, Optional

from kernel.errors import (
    DomainViolationError,
    OracleClassMismatchError,
    ProblemTypeError,
    ReductionMismatchError,
)
from kernel.seq import Seq

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    UNDECIDED = "need-more-depth"


def combine_verdicts(verdicts: Iterable[Verdict]) -> Verdict:
    undecided = False
    for v in verdicts:
        if v is Verdict.REJECT:
            return Verdict.REJECT
        if v is Verdict.UNDECIDED:
            undecided = True
    return Verdict.UNDECIDED if undecided else Verdict.ACCEPT


def same_name(a: Any, b: Any, depth: int) -> bool:
    """Extensional equality of names, on prefixes of length `depth` for streams."""
    if isinstance(a, Seq) and isinstance(b, Seq):
        return a.prefix(depth) == b.prefix(depth)
    return a == b


@dataclass(frozen=True)
class Witnessed:
    """A solution of a composite problem together with the intermediate value."""

    value: Any
    witness: Any


@dataclass
class OracleRealizer:
    """A realizer for a problem on a restricted instance class."""

    name: str
    realize: Callable[[Any], Any]
    accepts: Callable[[Any], bool] = field(default=lambda x: True)
    instance_class: str = "all instances"
    calls: int = 0

    def __call__(self, x: Any) -> Any:
        if not self.accepts(x):
            raise OracleClassMismatchError(f"oracle {self.name} does not serve this instance ({self.instance_class})")
        self.calls += 1
        logger.debug(f"Oracle call | oracle={self.name} | calls={self.calls}")
        return self.realize(x)


@dataclass
class Problem:
    id: str
    verify: Callable[[Any, Any, int], Verdict]
    domain_check: Optional[Callable[[Any, int], Verdict]] = None
    input_type: str = ""
    output_type: str = ""
    description: str = ""
    oracles: Dict[str, OracleRealizer] = field(default_factory=dict)

    def check_domain(self, x: Any, fuel: int) -> Verdict:
        if self.domain_check is None:
            return Verdict.ACCEPT
        return self.domain_check(x, fuel)


class identity_cache:
    """Memoize a one-argument function on the identity of its argument."""

    def __init__(self, fn: Callable[[Any], Any], size: int = 128):
        self.fn = fn
        self.size = size
        self._entries: "OrderedDict[int, tuple]" = OrderedDict()

    def __call__(self, x: Any) -> Any:
        key = id(x)
        entry = self._entries.get(key)
        if entry is not None and entry[0] is x:
            self._entries.move_to_end(key)
            return entry[1]
        result = self.fn(x)
        self._entries[key] = (x, result)
        if len(self._entries) > self.size:
            self._entries.popitem(last=False)
        return result


@dataclass
class Reduction:
    id: str
    source: str
    target: str
    H: Callable[[Any], Any]
    K: Callable[[Any, Any], Any]
    description: str = ""

    def __post_init__(self):
        if not isinstance(self.H, identity_cache):
            self.H = identity_cache(self.H)


def identity_reduction(problem_id: str) -> Reduction:
    return Reduction(f"id_{problem_id}", problem_id, problem_id, H=lambda x: x, K=lambda x, y: y)


def apply_reduction(red: Reduction, G: OracleRealizer) -> OracleRealizer:
    """x ↦ K(x, G(H(x))), a realizer for red.source whenever G realizes red.target."""

    def realize(x: Any) -> Any:
        return red.K(x, G(red.H(x)))

    return OracleRealizer(
        name=f"{red.id}[{G.name}]",
        realize=realize,
        instance_class=f"preimage of {G.instance_class} under {red.id}",
    )


def chain_reductions(r1: Reduction, r2: Reduction, reduction_id: Optional[str] = None) -> Reduction:
    """f ≤ g and g ≤ ℓ give f ≤ ℓ via H = H₂∘H₁ and K(x, v) = K₁(x, K₂(H₁(x), v))."""
    if r1.target != r2.source:
        raise ReductionMismatchError(f"cannot chain {r1.id} (→{r1.target}) with {r2.id} ({r2.source}→)")

    def H(x: Any) -> Any:
        return r2.H(r1.H(x))

    def K(x: Any, v: Any) -> Any:
        return r1.K(x, r2.K(r1.H(x), v))

    return Reduction(
        reduction_id or f"{r1.id}+{r2.id}",
        r1.source,
        r2.target,
        H=H,
        K=K,
        description=f"chain of {r1.id} and {r2.id}",
    )


def chain_all(*reductions: Reduction, reduction_id: Optional[str] = None) -> Reduction:
    result = reductions[0]
    for red in reductions[1:]:
        result = chain_reductions(result, red)
    if reduction_id:
        result.id = reduction_id
    return result


def superset_reduction(f: Problem, g: Problem) -> Reduction:
    """f ≤ g when g(x) ⊆ f(x) on dom(f): H is the identity, K the second projection."""
    return Reduction(
        f"{f.id}_sup_{g.id}",
        f.id,
        g.id,
        H=lambda x: x,
        K=lambda x, y: y,
        description=f"{g.id} solutions are {f.id} solutions",
    )


def compose_problems(f: Problem, g: Problem) -> Problem:
    """(g∘f)(x) = ⋃_{y∈f(x)} g(y); solutions carry their intermediate y."""
    if f.output_type and g.input_type and f.output_type != g.input_type:
        raise ProblemTypeError(f"{f.id} outputs {f.output_type} but {g.id} expects {g.input_type}")

    def verify(x: Any, z: Any, depth: int) -> Verdict:
        if not isinstance(z, Witnessed):
            raise ProblemTypeError(f"solutions of {g.id}∘{f.id} must carry their intermediate value")
        first = f.verify(x, z.witness, depth)
        if first is Verdict.REJECT:
            return first
        if g.check_domain(z.witness, depth) is Verdict.REJECT:
            raise DomainViolationError(f"intermediate value lies outside dom({g.id})")
        return combine_verdicts([first, g.verify(z.witness, z.value, depth)])

    return Problem(
        id=f"{g.id}∘{f.id}",
        verify=verify,
        domain_check=f.domain_check,
        input_type=f.input_type,
        output_type=g.output_type,
        description=f"{g.id} after {f.id}",
    )


def compose_oracles(f_oracle: OracleRealizer, g_oracle: OracleRealizer) -> OracleRealizer:
    def realize(x: Any) -> Witnessed:
        y = f_oracle(x)
        return Witnessed(g_oracle(y), y)

    return OracleRealizer(name=f"{g_oracle.name}∘{f_oracle.name}", realize=realize, accepts=f_oracle.accepts)


def identity_problem(kind: str = "name") -> Problem:
    return Problem(
        id=f"id_{kind}",
        verify=lambda x, y, depth: Verdict.ACCEPT if same_name(x, y, depth) else Verdict.REJECT,
        input_type=kind,
        output_type=kind,
    )


def composition_with_computable(
    f: Problem,
    g: Callable[[Any], Any],
    h: Callable[[Any], Any],
    label: str = "g∘f∘h",
):
    """
    For computable g and h, (g∘f∘h) ≤ f via H = h and K(x, z) = g(z).

    Returns the composite problem and the reduction. Composite solutions
    are Witnessed(g(y), y) with y ∈ f(h(x)).
    """

    def verify(x: Any, z: Any, depth: int) -> Verdict:
        if not isinstance(z, Witnessed):
            raise ProblemTypeError(f"solutions of {label} must carry their intermediate value")
        inner = f.verify(h(x), z.witness, depth)
        if inner is Verdict.REJECT:
            return inner
        if not same_name(g(z.witness), z.value, depth):
            return Verdict.REJECT
        return inner

    composite = Problem(id=label, verify=verify, description=f"computable pre/post-processing of {f.id}")
    reduction = Reduction(
        f"{label}_le_{f.id}",
        label,
        f.id,
        H=h,
        K=lambda x, z: Witnessed(g(z), z),
        description="composition with computable functions",
    )
    return composite, reduction
