"""
Composition of Path₂-computable problems with a single oracle call.

tilde_tree(T, f) packs a path p₀ of T and a path p₁ of f(p₀) into one
tree: t ∈ T̃ iff t₀ ∈ T and t₁ ∈ f̂(t₀), where t₀, t₁ are the even and odd
halves of t and f̂(t) is the approximation from above of f(t⌢…) read off
|t| steps of the machine on t⌢0̄.
"""
import logging
from typing import Any, Dict, Optional

from kernel.errors import ReductionMismatchError
from kernel.machine import Machine, fueled_run
from kernel.seq import Seq, deinterleave, interleave, padded, split_string
from kernel.seqcode import FinSeq, binary_index
from problems.base import Reduction, Witnessed
from problems.sep import SepInstance
from problems.trees import TreeChar
from reductions.sep_path import sep_le_path2

logger = logging.getLogger(__name__)


class TreeApproximation:
    """f̂: strings t ↦ the tree of strings with no prefix excluded after |t| steps on t⌢0̄."""

    def __init__(self, machine: Machine):
        self.machine = machine
        self._runs: Dict[tuple, FinSeq] = {}

    def excluded_bits(self, t: tuple) -> FinSeq:
        if t not in self._runs:
            self._runs[t] = fueled_run(self.machine, padded(t, 0), len(t))
        return self._runs[t]

    def contains(self, t, s) -> bool:
        out = self.excluded_bits(tuple(t))
        s = tuple(s)
        for length in range(len(s) + 1):
            j = binary_index(s[:length])
            if j < len(out) and out[j] == 0:
                return False
        return True


def tilde_tree(tree: TreeChar, machine: Machine, label: Optional[str] = None, planted: Optional[Seq] = None) -> TreeChar:
    approx = TreeApproximation(machine)

    def member(t: tuple) -> bool:
        t0, t1 = split_string(t)
        return tree.member(t0) and approx.contains(t0, t1)

    return TreeChar(member, label=label or f"~{tree.label}", planted=planted)


def tree_machine(operator, label: str = "tree-of") -> Machine:
    """Lift p ↦ chi(tree(p)) to a step machine over 2^ℕ."""
    return Machine.lift(lambda p: operator(p).chi, label=label)


def sep_compose(r_f: Reduction, r_g: Reduction) -> Reduction:
    """
    From f ≤ Path₂ via (h, k) and g ≤ Path₂ via (h', k'), build g∘f ≤ Path₂:
    H(x) = T̃ for T = h(x) and the tree map p ↦ h'(k(x, p)); K reads
    k'(k(x, p₀), p₁) from a path p = p₀ ⊕ p₁ of T̃.
    """
    if r_f.target != "path2" or r_g.target != "path2":
        raise ReductionMismatchError(f"sep_compose needs two reductions to path2, got {r_f.target} and {r_g.target}")

    def H(x: Any) -> TreeChar:
        machine = tree_machine(lambda p: r_g.H(r_f.K(x, p)), label=f"{r_g.id}∘{r_f.id}")
        inner = r_f.H(x)
        return tilde_tree(inner, machine, planted=_planted_pair(x, inner, r_f, r_g))

    def K(x: Any, path: Seq) -> Witnessed:
        p0, p1 = deinterleave(path)
        y = r_f.K(x, p0)
        return Witnessed(r_g.K(y, p1), y)

    logger.debug(f"Composing | first={r_f.id} | second={r_g.id}")
    return Reduction(
        f"{r_g.id}∘{r_f.id}",
        f"{r_g.source}∘{r_f.source}",
        "path2",
        H=H,
        K=K,
        description="single-call composition through T̃",
    )


def _planted_pair(x: Any, inner: TreeChar, r_f: Reduction, r_g: Reduction) -> Optional[Seq]:
    """p₀ ⊕ p₁ from the planted path p₀ of h(x) and the planted path p₁ of h'(k(x, p₀))."""
    if inner.planted is None:
        return None
    outer = r_g.H(r_f.K(x, inner.planted))
    if getattr(outer, "planted", None) is None:
        return None
    return interleave(inner.planted, outer.planted)


def singleton_tree(r: Seq) -> TreeChar:
    """The binary tree whose only path is r."""
    return TreeChar(lambda t: tuple(t) == r.prefix(len(t)), label=f"{{{r.label}}}", planted=r)


def singleton_le_path2() -> Reduction:
    """{r} ≤ Path₂: a point of 2^ℕ is the only path of its singleton tree."""
    return Reduction("singleton_le_path2", "cantor", "path2", H=singleton_tree, K=lambda r, path: path, description="the tree {r}")


def sep_compose_le_path2() -> Reduction:
    """
    Sep ≤ Path₂ through T̃: sep_le_path2 composed with the singleton tree of
    its separator, so one path of T̃ carries the separator twice. K returns
    the second copy.
    """
    composite = sep_compose(sep_le_path2(), singleton_le_path2())

    def K(inst: SepInstance, path: Seq) -> Seq:
        return composite.K(inst, path).value

    return Reduction("sep_compose", "sep", "path2", H=composite.H, K=K, description="single-call composition through T̃")
