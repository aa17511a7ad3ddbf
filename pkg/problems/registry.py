"""
Registered problems and their oracles.

Each problem id maps to a Problem carrying its verifier, domain check and
the oracles that realize it on some instance class. Every instance type
may carry a planted solution; the "planted" oracle serves it.
"""
import logging
from typing import Any, Dict, List

from config import settings
from kernel.errors import UnknownIdError
from problems.base import OracleRealizer, Problem, Verdict
from problems.ck import CkInstance, OmegaInstance, ck_sequence, verify_ck, verify_omega
from problems.compact import CoverInstance, finite_subcover, verify_subcover
from problems.reals import RangeInstance, SupInstance, check_injective, range_search, sup_oracle, verify_range, verify_sup
from problems.sep import SepInstance, check_disjoint, verify_separator
from problems.trees import TreeChar, leftmost_path_realizer, regular_path_realizer, verify_path
from hyperspace.selection import planted_sel_realizer, verify_sel
from banach.functionals import PFName
from hahn_banach.independence import verify_basis_stream, ueil_realizer
from hahn_banach.pipeline import planted_hb_realizer, verify_hb

logger = logging.getLogger(__name__)

CK_LEVELS = 3


def planted_oracle(instance_type: type = object) -> OracleRealizer:
    """Serves the solution an instance was planted with."""
    return OracleRealizer(
        name="planted",
        realize=lambda x: x.planted,
        accepts=lambda x: isinstance(x, instance_type) and getattr(x, "planted", None) is not None,
        instance_class=f"{instance_type.__name__} carrying a planted solution",
    )


def _oracles(*realizers: OracleRealizer) -> Dict[str, OracleRealizer]:
    return {r.name: r for r in realizers}


def _ck_problem(k: int) -> Problem:
    def verify(inst: CkInstance, y, depth: int) -> Verdict:
        if inst.k != k:
            return Verdict.REJECT
        return verify_ck(inst, y, depth)

    bounded = OracleRealizer(
        name="bounded",
        realize=ck_sequence,
        accepts=lambda x: isinstance(x, CkInstance) and x.k == k,
        instance_class=(
            f"C{k} instances whose witnesses lie below the witness bound; "
            f"range_le_c1 derives that bound from queries n < WITNESS_BOUND = {settings.WITNESS_BOUND} only"
        ),
    )
    return Problem(
        id=f"c{k}",
        verify=verify,
        input_type="baire",
        output_type="cantor",
        description=f"arithmetic comprehension with {k} alternating quantifiers",
        oracles=_oracles(bounded, planted_oracle(CkInstance)),
    )


def _omega_bounded(inst: OmegaInstance) -> int:
    return 0 if all(v == 0 for v in inst.p.prefix(settings.WITNESS_BOUND)) else 1


def _hb_domain(f: PFName, fuel: int) -> Verdict:
    return Verdict.ACCEPT if isinstance(f, PFName) else Verdict.REJECT


def _build() -> Dict[str, Problem]:
    problems: List[Problem] = [_ck_problem(k) for k in range(1, CK_LEVELS + 1)]
    problems += [
        Problem(
            id="omega",
            verify=verify_omega,
            input_type="baire",
            output_type="nat",
            description="0 iff the input is the zero sequence",
            oracles=_oracles(
                OracleRealizer("bounded", _omega_bounded, lambda x: isinstance(x, OmegaInstance), "sequences nonzero below the witness bound, if at all"),
                planted_oracle(OmegaInstance),
            ),
        ),
        Problem(
            id="range",
            verify=verify_range,
            domain_check=check_injective,
            input_type="baire",
            output_type="cantor",
            description="characteristic function of the range of an injective sequence",
            oracles=_oracles(
                OracleRealizer("search", range_search, lambda x: isinstance(x, RangeInstance), "instances with a search modulus"),
                planted_oracle(RangeInstance),
            ),
        ),
        Problem(
            id="sup",
            verify=verify_sup,
            input_type="unit-sequence",
            output_type="real",
            description="least upper bound of a sequence in [0, 1]",
            oracles=_oracles(
                OracleRealizer("planted", sup_oracle, lambda x: isinstance(x, SupInstance) and x.planted is not None, "instances with planted sup metadata"),
            ),
        ),
        Problem(
            id="sep",
            verify=verify_separator,
            domain_check=check_disjoint,
            input_type="baire-pair",
            output_type="cantor",
            description="separate the ranges of two sequences",
            oracles=_oracles(planted_oracle(SepInstance)),
        ),
        Problem(
            id="path2",
            verify=verify_path,
            input_type="binary-tree",
            output_type="cantor",
            description="infinite path of an infinite binary tree",
            oracles=_oracles(regular_path_realizer(), leftmost_path_realizer(), planted_oracle(TreeChar)),
        ),
        Problem(
            id="pathB",
            verify=verify_path,
            input_type="bounded-tree",
            output_type="baire",
            description="infinite path of an infinite finitely branching tree",
            oracles=_oracles(regular_path_realizer(), leftmost_path_realizer(), planted_oracle(TreeChar)),
        ),
        Problem(
            id="sel",
            verify=verify_sel,
            input_type="compact-closed",
            output_type="point",
            description="a point of a nonempty closed subset of a compact set",
            oracles=_oracles(planted_sel_realizer()),
        ),
        Problem(
            id="hb",
            verify=verify_hb,
            domain_check=_hb_domain,
            input_type="partial-functional",
            output_type="functional",
            description="norm-preserving extension of a bounded functional",
            oracles=_oracles(planted_hb_realizer()),
        ),
        Problem(
            id="zeta",
            verify=verify_basis_stream,
            input_type="banach",
            output_type="basis-stream",
            description="independent dense family with its padding marker",
            oracles=_oracles(ueil_realizer()),
        ),
        Problem(
            id="cover",
            verify=verify_subcover,
            input_type="interval-cover",
            output_type="finseq",
            description="finite subcover of an open cover of [0, 1]",
            oracles=_oracles(
                OracleRealizer("search", lambda x: finite_subcover(x.intervals), lambda x: isinstance(x, CoverInstance), "covers of [0, 1]"),
                planted_oracle(CoverInstance),
            ),
        ),
    ]
    return {p.id: p for p in problems}


PROBLEMS: Dict[str, Problem] = _build()


def get_problem(problem_id: str) -> Problem:
    try:
        return PROBLEMS[problem_id]
    except KeyError:
        raise UnknownIdError(f"unknown problem: {problem_id}") from None


def get_oracle(problem_id: str, oracle_id: str) -> OracleRealizer:
    problem = get_problem(problem_id)
    try:
        return problem.oracles[oracle_id]
    except KeyError:
        raise UnknownIdError(f"unknown oracle {oracle_id!r} for {problem_id}; known: {sorted(problem.oracles)}") from None


def describe() -> List[Dict[str, Any]]:
    return [
        {"id": p.id, "input": p.input_type, "output": p.output_type, "oracles": sorted(p.oracles), "description": p.description}
        for p in PROBLEMS.values()
    ]
