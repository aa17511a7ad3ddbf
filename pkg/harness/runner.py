"""
Run pipeline behind the CLI: instance file → H → oracle → K → verifier → trace.
"""
import logging
from contextlib import contextmanager
from typing import Any, Iterator, List, Optional

from config import settings
from kernel.errors import DemandExceeded, EmptyTreeError, FuelExhaustedError, InvalidNameError, ReductionMismatchError
from problems.base import Verdict, apply_reduction
from problems.registry import get_oracle, get_problem
from reductions.registry import get_reduction
from harness.codec import build_instance, build_solution, dumps, summarize_output
from harness.store import digest
from schemas.instances import InstanceFile, SolutionFile
from schemas.traces import DepthVerdict, TraceRecord

logger = logging.getLogger(__name__)


@contextmanager
def fuel_limit(fuel: Optional[int]) -> Iterator[None]:
    """Searches that take no explicit fuel fall back to this one for the duration."""
    previous = settings.DEFAULT_FUEL
    if fuel is not None:
        settings.DEFAULT_FUEL = fuel
    try:
        yield
    finally:
        settings.DEFAULT_FUEL = previous


def checkpoints(depth: int) -> List[int]:
    return sorted({d for d in (depth // 4, depth // 2, depth) if d > 0})


def run_reduction(reduction_id: str, doc: InstanceFile, oracle_id: str, depth: int, fuel: Optional[int] = None) -> TraceRecord:
    fuel = settings.DEFAULT_FUEL if fuel is None else fuel
    red = get_reduction(reduction_id)
    if doc.problem != red.source:
        raise ReductionMismatchError(f"{reduction_id} expects {red.source} instances, got {doc.problem}")
    source = get_problem(red.source)
    oracle = get_oracle(red.target, oracle_id)
    trace = TraceRecord(
        reduction=red.id,
        source=red.source,
        target=red.target,
        oracle=oracle.name,
        instance_digest=digest(dumps(doc)),
        depth=depth,
        fuel=fuel,
    )
    calls_before = oracle.calls
    logger.info(f"=== RUN {red.id} | oracle={oracle.name} | depth={depth} | fuel={fuel} ===")

    with fuel_limit(fuel):
        try:
            x = build_instance(doc)
            if source.check_domain(x, fuel) is Verdict.REJECT:
                logger.warning(f"Instance outside dom({source.id}) at fuel {fuel}")
            y = apply_reduction(red, oracle)(x)
            for d in checkpoints(depth):
                verdict = source.verify(x, y, d)
                trace.verdicts.append(DepthVerdict(depth=d, verdict=verdict.value))
                logger.debug(f"verify | depth={d} | verdict={verdict.value}")
                if verdict is Verdict.REJECT:
                    break
            trace.output_prefix = summarize_output(y, depth)
        except FuelExhaustedError as e:
            logger.error(f"Fuel exhausted: {e}")
            trace.status = "fuel-exhausted"
            trace.error = str(e)
            return trace
        except (InvalidNameError, EmptyTreeError, DemandExceeded) as e:
            logger.error(f"Run failed: {type(e).__name__}: {e}")
            trace.status = "error"
            trace.error = f"{type(e).__name__}: {e}"
            return trace

    trace.oracle_calls = oracle.calls - calls_before
    if trace.verdicts and trace.verdicts[-1].verdict == Verdict.REJECT.value:
        trace.status = "reject"
    logger.info(f"=== DONE {red.id} | status={trace.status} | verdicts={[v.verdict for v in trace.verdicts]} ===")
    return trace


def verify_solution(problem_id: str, doc: InstanceFile, solution: SolutionFile, depth: int) -> Verdict:
    problem = get_problem(problem_id)
    x: Any = build_instance(doc)
    y = build_solution(solution)
    verdict = problem.verify(x, y, depth)
    logger.info(f"verify {problem_id} | depth={depth} | verdict={verdict.value}")
    return verdict
