#!/usr/bin/env python
"""Command-line front-end: generate planted instances, run reductions, verify solutions."""
import logging
import sys
from pathlib import Path
from typing import Optional

import click

from config import settings
from kernel.errors import (
    DomainViolationError,
    FuelExhaustedError,
    MalformedInstanceError,
    OracleClassMismatchError,
    ProblemTypeError,
    UnknownIdError,
)
from problems.base import Verdict
from problems.registry import describe as describe_problems
from reductions.registry import describe as describe_reductions
from harness.codec import dumps, load_instance, load_solution
from harness.generators import GENERATORS, generate
from harness.runner import run_reduction, verify_solution
from harness.store import TraceStore

EXIT_OK = 0
EXIT_REJECT = 2
EXIT_FUEL = 3
EXIT_USAGE = 4

USAGE_ERRORS = (UnknownIdError, ProblemTypeError, OracleClassMismatchError, MalformedInstanceError, DomainViolationError)

logger = logging.getLogger(__name__)


def _banner(title: str):
    click.echo("\n" + "=" * 65)
    click.echo(f"  {title}")
    click.echo("=" * 65)


@click.group()
@click.option("--log-level", default=None, help="Overrides WKL_LOG_LEVEL.")
def cli(log_level: Optional[str]):
    logging.basicConfig(level=(log_level or settings.LOG_LEVEL).upper(), format=settings.LOG_FORMAT)


@cli.command()
@click.argument("problem")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--size", type=int, default=16, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def gen(ctx, problem: str, seed: int, size: int, output: Optional[Path]):
    """Generate a planted instance of PROBLEM."""
    try:
        data = dumps(generate(problem, seed, size))
    except UnknownIdError as e:
        logger.error(f"gen failed: {e}")
        ctx.exit(EXIT_USAGE)
    if output is None:
        click.echo(data.decode())
    else:
        output.write_bytes(data)
        logger.info(f"Instance written: {output}")
    ctx.exit(EXIT_OK)


@cli.command()
@click.argument("reduction")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--oracle", default="planted", show_default=True)
@click.option("--depth", type=int, default=None, help="Defaults to WKL_DEFAULT_DEPTH.")
@click.option("--fuel", type=int, default=None, help="Defaults to WKL_DEFAULT_FUEL.")
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def run(ctx, reduction: str, instance: Path, oracle: str, depth: Optional[int], fuel: Optional[int], output: Optional[Path]):
    """Run REDUCTION on INSTANCE against a target oracle and verify the result."""
    depth = settings.DEFAULT_DEPTH if depth is None else depth
    try:
        trace = run_reduction(reduction, load_instance(instance), oracle, depth, fuel)
    except USAGE_ERRORS as e:
        logger.error(f"run failed: {e}")
        ctx.exit(EXIT_USAGE)

    data = dumps(trace)
    if output is None:
        key = TraceStore().put(data)
        click.echo(f"trace: {key}")
    else:
        output.write_bytes(data)

    _banner(f"{trace.reduction}  [{trace.source} ≤ {trace.target}]  oracle={trace.oracle}")
    for v in trace.verdicts:
        click.echo(f"  depth {v.depth:>4}: {v.verdict}")
    click.echo(f"  status: {trace.status}")
    click.echo("=" * 65 + "\n")

    if trace.status == "fuel-exhausted":
        ctx.exit(EXIT_FUEL)
    if trace.status in ("reject", "error"):
        ctx.exit(EXIT_REJECT)
    ctx.exit(EXIT_OK)


@cli.command()
@click.argument("problem")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("solution", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--depth", type=int, default=None, help="Defaults to WKL_DEFAULT_DEPTH.")
@click.pass_context
def verify(ctx, problem: str, instance: Path, solution: Path, depth: Optional[int]):
    """Check SOLUTION against INSTANCE of PROBLEM up to the given depth."""
    depth = settings.DEFAULT_DEPTH if depth is None else depth
    try:
        verdict = verify_solution(problem, load_instance(instance), load_solution(solution), depth)
    except USAGE_ERRORS as e:
        logger.error(f"verify failed: {e}")
        ctx.exit(EXIT_USAGE)
    except FuelExhaustedError as e:
        logger.error(f"Fuel exhausted: {e}")
        ctx.exit(EXIT_FUEL)
    click.echo(verdict.value)
    ctx.exit(EXIT_REJECT if verdict is Verdict.REJECT else EXIT_OK)


@cli.command(name="list")
def list_registry():
    """Dump the problem, oracle and reduction registries."""
    _banner("PROBLEMS")
    for row in describe_problems():
        gen_mark = " [gen]" if row["id"] in GENERATORS else ""
        click.echo(f"  {row['id']:<8} {row['input']} → {row['output']}  oracles={','.join(row['oracles'])}{gen_mark}")
    _banner("REDUCTIONS")
    for row in describe_reductions():
        click.echo(f"  {row['id']:<16} {row['source']} ≤ {row['target']}  {row['description']}")
    click.echo("=" * 65 + "\n")


def main(argv=None) -> int:
    try:
        code = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
