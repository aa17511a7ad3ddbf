"""
Instance and solution files <-> runtime names.

Streams are stored as tables (head + periodic or affine tail); names that
no table can express come from a registered construction.
"""
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import orjson
from pydantic import BaseModel, ValidationError

from kernel.errors import MalformedInstanceError, UnknownIdError
from kernel.seq import Seq
from kernel.seqcode import FinSeq
from problems.ck import CkInstance, OmegaInstance, planted_c1
from problems.compact import CoverInstance
from problems.reals import RangeInstance, SupInstance
from problems.sep import SepInstance
from problems.trees import RegularTree
from problems.base import Witnessed
from banach.completion import BanachName
from banach.pseudonorm import build_norm
from hahn_banach.pipeline import diagonal_instance
from hahn_banach.reversal import build_hb_instance
from schemas.instances import InstanceFile, SolutionFile, StreamTable
from spaces.creal import CReal
from spaces.rationals import format_rational, parse_rational

logger = logging.getLogger(__name__)

OUTPUT_PREFIX = 32


def dumps(model: BaseModel) -> bytes:
    return orjson.dumps(model.model_dump(mode="json", exclude_none=True), option=orjson.OPT_INDENT_2)


def _parse_file(path: Path, model: type) -> Any:
    try:
        return model.model_validate(orjson.loads(Path(path).read_bytes()))
    except (orjson.JSONDecodeError, ValidationError) as e:
        raise MalformedInstanceError(f"{path}: {e}") from e


def load_instance(path: Path) -> InstanceFile:
    return _parse_file(path, InstanceFile)


def load_solution(path: Path) -> SolutionFile:
    return _parse_file(path, SolutionFile)


# Tables

def _to_int(v: Any) -> int:
    return int(v)


def _to_rational(v: Any) -> Fraction:
    return parse_rational(str(v))


def _to_interval(v: Any) -> tuple:
    a, b = v
    return _to_rational(a), _to_rational(b)


def stream_of(table: StreamTable, parse: Callable[[Any], Any] = _to_int, label: str = "table") -> Seq:
    head = [parse(v) for v in table.head]
    if table.period is not None:
        return Seq.eventually_periodic(head, [parse(v) for v in table.period], label=label)
    a, b = table.affine
    size = len(head)
    return Seq(rule=lambda i: head[i] if i < size else parse(a + b * (i - size)), label=label)


def table_search_bound(table: StreamTable) -> Callable[[int], int]:
    """Index bound for the first occurrence of a value in the stream."""
    size = len(table.head)
    if table.affine is None:
        return lambda v: size + len(table.period)
    a, b = table.affine

    def bound(v: int) -> int:
        if b <= 0 or v < a:
            return size + 1
        return size + (v - a) // b + 1

    return bound


def _stream(doc: InstanceFile, name: str, parse: Callable[[Any], Any] = _to_int) -> Seq:
    if name not in doc.streams:
        raise MalformedInstanceError(f"{doc.problem} instance is missing stream {name!r}")
    return stream_of(doc.streams[name], parse, label=name)


def _planted(doc: InstanceFile) -> Optional[Seq]:
    return stream_of(doc.planted, label="planted") if doc.planted is not None else None


# Instances

def _sep(doc: InstanceFile) -> SepInstance:
    return SepInstance(
        _stream(doc, "p"),
        _stream(doc, "q"),
        planted=_planted(doc),
        label=doc.params.get("label", "sep"),
        witness_bound=doc.params.get("witness_bound"),
    )


def _tree(doc: InstanceFile) -> RegularTree:
    if doc.automaton is None:
        raise MalformedInstanceError(f"{doc.problem} instance needs an automaton block")
    block = doc.automaton
    transitions = {(state, symbol): target for state, symbol, target in block.transitions}
    return RegularTree(
        block.states,
        transitions,
        block.initial,
        dead=block.dead,
        alphabet=block.alphabet,
        label=doc.params.get("label", "regular"),
        planted=_planted(doc),
    )


def _range(doc: InstanceFile) -> RangeInstance:
    return RangeInstance(_stream(doc, "p"), index_bound=table_search_bound(doc.streams["p"]), planted=_planted(doc))


def _ck(doc: InstanceFile) -> CkInstance:
    k = int(doc.problem[1:])
    bound = doc.params.get("witness_bound")
    if doc.construction == "plant":
        if k != 1 or doc.planted is None:
            raise MalformedInstanceError("the plant construction builds C1 instances from a planted stream")
        return planted_c1(_planted(doc), witness_bound=bound or 1)
    return CkInstance(_stream(doc, "p"), k=k, witness_bound=bound, planted=_planted(doc))


def _sup(doc: InstanceFile) -> SupInstance:
    values = _stream(doc, "xs", _to_rational)
    support = doc.params.get("support")
    planted_sup = doc.params.get("planted_sup")
    return SupInstance(
        Seq(rule=lambda n: CReal.from_rational(values[n]), label="xs"),
        support=tuple(_to_rational(v) for v in support) if support else None,
        planted_sup=_to_rational(planted_sup) if planted_sup is not None else None,
    )


def _cover(doc: InstanceFile) -> CoverInstance:
    indices = doc.params.get("planted_indices")
    return CoverInstance(_stream(doc, "intervals", _to_interval), planted=FinSeq(indices) if indices is not None else None)


def _omega(doc: InstanceFile) -> OmegaInstance:
    return OmegaInstance(_stream(doc, "p"), planted=doc.params.get("planted"))


def _hb(doc: InstanceFile):
    if doc.construction == "blocks":
        return build_hb_instance(_sep(doc))
    if doc.construction == "diagonal":
        space = BanachName(build_norm(doc.norm.id, **doc.norm.params)) if doc.norm else None
        return diagonal_instance(space)
    raise UnknownIdError(f"unknown hb construction: {doc.construction}")


BUILDERS: Dict[str, Callable[[InstanceFile], Any]] = {
    "sep": _sep,
    "path2": _tree,
    "pathB": _tree,
    "range": _range,
    "c1": _ck,
    "c2": _ck,
    "c3": _ck,
    "sup": _sup,
    "cover": _cover,
    "omega": _omega,
    "hb": _hb,
}


def build_instance(doc: InstanceFile) -> Any:
    try:
        builder = BUILDERS[doc.problem]
    except KeyError:
        raise UnknownIdError(f"no instance format for problem {doc.problem!r}") from None
    return builder(doc)


def build_solution(doc: SolutionFile) -> Any:
    if doc.stream is not None:
        parse = _to_rational if doc.problem == "sup" else _to_int
        seq = stream_of(doc.stream, parse, label="solution")
        if doc.problem == "sup":
            return CReal.from_rational(seq[0])
        return seq
    if doc.problem == "sup" and doc.value is not None:
        return CReal.from_rational(_to_rational(doc.value))
    if doc.problem == "cover" and doc.value is not None:
        return FinSeq(doc.value)
    return doc.value


# Outputs

def summarize_output(output: Any, depth: int) -> List[str]:
    """A stable textual prefix of a solution."""
    if isinstance(output, Witnessed):
        return summarize_output(output.value, depth)
    if isinstance(output, Seq):
        return [_item_text(v, depth) for v in output.prefix(min(depth, OUTPUT_PREFIX))]
    if isinstance(output, CReal):
        return [format_rational(output.approx(depth))]
    if isinstance(output, (tuple, list)):
        return [_item_text(v, depth) for v in output]
    return [str(output)]


def _item_text(v: Any, depth: int) -> str:
    if isinstance(v, CReal):
        return format_rational(v.approx(depth))
    if isinstance(v, Fraction):
        return format_rational(v)
    return str(v)
