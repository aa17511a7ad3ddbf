from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class StreamTable(BaseModel):
    """A finite description of a stream: a head, then a periodic or affine tail."""

    head: List[Any] = Field(default_factory=list)
    period: Optional[List[Any]] = None
    affine: Optional[Tuple[int, int]] = None      # tail value a + b·i at head length + i

    @model_validator(mode="after")
    def _one_tail(self):
        if (self.period is None) == (self.affine is None):
            raise ValueError("a stream needs exactly one of 'period' or 'affine'")
        if self.period is not None and not self.period:
            raise ValueError("period must be nonempty")
        return self


class AutomatonBlock(BaseModel):
    states: List[str]
    transitions: List[Tuple[str, int, Optional[str]]]
    initial: str
    dead: List[str] = Field(default_factory=list)
    alphabet: int = 2


class NormBlock(BaseModel):
    id: str
    params: Dict[str, Any] = Field(default_factory=dict)


class InstanceFile(BaseModel):
    """
    problem       registered problem id
    construction  registered construction for names that are not tables
    streams       named stream tables (p, q, xs, intervals, ...)
    planted       planted stream solution
    params        scalars: k, witness bounds, supports, planted scalars
    """

    problem: str
    seed: Optional[int] = None
    construction: Optional[str] = None
    streams: Dict[str, StreamTable] = Field(default_factory=dict)
    planted: Optional[StreamTable] = None
    automaton: Optional[AutomatonBlock] = None
    norm: Optional[NormBlock] = None
    params: Dict[str, Any] = Field(default_factory=dict)


class SolutionFile(BaseModel):
    problem: str
    stream: Optional[StreamTable] = None
    value: Optional[Any] = None
