from typing import List, Optional

from pydantic import BaseModel, Field


class DepthVerdict(BaseModel):
    depth: int
    verdict: str


class TraceRecord(BaseModel):
    """Outcome of one reduction run against one oracle."""

    reduction: str
    source: str
    target: str
    oracle: str
    instance_digest: str
    depth: int
    fuel: int
    status: str = "ok"             # ok | reject | fuel-exhausted | error
    verdicts: List[DepthVerdict] = Field(default_factory=list)
    output_prefix: List[str] = Field(default_factory=list)
    oracle_calls: int = 0
    error: Optional[str] = None
