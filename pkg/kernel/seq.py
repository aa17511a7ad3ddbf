"""
Demand-driven infinite sequences.

A Seq is backed either by a producer (an iterator forced in order, each
index exactly once) or by a rule (a pure function of the index, memoized
on success). Produced values never change. Clones share the immutable
cache and may be read from different threads.
"""
import itertools
import logging
import threading
from typing import Callable, Dict, Generic, Iterable, Iterator, List, Optional, Sequence, Tuple, TypeVar

from config import settings
from kernel.errors import DemandExceeded, FuelExhaustedError, InvalidNameError

logger = logging.getLogger(__name__)

T = TypeVar("T")
U = TypeVar("U")


class _SeqCore(Generic[T]):
    def __init__(self, producer: Optional[Iterator[T]], rule: Optional[Callable[[int], T]], demand_fuel: int):
        self.producer = producer
        self.rule = rule
        self.demand_fuel = demand_fuel
        self.prefix: List[T] = []
        self.memo: Dict[int, T] = {}
        self.lock = threading.RLock()

    def force(self, n: int) -> T:
        if n < 0:
            raise IndexError(f"negative index {n}")
        if self.rule is not None:
            if n in self.memo:
                return self.memo[n]
            value = self.rule(n)
            with self.lock:
                self.memo.setdefault(n, value)
            return self.memo[n]
        if n >= self.demand_fuel:
            raise FuelExhaustedError(f"demand for index {n} exceeds demand fuel {self.demand_fuel}", self.demand_fuel)
        with self.lock:
            while len(self.prefix) <= n:
                try:
                    self.prefix.append(next(self.producer))
                except StopIteration:
                    raise InvalidNameError(f"producer ended after {len(self.prefix)} items") from None
            return self.prefix[n]


class Seq(Generic[T]):
    """An element of Baire space (or, for typed names, of a space of streams)."""

    def __init__(
        self,
        producer: Optional[Iterable[T]] = None,
        *,
        rule: Optional[Callable[[int], T]] = None,
        label: str = "seq",
        demand_fuel: Optional[int] = None,
        _core: Optional[_SeqCore] = None,
    ):
        if _core is None:
            if (producer is None) == (rule is None):
                raise ValueError("Seq needs exactly one of producer or rule")
            fuel = settings.DEMAND_FUEL if demand_fuel is None else demand_fuel
            _core = _SeqCore(iter(producer) if producer is not None else None, rule, fuel)
        self._core = _core
        self.label = label

    def __getitem__(self, index):
        if isinstance(index, slice):
            if index.start not in (None, 0) or index.step not in (None, 1) or index.stop is None:
                raise ValueError("only prefix slices seq[:n] are supported")
            return self.prefix(index.stop)
        return self._core.force(index)

    def __iter__(self) -> Iterator[T]:
        for i in itertools.count():
            yield self._core.force(i)

    def __repr__(self) -> str:
        return f"Seq({self.label})"

    def prefix(self, n: int) -> tuple:
        return tuple(self._core.force(i) for i in range(n))

    def clone(self) -> "Seq[T]":
        return Seq(_core=self._core, label=self.label)

    def map(self, fn: Callable[[T], U], label: Optional[str] = None) -> "Seq[U]":
        return Seq(rule=lambda i: fn(self[i]), label=label or f"map({self.label})")

    def windowed(self, limit_fn: Callable[[], int]) -> "WindowedSeq[T]":
        return WindowedSeq(self, limit_fn)

    # Constructors

    @classmethod
    def constant(cls, value: T, label: Optional[str] = None) -> "Seq[T]":
        return cls(rule=lambda i: value, label=label or f"const({value})")

    @classmethod
    def from_function(cls, fn: Callable[[int], T], label: str = "fn") -> "Seq[T]":
        return cls(rule=fn, label=label)

    @classmethod
    def eventually_periodic(cls, head: Sequence[T], period: Sequence[T], label: str = "table") -> "Seq[T]":
        if not period:
            raise ValueError("period must be nonempty")
        head, period = tuple(head), tuple(period)

        def rule(i: int) -> T:
            if i < len(head):
                return head[i]
            return period[(i - len(head)) % len(period)]

        return cls(rule=rule, label=label)


class WindowedSeq(Seq[T]):
    """A read guard over a Seq: indices at or beyond the current limit raise DemandExceeded."""

    def __init__(self, base: Seq[T], limit_fn: Callable[[], int]):
        super().__init__(_core=base._core, label=f"window({base.label})")
        self._limit_fn = limit_fn

    def __getitem__(self, index):
        if isinstance(index, slice):
            return super().__getitem__(index)
        limit = self._limit_fn()
        if index >= limit:
            raise DemandExceeded(index, limit)
        return self._core.force(index)

    def prefix(self, n: int) -> tuple:
        return tuple(self[i] for i in range(n))


def interleave(p: Seq, q: Seq) -> Seq:
    """(p ⊕ q)(2i) = p(i), (p ⊕ q)(2i+1) = q(i)."""
    return Seq(rule=lambda i: p[i // 2] if i % 2 == 0 else q[i // 2], label=f"{p.label}⊕{q.label}")


def deinterleave(r: Seq) -> Tuple[Seq, Seq]:
    even = Seq(rule=lambda i: r[2 * i], label=f"even({r.label})")
    odd = Seq(rule=lambda i: r[2 * i + 1], label=f"odd({r.label})")
    return even, odd


def split_string(t: Sequence[int]) -> Tuple[tuple, tuple]:
    """Deinterleave a finite string into its even- and odd-index halves."""
    t = tuple(t)
    return t[0::2], t[1::2]


def padded(bits: Sequence[int], fill: int = 0) -> Seq:
    """The point t⌢fill̄."""
    bits = tuple(bits)
    return Seq(rule=lambda i: bits[i] if i < len(bits) else fill, label=f"{''.join(map(str, bits))}⌢{fill}̄")
