"""
Fueled monotone machines.

A machine reads its input one item per step and emits zero or more output
items per step. Output is never retracted, so the output after f steps is
a prefix of the output after f' ≥ f steps, and it depends only on the first
f input items.
"""
import logging
from dataclasses import dataclass
from typing import Any, Callable, Iterator, List, Optional, Tuple, Union

from config import settings
from kernel.errors import DemandExceeded, FuelExhaustedError
from kernel.seq import Seq, deinterleave, interleave
from kernel.seqcode import FinSeq

logger = logging.getLogger(__name__)

Transition = Callable[[Any, Any], Tuple[List[Any], Any]]
Burst = Union[int, Callable[[int], int]]


class Machine:
    """A step machine: transition(item, state) -> (outputs, new state)."""

    def __init__(self, transition: Transition, initial_state: Any = None, label: str = "machine"):
        self.transition = transition
        self.initial_state = initial_state
        self.label = label

    def __repr__(self) -> str:
        return f"Machine({self.label})"

    def steps(self, src: Seq) -> Iterator[List[Any]]:
        """Yield the outputs of step 0, 1, 2, ... (one input item consumed per step)."""
        state = self.initial_state
        i = 0
        while True:
            outputs, state = self.transition(src[i], state)
            yield list(outputs)
            i += 1

    def __call__(self, src: Seq, demand_fuel: Optional[int] = None) -> Seq:
        fuel = settings.DEMAND_FUEL if demand_fuel is None else demand_fuel

        def produce():
            idle = 0
            for outputs in self.steps(src):
                if outputs:
                    idle = 0
                    yield from outputs
                else:
                    idle += 1
                    if idle > fuel:
                        raise FuelExhaustedError(f"{self.label}: no output within {fuel} steps", fuel)

        return Seq(produce(), label=f"{self.label}({src.label})", demand_fuel=fuel)

    @classmethod
    def lift(cls, operator: Callable[[Seq], Seq], burst: Optional[Burst] = None, label: str = "lifted") -> "LiftedMachine":
        return LiftedMachine(operator, burst=burst, label=label)


def _default_burst(step: int) -> int:
    return min(settings.LIFT_BURST, 1 << min(step + 1, 62))


class LiftedMachine(Machine):
    """
    A machine built from a lazy operator on names.

    At step i the operator sees its input through a window of length i+1;
    it emits output items until one of them needs input past the window
    (or the per-step burst is used up).
    """

    def __init__(self, operator: Callable[[Seq], Seq], burst: Optional[Burst] = None, label: str = "lifted"):
        super().__init__(transition=None, initial_state=None, label=label)
        self.operator = operator
        self.burst = burst if burst is not None else _default_burst

    def _burst_at(self, step: int) -> int:
        return self.burst(step) if callable(self.burst) else self.burst

    def steps(self, src: Seq) -> Iterator[List[Any]]:
        limit = [0]
        window = src.windowed(lambda: limit[0])
        output: Optional[Seq] = None
        emitted = 0
        step = 0
        while True:
            limit[0] = step + 1
            if output is None:
                output = self.operator(window)
            batch = []
            cap = self._burst_at(step)
            while len(batch) < cap:
                try:
                    value = output[emitted]
                except DemandExceeded:
                    # producer-backed outputs are dead after an exception
                    output = None
                    break
                batch.append(value)
                emitted += 1
            yield batch
            step += 1


def fueled_run(m: Machine, src: Seq, fuel: int) -> FinSeq:
    """The output prefix emitted within `fuel` steps."""
    out: List[Any] = []
    if fuel <= 0:
        return FinSeq()
    for i, outputs in enumerate(m.steps(src)):
        out.extend(outputs)
        if i + 1 >= fuel:
            break
    return FinSeq(out)


# Stock machines

def identity_machine() -> Machine:
    return Machine(lambda item, state: ([item], state), label="id")


def map_machine(fn: Callable[[Any], Any], label: str = "map") -> Machine:
    return Machine(lambda item, state: ([fn(item)], state), label=label)


def pairwise_machine(fn: Callable[[Any, Any], Any], label: str = "pairwise") -> Machine:
    """On an interleaved input z⊕x emit fn(z(i), x(i)) after reading both."""

    def transition(item, state):
        if state is None:
            return [], item
        return [fn(state, item)], None

    return Machine(transition, label=label)


def second_projection_machine() -> Machine:
    def transition(item, parity):
        return ([item] if parity else []), 1 - parity

    return Machine(transition, initial_state=0, label="π₂")


def addition_machine() -> Machine:
    return pairwise_machine(lambda a, b: a + b, label="add")


# Type conversion

@dataclass(frozen=True)
class FunctionName:
    """A name of a function on Baire space: a machine over pairs plus an advice stream."""

    machine: Machine
    advice: Seq


def curry(m: Machine) -> Callable[[Seq], FunctionName]:
    def curried(z: Seq) -> FunctionName:
        return FunctionName(m, z)

    return curried


def evaluate(f_name: FunctionName, x: Seq, demand_fuel: Optional[int] = None) -> Seq:
    return f_name.machine(interleave(f_name.advice, x), demand_fuel=demand_fuel)


def uncurry(curried: Callable[[Seq], FunctionName], label: str = "uncurried") -> Machine:
    def operator(r: Seq) -> Seq:
        z, x = deinterleave(r)
        return evaluate(curried(z), x)

    return Machine.lift(operator, label=label)
