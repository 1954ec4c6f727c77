"""Sliding-window models, the streaming-algorithm contract, space measurement
and Mealy-machine reductions."""

from __future__ import annotations

import logging
import random
from abc import ABC, abstractmethod
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Any, Literal

from . import state
from .errors import (
    AlphabetMismatchError,
    BudgetExceededError,
    InternalConsistencyError,
    PreconditionError,
)
from .helpers import ceil_log2, encode_tuple, reverse_word, to_bits
from .models import Alphabet, Dfa, MealyMachine, Word

logger = logging.getLogger(__name__)

Model = Literal["fixed", "variable"]


class Pop(Enum):
    """The expiration token: removes the oldest symbol of a variable-size window."""

    POP = "!"

    def __str__(self) -> str:
        return self.value


POP = Pop.POP

StreamToken = str | Pop


@dataclass(frozen=True)
class FixedWindowSpec:
    n: int
    pad: str

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"window length must be >= 0, got {self.n}")

    @classmethod
    def for_alphabet(cls, alphabet: Alphabet, n: int, pad: str | None = None) -> FixedWindowSpec:
        """Spec whose padding symbol defaults to the alphabet's first symbol."""
        symbol = alphabet[0] if pad is None else pad
        if symbol not in alphabet:
            raise AlphabetMismatchError(f"padding symbol {symbol!r} not in alphabet")
        return cls(n=n, pad=symbol)


def wnd(stream: Iterable[StreamToken]) -> Word:
    """Variable-size window after a token sequence; Pop on the empty window is a no-op."""
    window: list[str] = []
    start = 0
    for token in stream:
        if token is POP:
            if start < len(window):
                start += 1
        else:
            window.append(token)  # type: ignore[arg-type]
    return tuple(window[start:])


def last_n(w: Sequence[str], spec: FixedWindowSpec) -> Word:
    """Fixed-size window: the last n symbols, left-padded when fewer arrived."""
    if spec.n == 0:
        return ()
    if len(w) >= spec.n:
        return tuple(w[len(w) - spec.n :])
    return (spec.pad,) * (spec.n - len(w)) + tuple(w)


def random_stream(
    alphabet: Alphabet, length: int, rng: random.Random, pop_rate: float = 0.0
) -> list[StreamToken]:
    """Random token sequence; each token is Pop with probability pop_rate."""
    return [
        POP if pop_rate and rng.random() < pop_rate else rng.choice(alphabet.symbols)
        for _ in range(length)
    ]


class StreamingAlgorithm(ABC):
    """A deterministic, possibly infinite transition system over stream tokens.

    States must be hashable and immutable; stepping is pure. `encode` must be
    injective on reachable states.
    """

    model: Model
    alphabet: Alphabet

    @property
    @abstractmethod
    def initial(self) -> Hashable: ...

    @abstractmethod
    def step(self, current: Any, token: StreamToken) -> Any: ...

    @abstractmethod
    def accepts(self, current: Any) -> bool: ...

    @abstractmethod
    def encode(self, current: Any) -> str: ...

    def _symbol(self, token: StreamToken) -> int:
        if token is POP:
            raise PreconditionError("Pop is not a valid token in the fixed-size model")
        return self.alphabet.index_of(token)  # type: ignore[arg-type]

    def run(self, stream: Iterable[StreamToken], start: Any = None) -> Any:
        current = self.initial if start is None else start
        for token in stream:
            current = self.step(current, token)
        return current

    def trace(self, stream: Iterable[StreamToken]) -> list[bool]:
        """Acceptance output after every token."""
        current = self.initial
        out = []
        for token in stream:
            current = self.step(current, token)
            out.append(self.accepts(current))
        return out


class TrivialFixedAlgorithm(StreamingAlgorithm):
    """Stores the whole fixed-size window as fixed-width symbol indices."""

    model: Model = "fixed"

    def __init__(self, language: Dfa, spec: FixedWindowSpec):
        if spec.pad not in language.alphabet:
            raise AlphabetMismatchError(f"padding symbol {spec.pad!r} not in alphabet")
        self.language = language
        self.spec = spec
        self.alphabet = language.alphabet
        self.width = ceil_log2(len(self.alphabet))
        self._initial = (self.alphabet.index_of(spec.pad),) * spec.n

    @property
    def initial(self) -> tuple[int, ...]:
        return self._initial

    def step(self, current: tuple[int, ...], token: StreamToken) -> tuple[int, ...]:
        sym = self._symbol(token)
        if self.spec.n == 0:
            return current
        return current[1:] + (sym,)

    def accepts(self, current: tuple[int, ...]) -> bool:
        return self.language.run_indices(current) in self.language.final

    def encode(self, current: tuple[int, ...]) -> str:
        return "".join(to_bits(sym, self.width) for sym in current)


class ReferenceVariableAlgorithm(StreamingAlgorithm):
    """Stores the exact variable-size window; the ground truth for differential tests."""

    model: Model = "variable"

    def __init__(self, language: Dfa):
        self.language = language
        self.alphabet = language.alphabet
        self.width = ceil_log2(len(self.alphabet))

    @property
    def initial(self) -> tuple[int, ...]:
        return ()

    def step(self, current: tuple[int, ...], token: StreamToken) -> tuple[int, ...]:
        if token is POP:
            return current[1:]
        return current + (self.alphabet.index_of(token),)  # type: ignore[arg-type]

    def accepts(self, current: tuple[int, ...]) -> bool:
        return self.language.run_indices(current) in self.language.final

    def encode(self, current: tuple[int, ...]) -> str:
        return "".join("1" + to_bits(sym, self.width) for sym in current)


class ConstantAlgorithm(StreamingAlgorithm):
    """Single-state algorithm with a fixed answer."""

    def __init__(self, alphabet: Alphabet, model: Model, answer: bool):
        self.alphabet = alphabet
        self.model = model
        self.answer = answer

    @property
    def initial(self) -> None:
        return None

    def step(self, current: None, token: StreamToken) -> None:
        if self.model == "fixed":
            self._symbol(token)
        elif token is not POP:
            self.alphabet.index_of(token)  # type: ignore[arg-type]
        return None

    def accepts(self, current: None) -> bool:
        return self.answer

    def encode(self, current: None) -> str:
        return ""


def _encode_components(parts: Sequence[str]) -> str:
    """Injective tuple encoding built on the block code.

    Tuples whose parts are all empty encode as "", tuples of non-empty parts
    use encode_tuple directly (always starts with 1). Mixed tuples are
    marked with a leading 0 and every part is prefixed by 1.
    """
    empty = [not p for p in parts]
    if all(empty):
        return ""
    if not any(empty):
        return encode_tuple(parts)
    return "0" + encode_tuple(["1" + p for p in parts])


class MealyReducedAlgorithm(StreamingAlgorithm):
    """Algorithm for K built from an algorithm for L and a ←-reduction from K to L.

    The state keeps, for every Mealy state q, the component algorithm's state
    on τ^R_q(window).
    """

    def __init__(self, component: StreamingAlgorithm, machine: MealyMachine):
        machine.output_alphabet.require_same(component.alphabet)
        self.component = component
        self.machine = machine
        self.alphabet = machine.input_alphabet
        self.model = component.model
        self._initial = (component.initial,) * machine.size

    @property
    def initial(self) -> tuple:
        return self._initial

    def step(self, current: tuple, token: StreamToken) -> tuple:
        if token is POP:
            return tuple(self.component.step(c, POP) for c in current)
        sym = self.alphabet.index_of(token)  # type: ignore[arg-type]
        out = self.machine.output_alphabet
        return tuple(
            self.component.step(current[target], out[emitted])
            for target, emitted in (row[sym] for row in self.machine.delta)
        )

    def accepts(self, current: tuple) -> bool:
        return self.component.accepts(current[self.machine.initial])

    def encode(self, current: tuple) -> str:
        return _encode_components([self.component.encode(c) for c in current])


class ProductAlgorithm(StreamingAlgorithm):
    """Runs component algorithms in parallel and combines their answers."""

    def __init__(
        self,
        components: Sequence[StreamingAlgorithm],
        combine: Callable[[tuple[bool, ...]], bool],
    ):
        if not components:
            raise ValueError("product needs at least one component")
        first = components[0]
        for other in components[1:]:
            first.alphabet.require_same(other.alphabet)
            if other.model != first.model:
                raise PreconditionError("product components must share a window model")
        self.components = tuple(components)
        self.combine = combine
        self.alphabet = first.alphabet
        self.model = first.model
        self._initial = tuple(c.initial for c in components)

    @property
    def initial(self) -> tuple:
        return self._initial

    def step(self, current: tuple, token: StreamToken) -> tuple:
        return tuple(c.step(s, token) for c, s in zip(self.components, current, strict=True))

    def accepts(self, current: tuple) -> bool:
        return self.combine(
            tuple(c.accepts(s) for c, s in zip(self.components, current, strict=True))
        )

    def encode(self, current: tuple) -> str:
        return _encode_components(
            [c.encode(s) for c, s in zip(self.components, current, strict=True)]
        )


def trivial_fixed_algorithm(l: Dfa, spec: FixedWindowSpec) -> StreamingAlgorithm:
    return TrivialFixedAlgorithm(l, spec)


def reference_variable_algorithm(l: Dfa) -> StreamingAlgorithm:
    return ReferenceVariableAlgorithm(l)


def reduce_via_mealy(alg_for_L: StreamingAlgorithm, m: MealyMachine) -> StreamingAlgorithm:
    return MealyReducedAlgorithm(alg_for_L, m)


def product_algorithm(
    algorithms: Sequence[StreamingAlgorithm], combine: Callable[[tuple[bool, ...]], bool]
) -> StreamingAlgorithm:
    return ProductAlgorithm(algorithms, combine)


def left_transduce(m: MealyMachine, w: Sequence[str]) -> Word:
    """τ^R(w) = τ(w^R)^R: the machine reads the word right to left."""
    return reverse_word(m.transduce(reverse_word(w)))


# --- space measurement -------------------------------------------------------


@dataclass(frozen=True)
class SpaceProfile:
    model: Model
    values: tuple[int, ...]  # values[n] for n = 0..max_n

    def __post_init__(self) -> None:
        if self.model == "variable" and any(
            a > b for a, b in zip(self.values, self.values[1:], strict=False)
        ):
            raise InternalConsistencyError("variable-size space profile must be monotone")

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def to_dict(self) -> dict:
        return {"model": self.model, "values": list(self.values)}


class _EncodingRegistry:
    """Tracks encodings during exploration and fails on collisions."""

    def __init__(self, alg: StreamingAlgorithm):
        self.alg = alg
        self.seen: dict[str, Hashable] = {}
        self.max_bits = 0

    def add(self, current: Hashable) -> None:
        bits = self.alg.encode(current)
        owner = self.seen.setdefault(bits, current)
        if owner != current:
            raise InternalConsistencyError(
                f"encoding {bits!r} is shared by two reachable states"
            )
        self.max_bits = max(self.max_bits, len(bits))


def _variable_profile(alg: StreamingAlgorithm, max_n: int, cap: int) -> SpaceProfile:
    registry = _EncodingRegistry(alg)
    visited: set[tuple[Hashable, int]] = set()
    by_length: dict[int, list[Hashable]] = {}
    symbols = alg.alphabet.symbols

    def visit(current: Hashable, length: int, queue: list) -> None:
        key = (current, length)
        if key in visited:
            return
        if len(visited) >= cap:
            raise BudgetExceededError("variable-size exploration", cap)
        visited.add(key)
        by_length.setdefault(length, []).append(current)
        registry.add(current)
        queue.append(key)

    values = []
    queue: list[tuple[Hashable, int]] = []
    visit(alg.initial, 0, queue)
    for n in range(max_n + 1):
        if n > 0:
            # States at length n-1 may now append one more symbol
            queue.extend((s, n - 1) for s in by_length.get(n - 1, []))
        while queue:
            current, length = queue.pop()
            visit(alg.step(current, POP), max(length - 1, 0), queue)
            if length + 1 <= n:
                for sym in symbols:
                    visit(alg.step(current, sym), length + 1, queue)
        values.append(registry.max_bits)
        logger.debug(f"Variable exploration n={n}: {len(visited)} (state, length) pairs")
    return SpaceProfile("variable", tuple(values))


def _fixed_value(alg: StreamingAlgorithm, cap: int) -> int:
    registry = _EncodingRegistry(alg)
    seen = {alg.initial}
    registry.add(alg.initial)
    stack = [alg.initial]
    while stack:
        current = stack.pop()
        for sym in alg.alphabet.symbols:
            nxt = alg.step(current, sym)
            if nxt not in seen:
                if len(seen) >= cap:
                    raise BudgetExceededError("fixed-size exploration", cap)
                seen.add(nxt)
                registry.add(nxt)
                stack.append(nxt)
    return registry.max_bits


def exact_space_profile(
    alg: StreamingAlgorithm | Callable[[int], StreamingAlgorithm],
    max_n: int,
    model: Model,
    budget: int | None = None,
) -> SpaceProfile:
    """Maximal encoding length over reachable states, for every window bound n <= max_n.

    Variable model: `alg` is a single algorithm explored with Pop and symbol
    tokens while the window never exceeds n. Fixed model: `alg` is a factory
    n -> algorithm and each per-n algorithm is explored under symbols only.
    """
    cap = state.resolve_budget(budget, state.BUDGET_STATES)
    if model == "variable":
        if not isinstance(alg, StreamingAlgorithm):
            raise PreconditionError("variable-size profile needs a single algorithm")
        return _variable_profile(alg, max_n, cap)
    if model == "fixed":
        if isinstance(alg, StreamingAlgorithm):
            raise PreconditionError("fixed-size profile needs a factory n -> algorithm")
        return SpaceProfile("fixed", tuple(_fixed_value(alg(n), cap) for n in range(max_n + 1)))
    raise ValueError(f"unknown window model {model!r}")
