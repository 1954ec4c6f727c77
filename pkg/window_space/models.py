"""Data models for finite automata and Mealy machines.

States are stored by index; `states` holds the display names used by the
file formats. All models are frozen and validate themselves on construction.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .constants import POP_TOKEN, SINK_NAME
from .errors import AlphabetMismatchError

Word = tuple[str, ...]

# Distances and alternation bounds are naturals or this value
INFINITE = math.inf


def _check_unique_names(names: tuple[str, ...], what: str) -> None:
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate {what} names")
    for name in names:
        if not name or any(ch.isspace() for ch in name):
            raise ValueError(f"invalid {what} name {name!r}")


def _fresh_name(base: str, taken: Iterable[str]) -> str:
    taken_set = set(taken)
    name = base
    while name in taken_set:
        name += "_"
    return name


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet has duplicate symbols")
        for sym in self.symbols:
            if not sym or any(ch.isspace() for ch in sym):
                raise ValueError(f"invalid symbol token {sym!r}")
            if sym == POP_TOKEN:
                raise ValueError(f"{POP_TOKEN!r} is reserved for Pop in streams")

    @classmethod
    def of(cls, symbols: Iterable[str]) -> Alphabet:
        return cls(tuple(symbols))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {sym: i for i, sym in enumerate(self.symbols)}

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._index

    def __getitem__(self, i: int) -> str:
        return self.symbols[i]

    def index_of(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetMismatchError(f"symbol {symbol!r} not in alphabet") from None

    def indices(self, word: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.index_of(s) for s in word)

    def word(self, indices: Iterable[int]) -> Word:
        return tuple(self.symbols[i] for i in indices)

    def require_same(self, other: Alphabet) -> None:
        if self != other:
            raise AlphabetMismatchError(
                f"alphabets differ: {list(self.symbols)} vs {list(other.symbols)}"
            )

    def to_dict(self) -> list[str]:
        return list(self.symbols)


@dataclass(frozen=True)
class Nfa:
    alphabet: Alphabet
    states: tuple[str, ...]
    initial: frozenset[int]
    transitions: frozenset[tuple[int, int, int]]  # (source, symbol index, target)
    final: frozenset[int]

    def __post_init__(self) -> None:
        _check_unique_names(self.states, "state")
        n, k = len(self.states), len(self.alphabet)
        for q in self.initial | self.final:
            if not 0 <= q < n:
                raise ValueError(f"state index {q} out of range")
        for p, a, q in self.transitions:
            if not (0 <= p < n and 0 <= q < n):
                raise ValueError(f"transition ({p}, {a}, {q}) has an undeclared state")
            if not 0 <= a < k:
                raise ValueError(f"transition ({p}, {a}, {q}) has a symbol outside the alphabet")

    @classmethod
    def from_names(
        cls,
        alphabet: Alphabet,
        states: Iterable[str],
        initial: Iterable[str],
        transitions: Iterable[tuple[str, str, str]],
        final: Iterable[str],
    ) -> Nfa:
        names = tuple(states)
        index = {name: i for i, name in enumerate(names)}

        def lookup(name: str) -> int:
            if name not in index:
                raise ValueError(f"undeclared state {name!r}")
            return index[name]

        return cls(
            alphabet=alphabet,
            states=names,
            initial=frozenset(lookup(q) for q in initial),
            transitions=frozenset(
                (lookup(p), alphabet.index_of(a), lookup(q)) for p, a, q in transitions
            ),
            final=frozenset(lookup(q) for q in final),
        )

    @property
    def size(self) -> int:
        return len(self.states)

    @cached_property
    def successors(self) -> tuple[tuple[frozenset[int], ...], ...]:
        """successors[p][a] is the set of states reachable from p on symbol a."""
        table: list[list[set[int]]] = [
            [set() for _ in self.alphabet.symbols] for _ in self.states
        ]
        for p, a, q in self.transitions:
            table[p][a].add(q)
        return tuple(tuple(frozenset(s) for s in row) for row in table)

    def step_set(self, current: frozenset[int], a: int) -> frozenset[int]:
        succ = self.successors
        return frozenset(q for p in current for q in succ[p][a])

    def accepts(self, word: Iterable[str]) -> bool:
        current = self.initial
        for a in self.alphabet.indices(word):
            current = self.step_set(current, a)
            if not current:
                return False
        return bool(current & self.final)

    @property
    def is_deterministic(self) -> bool:
        return len(self.initial) == 1 and all(
            len(targets) <= 1 for row in self.successors for targets in row
        )

    def to_dict(self) -> dict:
        return {
            "type": "nfa",
            "alphabet": self.alphabet.to_dict(),
            "states": list(self.states),
            "initial": [self.states[q] for q in sorted(self.initial)],
            "final": [self.states[q] for q in sorted(self.final)],
            "transitions": [
                [self.states[p], self.alphabet[a], self.states[q]]
                for p, a, q in sorted(self.transitions)
            ],
        }


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    states: tuple[str, ...]
    initial: int
    delta: tuple[tuple[int, ...], ...]  # delta[state][symbol index]
    final: frozenset[int]

    def __post_init__(self) -> None:
        _check_unique_names(self.states, "state")
        n, k = len(self.states), len(self.alphabet)
        if n == 0:
            raise ValueError("a DFA needs at least one state")
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state index {self.initial} out of range")
        if len(self.delta) != n or any(len(row) != k for row in self.delta):
            raise ValueError("delta must be total over states x alphabet")
        for row in self.delta:
            for q in row:
                if not 0 <= q < n:
                    raise ValueError(f"transition target {q} out of range")
        for q in self.final:
            if not 0 <= q < n:
                raise ValueError(f"final state index {q} out of range")

    @classmethod
    def build(
        cls,
        alphabet: Alphabet,
        states: Iterable[str],
        initial: str,
        transitions: Mapping[tuple[str, str], str],
        final: Iterable[str],
    ) -> Dfa:
        """Build from named parts; missing transitions go to an added rejecting sink."""
        names = list(states)
        index = {name: i for i, name in enumerate(names)}
        for (p, a), q in transitions.items():
            for name in (p, q):
                if name not in index:
                    raise ValueError(f"undeclared state {name!r}")
            alphabet.index_of(a)
        if initial not in index:
            raise ValueError(f"undeclared initial state {initial!r}")

        missing = any(
            (p, a) not in transitions for p in names for a in alphabet.symbols
        )
        sink = None
        if missing:
            sink = len(names)
            names.append(_fresh_name(SINK_NAME, names))
        delta = []
        for i, p in enumerate(names):
            row = []
            for a in alphabet.symbols:
                target = transitions.get((p, a))
                row.append(index[target] if target is not None and i != sink else sink)
            delta.append(tuple(row))
        return cls(
            alphabet=alphabet,
            states=tuple(names),
            initial=index[initial],
            delta=tuple(delta),  # type: ignore[arg-type]
            final=frozenset(index[q] for q in final),
        )

    @property
    def size(self) -> int:
        return len(self.states)

    @cached_property
    def table(self) -> np.ndarray:
        """delta as an (n, k) integer array."""
        return np.array(self.delta, dtype=np.int64).reshape(self.size, len(self.alphabet))

    @cached_property
    def final_mask(self) -> np.ndarray:
        mask = np.zeros(self.size, dtype=bool)
        mask[list(self.final)] = True
        return mask

    def step(self, q: int, symbol: str) -> int:
        return self.delta[q][self.alphabet.index_of(symbol)]

    def run(self, word: Iterable[str], start: int | None = None) -> int:
        q = self.initial if start is None else start
        for a in self.alphabet.indices(word):
            q = self.delta[q][a]
        return q

    def run_indices(self, word: Iterable[int], start: int | None = None) -> int:
        q = self.initial if start is None else start
        for a in word:
            q = self.delta[q][a]
        return q

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.final

    def is_final(self, q: int) -> bool:
        return q in self.final

    def with_initial(self, q: int) -> Dfa:
        return Dfa(self.alphabet, self.states, q, self.delta, self.final)

    def with_final(self, final: Iterable[int]) -> Dfa:
        return Dfa(self.alphabet, self.states, self.initial, self.delta, frozenset(final))

    def to_nfa(self) -> Nfa:
        return Nfa(
            alphabet=self.alphabet,
            states=self.states,
            initial=frozenset({self.initial}),
            transitions=frozenset(
                (p, a, q) for p, row in enumerate(self.delta) for a, q in enumerate(row)
            ),
            final=self.final,
        )

    def to_dict(self) -> dict:
        return {
            "type": "dfa",
            "alphabet": self.alphabet.to_dict(),
            "states": list(self.states),
            "initial": [self.states[self.initial]],
            "final": [self.states[q] for q in sorted(self.final)],
            "transitions": [
                [self.states[p], self.alphabet[a], self.states[q]]
                for p, row in enumerate(self.delta)
                for a, q in enumerate(row)
            ],
        }

    def to_summary(self) -> dict:
        """Short summary for report headers."""
        return {
            "states": self.size,
            "alphabet": self.alphabet.to_dict(),
            "final": len(self.final),
        }


@dataclass(frozen=True)
class PartialDfa:
    """A DFA whose transition function may be undefined (None)."""

    alphabet: Alphabet
    states: tuple[str, ...]
    initial: int
    delta: tuple[tuple[int | None, ...], ...]
    final: frozenset[int]

    def __post_init__(self) -> None:
        _check_unique_names(self.states, "state")
        n, k = len(self.states), len(self.alphabet)
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state index {self.initial} out of range")
        if len(self.delta) != n or any(len(row) != k for row in self.delta):
            raise ValueError("delta rows must cover the alphabet (use None for undefined)")
        for row in self.delta:
            for q in row:
                if q is not None and not 0 <= q < n:
                    raise ValueError(f"transition target {q} out of range")

    @property
    def size(self) -> int:
        return len(self.states)

    def run(self, word: Iterable[str]) -> int | None:
        q: int | None = self.initial
        for a in self.alphabet.indices(word):
            if q is None:
                return None
            q = self.delta[q][a]
        return q

    def accepts(self, word: Iterable[str]) -> bool:
        q = self.run(word)
        return q is not None and q in self.final

    def edges(self) -> list[tuple[int, int, int]]:
        return [
            (p, a, q)
            for p, row in enumerate(self.delta)
            for a, q in enumerate(row)
            if q is not None
        ]

    def to_dfa(self) -> Dfa:
        """Totalize by routing undefined transitions to a rejecting sink."""
        if all(q is not None for row in self.delta for q in row):
            return Dfa(self.alphabet, self.states, self.initial, self.delta, self.final)  # type: ignore[arg-type]
        sink = self.size
        names = (*self.states, _fresh_name(SINK_NAME, self.states))
        k = len(self.alphabet)
        delta = tuple(
            tuple(sink if q is None else q for q in row) for row in self.delta
        ) + ((sink,) * k,)
        return Dfa(self.alphabet, names, self.initial, delta, self.final)

    def to_dict(self) -> dict:
        return {
            "type": "dfa",
            "alphabet": self.alphabet.to_dict(),
            "states": list(self.states),
            "initial": [self.states[self.initial]],
            "final": [self.states[q] for q in sorted(self.final)],
            "transitions": [
                [self.states[p], self.alphabet[a], self.states[q]] for p, a, q in self.edges()
            ],
        }


@dataclass(frozen=True)
class MealyMachine:
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    states: tuple[str, ...]
    initial: int
    delta: tuple[tuple[tuple[int, int], ...], ...]  # delta[state][input] = (next, output)

    def __post_init__(self) -> None:
        _check_unique_names(self.states, "state")
        n = len(self.states)
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state index {self.initial} out of range")
        if len(self.delta) != n or any(len(row) != len(self.input_alphabet) for row in self.delta):
            raise ValueError("Mealy transition function must be total")
        for row in self.delta:
            for q, b in row:
                if not 0 <= q < n or not 0 <= b < len(self.output_alphabet):
                    raise ValueError(f"Mealy transition ({q}, {b}) out of range")

    @property
    def size(self) -> int:
        return len(self.states)

    def transduce(self, word: Iterable[str], start: int | None = None) -> Word:
        """Left-to-right transduction from `start` (default: the initial state)."""
        q = self.initial if start is None else start
        out = []
        for a in self.input_alphabet.indices(word):
            q, b = self.delta[q][a]
            out.append(self.output_alphabet[b])
        return tuple(out)


@dataclass(frozen=True)
class SccPartition:
    """Maximal SCCs, sinks first: every condensation edge (i, j) has i > j."""

    components: tuple[frozenset[int], ...]
    component_of: tuple[int, ...]
    condensation: frozenset[tuple[int, int]]
    is_trivial_cycle: tuple[bool, ...]
    is_cycle: tuple[bool, ...]
    is_letter_cycle: tuple[bool, ...]
    all_final: tuple[bool, ...]
    all_nonfinal: tuple[bool, ...]

    def __post_init__(self) -> None:
        covered: set[int] = set()
        for comp in self.components:
            if comp & covered:
                raise ValueError("components overlap")
            covered |= comp
        if covered != set(range(len(self.component_of))):
            raise ValueError("components must cover all states")
        for i, j in self.condensation:
            if i <= j:
                raise ValueError(f"condensation edge {i}->{j} breaks reverse topological order")

    def __len__(self) -> int:
        return len(self.components)

    def to_dict(self, dfa: Dfa) -> list[dict]:
        return [
            {
                "states": [dfa.states[q] for q in sorted(comp)],
                "successors": sorted(j for i, j in self.condensation if i == idx),
                "is_trivial_cycle": self.is_trivial_cycle[idx],
                "is_cycle": self.is_cycle[idx],
                "all_final": self.all_final[idx],
                "all_nonfinal": self.all_nonfinal[idx],
            }
            for idx, comp in enumerate(self.components)
        ]


@dataclass(frozen=True)
class StateDistance:
    value: int | float

    def __post_init__(self) -> None:
        if self.value != INFINITE and (not isinstance(self.value, int) or self.value < 0):
            raise ValueError(f"distance must be a natural number or infinite, got {self.value}")

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITE

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(self.value)
