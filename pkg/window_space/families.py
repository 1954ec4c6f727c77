"""Example languages and gadget constructions.

L_k tracks the maximum symbol seen so far and rejects a repeated positive
maximum; Z_k words (zeros interleaved with the ruler sequence of 1..k) are
the hard inputs for L_k in the fixed-size model. The ρ and σ gadgets turn
NFA universality into questions about space classes.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Literal

from . import state
from .automata import as_nfa
from .constants import MAX_ZK
from .errors import PreconditionError
from .models import Alphabet, Dfa, Nfa, Word, _fresh_name

logger = logging.getLogger(__name__)

BINARY = Alphabet(("a", "b"))
TERNARY = Alphabet(("a", "b", "c"))

FamilyKind = Literal["lk", "zk", "rho-const", "rho-log", "sigma"]
FAMILY_KINDS: tuple[FamilyKind, ...] = ("lk", "zk", "rho-const", "rho-log", "sigma")


def digit_alphabet(k: int) -> Alphabet:
    return Alphabet(tuple(str(i) for i in range(k + 1)))


def _require_k(k: int) -> None:
    if k < 0:
        raise PreconditionError(f"k must be >= 0, got {k}")


def gen_Lk(k: int) -> Dfa:
    """The (k+3)-state DFA for L_k: initial, one state per current maximum, sink."""
    _require_k(k)
    alphabet = digit_alphabet(k)
    trackers = [f"m{s}" for s in range(k + 1)]
    states = ["init", *trackers, "sink"]
    transitions = {(p, a): "sink" for p in states for a in alphabet.symbols}
    transitions[("init", "0")] = "m0"
    for s in range(k + 1):
        for t in range(k + 1):
            if t == 0 or t < s:
                transitions[(f"m{s}", str(t))] = f"m{s}"
            elif t > s:
                transitions[(f"m{s}", str(t))] = f"m{t}"
    return Dfa.build(alphabet, states, "init", transitions, trackers)


def in_Lk(k: int, x: Sequence[str]) -> bool:
    """Direct check: x starts with 0 and no positive symbol repeats the running maximum."""
    try:
        values = [int(a) for a in x]
    except ValueError:
        return False
    if not values or values[0] != 0 or any(not 0 <= v <= k for v in values):
        return False
    highest = 0
    for v in values[1:]:
        if v != 0 and v == highest:
            return False
        highest = max(highest, v)
    return True


def ruler_sequence(k: int) -> list[int]:
    """Non-zero symbols of Z_k in order: ruler(k) = ruler(k-1) k ruler(k-1)."""
    _require_k(k)
    if k == 0:
        return []
    inner = ruler_sequence(k - 1)
    return inner + [k] + inner


def gen_Zk_dfa(k: int) -> Dfa:
    """DFA for Z_k: a chain through the ruler sequence with a 0-loop on every state."""
    _require_k(k)
    if k > MAX_ZK:
        raise PreconditionError(f"Z_k automata are limited to k <= {MAX_ZK}")
    ruler = ruler_sequence(k)
    states = [f"z{i}" for i in range(len(ruler) + 1)]
    transitions = {(name, "0"): name for name in states}
    for i, symbol in enumerate(ruler):
        transitions[(states[i], str(symbol))] = states[i + 1]
    return Dfa.build(digit_alphabet(k), states, states[0], transitions, [states[-1]])


def zk_words_of_length(k: int, n: int) -> Iterator[Word]:
    """All Z_k words of length n, choosing the positions of the ruler symbols."""
    ruler = ruler_sequence(k)
    for positions in itertools.combinations(range(n), len(ruler)):
        word = ["0"] * n
        for pos, symbol in zip(positions, ruler, strict=True):
            word[pos] = str(symbol)
        yield tuple(word)


def gen_Zk_words(k: int, count: int, length: int | None = None, seed: int | None = None) -> list[Word]:
    """`count` members of Z_k: the first ones of a given length, or random zero runs."""
    if length is not None:
        return list(itertools.islice(zk_words_of_length(k, length), count))
    rng = random.Random(state.SEED if seed is None else seed)
    ruler = ruler_sequence(k)
    words = []
    for _ in range(count):
        word = ["0"] * rng.randint(0, 2)
        for symbol in ruler:
            word.append(str(symbol))
            word.extend(["0"] * rng.randint(0, 2))
        words.append(tuple(word))
    return words


# --- gadgets ---------------------------------------------------------------------------


def _require_binary(a: Nfa) -> None:
    if a.alphabet != BINARY:
        raise PreconditionError(f"gadget payload must be over {{a,b}}, got {list(a.alphabet.symbols)}")


def gen_rho_const(a: Nfa | Dfa) -> Nfa:
    """Add an initial, only-final state q̄ with an a-loop and b-edges from F: a* ∪ L(A)·b·a*."""
    nfa = as_nfa(a)
    _require_binary(nfa)
    bar = nfa.size
    transitions = set(nfa.transitions) | {(q, 1, bar) for q in nfa.final} | {(bar, 0, bar)}
    return Nfa(
        alphabet=BINARY,
        states=(*nfa.states, _fresh_name("qbar", nfa.states)),
        initial=nfa.initial | {bar},
        transitions=frozenset(transitions),
        final=frozenset({bar}),
    )


def gen_rho_log(a: Nfa | Dfa) -> Nfa:
    """q̄ initial and only final, a/b-loops, c-edges from F to q̄ and from q̄ to every state."""
    nfa = as_nfa(a)
    _require_binary(nfa)
    bar = nfa.size
    transitions = set(nfa.transitions)
    transitions |= {(q, 2, bar) for q in nfa.final}
    transitions |= {(bar, 2, q) for q in range(nfa.size)}
    transitions |= {(bar, 0, bar), (bar, 1, bar)}
    return Nfa(
        alphabet=TERNARY,
        states=(*nfa.states, _fresh_name("qbar", nfa.states)),
        initial=nfa.initial | {bar},
        transitions=frozenset(transitions),
        final=frozenset({bar}),
    )


def gen_sigma(a: Nfa | Dfa) -> Nfa:
    """q̄ the only initial state, a/b-loops, c-edges from q̄ to I and from every state to q̄."""
    nfa = as_nfa(a)
    _require_binary(nfa)
    bar = nfa.size
    transitions = set(nfa.transitions)
    transitions |= {(bar, 2, q) for q in nfa.initial}
    transitions |= {(q, 2, bar) for q in range(nfa.size)}
    transitions |= {(bar, 0, bar), (bar, 1, bar)}
    return Nfa(
        alphabet=TERNARY,
        states=(*nfa.states, _fresh_name("qbar", nfa.states)),
        initial=frozenset({bar}),
        transitions=frozenset(transitions),
        final=nfa.final | {bar},
    )


def pad_with_final_sink(a: Nfa | Dfa) -> Nfa:
    """Add a final, non-initial state with a- and b-loops and no incoming edges."""
    nfa = as_nfa(a)
    _require_binary(nfa)
    extra = nfa.size
    return Nfa(
        alphabet=nfa.alphabet,
        states=(*nfa.states, _fresh_name("pad", nfa.states)),
        initial=nfa.initial,
        transitions=frozenset(nfa.transitions | {(extra, 0, extra), (extra, 1, extra)}),
        final=nfa.final | {extra},
    )


def random_nfa(alphabet: Alphabet, size: int, rng: random.Random, density: float = 0.3) -> Nfa:
    """Random NFA with `size` states; each transition present with probability `density`."""
    states = tuple(f"q{i}" for i in range(size))
    transitions = frozenset(
        (p, a, q)
        for p in range(size)
        for a in range(len(alphabet))
        for q in range(size)
        if rng.random() < density
    )
    initial = frozenset({0})
    final = frozenset(q for q in range(size) if rng.random() < 0.5)
    return Nfa(alphabet, states, initial, transitions, final)


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    k: int | None = None
    payload: Nfa | None = None

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {', '.join(FAMILY_KINDS)}")
        if self.kind in ("lk", "zk"):
            if self.k is None or self.k < 0:
                raise ValueError(f"family {self.kind} needs k >= 0")
        elif self.payload is None:
            raise ValueError(f"family {self.kind} needs a payload automaton")
        elif self.payload.alphabet != BINARY:
            raise ValueError("gadget payload must be over {a,b}")

    def build(self) -> Dfa | Nfa:
        if self.kind in ("lk", "zk"):
            assert self.k is not None
            return gen_Lk(self.k) if self.kind == "lk" else gen_Zk_dfa(self.k)
        assert self.payload is not None
        builders = {"rho-const": gen_rho_const, "rho-log": gen_rho_log, "sigma": gen_sigma}
        logger.debug(f"Building {self.kind} gadget over a {self.payload.size}-state payload")
        return builders[self.kind](self.payload)
