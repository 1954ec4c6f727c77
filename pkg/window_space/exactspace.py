"""Exact space functions F_L(n) and V_L(n), the suffix-class construction ψ_L
with its optimal variable-size algorithm, and the sparse and constant-space
fixed-size algorithms."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from . import state
from .automata import is_trivial, minimize, require_minimal
from .classify import is_constant_fixed
from .constants import CLASS_TOKEN_PREFIX
from .errors import (
    BudgetExceededError,
    InternalConsistencyError,
    PreconditionError,
    TrivialLanguageError,
)
from .helpers import (
    ceil_log2,
    count_words_up_to,
    floor_log2,
    length_lex_code,
    to_bits,
    words_up_to,
)
from .models import Alphabet, Dfa, MealyMachine, Word
from .streaming import (
    POP,
    ConstantAlgorithm,
    FixedWindowSpec,
    Model,
    StreamingAlgorithm,
    StreamToken,
    exact_space_profile,
)
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer(__name__)

# ψ_L(w): the minimal-DFA state reached by each suffix of w, longest suffix first
SuffixClassSequence = tuple[int, ...]


def class_alphabet(l: Dfa) -> Alphabet:
    """Synthetic alphabet c0, c1, ... naming the states of l."""
    return Alphabet(tuple(f"{CLASS_TOKEN_PREFIX}{q}" for q in range(l.size)))


def class_tokens(seq: SuffixClassSequence) -> Word:
    return tuple(f"{CLASS_TOKEN_PREFIX}{q}" for q in seq)


def psi(l: Dfa, w: Sequence[str]) -> SuffixClassSequence:
    """ψ_L(w) in one right-to-left pass, composing suffix functions f_{av} = f_v ∘ f_a."""
    f = tuple(range(l.size))
    classes = []
    for sym in reversed(l.alphabet.indices(w)):
        f = tuple(f[l.delta[q][sym]] for q in range(l.size))
        classes.append(f[l.initial])
    return tuple(reversed(classes))


def psi_append(l: Dfa, seq: SuffixClassSequence, sym: int) -> SuffixClassSequence:
    """ψ_L(wa) from ψ_L(w): step every class by a, then append the class of a."""
    return tuple(l.delta[q][sym] for q in seq) + (l.delta[l.initial][sym],)


def psi_image_count_enumerated(l: Dfa, n: int, budget: int | None = None) -> int:
    """|ψ_L(Σ^{<=n})| by running psi on every word of length <= n."""
    cap = state.resolve_budget(budget, state.BUDGET_WORDS)
    total = count_words_up_to(len(l.alphabet), n)
    if total > cap:
        raise BudgetExceededError(f"enumeration of {total} words", cap)
    return len({psi(l, w) for w in words_up_to(l.alphabet, n)})


def psi_image_count_closure(l: Dfa, n: int, budget: int | None = None) -> int:
    """|ψ_L(Σ^{<=n})| by breadth-first closure of the append transitions."""
    return PsiAutomaton(l, budget=budget).count_up_to(n)


def psi_image_count(l: Dfa, n: int, budget: int | None = None) -> int:
    """|ψ_L(Σ^{<=n})|, computed by enumeration and by closure; the two must agree."""
    with tracer.start_as_current_span("exactspace.psi_image_count") as span:
        span.set_attribute("n", n)
        enumerated = psi_image_count_enumerated(l, n, budget=budget)
        closure = psi_image_count_closure(l, n, budget=budget)
        if enumerated != closure:
            raise InternalConsistencyError(
                f"psi image count disagrees at n={n}: enumeration {enumerated}, closure {closure}"
            )
        return closure


class PsiAutomaton:
    """The states ψ_L(Σ^k), discovered level by level, with their codes.

    Sequences first reached at window length k (exactly the sequences of
    length k) get code indices after all shorter ones; within a level they
    are ordered lexicographically.
    """

    def __init__(self, l: Dfa, budget: int | None = None):
        self.l = l
        self.cap = state.resolve_budget(budget, state.BUDGET_STATES)
        self._levels: list[dict[SuffixClassSequence, int]] = [{(): 0}]
        self._offsets: list[int] = [0]

    def _extend(self) -> None:
        last = self._levels[-1]
        nxt = {
            psi_append(self.l, seq, sym) for seq in last for sym in range(len(self.l.alphabet))
        }
        offset = self._offsets[-1] + len(last)
        if offset + len(nxt) > self.cap:
            raise BudgetExceededError("suffix-class closure", self.cap)
        self._offsets.append(offset)
        self._levels.append({seq: rank for rank, seq in enumerate(sorted(nxt))})
        logger.debug(f"Suffix-class level {len(self._levels) - 1}: {len(nxt)} sequences")

    def level(self, k: int) -> list[SuffixClassSequence]:
        while len(self._levels) <= k:
            self._extend()
        return list(self._levels[k])

    def count_up_to(self, n: int) -> int:
        self.level(n)
        return self._offsets[n] + len(self._levels[n])

    def code_index(self, seq: SuffixClassSequence) -> int:
        k = len(seq)
        self.level(k)
        try:
            return self._offsets[k] + self._levels[k][seq]
        except KeyError:
            raise ValueError(f"{seq} is not a reachable suffix-class sequence") from None

    def code(self, seq: SuffixClassSequence) -> str:
        return length_lex_code(self.code_index(seq))

    def accepts(self, seq: SuffixClassSequence) -> bool:
        first = seq[0] if seq else self.l.initial
        return first in self.l.final


class OptimalVariableAlgorithm(StreamingAlgorithm):
    """Variable-size algorithm storing ψ_L(window); space ⌊log₂|ψ_L(Σ^{<=n})|⌋."""

    model: Model = "variable"

    def __init__(self, l: Dfa):
        self.l = l
        self.alphabet = l.alphabet
        self.automaton = PsiAutomaton(l)

    @property
    def initial(self) -> SuffixClassSequence:
        return ()

    def step(self, current: SuffixClassSequence, token: StreamToken) -> SuffixClassSequence:
        if token is POP:
            return current[1:]
        return psi_append(self.l, current, self.alphabet.index_of(token))  # type: ignore[arg-type]

    def accepts(self, current: SuffixClassSequence) -> bool:
        return self.automaton.accepts(current)

    def encode(self, current: SuffixClassSequence) -> str:
        return self.automaton.code(current)


def optimal_variable_algorithm(l: Dfa) -> StreamingAlgorithm:
    require_minimal(l)
    if is_trivial(l):
        raise TrivialLanguageError(
            "the suffix-class algorithm is defined for nontrivial languages only (V = 0 for ∅ and Σ*)"
        )
    return OptimalVariableAlgorithm(l)


def psi_mealy(l: Dfa, budget: int | None = None) -> MealyMachine:
    """Mealy machine over the transition monoid whose ←-transduction is ψ_L.

    A state is the mapping f_v of the suffix v read so far; reading a gives
    f_{av} = f_v ∘ f_a and outputs the class f_{av}(q0) as token c<i>.
    """
    cap = state.resolve_budget(budget, state.BUDGET_MONOID)
    identity = tuple(range(l.size))
    index = {identity: 0}
    order = [identity]
    delta = []
    i = 0
    while i < len(order):
        f = order[i]
        row = []
        for sym in range(len(l.alphabet)):
            g = tuple(f[l.delta[q][sym]] for q in range(l.size))
            if g not in index:
                if len(index) >= cap:
                    raise BudgetExceededError("transition monoid", cap)
                index[g] = len(order)
                order.append(g)
            row.append((index[g], g[l.initial]))
        delta.append(tuple(row))
        i += 1
    logger.info(f"Transition monoid of {l.size}-state DFA has {len(order)} elements")
    return MealyMachine(
        input_alphabet=l.alphabet,
        output_alphabet=class_alphabet(l),
        states=tuple(f"m{j}" for j in range(len(order))),
        initial=0,
        delta=tuple(delta),
    )


# --- fixed-size model ----------------------------------------------------------


def _window_name(alphabet: Alphabet, window: Sequence[int]) -> str:
    if not window:
        return "e"
    tokens = alphabet.word(window)
    return "".join(tokens) if all(len(t) == 1 for t in tokens) else "|".join(tokens)


def window_automaton(l: Dfa, spec: FixedWindowSpec, budget: int | None = None) -> Dfa:
    """The trivial window DFA: states Σ^n, initial pad^n, final iff the window is in L."""
    cap = state.resolve_budget(budget, state.BUDGET_STATES)
    k = len(l.alphabet)
    size = k**spec.n
    if size > cap:
        raise BudgetExceededError(f"window automaton with {k}^{spec.n} states", cap)
    shift = k ** (spec.n - 1) if spec.n > 0 else 1

    windows = []
    delta = []
    final = set()
    for code in range(size):
        digits = []
        rest = code
        for _ in range(spec.n):
            digits.append(rest % k)
            rest //= k
        window = tuple(reversed(digits))
        windows.append(window)
        if l.run_indices(window) in l.final:
            final.add(code)
        if spec.n == 0:
            delta.append((0,) * k)
        else:
            delta.append(tuple((code % shift) * k + sym for sym in range(k)))

    pad = l.alphabet.index_of(spec.pad)
    initial = sum(pad * k**i for i in range(spec.n))
    names = tuple(_window_name(l.alphabet, w) for w in windows)
    return Dfa(l.alphabet, names, initial, tuple(delta), frozenset(final))


def window_language(l: Dfa, spec: FixedWindowSpec, budget: int | None = None) -> Dfa:
    """Minimal DFA of L_n = {w : last_n(w) ∈ L}."""
    return minimize(window_automaton(l, spec, budget=budget))


def exact_F(l: Dfa, n: int, pad: str | None = None, budget: int | None = None) -> int:
    """F_L(n) = ⌊log₂ |minimal window DFA|⌋."""
    with tracer.start_as_current_span("exactspace.exact_F") as span:
        span.set_attribute("n", n)
        spec = FixedWindowSpec.for_alphabet(l.alphabet, n, pad)
        return floor_log2(window_language(l, spec, budget=budget).size)


def length_n_words(l: Dfa, n: int, budget: int | None = None) -> list[tuple[int, ...]]:
    """L ∩ Σ^n as symbol-index tuples in lexicographic order."""
    cap = state.resolve_budget(budget, state.BUDGET_WORDS)
    # live[r]: states from which some word of length exactly r is accepted
    live = [set(l.final)]
    for _ in range(n):
        prev = live[-1]
        live.append({q for q in range(l.size) if any(t in prev for t in l.delta[q])})

    words: list[tuple[int, ...]] = []

    def extend(q: int, prefix: list[int]) -> None:
        remaining = n - len(prefix)
        if remaining == 0:
            if len(words) >= cap:
                raise BudgetExceededError("enumeration of L ∩ Σ^n", cap)
            words.append(tuple(prefix))
            return
        for sym, target in enumerate(l.delta[q]):
            if target in live[remaining - 1]:
                prefix.append(sym)
                extend(target, prefix)
                prefix.pop()

    if l.initial in live[n]:
        extend(l.initial, [])
    return words


class SparseFixedAlgorithm(StreamingAlgorithm):
    """Fixed-size algorithm using O(log |L ∩ Σ^n| + log n) bits.

    The state is (ℓ, j): the longest suffix of the window that is a prefix of
    some word of L ∩ Σ^n has length ℓ and is a prefix of word j (the first
    such word). The window is in L iff ℓ = n.
    """

    model: Model = "fixed"

    def __init__(self, l: Dfa, spec: FixedWindowSpec, words: list[tuple[int, ...]]):
        self.alphabet = l.alphabet
        self.spec = spec
        self.words = words
        self.prefixes: dict[tuple[int, ...], int] = {}
        for j, word in enumerate(words):
            for length in range(spec.n + 1):
                self.prefixes.setdefault(word[:length], j)
        self.length_width = spec.n.bit_length()
        self.index_width = (len(words) - 1).bit_length()
        pad = self.alphabet.index_of(spec.pad)
        self._initial = self._longest((pad,) * spec.n)

    def _longest(self, suffix_source: tuple[int, ...]) -> tuple[int, int]:
        for drop in range(len(suffix_source) + 1):
            candidate = suffix_source[drop:]
            if candidate in self.prefixes:
                return len(candidate), self.prefixes[candidate]
        raise InternalConsistencyError("the empty word must be a prefix")

    @property
    def initial(self) -> tuple[int, int]:
        return self._initial

    def step(self, current: tuple[int, int], token: StreamToken) -> tuple[int, int]:
        sym = self._symbol(token)
        length, j = current
        return self._longest(self.words[j][:length] + (sym,))

    def accepts(self, current: tuple[int, int]) -> bool:
        return current[0] == self.spec.n

    def encode(self, current: tuple[int, int]) -> str:
        length, j = current
        return to_bits(length, self.length_width) + to_bits(j, self.index_width)


def sparse_fixed_algorithm(
    l: Dfa, spec: FixedWindowSpec, budget: int | None = None
) -> StreamingAlgorithm:
    words = length_n_words(l, spec.n, budget=budget)
    if not words:
        logger.info(f"L ∩ Σ^{spec.n} is empty; using the constant rejecting algorithm")
        return ConstantAlgorithm(l.alphabet, "fixed", False)
    logger.debug(f"Sparse algorithm over {len(words)} words of length {spec.n}")
    return SparseFixedAlgorithm(l, spec, words)


class ConstantFixedAlgorithm(StreamingAlgorithm):
    """Keeps only the last |Q| symbols; valid when the constant-space criterion holds."""

    model: Model = "fixed"

    def __init__(self, l: Dfa, spec: FixedWindowSpec):
        self.l = l
        self.spec = spec
        self.alphabet = l.alphabet
        self.width = ceil_log2(len(self.alphabet))
        pad = self.alphabet.index_of(spec.pad)
        self.keep = l.size
        self._initial = (pad,) * self.keep
        self._start = l.run_indices((pad,) * (spec.n - self.keep))

    @property
    def initial(self) -> tuple[int, ...]:
        return self._initial

    def step(self, current: tuple[int, ...], token: StreamToken) -> tuple[int, ...]:
        return current[1:] + (self._symbol(token),)

    def accepts(self, current: tuple[int, ...]) -> bool:
        return self.l.run_indices(current, start=self._start) in self.l.final

    def encode(self, current: tuple[int, ...]) -> str:
        return "".join(to_bits(sym, self.width) for sym in current)


def constant_fixed_algorithm(l: Dfa, spec: FixedWindowSpec) -> StreamingAlgorithm:
    require_minimal(l)
    if spec.n < l.size:
        raise PreconditionError(f"window length {spec.n} is below the state count {l.size}")
    if not is_constant_fixed(l):
        raise PreconditionError("language is not in the constant fixed-size class")
    return ConstantFixedAlgorithm(l, spec)


# --- space tables ---------------------------------------------------------------


@dataclass
class SpaceRow:
    n: int
    F_bits: int | None
    V_bits: int | None
    psi_count: int | None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "F_bits": self.F_bits,
            "V_bits": self.V_bits,
            "psi_count": self.psi_count,
            "notes": self.notes,
        }


def space_table(l: Dfa, max_n: int, pad: str | None = None, budget: int | None = None) -> list[SpaceRow]:
    """Rows (n, F_L(n), V_L(n), |ψ_L(Σ^{<=n})|) for n = 0..max_n.

    Columns that would exceed their budget are reported as notes instead of
    failing the table. An explicit `budget` replaces every configured cap.
    """
    l = minimize(l)
    trivial = is_trivial(l)
    profile = None
    if not trivial:
        try:
            profile = exact_space_profile(optimal_variable_algorithm(l), max_n, "variable", budget=budget)
        except BudgetExceededError as e:
            logger.warning(f"Variable-size exploration skipped: {e}")

    rows = []
    for n in range(max_n + 1):
        notes = []
        try:
            f_bits: int | None = exact_F(l, n, pad=pad, budget=budget)
        except BudgetExceededError as e:
            f_bits = None
            notes.append(f"F omitted: {e}")
        count: int | None
        try:
            count = psi_image_count(l, n, budget=budget)
        except BudgetExceededError as e:
            try:
                count = psi_image_count_closure(l, n, budget=budget)
                notes.append(f"psi count by closure only: {e}")
            except BudgetExceededError as closure_error:
                count = None
                notes.append(f"psi count omitted: {closure_error}")
        v_bits: int | None
        if trivial:
            v_bits = 0
            notes.append("trivial language: V = 0")
        elif count is None:
            v_bits = None if profile is None else profile[n]
        else:
            v_bits = floor_log2(count)
            if profile is not None and profile[n] != v_bits:
                raise InternalConsistencyError(
                    f"measured V({n}) = {profile[n]} differs from ⌊log₂ {count}⌋"
                )
        rows.append(SpaceRow(n=n, F_bits=f_bits, V_bits=v_bits, psi_count=count, notes=notes))
    return rows


def profile_for(l: Dfa, max_n: int) -> dict[Model, list[int]]:
    """Measured profiles of the optimal variable-size algorithm and of exact F."""
    l = minimize(l)
    variable = exact_space_profile(optimal_variable_algorithm(l), max_n, "variable")
    return {
        "variable": list(variable.values),
        "fixed": [exact_F(l, n) for n in range(max_n + 1)],
    }
