"""Space classification of regular languages in the sliding-window model.

Every regular language falls into one of three classes per model:

* fixed-size windows: constant, logarithmic or linear space
* variable-size windows: trivial-constant (∅ and Σ* only), logarithmic or linear

The logarithmic/linear split is decided by well-behavedness of the minimal
DFA of the reversed language; the constant fixed-size class by the
pair-distance criterion on the minimal DFA. Negative answers come with
witnesses that re-verify themselves on construction.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

import networkx as nx
import numpy as np

from . import state
from .automata import (
    as_nfa,
    combine,
    determinize,
    distance_matrix,
    is_empty,
    is_trivial,
    left_quotient,
    minimize,
    pair_search,
    pair_words,
    reachable_order,
    require_minimal,
    reverse_determinize,
    sccs,
    separating_word,
    shortest_path,
    trim,
)
from .errors import BudgetExceededError, InternalConsistencyError, PreconditionError
from .helpers import format_word, reverse_word, words_of_length, words_up_to
from .models import INFINITE, Dfa, Nfa, StateDistance, Word
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer(__name__)

Problem = Literal["dfa1", "dfalog", "nfa1", "nfalog"]
PROBLEMS: tuple[Problem, ...] = ("dfa1", "dfalog", "nfa1", "nfalog")


class FixedClass(str, Enum):
    CONSTANT = "constant"
    LOGARITHMIC = "logarithmic"
    LINEAR = "linear"


class VariableClass(str, Enum):
    TRIVIAL_CONSTANT = "trivial-constant"
    LOGARITHMIC = "logarithmic"
    LINEAR = "linear"


@dataclass(frozen=True)
class SpaceClass:
    fixed: FixedClass
    variable: VariableClass

    def __post_init__(self) -> None:
        if self.variable is VariableClass.TRIVIAL_CONSTANT and self.fixed is not FixedClass.CONSTANT:
            raise ValueError("trivial languages are constant in the fixed-size model")
        if self.fixed is FixedClass.CONSTANT and self.variable is VariableClass.LINEAR:
            raise ValueError("constant fixed-size space excludes linear variable-size space")
        if (self.fixed is FixedClass.LINEAR) != (self.variable is VariableClass.LINEAR):
            raise ValueError("the linear class coincides in both models")

    def to_dict(self) -> dict:
        return {"fixed": self.fixed.value, "variable": self.variable.value}


def _words(w: Sequence[str]) -> list[str]:
    return list(w)


# --- well-behavedness -----------------------------------------------------------


@dataclass(frozen=True)
class NonWellBehavedWitness:
    """Proof that b is not well-behaved.

    q0 -u-> p, p -u0-> p0 -v0-> p and p -u1-> p1 -v1-> p all inside one SCC,
    with p0 non-final and p1 final. Lengths satisfy |u0| = |u1| and
    |u0v0| = |u1v1|.
    """

    dfa: Dfa
    u: Word
    u0: Word
    v0: Word
    u1: Word
    v1: Word
    p: int
    p0: int
    p1: int

    def __post_init__(self) -> None:
        b = self.dfa
        checks = [
            (b.run(self.u) == self.p, "u does not lead to the pivot"),
            (b.run(self.u0, self.p) == self.p0, "u0 does not lead to p0"),
            (b.run(self.v0, self.p0) == self.p, "v0 does not return to the pivot"),
            (b.run(self.u1, self.p) == self.p1, "u1 does not lead to p1"),
            (b.run(self.v1, self.p1) == self.p, "v1 does not return to the pivot"),
            (self.p0 not in b.final, "p0 must be non-final"),
            (self.p1 in b.final, "p1 must be final"),
            (len(self.u0) == len(self.u1) >= 1, "u0 and u1 must have equal positive length"),
            (len(self.u0) + len(self.v0) == len(self.u1) + len(self.v1), "loop lengths differ"),
        ]
        for ok, message in checks:
            if not ok:
                raise InternalConsistencyError(f"invalid non-well-behaved witness: {message}")

    @property
    def c(self) -> int:
        """Loop length |u0v0|; linear lower bound V(n) >= ⌊n/c⌋."""
        return len(self.u0) + len(self.v0)

    def word(self, alpha: Sequence[int]) -> Word:
        """w(α) = u u_{α1} v_{α1} ⋯ u_{αj} v_{αj}, a word read by the witness DFA."""
        out = list(self.u)
        for bit in alpha:
            out.extend(self.u1 + self.v1 if bit else self.u0 + self.v0)
        return tuple(out)

    def to_dict(self) -> dict:
        names = self.dfa.states
        return {
            "u": _words(self.u),
            "u0": _words(self.u0),
            "v0": _words(self.v0),
            "u1": _words(self.u1),
            "v1": _words(self.v1),
            "p": names[self.p],
            "p0": names[self.p0],
            "p1": names[self.p1],
            "c": self.c,
        }


@dataclass(frozen=True)
class WellBehavedResult:
    well_behaved: bool
    witness: NonWellBehavedWitness | None = None


def _equalize(u0: Word, v0: Word, u1: Word, v1: Word) -> tuple[Word, Word]:
    c0, c1 = len(u0) + len(v0), len(u1) + len(v1)
    target = math.lcm(c0, c1)
    return v0 + (u0 + v0) * (target // c0 - 1), v1 + (u1 + v1) * (target // c1 - 1)


def is_well_behaved(b: Dfa) -> WellBehavedResult:
    """Check that equal-length in-SCC runs from a common state agree on finality.

    Pivots are tried in breadth-first order from the initial state; inside
    the pivot's SCC a synchronized pair search finds the first (final,
    non-final) pair, which is turned into a NonWellBehavedWitness.
    """
    partition = sccs(b)
    for q in reachable_order(b):
        idx = partition.component_of[q]
        if partition.is_trivial_cycle[idx] or partition.all_final[idx] or partition.all_nonfinal[idx]:
            continue
        comp = partition.components[idx]
        parents = pair_search(b, [(q, q)], within=comp)
        for left, right in parents:
            if (left in b.final) == (right in b.final):
                continue
            w_left, w_right = pair_words(b, parents, (left, right))
            if left in b.final:
                u0, p0, u1, p1 = w_right, right, w_left, left
            else:
                u0, p0, u1, p1 = w_left, left, w_right, right
            u = shortest_path(b, b.initial, q)
            v0 = shortest_path(b, p0, q, within=comp)
            v1 = shortest_path(b, p1, q, within=comp)
            if u is None or v0 is None or v1 is None:
                raise InternalConsistencyError("SCC paths must exist")
            v0, v1 = _equalize(u0, v0, u1, v1)
            witness = NonWellBehavedWitness(b, u, u0, v0, u1, v1, q, p0, p1)
            logger.debug(f"Not well-behaved at pivot {b.states[q]}: u0={format_word(u0)}, u1={format_word(u1)}")
            return WellBehavedResult(False, witness)
    return WellBehavedResult(True)


# --- constant fixed-size criterion ----------------------------------------------


@dataclass(frozen=True)
class ConstantWitness:
    """Equal-length x, y and z with |z| = |Q| such that xz and yz reach different states."""

    dfa: Dfa
    x: Word
    y: Word
    z: Word

    def __post_init__(self) -> None:
        if len(self.x) != len(self.y) or len(self.z) != self.dfa.size:
            raise InternalConsistencyError("constant-space witness has wrong lengths")
        if self.dfa.run(self.x + self.z) == self.dfa.run(self.y + self.z):
            raise InternalConsistencyError("constant-space witness does not separate states")

    def to_dict(self) -> dict:
        return {"x": _words(self.x), "y": _words(self.y), "z": _words(self.z)}


def _synchronized_pairs(l: Dfa) -> list[tuple[int, int]]:
    return list(pair_search(l, [(l.initial, l.initial)]))


def is_constant_fixed(l: Dfa) -> bool:
    """True iff every pair reachable by equal-length words is merged by all long enough suffixes."""
    require_minimal(l)
    dist = distance_matrix(l)
    return all(np.isfinite(dist[p, q]) for p, q in _synchronized_pairs(l))


def constant_fixed_witness(l: Dfa) -> ConstantWitness | None:
    require_minimal(l)
    dist = distance_matrix(l)
    parents = pair_search(l, [(l.initial, l.initial)])
    for pair in parents:
        p, q = pair
        if np.isfinite(dist[p, q]):
            continue
        x, y = pair_words(l, parents, pair)
        z = []
        for _ in range(l.size):
            for sym in range(len(l.alphabet)):
                np_, nq = l.delta[p][sym], l.delta[q][sym]
                if not np.isfinite(dist[np_, nq]):
                    z.append(sym)
                    p, q = np_, nq
                    break
            else:
                raise InternalConsistencyError("infinite-distance pairs must have an infinite successor")
        return ConstantWitness(l, x, y, l.alphabet.word(z))
    return None


# --- critical tuples ------------------------------------------------------------


def _mapping(l: Dfa, w: Sequence[str]) -> tuple[int, ...]:
    return tuple(l.run(w, start=q) for q in range(l.size))


def reachable_set(l: Dfa, u: Sequence[str], w0: Sequence[str], w1: Sequence[str]) -> frozenset[int]:
    """Q(u, w0, w1): states reached by u followed by any product of w0 and w1."""
    maps = (_mapping(l, w0), _mapping(l, w1))
    start = l.run(u)
    seen = {start}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for m in maps:
            if m[q] not in seen:
                seen.add(m[q])
                queue.append(m[q])
    return frozenset(seen)


@dataclass(frozen=True)
class CriticalTuple:
    dfa: Dfa
    u0: Word
    u1: Word
    w0: Word
    w1: Word
    q0_set: frozenset[int] = field(init=False)
    q1_set: frozenset[int] = field(init=False)

    def __post_init__(self) -> None:
        if not len(self.u0) == len(self.u1) >= 1:
            raise InternalConsistencyError("critical tuple needs |u0| = |u1| >= 1")
        for u, w in ((self.u0, self.w0), (self.u1, self.w1)):
            if tuple(w[len(w) - len(u) :]) != tuple(u):
                raise InternalConsistencyError("critical tuple needs u_i to be a suffix of w_i")
        object.__setattr__(self, "q0_set", reachable_set(self.dfa, self.u0, self.w0, self.w1))
        object.__setattr__(self, "q1_set", reachable_set(self.dfa, self.u1, self.w0, self.w1))
        if self.q0_set & self.q1_set:
            raise InternalConsistencyError("critical tuple state sets intersect")

    def to_dict(self) -> dict:
        names = self.dfa.states
        return {
            "u0": _words(self.u0),
            "u1": _words(self.u1),
            "w0": _words(self.w0),
            "w1": _words(self.w1),
            "Q0": sorted(names[q] for q in self.q0_set),
            "Q1": sorted(names[q] for q in self.q1_set),
        }


def critical_from_witness(l: Dfa, w: NonWellBehavedWitness) -> CriticalTuple:
    """Reverse a witness on the reversed language into a critical tuple of l."""
    require_minimal(l)
    return CriticalTuple(
        l,
        reverse_word(w.u0),
        reverse_word(w.u1),
        reverse_word(w.u0 + w.v0),
        reverse_word(w.u1 + w.v1),
    )


def find_critical_tuple(l: Dfa, max_len: int) -> CriticalTuple | None:
    """Bounded search over |u_i| <= max_len and |v_i| <= max_len with w_i = v_i u_i."""
    require_minimal(l)
    vs = list(words_up_to(l.alphabet, max_len))
    for k in range(1, max_len + 1):
        for u0, u1 in itertools.product(words_of_length(l.alphabet, k), repeat=2):
            if l.run(u0) == l.run(u1):
                continue
            for v0, v1 in itertools.product(vs, repeat=2):
                w0, w1 = v0 + u0, v1 + u1
                if not reachable_set(l, u0, w0, w1) & reachable_set(l, u1, w0, w1):
                    return CriticalTuple(l, u0, u1, w0, w1)
    return None


def _compose(m: tuple[int, ...], n: tuple[int, ...]) -> tuple[int, ...]:
    """Apply m, then n."""
    return tuple(n[q] for q in m)


def _idempotent_exponent(m: tuple[int, ...]) -> int:
    power, k = m, 1
    while _compose(power, power) != power:
        power = _compose(power, m)
        k += 1
    return k


def normalize_critical_tuple(t: CriticalTuple) -> CriticalTuple:
    """Equivalent critical tuple whose state sets have at most three elements.

    With idempotent powers x0 = (w0^a w1^b)^c w0^a and x1 = (w0^a w1^b)^c the
    generated submonoid is {1, h(x0), h(x1)}.
    """
    l = t.dfa
    a = _idempotent_exponent(_mapping(l, t.w0))
    b = _idempotent_exponent(_mapping(l, t.w1))
    base = t.w0 * a + t.w1 * b
    c = _idempotent_exponent(_mapping(l, base))
    x1 = base * c
    x0 = x1 + t.w0 * a
    normal = CriticalTuple(l, t.u0, t.u1, tuple(x0), tuple(x1))
    if len(normal.q0_set) > 3 or len(normal.q1_set) > 3:
        raise InternalConsistencyError("normalized critical tuple has a state set larger than three")
    return normal


def linear_witness_streams(w: NonWellBehavedWitness, j: int) -> list[Word]:
    """Streams for L, one per α ∈ {0,1}^j in lexicographic order: w(α) reversed.

    Popping the oldest symbols of two streams that first differ at position i
    leaves windows on opposite sides of L, so any variable-size algorithm
    needs 2^j distinct states for them.
    """
    return [reverse_word(w.word(alpha)) for alpha in itertools.product((0, 1), repeat=j)]


# --- alternations ---------------------------------------------------------------


@dataclass(frozen=True)
class AlternationReport:
    bound: int | float
    witness: Word | None = None
    prefix: Word | None = None
    cycle: Word | None = None

    @property
    def is_infinite(self) -> bool:
        return self.bound == INFINITE

    def to_dict(self) -> dict:
        return {
            "bound": "inf" if self.is_infinite else self.bound,
            "witness": None if self.witness is None else _words(self.witness),
            "prefix": None if self.prefix is None else _words(self.prefix),
            "cycle": None if self.cycle is None else _words(self.cycle),
        }


def _suffix_membership(b: Dfa, x: Sequence[str]) -> list[bool]:
    """Membership of ε, a_n, a_{n-1}a_n, ... in L, read on b (a DFA for L reversed)."""
    q = b.initial
    out = [q in b.final]
    for sym in reversed(b.alphabet.indices(x)):
        q = b.delta[q][sym]
        out.append(q in b.final)
    return out


def _alternations(b: Dfa, x: Sequence[str]) -> int:
    marks = _suffix_membership(b, x)
    return sum(1 for i in range(len(marks) - 1) if marks[i] != marks[i + 1])


def alt_count(l: Dfa, x: Sequence[str]) -> int:
    """Number of positions i where exactly one of a_i⋯a_n and a_{i+1}⋯a_n is in L."""
    return _alternations(reverse_determinize(l), x)


def max_alternations(l: Dfa) -> AlternationReport:
    """Supremum of alt_L over all words, via toggle edges of the reversed minimal DFA."""
    b = minimize(reverse_determinize(l))
    partition = sccs(b)

    def toggles(p: int, q: int) -> bool:
        return (p in b.final) != (q in b.final)

    for idx, comp in enumerate(partition.components):
        for p in sorted(comp):
            for sym, q in enumerate(b.delta[p]):
                if q in comp and toggles(p, q):
                    back = shortest_path(b, q, p, within=comp)
                    prefix = shortest_path(b, b.initial, p)
                    if back is None or prefix is None:
                        raise InternalConsistencyError("toggle cycle must close inside its SCC")
                    cycle = (b.alphabet[sym],) + back
                    report = AlternationReport(INFINITE, prefix=prefix, cycle=cycle)
                    pumped = reverse_word(prefix + cycle * 3)
                    if _alternations(b, pumped) < 3:
                        raise InternalConsistencyError("toggle cycle does not repeat alternations")
                    return report

    # no toggles inside SCCs: longest toggle path over the condensation, sinks first
    best = [0] * len(partition)
    choice: list[tuple[int, int, int] | None] = [None] * len(partition)
    for idx, comp in enumerate(partition.components):
        for p in sorted(comp):
            for sym, q in enumerate(b.delta[p]):
                j = partition.component_of[q]
                if j == idx:
                    continue
                value = int(toggles(p, q)) + best[j]
                if value > best[idx]:
                    best[idx] = value
                    choice[idx] = (p, sym, q)

    path: list[str] = []
    current = b.initial
    idx = partition.component_of[current]
    while choice[idx] is not None:
        p, sym, q = choice[idx]  # type: ignore[misc]
        inside = shortest_path(b, current, p, within=partition.components[idx])
        if inside is None:
            raise InternalConsistencyError("SCC must be strongly connected")
        path.extend(inside)
        path.append(b.alphabet[sym])
        current = q
        idx = partition.component_of[q]
    witness = reverse_word(path)
    bound = best[partition.component_of[b.initial]]
    if _alternations(b, witness) != bound:
        raise InternalConsistencyError("alternation witness does not replay to its bound")
    return AlternationReport(bound, witness=witness)


# --- simple language predicates ---------------------------------------------------


def suffix_testable_k(l: Dfa) -> StateDistance:
    """Least k such that L is k-suffix testable (max pair distance), or infinite."""
    require_minimal(l)
    worst = float(distance_matrix(l).max())
    return StateDistance(INFINITE if math.isinf(worst) else int(worst))


def is_length_language(l: Dfa) -> bool:
    """True iff for every n either Σ^n ⊆ L or L ∩ Σ^n = ∅."""
    return all((p in l.final) == (q in l.final) for p, q in _synchronized_pairs(l))


def is_left_ideal(l: Dfa) -> bool:
    """True iff Σ*L ⊆ L, checked as L ⊆ s⁻¹L for every symbol s."""
    return all(is_empty(combine("difference", l, left_quotient(l, (s,)))) for s in l.alphabet)


def is_right_ideal(l: Dfa) -> bool:
    """True iff LΣ* ⊆ L: no reachable final state has a non-final successor."""
    reach = reachable_order(l)
    return all(q in l.final for p in reach if p in l.final for q in l.delta[p])


def is_finite(l: Dfa) -> bool:
    trimmed = trim(l)
    if trimmed is None:
        return True
    graph = nx.DiGraph()
    graph.add_nodes_from(range(trimmed.size))
    graph.add_edges_from((p, q) for p, _, q in trimmed.edges())
    return nx.is_directed_acyclic_graph(graph)


# --- path summaries and distinguishing sets ----------------------------------------


@dataclass(frozen=True)
class PathSummary:
    """SCC entry states with symbol counts; the entering symbol counts toward the new SCC."""

    entries: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return sum(count for _, count in self.entries)

    def to_dict(self, b: Dfa) -> list:
        return [[b.states[q], count] for q, count in self.entries]


def path_summary(b: Dfa, start: int, w: Sequence[str]) -> PathSummary:
    partition = sccs(b)
    entries = [[start, 0]]
    q = start
    for sym in b.alphabet.indices(w):
        nq = b.delta[q][sym]
        if partition.component_of[nq] != partition.component_of[q]:
            entries.append([nq, 1])
        else:
            entries[-1][1] += 1
        q = nq
    return PathSummary(tuple((p, count) for p, count in entries))


def summary_finality(b: Dfa, summary: PathSummary) -> bool:
    """Finality at the end of any run with this summary; requires b well-behaved."""
    partition = sccs(b)
    entry, count = summary.entries[-1]
    steps = count - (1 if len(summary.entries) > 1 else 0)
    comp = partition.components[partition.component_of[entry]]
    frontier = {entry}
    for _ in range(steps):
        frontier = {q for p in frontier for q in b.delta[p] if q in comp}
    finality = {q in b.final for q in frontier}
    if len(finality) != 1:
        raise PreconditionError("summary finality is only determined in well-behaved automata")
    return finality.pop()


def count_path_summaries(b: Dfa, n: int, budget: int | None = None) -> int:
    """Number of distinct path summaries over all runs of length n from any state."""
    cap = state.resolve_budget(budget, state.BUDGET_WORDS)
    total = b.size * len(b.alphabet) ** n
    if total > cap:
        raise BudgetExceededError(f"enumeration of {total} runs", cap)
    return len({path_summary(b, q, w) for q in range(b.size) for w in words_of_length(b.alphabet, n)})


def distinguishing_set(l: Dfa) -> list[Word]:
    """At most |Q|-1 words separating every pair of distinct states of a minimal DFA."""
    require_minimal(l)
    chosen: list[Word] = []

    def signature(q: int) -> tuple[bool, ...]:
        return tuple(l.run(z, start=q) in l.final for z in chosen)

    while True:
        groups: dict[tuple[bool, ...], list[int]] = {}
        for q in range(l.size):
            groups.setdefault(signature(q), []).append(q)
        unsplit = next((g for g in groups.values() if len(g) > 1), None)
        if unsplit is None:
            return chosen
        p, q = unsplit[0], unsplit[1]
        z = separating_word(l.with_initial(p), l.with_initial(q))
        if z is None:
            raise InternalConsistencyError("distinct states of a minimal DFA must be separable")
        chosen.append(z)


# --- classification and decision problems -------------------------------------------


@dataclass
class Classification:
    space_class: SpaceClass
    minimal: Dfa
    witness: NonWellBehavedWitness | None = None
    critical: CriticalTuple | None = None
    constant_witness: ConstantWitness | None = None

    def to_dict(self) -> dict:
        result = self.space_class.to_dict()
        result["minimal_states"] = self.minimal.size
        if self.witness is not None:
            result["witness"] = self.witness.to_dict()
        if self.critical is not None:
            result["critical_tuple"] = self.critical.to_dict()
        if self.constant_witness is not None:
            result["constant_witness"] = self.constant_witness.to_dict()
        return result


def classify_dfa(a: Dfa) -> Classification:
    with tracer.start_as_current_span("classify.classify_dfa") as span:
        l = minimize(a)
        span.set_attribute("minimal_states", l.size)
        if is_trivial(l):
            space = SpaceClass(FixedClass.CONSTANT, VariableClass.TRIVIAL_CONSTANT)
            return Classification(space, l)

        constant = is_constant_fixed(l)
        result = is_well_behaved(reverse_determinize(l))
        if not result.well_behaved:
            if constant:
                raise InternalConsistencyError("a constant-space language cannot be linear")
            assert result.witness is not None
            space = SpaceClass(FixedClass.LINEAR, VariableClass.LINEAR)
            return Classification(
                space,
                l,
                witness=result.witness,
                critical=critical_from_witness(l, result.witness),
                constant_witness=constant_fixed_witness(l),
            )
        fixed = FixedClass.CONSTANT if constant else FixedClass.LOGARITHMIC
        space = SpaceClass(fixed, VariableClass.LOGARITHMIC)
        logger.info(f"Classified {l.size}-state language as {fixed.value}/logarithmic")
        return Classification(
            space, l, constant_witness=None if constant else constant_fixed_witness(l)
        )


def classify_nfa(a: Nfa, budget: int | None = None) -> Classification:
    """Classify through determinization, cross-checking the reversal of the NFA itself."""
    with tracer.start_as_current_span("classify.classify_nfa"):
        classification = classify_dfa(determinize(a, budget=budget))
        direct = is_well_behaved(reverse_determinize(a, budget=budget)).well_behaved
        linear = classification.space_class.variable is VariableClass.LINEAR
        if direct == linear:
            raise InternalConsistencyError("NFA reversal and DFA classification disagree")
        return classification


@dataclass(frozen=True)
class DecisionResult:
    problem: Problem
    answer: bool
    witness: CriticalTuple | ConstantWitness | None = None

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "answer": self.answer,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def _decide_constant(problem: Problem, d: Dfa) -> DecisionResult:
    l = minimize(d)
    if is_constant_fixed(l):
        return DecisionResult(problem, True)
    return DecisionResult(problem, False, constant_fixed_witness(l))


def _decide_logarithmic(problem: Problem, d: Dfa) -> DecisionResult:
    if is_well_behaved(reverse_determinize(d)).well_behaved:
        return DecisionResult(problem, True)
    l = minimize(d)
    result = is_well_behaved(reverse_determinize(l))
    if result.well_behaved or result.witness is None:
        raise InternalConsistencyError("well-behavedness differs between a DFA and its minimization")
    return DecisionResult(problem, False, critical_from_witness(l, result.witness))


def decide(problem: Problem, a: Dfa | Nfa, budget: int | None = None) -> DecisionResult:
    """Is L(a) in the constant (…1) or logarithmic (…log) fixed-size class?"""
    if problem not in PROBLEMS:
        raise PreconditionError(f"unknown problem {problem!r}; expected one of {', '.join(PROBLEMS)}")
    with tracer.start_as_current_span("classify.decide") as span:
        span.set_attribute("problem", problem)
        if problem.startswith("dfa"):
            if not isinstance(a, Dfa):
                raise PreconditionError(f"{problem} expects a DFA")
            d = a
        else:
            d = determinize(as_nfa(a), budget=budget)
        if problem.endswith("1"):
            return _decide_constant(problem, d)
        return _decide_logarithmic(problem, d)
