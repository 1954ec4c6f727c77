"""Growth analysis and Boolean-combination certificates.

Logarithmic-space languages are Boolean combinations of regular left ideals
and length languages; constant-space languages are built from finite,
length and suffix-testable pieces. The functions here construct such
combinations and wrap them in certificates that re-check every leaf tag and
the equivalence with the target language when they are created.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum

import networkx as nx

from . import state
from .automata import (
    bounded_length_dfa,
    combine,
    complement,
    determinize,
    equivalent,
    intersect_all,
    is_empty,
    length_dfa,
    minimize,
    reverse_determinize,
    right_ideal_closure,
    right_quotient,
    shortest_path,
    suffix_dfa,
    trim,
    union_all,
)
from .classify import (
    is_constant_fixed,
    is_finite,
    is_left_ideal,
    is_length_language,
    is_right_ideal,
    is_well_behaved,
    max_alternations,
    suffix_testable_k,
)
from .errors import BudgetExceededError, InternalConsistencyError, PreconditionError
from .exactspace import psi_mealy
from .helpers import words_of_length
from .models import Alphabet, Dfa, MealyMachine, Nfa, PartialDfa, Word
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer(__name__)


# --- growth -------------------------------------------------------------------------


class GrowthKind(str, Enum):
    POLYNOMIAL = "polynomial"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class GrowthClass:
    kind: GrowthKind
    cycle_words: tuple[tuple[str, Word], ...] = ()
    witness_state: str | None = None
    cycles: tuple[Word, Word] | None = None
    degree_hint: int | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "cycle_words": [[q, list(w)] for q, w in self.cycle_words],
            "witness_state": self.witness_state,
            "cycles": None if self.cycles is None else [list(c) for c in self.cycles],
            "degree_hint": self.degree_hint,
        }


def _partial_graph(t: PartialDfa) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(t.size))
    graph.add_edges_from((p, q) for p, _, q in t.edges())
    return graph


def _run_from(t: PartialDfa, start: int, word: Sequence[str]) -> int | None:
    q: int | None = start
    for sym in t.alphabet.indices(word):
        if q is None:
            return None
        q = t.delta[q][sym]
    return q


def _cycle_from(t: PartialDfa, comp: set[int], start: int, first: int) -> Word:
    """Cycle word starting at `start` with symbol `first`, then shortest return inside comp."""
    target = t.delta[start][first]
    assert target is not None
    parent: dict[int, tuple[int, int] | None] = {target: None}
    frontier = [target]
    while start not in parent:
        nxt = []
        for p in frontier:
            for sym, q in enumerate(t.delta[p]):
                if q is not None and q in comp and q not in parent:
                    parent[q] = (p, sym)
                    nxt.append(q)
        frontier = nxt
    path: list[int] = []
    node = start
    while parent[node] is not None:
        prev, sym = parent[node]  # type: ignore[misc]
        path.append(sym)
        node = prev
    return t.alphabet.word([first, *reversed(path)])


def growth_class(l: Dfa) -> GrowthClass:
    """Polynomial iff every SCC of the trimmed DFA is a single letter cycle."""
    t = trim(minimize(l))
    if t is None:
        return GrowthClass(GrowthKind.POLYNOMIAL, degree_hint=0)
    graph = _partial_graph(t)
    components = [set(c) for c in nx.strongly_connected_components(graph)]
    cycle_words = []
    nontrivial = set()
    for idx, comp in enumerate(components):
        for p in sorted(comp):
            inside = [sym for sym, q in enumerate(t.delta[p]) if q is not None and q in comp]
            if len(inside) >= 2:
                cycles = (_cycle_from(t, comp, p, inside[0]), _cycle_from(t, comp, p, inside[1]))
                for cycle in cycles:
                    if _run_from(t, p, cycle) != p:
                        raise InternalConsistencyError("growth witness cycle does not return")
                logger.debug(f"Exponential growth witnessed at state {t.states[p]}")
                return GrowthClass(GrowthKind.EXPONENTIAL, witness_state=t.states[p], cycles=cycles)
        if len(comp) > 1 or any(t.delta[p][sym] == p for p in comp for sym in range(len(t.alphabet))):
            entry = min(comp)
            first = next(sym for sym, q in enumerate(t.delta[entry]) if q is not None and q in comp)
            cycle_words.append((t.states[entry], _cycle_from(t, comp, entry, first)))
            nontrivial.add(idx)

    # degree hint: most cycles on one path through the condensation
    dag = nx.condensation(graph, scc=[frozenset(c) for c in components])
    best: dict[int, int] = {}
    for node in reversed(list(nx.topological_sort(dag))):
        own = 1 if node in nontrivial else 0
        best[node] = own + max((best[s] for s in dag.successors(node)), default=0)
    degree = max(best.values(), default=0)
    return GrowthClass(GrowthKind.POLYNOMIAL, cycle_words=tuple(cycle_words), degree_hint=degree)


def growth_count(l: Dfa, n: int) -> int:
    """g(n) = |{x ∈ L : |x| <= n}| with exact integer arithmetic."""
    counts = [0] * l.size
    counts[l.initial] = 1
    total = sum(counts[q] for q in l.final)
    for _ in range(n):
        nxt = [0] * l.size
        for p, c in enumerate(counts):
            if c:
                for q in l.delta[p]:
                    nxt[q] += c
        counts = nxt
        total += sum(counts[q] for q in l.final)
    return total


# --- linear cycle automata ---------------------------------------------------------


class LinearCycleAutomaton:
    """Partial DFA whose SCCs C1..Ck are letter cycles (or single states) in a chain.

    Checked on construction: at most one symbol between any two states, every
    SCC is a cycle, exactly one transition from each C_i to C_{i+1} and none
    elsewhere, the initial state in C1, a single final state in Ck.
    """

    def __init__(self, partial: PartialDfa):
        self.partial = partial
        graph = _partial_graph(partial)
        comps = [frozenset(c) for c in nx.strongly_connected_components(graph)]
        dag = nx.condensation(graph, scc=comps)
        order = list(nx.topological_sort(dag))
        self.components: list[frozenset[int]] = [comps[i] for i in order]
        self._validate()

    def _validate(self) -> None:
        t = self.partial
        position = {q: i for i, comp in enumerate(self.components) for q in comp}
        between: dict[int, int] = {}
        for p in range(t.size):
            targets = [q for q in t.delta[p] if q is not None]
            if len(targets) != len(set(targets)):
                raise ValueError(f"state {t.states[p]} reaches a state by two symbols")
            inside = [q for q in targets if position[q] == position[p]]
            if len(inside) > 1:
                raise ValueError(f"SCC of state {t.states[p]} is not a cycle")
            for q in targets:
                i, j = position[p], position[q]
                if i == j:
                    continue
                if j != i + 1:
                    raise ValueError("SCCs are not linearly ordered")
                between[i] = between.get(i, 0) + 1
        if any(between.get(i, 0) != 1 for i in range(len(self.components) - 1)):
            raise ValueError("neighboring SCCs need exactly one connecting transition")
        if t.initial not in self.components[0]:
            raise ValueError("initial state must lie in the first SCC")
        if len(t.final) != 1 or next(iter(t.final)) not in self.components[-1]:
            raise ValueError("exactly one final state, in the last SCC")

    @property
    def alphabet(self) -> Alphabet:
        return self.partial.alphabet

    def cycle_order(self, i: int, entry: int) -> tuple[list[int], list[int]]:
        """States and symbols around C_i starting at entry; empty symbols for a trivial SCC."""
        t = self.partial
        comp = self.components[i]
        states, symbols = [entry], []
        q = entry
        while True:
            step = next(((sym, r) for sym, r in enumerate(t.delta[q]) if r is not None and r in comp), None)
            if step is None:
                return states, symbols
            sym, q = step
            symbols.append(sym)
            if q == entry:
                return states, symbols
            states.append(q)

    def cycle_lengths(self) -> list[int]:
        return [len(self.cycle_order(i, min(c))[1]) for i, c in enumerate(self.components)]

    def chain(self) -> list[tuple[int, int, int | None]]:
        """(entry, exit, exit symbol) per SCC; the last exit is the final state."""
        t = self.partial
        out = []
        entry = t.initial
        for i, comp in enumerate(self.components):
            if i + 1 == len(self.components):
                out.append((entry, next(iter(t.final)), None))
                break
            nxt = self.components[i + 1]
            exit_, sym, target = next(
                (p, sym, q) for p in comp for sym, q in enumerate(t.delta[p]) if q is not None and q in nxt
            )
            out.append((entry, exit_, sym))
            entry = target
        return out

    def to_dfa(self) -> Dfa:
        return self.partial.to_dfa()


def _partial_from_edges(
    alphabet: Alphabet,
    names: Sequence[str],
    edges: Sequence[tuple[int, int, int]],
    initial: int,
    final: int,
) -> PartialDfa:
    rows: list[list[int | None]] = [[None] * len(alphabet) for _ in names]
    for p, sym, q in edges:
        rows[p][sym] = q
    return PartialDfa(alphabet, tuple(names), initial, tuple(tuple(r) for r in rows), frozenset({final}))


def _check_union(target: Dfa, parts: Sequence[LinearCycleAutomaton], what: str) -> None:
    union = union_all(target.alphabet, [c.to_dfa() for c in parts])
    if not equivalent(minimize(union), minimize(target)):
        raise InternalConsistencyError(f"{what}: union of components differs from the input")


def linear_cycle_decomposition(l: Dfa, budget: int | None = None) -> list[LinearCycleAutomaton]:
    """One linear cycle automaton per path description of the trimmed minimal DFA."""
    cap = state.resolve_budget(budget, state.BUDGET_PATHS)
    if growth_class(l).kind is not GrowthKind.POLYNOMIAL:
        raise PreconditionError("linear cycle decomposition needs polynomial growth")
    t = trim(minimize(l))
    if t is None:
        return []
    graph = _partial_graph(t)
    comp_of = {}
    comps = [frozenset(c) for c in nx.strongly_connected_components(graph)]
    for i, comp in enumerate(comps):
        for q in comp:
            comp_of[q] = i

    descriptions: list[list[tuple[int, int, int | None]]] = []

    def extend(entry: int, prefix: list[tuple[int, int, int | None]]) -> None:
        comp = comps[comp_of[entry]]
        for exit_ in sorted(comp):
            if exit_ in t.final:
                if len(descriptions) >= cap:
                    raise BudgetExceededError("path descriptions", cap)
                descriptions.append(prefix + [(entry, exit_, None)])
            for sym, q in enumerate(t.delta[exit_]):
                if q is not None and comp_of[q] != comp_of[exit_]:
                    extend(q, prefix + [(entry, exit_, sym)])

    extend(t.initial, [])

    result = []
    for description in descriptions:
        used = sorted(q for entry, _, _ in description for q in comps[comp_of[entry]])
        index = {q: i for i, q in enumerate(used)}
        edges = [
            (index[p], sym, index[q])
            for entry, _, _ in description
            for p in comps[comp_of[entry]]
            for sym, q in enumerate(t.delta[p])
            if q is not None and comp_of[q] == comp_of[p]
        ]
        for (_, exit_, sym), (nxt_entry, _, _) in zip(description, description[1:], strict=False):
            edges.append((index[exit_], sym, index[nxt_entry]))  # type: ignore[arg-type]
        partial = _partial_from_edges(
            t.alphabet,
            [t.states[q] for q in used],
            edges,
            index[t.initial],
            index[description[-1][1]],
        )
        result.append(LinearCycleAutomaton(partial))
    _check_union(l, result, "linear cycle decomposition")
    logger.info(f"Linear cycle decomposition: {len(result)} components")
    return result


def normalize_cycle_lengths(c: LinearCycleAutomaton, budget: int | None = None) -> list[LinearCycleAutomaton]:
    """Variants in which every non-trivial cycle has length m = lcm of the cycle lengths.

    A cycle of length m_i entered at p is replaced by a path of d·m_i states
    followed by the cycle unrolled to length m, for each 0 <= d < m/m_i.
    """
    cap = state.resolve_budget(budget, state.BUDGET_VARIANTS)
    chain = c.chain()
    orders = [c.cycle_order(i, entry) for i, (entry, _, _) in enumerate(chain)]
    lengths = [len(symbols) for _, symbols in orders]
    nontrivial = [m_i for m_i in lengths if m_i]
    if not nontrivial:
        return [c]
    m = math.lcm(*nontrivial)
    if all(m_i == m for m_i in nontrivial):
        return [c]
    ranges = [range(m // m_i) if m_i else range(1) for m_i in lengths]
    total = math.prod(len(r) for r in ranges)
    if total > cap:
        raise BudgetExceededError(f"{total} normalization variants", cap)

    variants = []
    for choice in itertools.product(*ranges):
        names: list[str] = []
        edges: list[tuple[int, int, int]] = []
        previous_exit: tuple[int, int] | None = None
        final = -1
        for (entry, exit_, exit_sym), (cycle_states, symbols), d in zip(chain, orders, choice, strict=True):
            start = len(names)
            m_i = len(symbols)
            if m_i == 0:
                names.append(f"v{start}")
                block_exit = start
            else:
                path_len = d * m_i
                for t_ in range(path_len + m):
                    names.append(f"v{start + t_}")
                    target = start + t_ + 1 if t_ + 1 < path_len + m else start + path_len
                    edges.append((start + t_, symbols[t_ % m_i], target))
                block_exit = start + path_len + cycle_states.index(exit_)
            if previous_exit is not None:
                edges.append((previous_exit[0], previous_exit[1], start))
            if exit_sym is not None:
                previous_exit = (block_exit, exit_sym)
            else:
                final = block_exit
        partial = _partial_from_edges(c.alphabet, names, edges, 0, final)
        variants.append(LinearCycleAutomaton(partial))
    _check_union(c.to_dfa(), variants, "cycle-length normalization")
    logger.debug(f"Normalized cycles to length {m}: {len(variants)} variants")
    return variants


# --- certificates -------------------------------------------------------------------


class LeafTag(str, Enum):
    LEFT_IDEAL = "left-ideal"
    RIGHT_IDEAL = "right-ideal"
    LENGTH_LANGUAGE = "length-language"
    SUFFIX_TESTABLE = "suffix-testable"
    FINITE = "finite"


@dataclass(frozen=True)
class Leaf:
    dfa: Dfa
    tag: LeafTag
    k: int | None = None

    def verify(self) -> None:
        checks = {
            LeafTag.LEFT_IDEAL: lambda: is_left_ideal(self.dfa),
            LeafTag.RIGHT_IDEAL: lambda: is_right_ideal(self.dfa),
            LeafTag.LENGTH_LANGUAGE: lambda: is_length_language(self.dfa),
            LeafTag.FINITE: lambda: is_finite(self.dfa),
            LeafTag.SUFFIX_TESTABLE: lambda: (
                self.k is not None and suffix_testable_k(minimize(self.dfa)).value <= self.k
            ),
        }
        if not checks[self.tag]():
            raise InternalConsistencyError(f"leaf tagged {self.tag.value} fails its check")

    def to_dict(self) -> dict:
        data = {"op": "leaf", "tag": self.tag.value, "automaton": self.dfa.to_dict()}
        if self.k is not None:
            data["k"] = self.k
        return data


@dataclass(frozen=True)
class UnionNode:
    parts: tuple[Formula, ...]

    def to_dict(self) -> dict:
        return {"op": "union", "parts": [p.to_dict() for p in self.parts]}


@dataclass(frozen=True)
class IntersectionNode:
    parts: tuple[Formula, ...]

    def to_dict(self) -> dict:
        return {"op": "intersection", "parts": [p.to_dict() for p in self.parts]}


@dataclass(frozen=True)
class ComplementNode:
    part: Formula

    def to_dict(self) -> dict:
        return {"op": "complement", "part": self.part.to_dict()}


Formula = Leaf | UnionNode | IntersectionNode | ComplementNode


def leaves(formula: Formula) -> Iterator[Leaf]:
    if isinstance(formula, Leaf):
        yield formula
    elif isinstance(formula, ComplementNode):
        yield from leaves(formula.part)
    else:
        for part in formula.parts:
            yield from leaves(part)


def evaluate(formula: Formula, alphabet: Alphabet) -> Dfa:
    """Minimal DFA of the language the formula denotes."""
    if isinstance(formula, Leaf):
        return minimize(formula.dfa)
    if isinstance(formula, ComplementNode):
        return minimize(complement(evaluate(formula.part, alphabet)))
    parts = [evaluate(p, alphabet) for p in formula.parts]
    if isinstance(formula, UnionNode):
        return minimize(union_all(alphabet, parts))
    return minimize(intersect_all(alphabet, parts))


class DecompositionCertificate:
    """A formula over tagged leaves, checked against its target when created."""

    def __init__(self, target: Dfa, formula: Formula):
        self.target = target
        self.formula = formula
        for leaf in leaves(formula):
            if leaf.dfa.alphabet != target.alphabet:
                raise InternalConsistencyError("certificate leaf over a different alphabet")
            leaf.verify()
        if not equivalent(evaluate(formula, target.alphabet), minimize(target)):
            raise InternalConsistencyError("certificate formula is not equivalent to its target")

    @property
    def leaf_count(self) -> int:
        return sum(1 for _ in leaves(self.formula))

    def evaluate(self) -> Dfa:
        return evaluate(self.formula, self.target.alphabet)

    def to_dict(self) -> dict:
        return {
            "target": self.target.to_dict(),
            "leaves": self.leaf_count,
            "formula": self.formula.to_dict(),
        }


def lca_to_boolean_combination(c: LinearCycleAutomaton) -> DecompositionCertificate:
    """L = LΣ* ∩ ¬(Σ* ∖ Pref(L)) ∩ Σ^p(Σ^q)* for uniform cycle length q."""
    lengths = {m_i for m_i in c.cycle_lengths() if m_i}
    if len(lengths) > 1:
        raise PreconditionError(f"cycle lengths {sorted(lengths)} are not uniform")
    target = c.to_dfa()
    alphabet = c.alphabet
    offset = len(_shortest_accepted(target))
    period = lengths.pop() if lengths else None
    prefixes = PartialDfa(
        alphabet, c.partial.states, c.partial.initial, c.partial.delta, frozenset(range(c.partial.size))
    ).to_dfa()
    formula = IntersectionNode(
        (
            Leaf(right_ideal_closure(target), LeafTag.RIGHT_IDEAL),
            ComplementNode(Leaf(minimize(complement(prefixes)), LeafTag.RIGHT_IDEAL)),
            Leaf(length_dfa(alphabet, offset, period), LeafTag.LENGTH_LANGUAGE),
        )
    )
    return DecompositionCertificate(target, formula)


def _shortest_accepted(a: Dfa) -> Word:
    best: Word | None = None
    for f in sorted(a.final):
        w = shortest_path(a, a.initial, f)
        if w is not None and (best is None or len(w) < len(best)):
            best = w
    if best is None:
        raise PreconditionError("language is empty")
    return best


# --- Mealy images and preimages -------------------------------------------------------


def mealy_image_nfa(m: MealyMachine, d: Dfa) -> Nfa:
    """NFA over the output alphabet for {M(x) : x ∈ L(d)}."""
    m.input_alphabet.require_same(d.alphabet)
    start = (d.initial, m.initial)
    index = {start: 0}
    order = [start]
    transitions = set()
    i = 0
    while i < len(order):
        q, s = order[i]
        for sym in range(len(d.alphabet)):
            ns, out = m.delta[s][sym]
            target = (d.delta[q][sym], ns)
            if target not in index:
                index[target] = len(order)
                order.append(target)
            transitions.add((i, out, index[target]))
        i += 1
    return Nfa(
        alphabet=m.output_alphabet,
        states=tuple(f"{d.states[q]}/{m.states[s]}" for q, s in order),
        initial=frozenset({0}),
        transitions=frozenset(transitions),
        final=frozenset(j for j, (q, _) in enumerate(order) if q in d.final),
    )


def mealy_preimage(m: MealyMachine, d: Dfa) -> Dfa:
    """DFA over the input alphabet for {x : M(x) ∈ L(d)}."""
    m.output_alphabet.require_same(d.alphabet)
    start = (m.initial, d.initial)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        s, q = order[i]
        row = []
        for sym in range(len(m.input_alphabet)):
            ns, out = m.delta[s][sym]
            target = (ns, d.delta[q][out])
            if target not in index:
                index[target] = len(order)
                order.append(target)
            row.append(index[target])
        delta.append(tuple(row))
        i += 1
    return Dfa(
        alphabet=m.input_alphabet,
        states=tuple(f"{m.states[s]}/{d.states[q]}" for s, q in order),
        initial=0,
        delta=tuple(delta),
        final=frozenset(j for j, (_, q) in enumerate(order) if q in d.final),
    )


# --- decompositions ----------------------------------------------------------------


def _pull_back(formula: Formula, m: MealyMachine) -> Formula:
    """Preimage under ψ of the reversal of a formula over the class alphabet."""
    if isinstance(formula, Leaf):
        pulled = minimize(reverse_determinize(mealy_preimage(m, formula.dfa)))
        tag = LeafTag.LEFT_IDEAL if formula.tag is LeafTag.RIGHT_IDEAL else formula.tag
        return Leaf(pulled, tag, formula.k)
    if isinstance(formula, ComplementNode):
        return ComplementNode(_pull_back(formula.part, m))
    parts = tuple(_pull_back(p, m) for p in formula.parts)
    return UnionNode(parts) if isinstance(formula, UnionNode) else IntersectionNode(parts)


def bounded_formula(k: Dfa) -> Formula:
    """Right ideals and length languages for a polynomial-growth language."""
    parts: list[Formula] = []
    for component in linear_cycle_decomposition(k):
        for variant in normalize_cycle_lengths(component):
            parts.append(lca_to_boolean_combination(variant).formula)
    return UnionNode(tuple(parts))


def log_class_decomposition(l: Dfa, shortcut: bool = False) -> DecompositionCertificate:
    """Left ideals and length languages whose Boolean combination is L.

    The suffix-class image of L, read backwards, has polynomial growth; it is
    decomposed into right ideals and length languages and pulled back to Σ.
    A length language is its own one-leaf certificate; with `shortcut` a
    left ideal is too.
    """
    with tracer.start_as_current_span("decompose.log_class_decomposition"):
        l = minimize(l)
        if not is_well_behaved(reverse_determinize(l)).well_behaved:
            raise PreconditionError("language is in the linear class")
        if is_length_language(l):
            return DecompositionCertificate(l, Leaf(l, LeafTag.LENGTH_LANGUAGE))
        if shortcut and is_left_ideal(l):
            return DecompositionCertificate(l, Leaf(l, LeafTag.LEFT_IDEAL))

        m = psi_mealy(l)
        image = minimize(determinize(mealy_image_nfa(m, reverse_determinize(l))))
        logger.info(f"Reversed suffix-class image has {image.size} states")
        formula = _pull_back(bounded_formula(image), m)
        certificate = DecompositionCertificate(l, formula)
        logger.info(f"Logarithmic-class certificate with {certificate.leaf_count} leaves")
        return certificate


def _counter_dfa(b: Dfa, i: int) -> Dfa:
    """Reads x reversed on b, counting finality toggles up to i; final once i are seen."""
    k = len(b.alphabet)
    names = tuple(f"{b.states[q]}#{c}" for q in range(b.size) for c in range(i + 1))

    def index(q: int, c: int) -> int:
        return q * (i + 1) + c

    delta = []
    for q in range(b.size):
        for c in range(i + 1):
            row = []
            for sym in range(k):
                nq = b.delta[q][sym]
                toggled = (q in b.final) != (nq in b.final)
                row.append(index(nq, min(i, c + int(toggled))))
            delta.append(tuple(row))
    final = frozenset(index(q, i) for q in range(b.size))
    return Dfa(b.alphabet, names, index(b.initial, 0), tuple(delta), final)


def alternation_set(l: Dfa, i: int) -> Dfa:
    """Minimal DFA for P_i = {x : alt_L(x) >= i}, a left ideal."""
    b = minimize(reverse_determinize(l))
    return minimize(reverse_determinize(_counter_dfa(b, i)))


def alternation_decomposition(l: Dfa) -> DecompositionCertificate:
    """L as a union of P_i ∖ P_{i+1} over the alternation counts of matching parity."""
    with tracer.start_as_current_span("decompose.alternation_decomposition"):
        l = minimize(l)
        report = max_alternations(l)
        if report.is_infinite:
            raise PreconditionError("alternations are unbounded")
        k = int(report.bound)
        sets = {i: alternation_set(l, i) for i in range(1, k + 2)}
        empty_word_in = l.initial in l.final
        parts: list[Formula] = []
        for i in range(k + 1):
            if (i % 2 == 1) == empty_word_in:
                continue
            if i == 0:
                parts.append(ComplementNode(Leaf(sets[1], LeafTag.LEFT_IDEAL)))
            elif i + 1 <= k:
                parts.append(
                    IntersectionNode(
                        (
                            Leaf(sets[i], LeafTag.LEFT_IDEAL),
                            ComplementNode(Leaf(sets[i + 1], LeafTag.LEFT_IDEAL)),
                        )
                    )
                )
            else:
                parts.append(Leaf(sets[i], LeafTag.LEFT_IDEAL))
        if len(parts) == 1:
            formula: Formula = parts[0]
        else:
            formula = UnionNode(tuple(parts))
        logger.info(f"Alternation decomposition with bound {k}: {len(parts)} terms")
        return DecompositionCertificate(l, formula)


def _shifted(q: Dfa, k: int) -> Dfa:
    """Q·Σ^k for a length language Q: skip k symbols, then track Q's length automaton."""
    alphabet = q.alphabet
    n = len(alphabet)
    chain = [f"skip{i}" for i in range(k)]
    names = tuple(chain) + tuple(f"q:{s}" for s in q.states)
    delta = [tuple([i + 1 if i + 1 < k else k + q.initial] * n) for i in range(k)]
    delta += [tuple([k + q.delta[p][0]] * n) for p in range(q.size)]
    return Dfa(alphabet, names, 0 if k else q.initial, tuple(delta), frozenset(k + p for p in q.final))


def constant_decomposition(l: Dfa) -> DecompositionCertificate:
    """(L ∩ Σ^{<=k-1}) ∪ ⋃_z ((Lz⁻¹)Σ^k ∩ Σ*z) for the least suitable k."""
    with tracer.start_as_current_span("decompose.constant_decomposition"):
        l = minimize(l)
        if not is_constant_fixed(l):
            raise PreconditionError("language is not in the constant fixed-size class")
        for k in range(l.size + 1):
            if all(is_length_language(right_quotient(l, z)) for z in words_of_length(l.alphabet, k)):
                break
        else:
            raise InternalConsistencyError("no suffix length makes all right quotients length languages")

        if k == 0:
            return DecompositionCertificate(l, Leaf(l, LeafTag.LENGTH_LANGUAGE))
        parts: list[Formula] = [
            Leaf(minimize(combine("intersection", l, bounded_length_dfa(l.alphabet, k - 1))), LeafTag.FINITE)
        ]
        for z in words_of_length(l.alphabet, k):
            quotient = minimize(right_quotient(l, z))
            if is_empty(quotient):
                continue
            parts.append(
                IntersectionNode(
                    (
                        Leaf(minimize(_shifted(quotient, k)), LeafTag.LENGTH_LANGUAGE),
                        Leaf(suffix_dfa(l.alphabet, z), LeafTag.SUFFIX_TESTABLE, k),
                    )
                )
            )
        logger.info(f"Constant-class decomposition with suffix length {k}: {len(parts)} parts")
        return DecompositionCertificate(l, UnionNode(tuple(parts)))
