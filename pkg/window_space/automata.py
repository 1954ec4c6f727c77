"""Finite-automata constructions: determinization, reversal, minimization,
Boolean combinations, SCC analysis and state distances."""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from typing import Literal

import networkx as nx
import numpy as np

from . import state
from .errors import BudgetExceededError, PreconditionError
from .models import (
    INFINITE,
    Alphabet,
    Dfa,
    Nfa,
    PartialDfa,
    SccPartition,
    StateDistance,
    Word,
)

logger = logging.getLogger(__name__)

BooleanOp = Literal["union", "intersection", "difference", "complement"]

# Pair-search parent pointers: pair -> (previous pair, symbol for p, symbol for q)
PairParents = dict[tuple[int, int], tuple[tuple[int, int], int, int] | None]


def as_nfa(a: Nfa | Dfa) -> Nfa:
    return a.to_nfa() if isinstance(a, Dfa) else a


def state_index(a: Dfa | Nfa | PartialDfa, q: int | str) -> int:
    """Resolve a state given by index or by name."""
    if isinstance(q, int):
        if not 0 <= q < len(a.states):
            raise ValueError(f"state index {q} out of range")
        return q
    try:
        return a.states.index(q)
    except ValueError:
        raise ValueError(f"unknown state {q!r}") from None


# --- basic automata -------------------------------------------------------


def empty_dfa(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet, ("q0",), 0, ((0,) * len(alphabet),), frozenset())


def universal_dfa(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet, ("q0",), 0, ((0,) * len(alphabet),), frozenset({0}))


def length_dfa(alphabet: Alphabet, offset: int, period: int | None) -> Dfa:
    """DFA for Σ^offset (Σ^period)*, or exactly Σ^offset when period is None."""
    k = len(alphabet)
    if period is None:
        states = tuple(f"l{i}" for i in range(offset + 1)) + ("sink",)
        sink = offset + 1
        delta = tuple((i + 1,) * k for i in range(offset + 1)) + ((sink,) * k,)
        return Dfa(alphabet, states, 0, delta, frozenset({offset}))
    if period < 1:
        raise ValueError("period must be >= 1")
    total = offset + period
    delta = tuple(((i + 1) if i + 1 < total else offset,) * k for i in range(total))
    states = tuple(f"l{i}" for i in range(total))
    return Dfa(alphabet, states, 0, delta, frozenset({offset}))


def bounded_length_dfa(alphabet: Alphabet, max_len: int) -> Dfa:
    """DFA for Σ^{<=max_len}; max_len = -1 gives the empty language."""
    if max_len < 0:
        return empty_dfa(alphabet)
    k = len(alphabet)
    states = tuple(f"l{i}" for i in range(max_len + 2))
    delta = tuple((min(i + 1, max_len + 1),) * k for i in range(max_len + 2))
    return Dfa(alphabet, states, 0, delta, frozenset(range(max_len + 1)))


def suffix_dfa(alphabet: Alphabet, z: Sequence[str]) -> Dfa:
    """Minimal DFA for Σ*z."""
    m = len(z)
    transitions = {(str(i), z[i], str(i + 1)) for i in range(m)}
    transitions |= {("0", a, "0") for a in alphabet}
    nfa = Nfa.from_names(alphabet, [str(i) for i in range(m + 1)], ["0"], transitions, [str(m)])
    return minimize(determinize(nfa))


# --- subset construction and reversal --------------------------------------


def determinize(a: Nfa | Dfa, budget: int | None = None) -> Dfa:
    """Reachable subset automaton, states numbered in breadth-first discovery order."""
    nfa = as_nfa(a)
    cap = state.resolve_budget(budget, state.BUDGET_STATES)
    k = len(nfa.alphabet)

    start = nfa.initial
    index: dict[frozenset[int], int] = {start: 0}
    order = [start]
    delta: list[tuple[int, ...]] = []
    queue = deque([start])
    while queue:
        current = queue.popleft()
        row = []
        for sym in range(k):
            target = nfa.step_set(current, sym)
            if target not in index:
                if len(index) >= cap:
                    raise BudgetExceededError("subset construction", cap)
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        delta.append(tuple(row))

    names = tuple(
        "{" + ",".join(nfa.states[q] for q in sorted(subset)) + "}" for subset in order
    )
    final = frozenset(i for i, subset in enumerate(order) if subset & nfa.final)
    logger.debug(f"Determinized {nfa.size}-state NFA into {len(order)} states")
    return Dfa(nfa.alphabet, names, 0, tuple(delta), final)


def reverse(a: Nfa | Dfa) -> Nfa:
    """Reverse every transition and swap initial with final states."""
    nfa = as_nfa(a)
    return Nfa(
        alphabet=nfa.alphabet,
        states=nfa.states,
        initial=nfa.final,
        transitions=frozenset((q, sym, p) for p, sym, q in nfa.transitions),
        final=nfa.initial,
    )


def reverse_determinize(a: Nfa | Dfa, budget: int | None = None) -> Dfa:
    return determinize(reverse(a), budget=budget)


# --- reachability, minimization ----------------------------------------------


def reachable_order(a: Dfa, start: int | None = None) -> list[int]:
    """States reachable from `start` in breadth-first order over the symbol order."""
    origin = a.initial if start is None else start
    seen = {origin}
    order = [origin]
    queue = deque([origin])
    while queue:
        p = queue.popleft()
        for q in a.delta[p]:
            if q not in seen:
                seen.add(q)
                order.append(q)
                queue.append(q)
    return order


def _renumber(a: Dfa, order: Sequence[int], names: Sequence[str] | None = None) -> Dfa:
    """Restrict `a` to the states in `order` (closed under delta) and renumber."""
    position = {q: i for i, q in enumerate(order)}
    delta = tuple(tuple(position[q] for q in a.delta[p]) for p in order)
    final = frozenset(position[q] for q in order if q in a.final)
    new_names = tuple(names) if names is not None else tuple(a.states[q] for q in order)
    return Dfa(a.alphabet, new_names, position[a.initial], delta, final)


def minimize(a: Dfa) -> Dfa:
    """Minimal DFA by Moore partition refinement, canonically renamed q0, q1, ..."""
    reach = reachable_order(a)
    position = {q: i for i, q in enumerate(reach)}
    table = np.array([[position[q] for q in a.delta[p]] for p in reach], dtype=np.int64)
    table = table.reshape(len(reach), len(a.alphabet))
    blocks = np.array([1 if p in a.final else 0 for p in reach], dtype=np.int64)
    count = len(np.unique(blocks))

    rounds = 0
    while True:
        rounds += 1
        signature = np.column_stack([blocks, blocks[table]])
        _, inverse = np.unique(signature, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        new_count = int(inverse.max()) + 1
        blocks = inverse
        if new_count == count:
            break
        count = new_count
    logger.debug(f"Minimization converged after {rounds} rounds: {a.size} -> {count} states")

    # Canonical breadth-first numbering of the blocks
    representative: dict[int, int] = {}
    for i, b in enumerate(blocks.tolist()):
        representative.setdefault(b, i)
    start = int(blocks[0])
    canon = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        b = queue.popleft()
        for target in table[representative[b]].tolist():
            tb = int(blocks[target])
            if tb not in canon:
                canon[tb] = len(order)
                order.append(tb)
                queue.append(tb)
    delta = tuple(
        tuple(canon[int(blocks[t])] for t in table[representative[b]].tolist()) for b in order
    )
    final = frozenset(
        canon[b] for b in order if reach[representative[b]] in a.final
    )
    names = tuple(f"q{i}" for i in range(len(order)))
    return Dfa(a.alphabet, names, 0, delta, final)


def is_minimal(a: Dfa) -> bool:
    return len(reachable_order(a)) == a.size and minimize(a).size == a.size


def require_minimal(a: Dfa) -> None:
    if not is_minimal(a):
        raise PreconditionError("operation requires a minimal DFA (call minimize first)")


def is_empty(a: Dfa) -> bool:
    return not any(q in a.final for q in reachable_order(a))


def is_universal(a: Dfa) -> bool:
    return all(q in a.final for q in reachable_order(a))


def is_trivial(a: Dfa) -> bool:
    """True iff L(a) is ∅ or Σ*."""
    return is_empty(a) or is_universal(a)


def trim(a: Dfa) -> PartialDfa | None:
    """Restrict to reachable and co-reachable states; None if the language is empty."""
    reach = set(reachable_order(a))
    graph = transition_graph(a)
    coreach: set[int] = set()
    for f in a.final:
        coreach |= nx.ancestors(graph, f) | {f}
    useful = sorted(reach & coreach)
    if a.initial not in useful:
        return None
    position = {q: i for i, q in enumerate(useful)}
    delta = tuple(
        tuple(position.get(q) for q in a.delta[p]) for p in useful
    )
    return PartialDfa(
        alphabet=a.alphabet,
        states=tuple(a.states[q] for q in useful),
        initial=position[a.initial],
        delta=delta,
        final=frozenset(position[q] for q in useful if q in a.final),
    )


def isomorphic(a: Dfa, b: Dfa) -> bool:
    """True iff the reachable parts of a and b are identical up to renaming."""
    if a.alphabet != b.alphabet:
        return False
    mapping = {a.initial: b.initial}
    queue = deque([a.initial])
    while queue:
        p = queue.popleft()
        if (p in a.final) != (mapping[p] in b.final):
            return False
        for sym, q in enumerate(a.delta[p]):
            image = b.delta[mapping[p]][sym]
            if q in mapping:
                if mapping[q] != image:
                    return False
            else:
                mapping[q] = image
                queue.append(q)
    return len(set(mapping.values())) == len(mapping) == len(reachable_order(b))


# --- Boolean combinations and equivalence ----------------------------------


def _product_pairs(a: Dfa, b: Dfa) -> tuple[list[tuple[int, int]], tuple[tuple[int, ...], ...]]:
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    delta = []
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        row = []
        for sym in range(len(a.alphabet)):
            target = (a.delta[p][sym], b.delta[q][sym])
            if target not in index:
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        delta.append(tuple(row))
    return order, tuple(delta)


def complement(a: Dfa) -> Dfa:
    return minimize(a.with_final(set(range(a.size)) - a.final))


def combine(op: BooleanOp, a: Dfa, b: Dfa | None = None) -> Dfa:
    """Product/complement construction, minimized."""
    if op == "complement":
        return complement(a)
    if b is None:
        raise ValueError(f"{op} needs two automata")
    a.alphabet.require_same(b.alphabet)
    accept = {
        "union": lambda x, y: x or y,
        "intersection": lambda x, y: x and y,
        "difference": lambda x, y: x and not y,
    }.get(op)
    if accept is None:
        raise ValueError(f"unknown Boolean operation {op!r}")
    order, delta = _product_pairs(a, b)
    final = frozenset(
        i for i, (p, q) in enumerate(order) if accept(p in a.final, q in b.final)
    )
    names = tuple(f"p{i}" for i in range(len(order)))
    return minimize(Dfa(a.alphabet, names, 0, delta, final))


def union_all(alphabet: Alphabet, automata: Iterable[Dfa]) -> Dfa:
    result = empty_dfa(alphabet)
    for a in automata:
        result = combine("union", result, a)
    return result


def intersect_all(alphabet: Alphabet, automata: Iterable[Dfa]) -> Dfa:
    result = universal_dfa(alphabet)
    for a in automata:
        result = combine("intersection", result, a)
    return result


def separating_word(a: Dfa, b: Dfa) -> Word | None:
    """Shortest word in the symmetric difference (canonical order), or None if equivalent."""
    a.alphabet.require_same(b.alphabet)
    start = (a.initial, b.initial)
    parent: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p in a.final) != (q in b.final):
            word: list[int] = []
            node = pair
            while parent[node] is not None:
                prev, sym = parent[node]  # type: ignore[misc]
                word.append(sym)
                node = prev
            return a.alphabet.word(reversed(word))
        for sym in range(len(a.alphabet)):
            target = (a.delta[p][sym], b.delta[q][sym])
            if target not in parent:
                parent[target] = (pair, sym)
                queue.append(target)
    return None


def equivalent(a: Dfa, b: Dfa) -> bool:
    return separating_word(a, b) is None


# --- quotients and closures ---------------------------------------------------


def left_quotient(a: Dfa, s: Sequence[str]) -> Dfa:
    """DFA for s^{-1}L = {x : sx ∈ L}."""
    return a.with_initial(a.run(s))


def right_quotient(a: Dfa, z: Sequence[str]) -> Dfa:
    """DFA for Lz^{-1} = {x : xz ∈ L}."""
    return a.with_final(q for q in range(a.size) if a.run(z, start=q) in a.final)


def right_ideal_closure(a: Dfa) -> Dfa:
    """Minimal DFA for LΣ*."""
    start = (a.initial, a.initial in a.final)
    index = {start: 0}
    order = [start]
    delta = []
    queue = deque([start])
    while queue:
        q, seen = queue.popleft()
        row = []
        for sym in range(len(a.alphabet)):
            nq = a.delta[q][sym]
            target = (nq, seen or nq in a.final)
            if target not in index:
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        delta.append(tuple(row))
    final = frozenset(i for i, (_, seen) in enumerate(order) if seen)
    names = tuple(f"r{i}" for i in range(len(order)))
    return minimize(Dfa(a.alphabet, names, 0, tuple(delta), final))


# --- SCCs ----------------------------------------------------------------------


def transition_graph(a: Dfa) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(a.size))
    graph.add_edges_from((p, q) for p in range(a.size) for q in a.delta[p])
    return graph


def sccs(a: Dfa) -> SccPartition:
    """Maximal SCCs ordered sinks-first, ties broken by smallest member state."""
    graph = transition_graph(a)
    raw = [frozenset(c) for c in nx.strongly_connected_components(graph)]
    dag = nx.condensation(graph, scc=raw)
    topo = list(nx.lexicographical_topological_sort(dag, key=lambda c: min(raw[c])))
    ordered = list(reversed(topo))
    new_index = {old: i for i, old in enumerate(ordered)}
    components = tuple(raw[old] for old in ordered)

    component_of = [0] * a.size
    for i, comp in enumerate(components):
        for q in comp:
            component_of[q] = i
    condensation = frozenset((new_index[u], new_index[v]) for u, v in dag.edges())

    trivial, cycle, letter_cycle, all_final, all_nonfinal = [], [], [], [], []
    for comp in components:
        inside = [
            [(sym, q) for sym, q in enumerate(a.delta[p]) if q in comp] for p in sorted(comp)
        ]
        trivial.append(len(comp) == 1 and not inside[0])
        cycle.append(all(len({q for _, q in edges}) <= 1 for edges in inside))
        letter_cycle.append(all(len(edges) <= 1 for edges in inside))
        all_final.append(all(q in a.final for q in comp))
        all_nonfinal.append(not any(q in a.final for q in comp))

    return SccPartition(
        components=components,
        component_of=tuple(component_of),
        condensation=condensation,
        is_trivial_cycle=tuple(trivial),
        is_cycle=tuple(cycle),
        is_letter_cycle=tuple(letter_cycle),
        all_final=tuple(all_final),
        all_nonfinal=tuple(all_nonfinal),
    )


# --- pair relations and distances -------------------------------------------


def distance_matrix(a: Dfa) -> np.ndarray:
    """d(p, q) for all pairs as a float array (inf where no length merges p and q).

    Iterates C_0 = diagonal, C_{i+1} = {(p,q) : (δ(p,s), δ(q,s)) ∈ C_i for all s};
    d(p,q) is the first i with (p,q) ∈ C_i.
    """
    n = a.size
    table = a.table
    dist = np.full((n, n), np.inf)
    current = np.eye(n, dtype=bool)
    dist[current] = 0
    step = 0
    while True:
        step += 1
        nxt = np.ones((n, n), dtype=bool)
        for sym in range(len(a.alphabet)):
            column = table[:, sym]
            nxt &= current[np.ix_(column, column)]
        fresh = nxt & ~current
        if not fresh.any():
            break
        dist[fresh] = step
        current = nxt
    logger.debug(f"Distance fixpoint stabilized after {step} iterations")
    return dist


def distance(a: Dfa, p: int | str, q: int | str) -> StateDistance:
    """Least k such that every word of length k merges p and q; requires a minimal DFA."""
    require_minimal(a)
    value = distance_matrix(a)[state_index(a, p), state_index(a, q)]
    return StateDistance(INFINITE if np.isinf(value) else int(value))


def pair_search(
    a: Dfa,
    sources: Iterable[tuple[int, int]],
    within: frozenset[int] | None = None,
) -> PairParents:
    """Pairs reachable from `sources` by reading two equal-length words in lockstep.

    With `within`, both components must stay inside that state set. Parents
    record (previous pair, symbol on the left, symbol on the right) so the two
    words can be rebuilt with pair_words; search order is breadth-first over
    symbol pairs in canonical order.
    """
    parents: PairParents = {}
    queue: deque[tuple[int, int]] = deque()
    for src in sources:
        if src not in parents:
            parents[src] = None
            queue.append(src)
    k = len(a.alphabet)
    while queue:
        pair = queue.popleft()
        p, q = pair
        for x in range(k):
            np_ = a.delta[p][x]
            if within is not None and np_ not in within:
                continue
            for y in range(k):
                nq = a.delta[q][y]
                if within is not None and nq not in within:
                    continue
                target = (np_, nq)
                if target not in parents:
                    parents[target] = (pair, x, y)
                    queue.append(target)
    return parents


def pair_words(a: Dfa, parents: PairParents, pair: tuple[int, int]) -> tuple[Word, Word]:
    left: list[int] = []
    right: list[int] = []
    node = pair
    while parents[node] is not None:
        prev, x, y = parents[node]  # type: ignore[misc]
        left.append(x)
        right.append(y)
        node = prev
    return a.alphabet.word(reversed(left)), a.alphabet.word(reversed(right))


def shortest_path(
    a: Dfa, source: int, target: int, within: frozenset[int] | None = None
) -> Word | None:
    """Shortest word leading from source to target (optionally staying within a set)."""
    parent: dict[int, tuple[int, int] | None] = {source: None}
    queue = deque([source])
    while queue:
        p = queue.popleft()
        if p == target:
            word: list[int] = []
            node = p
            while parent[node] is not None:
                prev, sym = parent[node]  # type: ignore[misc]
                word.append(sym)
                node = prev
            return a.alphabet.word(reversed(word))
        for sym, q in enumerate(a.delta[p]):
            if within is not None and q not in within:
                continue
            if q not in parent:
                parent[q] = (p, sym)
                queue.append(q)
    return None
