"""Tests for automata constructions."""

import random

import pytest

from window_space.automata import (
    bounded_length_dfa,
    combine,
    complement,
    determinize,
    distance,
    equivalent,
    is_empty,
    is_minimal,
    is_universal,
    isomorphic,
    left_quotient,
    length_dfa,
    minimize,
    reverse,
    reverse_determinize,
    right_ideal_closure,
    right_quotient,
    sccs,
    separating_word,
    suffix_dfa,
    trim,
)
from window_space.errors import AlphabetMismatchError, BudgetExceededError, PreconditionError
from window_space.families import random_nfa
from window_space.helpers import words_up_to
from window_space.models import Dfa, Nfa


def _ends_a_nfa(ab):
    return Nfa.from_names(ab, ["0", "1"], ["0"], [("0", "a", "0"), ("0", "b", "0"), ("0", "a", "1")], ["1"])


class TestDeterminize:
    """Tests for the subset construction and reversal."""

    def test_determinize_nfa(self, ab, ends_a):
        """The guessing NFA for Σ*a determinizes to Σ*a."""
        assert equivalent(minimize(determinize(_ends_a_nfa(ab))), ends_a)

    def test_subset_names(self, ab):
        """Subset states are named after their members."""
        d = determinize(_ends_a_nfa(ab))
        assert d.states == ("{0}", "{0,1}")

    def test_budget_exceeded(self, ab):
        """The subset construction stops at its state budget."""
        with pytest.raises(BudgetExceededError, match="subset construction"):
            determinize(_ends_a_nfa(ab), budget=1)

    def test_reverse_determinize(self, starts_a, ends_a):
        """Reversing aΣ* gives Σ*a."""
        assert equivalent(minimize(reverse_determinize(starts_a)), ends_a)

    def test_reverse_swaps_initial_and_final(self, ends_a):
        r = reverse(ends_a)
        assert r.initial == ends_a.final
        assert r.final == frozenset({ends_a.initial})

    @pytest.mark.parametrize("seed", range(10))
    def test_random_nfas_on_all_short_words(self, ab, seed):
        """Subset constructions accept exactly what the NFA accepts, forwards and backwards."""
        nfa = random_nfa(ab, 4, random.Random(seed))
        forward = determinize(nfa)
        smallest = minimize(forward)
        backward = reverse_determinize(nfa)
        for w in words_up_to(ab, 6):
            expected = nfa.accepts(w)
            assert forward.accepts(w) == expected
            assert smallest.accepts(w) == expected
            assert backward.accepts(w[::-1]) == expected


class TestMinimize:
    """Tests for minimization."""

    def test_ends_a_has_two_states(self, ends_a):
        """Σ*a is minimal with a non-final initial state q0 and final q1."""
        assert ends_a.states == ("q0", "q1")
        assert ends_a.initial == 0
        assert ends_a.final == frozenset({1})

    def test_idempotent(self, L2):
        """Minimizing twice changes nothing."""
        assert isomorphic(minimize(L2), L2)
        assert is_minimal(L2)

    def test_merges_equivalent_states(self, ab, even_length):
        """A mod-4 length counter accepting 0 and 2 collapses to the parity DFA."""
        d = Dfa(ab, ("l0", "l1", "l2", "l3"), 0, ((1, 1), (2, 2), (3, 3), (0, 0)), frozenset({0, 2}))
        assert not is_minimal(d)
        assert isomorphic(minimize(d), even_length)

    def test_drops_unreachable_states(self, ab):
        d = Dfa(ab, ("s", "u"), 0, ((0, 0), (1, 1)), frozenset({0}))
        assert minimize(d).size == 1


class TestLanguageChecks:
    """Tests for emptiness, universality, trimming and isomorphism."""

    def test_empty_and_universal(self, empty, universal, ends_a):
        assert is_empty(empty)
        assert is_universal(universal)
        assert not is_empty(ends_a)
        assert not is_universal(ends_a)

    def test_trim_empty_language(self, empty):
        """Trimming the empty language leaves nothing."""
        assert trim(empty) is None

    def test_trim_drops_sink(self, a_star):
        """a* trims to a single looping state."""
        t = trim(a_star)
        assert t is not None
        assert t.size == 1
        assert t.accepts("aaa")

    def test_isomorphic_detects_difference(self, ends_a, ends_b):
        assert not isomorphic(ends_a, ends_b)
        assert isomorphic(ends_a, ends_a)


class TestBooleanCombinations:
    """Tests for product and complement constructions."""

    def test_union(self, starts_a, ends_a):
        u = combine("union", starts_a, ends_a)
        assert u.accepts("ab")
        assert u.accepts("ba")
        assert not u.accepts("bb")

    def test_intersection(self, starts_a, ends_a):
        i = combine("intersection", starts_a, ends_a)
        assert i.accepts("aba")
        assert not i.accepts("ab")

    def test_difference(self, starts_a, ends_a):
        d = combine("difference", starts_a, ends_a)
        assert d.accepts("ab")
        assert not d.accepts("aa")

    def test_complement_of_empty_is_universal(self, empty):
        assert is_universal(complement(empty))

    def test_alphabet_mismatch(self, ends_a, zero_plus):
        """Automata over different alphabets cannot be combined."""
        with pytest.raises(AlphabetMismatchError):
            combine("union", ends_a, zero_plus)

    def test_binary_op_needs_two_automata(self, ends_a):
        with pytest.raises(ValueError):
            combine("union", ends_a)


class TestSeparatingWord:
    """Tests for separating words and equivalence."""

    def test_shortest_separating_word(self, ends_a, starts_a):
        """'ab' is the first word on which Σ*a and aΣ* disagree."""
        assert separating_word(ends_a, starts_a) == ("a", "b")

    def test_equivalent_automata(self, ends_a):
        assert separating_word(ends_a, ends_a) is None

    def test_agrees_with_membership(self, contains_ab, starts_a):
        """The separating word really separates."""
        w = separating_word(contains_ab, starts_a)
        assert w is not None
        assert contains_ab.accepts(w) != starts_a.accepts(w)


class TestQuotientsAndClosures:
    """Tests for quotients, closures and basic language builders."""

    def test_left_quotient(self, starts_a):
        """a⁻¹(aΣ*) = Σ*."""
        assert is_universal(left_quotient(starts_a, ("a",)))

    def test_right_quotient(self, ends_a):
        """(Σ*a)a⁻¹ = Σ*."""
        assert is_universal(minimize(right_quotient(ends_a, ("a",))))

    def test_right_ideal_closure(self, ends_a):
        """(Σ*a)Σ* is the set of words containing an a."""
        r = right_ideal_closure(ends_a)
        assert r.accepts("bab")
        assert not r.accepts("bbb")

    def test_length_dfa(self, ab, even_length):
        assert equivalent(minimize(length_dfa(ab, 0, 2)), even_length)
        exact = length_dfa(ab, 2, None)
        assert [exact.accepts(w) for w in ["a", "ab", "abb"]] == [False, True, False]

    def test_bounded_length_dfa(self, ab):
        d = bounded_length_dfa(ab, 1)
        assert [d.accepts(w) for w in ["", "b", "ab"]] == [True, True, False]
        assert is_empty(bounded_length_dfa(ab, -1))

    def test_suffix_dfa(self, ab, ends_a):
        assert equivalent(suffix_dfa(ab, ("a",)), ends_a)
        d = suffix_dfa(ab, ("a", "b"))
        assert all(d.accepts(w) == (w[-2:] == ("a", "b")) for w in words_up_to(ab, 4))


class TestSccs:
    """Tests for the SCC partition."""

    def test_single_component(self, ends_a):
        """Σ*a is strongly connected."""
        partition = sccs(ends_a)
        assert len(partition) == 1
        assert not partition.all_final[0]
        assert not partition.all_nonfinal[0]

    def test_sinks_first(self, starts_a):
        """The initial state of aΣ* is a trivial SCC ordered after both sinks."""
        partition = sccs(starts_a)
        assert len(partition) == 3
        idx = partition.component_of[starts_a.initial]
        assert idx == len(partition) - 1
        assert partition.is_trivial_cycle[idx]
        assert all(i > j for i, j in partition.condensation)

    def test_letter_cycle(self, a_star):
        """a* has a one-letter loop and a two-letter sink loop."""
        partition = sccs(a_star)
        start = partition.component_of[a_star.initial]
        sink = 1 - start
        assert partition.is_letter_cycle[start]
        assert not partition.is_letter_cycle[sink]
        assert partition.is_cycle[sink]


class TestDistance:
    """Tests for state distances."""

    def test_finite_distance(self, ends_a):
        """One symbol merges both states of Σ*a."""
        assert distance(ends_a, "q0", "q1").value == 1
        assert distance(ends_a, 0, 0).value == 0

    def test_infinite_distance(self, even_length):
        """Parity states never merge."""
        assert distance(even_length, 0, 1).is_infinite

    def test_requires_minimal(self, ab):
        d = Dfa(ab, ("l0", "l1", "l2", "l3"), 0, ((1, 1), (2, 2), (3, 3), (0, 0)), frozenset({0, 2}))
        with pytest.raises(PreconditionError):
            distance(d, 0, 1)

    def test_unknown_state_name(self, ends_a):
        with pytest.raises(ValueError, match="unknown state"):
            distance(ends_a, "q0", "zz")
