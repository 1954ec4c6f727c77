"""Tests for the automaton data models."""

import pytest

from window_space.errors import AlphabetMismatchError
from window_space.models import Alphabet, Dfa, MealyMachine, Nfa, PartialDfa, StateDistance

AB = Alphabet(("a", "b"))


class TestAlphabet:
    """Tests for Alphabet validation and lookup."""

    def test_index_of(self):
        """Symbols are indexed in declaration order."""
        assert AB.index_of("a") == 0
        assert AB.index_of("b") == 1
        assert AB.indices("ba") == (1, 0)

    def test_unknown_symbol_raises(self):
        """Looking up a foreign symbol is an alphabet mismatch."""
        with pytest.raises(AlphabetMismatchError):
            AB.index_of("c")

    def test_rejects_empty_and_duplicates(self):
        """Alphabets must be non-empty with distinct symbols."""
        with pytest.raises(ValueError):
            Alphabet(())
        with pytest.raises(ValueError, match="duplicate"):
            Alphabet(("a", "a"))

    def test_pop_token_is_reserved(self):
        """'!' marks Pop in stream files and cannot be a symbol."""
        with pytest.raises(ValueError, match="reserved"):
            Alphabet(("a", "!"))

    def test_whitespace_symbol_rejected(self):
        """Symbols are whitespace-free tokens."""
        with pytest.raises(ValueError):
            Alphabet(("a b",))

    def test_multi_character_tokens(self):
        """Symbols may be longer than one character."""
        alphabet = Alphabet(("push", "pop"))
        assert "push" in alphabet
        assert alphabet.word((1, 0)) == ("pop", "push")


class TestDfa:
    """Tests for Dfa construction and runs."""

    def test_build_adds_sink_for_missing_transitions(self):
        """Undefined transitions are routed to a fresh rejecting sink."""
        d = Dfa.build(AB, ["s"], "s", {("s", "a"): "s"}, ["s"])
        assert d.size == 2
        assert d.states[1] == "sink"
        assert d.accepts("aaa")
        assert not d.accepts("ab")

    def test_build_without_missing_transitions_adds_nothing(self):
        """A total transition table keeps exactly the declared states."""
        d = Dfa.build(AB, ["s"], "s", {("s", "a"): "s", ("s", "b"): "s"}, [])
        assert d.size == 1

    def test_sink_name_avoids_collisions(self):
        """A declared state called 'sink' is not reused for the added sink."""
        d = Dfa.build(AB, ["sink"], "sink", {("sink", "a"): "sink"}, ["sink"])
        assert d.states == ("sink", "sink_")

    def test_undeclared_state_raises(self):
        """Transitions may only mention declared states."""
        with pytest.raises(ValueError, match="undeclared"):
            Dfa.build(AB, ["s"], "s", {("s", "a"): "t"}, [])

    def test_rejects_partial_delta(self):
        """The index-level constructor requires a total delta."""
        with pytest.raises(ValueError, match="total"):
            Dfa(AB, ("s",), 0, ((0,),), frozenset())

    def test_table_and_final_mask(self):
        """The numpy views mirror delta and the final set."""
        d = Dfa(AB, ("p", "q"), 0, ((1, 0), (1, 0)), frozenset({1}))
        assert d.table.shape == (2, 2)
        assert d.table[0, 0] == 1
        assert d.final_mask.tolist() == [False, True]

    def test_to_nfa_preserves_language(self):
        """Viewing a DFA as an NFA keeps its language."""
        d = Dfa(AB, ("p", "q"), 0, ((1, 0), (1, 0)), frozenset({1}))
        n = d.to_nfa()
        for word in ["", "a", "ab", "ba", "bba"]:
            assert n.accepts(word) == d.accepts(word)

    def test_to_dict_names_states(self):
        """The dictionary form uses state names, not indices."""
        d = Dfa(AB, ("p", "q"), 0, ((1, 0), (1, 0)), frozenset({1}))
        data = d.to_dict()
        assert data["initial"] == ["p"]
        assert data["final"] == ["q"]
        assert ["p", "a", "q"] in data["transitions"]


class TestNfa:
    """Tests for Nfa construction and acceptance."""

    def test_accepts_with_nondeterminism(self):
        """Σ*a with a guessing transition."""
        n = Nfa.from_names(AB, ["0", "1"], ["0"], [("0", "a", "0"), ("0", "b", "0"), ("0", "a", "1")], ["1"])
        assert n.accepts("ba")
        assert not n.accepts("ab")
        assert not n.is_deterministic

    def test_dead_run_rejects(self):
        """A run with no live states rejects immediately."""
        n = Nfa.from_names(AB, ["0"], ["0"], [("0", "a", "0")], ["0"])
        assert not n.accepts("ba")

    def test_undeclared_state_raises(self):
        with pytest.raises(ValueError, match="undeclared"):
            Nfa.from_names(AB, ["0"], ["1"], [], [])


class TestPartialDfa:
    """Tests for partial DFAs."""

    def test_to_dfa_totalizes(self):
        """Undefined transitions become a sink in the total DFA."""
        p = PartialDfa(AB, ("s",), 0, ((0, None),), frozenset({0}))
        d = p.to_dfa()
        assert d.size == 2
        assert d.accepts("aa")
        assert not d.accepts("ab")
        assert p.run("ab") is None


class TestMealyMachine:
    """Tests for Mealy machines."""

    def test_transduce(self):
        """A one-state machine that swaps a and b."""
        swap = MealyMachine(AB, AB, ("s",), 0, (((0, 1), (0, 0)),))
        assert swap.transduce("aab") == ("b", "b", "a")

    def test_rejects_partial_machine(self):
        with pytest.raises(ValueError, match="total"):
            MealyMachine(AB, AB, ("s",), 0, (((0, 1),),))


class TestStateDistance:
    """Tests for StateDistance values."""

    def test_infinite(self):
        assert StateDistance(float("inf")).is_infinite
        assert str(StateDistance(float("inf"))) == "inf"

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            StateDistance(-1)
