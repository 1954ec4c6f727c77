"""Tests for window models, streaming algorithms and space measurement."""

import random

import pytest

from window_space.automata import combine
from window_space.errors import AlphabetMismatchError, InternalConsistencyError, PreconditionError
from window_space.exactspace import optimal_variable_algorithm
from window_space.models import MealyMachine
from window_space.streaming import (
    POP,
    ConstantAlgorithm,
    FixedWindowSpec,
    SpaceProfile,
    exact_space_profile,
    last_n,
    left_transduce,
    product_algorithm,
    random_stream,
    reduce_via_mealy,
    reference_variable_algorithm,
    trivial_fixed_algorithm,
    wnd,
)


@pytest.fixture
def swap(ab):
    """One-state Mealy machine exchanging a and b."""
    return MealyMachine(ab, ab, ("s",), 0, (((0, 1), (0, 0)),))


class TestWindows:
    """Tests for wnd and last_n."""

    def test_wnd_appends_and_pops(self):
        assert wnd(["a", "b", POP]) == ("b",)
        assert wnd([]) == ()

    def test_pop_on_empty_window_is_noop(self):
        assert wnd([POP, "a"]) == ("a",)
        assert wnd(["a", POP, POP]) == ()

    def test_last_n(self):
        spec = FixedWindowSpec(2, "a")
        assert last_n(("a", "b", "b"), spec) == ("b", "b")

    def test_last_n_pads_on_the_left(self):
        assert last_n(("b",), FixedWindowSpec(3, "a")) == ("a", "a", "b")

    def test_zero_window(self):
        assert last_n(("a", "b"), FixedWindowSpec(0, "a")) == ()

    def test_spec_defaults_to_first_symbol(self, ab):
        assert FixedWindowSpec.for_alphabet(ab, 3).pad == "a"
        assert FixedWindowSpec.for_alphabet(ab, 3, pad="b").pad == "b"

    def test_spec_rejects_foreign_pad(self, ab):
        with pytest.raises(AlphabetMismatchError):
            FixedWindowSpec.for_alphabet(ab, 3, pad="z")

    def test_spec_rejects_negative_length(self):
        with pytest.raises(ValueError):
            FixedWindowSpec(-1, "a")


class TestTrivialFixedAlgorithm:
    """Tests for the window-storing fixed-size algorithm."""

    def test_trace(self, ends_a):
        """Windows aa, ab, bb, ba over Σ*a."""
        alg = trivial_fixed_algorithm(ends_a, FixedWindowSpec(2, "a"))
        assert alg.trace(["a", "b", "b", "a"]) == [True, False, False, True]

    def test_encoding_width(self, ends_a):
        """One bit per symbol over a binary alphabet."""
        alg = trivial_fixed_algorithm(ends_a, FixedWindowSpec(3, "a"))
        assert alg.encode(alg.initial) == "000"
        assert alg.encode(alg.run(["b"])) == "001"

    def test_pop_is_rejected(self, ends_a):
        """Pop has no meaning for fixed-size windows."""
        alg = trivial_fixed_algorithm(ends_a, FixedWindowSpec(2, "a"))
        with pytest.raises(PreconditionError):
            alg.step(alg.initial, POP)


class TestReferenceVariableAlgorithm:
    """Tests for the exact variable-size window algorithm."""

    def test_trace(self, ends_a):
        """Windows a, ab, b, ε over Σ*a."""
        alg = reference_variable_algorithm(ends_a)
        assert alg.trace(["a", "b", POP, POP]) == [True, False, False, False]

    def test_encoding(self, ends_a):
        """Each symbol is a 1 marker plus its index bits."""
        alg = reference_variable_algorithm(ends_a)
        assert alg.encode(alg.run(["a", "b"])) == "1011"
        assert alg.encode(alg.initial) == ""

    def test_matches_optimal_algorithm(self, L1):
        """The suffix-class algorithm answers like the reference on random streams."""
        rng = random.Random(7)
        stream = random_stream(L1.alphabet, 500, rng, pop_rate=0.4)
        assert optimal_variable_algorithm(L1).trace(stream) == reference_variable_algorithm(L1).trace(stream)


class TestConstantAlgorithm:
    def test_fixed_answer(self, ab):
        alg = ConstantAlgorithm(ab, "variable", True)
        assert alg.accepts(alg.run(["a", POP, "b"]))
        assert alg.encode(alg.initial) == ""


class TestMealyReduction:
    """Tests for reductions through Mealy machines."""

    def test_left_transduce(self, swap):
        assert left_transduce(swap, ("a", "a", "b")) == ("b", "b", "a")

    def test_reduced_algorithm(self, swap, ends_a, ends_b):
        """Swapping symbols reduces Σ*b to Σ*a."""
        reduced = reduce_via_mealy(reference_variable_algorithm(ends_a), swap)
        stream = random_stream(ends_b.alphabet, 300, random.Random(3), pop_rate=0.3)
        assert reduced.trace(stream) == reference_variable_algorithm(ends_b).trace(stream)

    def test_output_alphabet_must_match(self, swap, zero_plus):
        with pytest.raises(AlphabetMismatchError):
            reduce_via_mealy(reference_variable_algorithm(zero_plus), swap)


class TestProductAlgorithm:
    """Tests for parallel composition."""

    def test_intersection(self, starts_a, ends_a):
        """The product of two algorithms decides the intersection."""
        product = product_algorithm(
            [optimal_variable_algorithm(starts_a), optimal_variable_algorithm(ends_a)], all
        )
        expected = reference_variable_algorithm(combine("intersection", starts_a, ends_a))
        stream = random_stream(starts_a.alphabet, 400, random.Random(11), pop_rate=0.3)
        assert product.trace(stream) == expected.trace(stream)

    def test_space_at_most_twice_the_sum(self, starts_a, ends_a):
        """Tuple encoding doubles the bits of the components."""
        a, b = optimal_variable_algorithm(starts_a), optimal_variable_algorithm(ends_a)
        pa = exact_space_profile(a, 3, "variable")
        pb = exact_space_profile(b, 3, "variable")
        both = exact_space_profile(product_algorithm([a, b], any), 3, "variable")
        assert all(both[n] <= 2 * (pa[n] + pb[n]) for n in range(4))

    def test_mixed_models_rejected(self, ends_a):
        with pytest.raises(PreconditionError):
            product_algorithm(
                [reference_variable_algorithm(ends_a), trivial_fixed_algorithm(ends_a, FixedWindowSpec(2, "a"))],
                all,
            )


class TestExactSpaceProfile:
    """Tests for exact space measurement."""

    def test_variable_profile(self, ends_a):
        """The suffix-class algorithm for Σ*a uses 0, 1, 2, 2 bits."""
        profile = exact_space_profile(optimal_variable_algorithm(ends_a), 3, "variable")
        assert profile.values == (0, 1, 2, 2)
        assert profile.max_n == 3

    def test_fixed_profile(self, ends_a):
        """The trivial algorithm stores n bits for a window of length n."""
        profile = exact_space_profile(
            lambda n: trivial_fixed_algorithm(ends_a, FixedWindowSpec(n, "a")), 3, "fixed"
        )
        assert profile.values == (0, 1, 2, 3)

    def test_reference_profile(self, ends_a):
        """Two bits per stored symbol."""
        profile = exact_space_profile(reference_variable_algorithm(ends_a), 2, "variable")
        assert profile.values == (0, 2, 4)

    def test_argument_kinds(self, ends_a):
        """Variable profiles take an algorithm, fixed profiles a factory."""
        with pytest.raises(PreconditionError):
            exact_space_profile(lambda n: reference_variable_algorithm(ends_a), 2, "variable")
        with pytest.raises(PreconditionError):
            exact_space_profile(reference_variable_algorithm(ends_a), 2, "fixed")

    def test_variable_profile_must_be_monotone(self):
        with pytest.raises(InternalConsistencyError):
            SpaceProfile("variable", (2, 1))
