"""Tests for growth, linear cycle automata and decomposition certificates."""

import pytest

from window_space.automata import determinize, equivalent, minimize
from window_space.classify import alt_count, classify_dfa, is_left_ideal
from window_space.decompose import (
    ComplementNode,
    DecompositionCertificate,
    GrowthKind,
    Leaf,
    LeafTag,
    LinearCycleAutomaton,
    UnionNode,
    alternation_decomposition,
    alternation_set,
    constant_decomposition,
    growth_class,
    growth_count,
    lca_to_boolean_combination,
    leaves,
    linear_cycle_decomposition,
    log_class_decomposition,
    mealy_image_nfa,
    mealy_preimage,
    normalize_cycle_lengths,
)
from window_space.errors import InternalConsistencyError, PreconditionError
from window_space.helpers import words_up_to
from window_space.models import MealyMachine, PartialDfa


@pytest.fixture
def swap(ab):
    return MealyMachine(ab, ab, ("s",), 0, (((0, 1), (0, 0)),))


@pytest.fixture
def mixed_cycles(ab):
    """a*b(ab)*: a one-letter cycle followed by a two-letter cycle."""
    partial = PartialDfa(ab, ("x", "y", "z"), 0, ((0, 1), (2, None), (None, 1)), frozenset({1}))
    return LinearCycleAutomaton(partial)


class TestGrowth:
    """Tests for growth classification and counting."""

    def test_exponential(self, contains_ab):
        g = growth_class(contains_ab)
        assert g.kind is GrowthKind.EXPONENTIAL
        assert g.witness_state is not None
        assert len(g.cycles) == 2

    def test_polynomial(self, a_star):
        g = growth_class(a_star)
        assert g.kind is GrowthKind.POLYNOMIAL
        assert g.degree_hint == 1
        assert g.to_dict()["kind"] == "polynomial"

    def test_empty_language(self, empty):
        g = growth_class(empty)
        assert g.kind is GrowthKind.POLYNOMIAL
        assert g.degree_hint == 0

    def test_growth_count(self, a_star, universal):
        """ε, a, aa, aaa for a*; 1 + 2 + 4 words of length <= 2 for Σ*."""
        assert growth_count(a_star, 3) == 4
        assert growth_count(universal, 2) == 7


class TestLinearCycleAutomata:
    """Tests for linear cycle automata and cycle-length normalization."""

    def test_rejects_double_edges(self, ab):
        """Two symbols into the same state break the cycle shape."""
        with pytest.raises(ValueError, match="two symbols"):
            LinearCycleAutomaton(PartialDfa(ab, ("s",), 0, ((0, 0),), frozenset({0})))

    def test_decomposition_of_a_star(self, a_star):
        parts = linear_cycle_decomposition(a_star)
        assert len(parts) == 1
        assert parts[0].cycle_lengths() == [1]

    def test_decomposition_needs_polynomial_growth(self, contains_ab):
        with pytest.raises(PreconditionError, match="polynomial"):
            linear_cycle_decomposition(contains_ab)

    def test_empty_language_has_no_components(self, empty):
        assert linear_cycle_decomposition(empty) == []

    def test_chain(self, mixed_cycles):
        assert mixed_cycles.cycle_lengths() == [1, 2]
        assert mixed_cycles.chain() == [(0, 0, 1), (1, 1, None)]

    def test_normalization(self, mixed_cycles):
        """Cycles of lengths 1 and 2 give two variants with only length-2 cycles."""
        variants = normalize_cycle_lengths(mixed_cycles)
        assert len(variants) == 2
        for v in variants:
            assert {m for m in v.cycle_lengths() if m} == {2}

    def test_uniform_cycles_required(self, mixed_cycles):
        with pytest.raises(PreconditionError, match="not uniform"):
            lca_to_boolean_combination(mixed_cycles)

    def test_boolean_combination(self, a_star):
        certificate = lca_to_boolean_combination(linear_cycle_decomposition(a_star)[0])
        assert certificate.leaf_count == 3
        assert equivalent(certificate.evaluate(), a_star)


class TestLeavesAndCertificates:
    """Tests for tagged leaves and certificate verification."""

    def test_leaf_checks(self, ends_a, even_length):
        Leaf(even_length, LeafTag.LENGTH_LANGUAGE).verify()
        Leaf(ends_a, LeafTag.SUFFIX_TESTABLE, 1).verify()
        with pytest.raises(InternalConsistencyError):
            Leaf(ends_a, LeafTag.LENGTH_LANGUAGE).verify()
        with pytest.raises(InternalConsistencyError):
            Leaf(ends_a, LeafTag.SUFFIX_TESTABLE).verify()

    def test_certificate_must_match_target(self, ends_a, even_length):
        with pytest.raises(InternalConsistencyError, match="not equivalent"):
            DecompositionCertificate(ends_a, Leaf(even_length, LeafTag.LENGTH_LANGUAGE))

    def test_complement_formula(self, even_length):
        """Odd length is the complement of even length."""
        odd = minimize(even_length.with_final(frozenset({1 - even_length.initial})))
        formula = ComplementNode(Leaf(even_length, LeafTag.LENGTH_LANGUAGE))
        certificate = DecompositionCertificate(odd, formula)
        assert certificate.leaf_count == 1
        assert certificate.to_dict()["formula"]["op"] == "complement"

    def test_leaves_walks_nested_formulas(self, ends_a, even_length):
        formula = UnionNode(
            (Leaf(ends_a, LeafTag.LEFT_IDEAL), ComplementNode(Leaf(even_length, LeafTag.LENGTH_LANGUAGE)))
        )
        assert [leaf.tag for leaf in leaves(formula)] == [LeafTag.LEFT_IDEAL, LeafTag.LENGTH_LANGUAGE]


class TestMealyImages:
    """Tests for images and preimages under Mealy machines."""

    def test_preimage(self, swap, ends_a, ends_b):
        assert equivalent(minimize(mealy_preimage(swap, ends_a)), ends_b)

    def test_image(self, swap, ends_a, ends_b):
        assert equivalent(minimize(determinize(mealy_image_nfa(swap, ends_a))), ends_b)


class TestLogClassDecomposition:
    """Tests for the left-ideal / length-language decomposition."""

    def test_length_language_is_a_single_leaf(self, even_length):
        certificate = log_class_decomposition(even_length)
        assert certificate.leaf_count == 1
        assert next(leaves(certificate.formula)).tag is LeafTag.LENGTH_LANGUAGE

    def test_left_ideal_shortcut(self, ends_a):
        certificate = log_class_decomposition(ends_a, shortcut=True)
        assert [leaf.tag for leaf in leaves(certificate.formula)] == [LeafTag.LEFT_IDEAL]

    def test_full_construction(self, ends_a):
        """By default the suffix-class image is decomposed and pulled back."""
        certificate = log_class_decomposition(ends_a)
        assert certificate.leaf_count == 3
        assert equivalent(certificate.evaluate(), ends_a)
        for leaf in leaves(certificate.formula):
            assert leaf.tag in (LeafTag.LEFT_IDEAL, LeafTag.LENGTH_LANGUAGE)

    def test_left_ideal_goes_through_the_pullback(self, contains_ab):
        certificate = log_class_decomposition(contains_ab)
        assert certificate.leaf_count > 1
        assert equivalent(certificate.evaluate(), contains_ab)

    @pytest.mark.parametrize("name", ["ends_a", "ends_b", "contains_ab", "a_star", "zero_plus", "even_length", "L1"])
    def test_round_trip(self, request, name):
        """The certificate denotes L, keeps its space class and carries only valid tags."""
        l = request.getfixturevalue(name)
        certificate = log_class_decomposition(l)
        evaluated = certificate.evaluate()
        assert equivalent(evaluated, l)
        assert classify_dfa(evaluated).space_class == classify_dfa(l).space_class
        for leaf in leaves(certificate.formula):
            assert leaf.tag in (LeafTag.LEFT_IDEAL, LeafTag.LENGTH_LANGUAGE)
            leaf.verify()

    def test_linear_language_rejected(self, even_a):
        with pytest.raises(PreconditionError, match="linear"):
            log_class_decomposition(even_a)


class TestAlternationDecomposition:
    """Tests for the decomposition by alternation counts."""

    def test_alternation_sets_are_left_ideals(self, zero_plus):
        for i in (1, 2):
            p = alternation_set(zero_plus, i)
            assert is_left_ideal(p)
            for w in words_up_to(zero_plus.alphabet, 4):
                assert p.accepts(w) == (alt_count(zero_plus, w) >= i)

    def test_lk(self, L1):
        certificate = alternation_decomposition(L1)
        assert certificate.leaf_count == 4
        assert equivalent(certificate.evaluate(), L1)

    def test_zero_plus(self, zero_plus):
        assert alternation_decomposition(zero_plus).leaf_count == 2

    def test_unbounded_alternations(self, even_length):
        with pytest.raises(PreconditionError, match="unbounded"):
            alternation_decomposition(even_length)


class TestConstantDecomposition:
    """Tests for the suffix decomposition of constant-space languages."""

    def test_ends_a(self, ends_a):
        certificate = constant_decomposition(ends_a)
        assert certificate.leaf_count == 3
        assert equivalent(certificate.evaluate(), ends_a)

    def test_length_language_is_a_single_leaf(self, even_length):
        assert constant_decomposition(even_length).leaf_count == 1

    def test_non_constant_rejected(self, starts_a):
        with pytest.raises(PreconditionError, match="constant"):
            constant_decomposition(starts_a)
