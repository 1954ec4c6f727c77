"""Shared fixtures for window-space tests: a small corpus of minimal DFAs."""

import os
import random
from pathlib import Path

import pytest

# Keep tracing off and the configuration at its defaults during collection
os.environ.pop("WINDOW_SPACE_TRACING_ENABLED", None)

from window_space import state  # noqa: E402
from window_space.automata import empty_dfa, minimize, universal_dfa  # noqa: E402
from window_space.families import gen_Lk  # noqa: E402
from window_space.models import Alphabet, Dfa  # noqa: E402

state.configure()

FIXTURES = Path(__file__).parent / "fixtures"

AB = Alphabet(("a", "b"))
BITS = Alphabet(("0", "1"))


def make_dfa(alphabet, initial, final, edges):
    """Minimal DFA from 'p a q' edge strings; missing edges go to a rejecting sink."""
    transitions = {}
    states = [initial]
    for edge in edges:
        p, a, q = edge.split()
        transitions[(p, a)] = q
        for name in (p, q):
            if name not in states:
                states.append(name)
    return minimize(Dfa.build(alphabet, states, initial, transitions, final))


def random_dfa(alphabet, size, rng):
    """Minimal DFA of a random complete transition table with random final states."""
    delta = tuple(tuple(rng.randrange(size) for _ in alphabet.symbols) for _ in range(size))
    final = frozenset(q for q in range(size) if rng.random() < 0.5)
    return minimize(Dfa(alphabet, tuple(f"r{q}" for q in range(size)), 0, delta, final))


@pytest.fixture
def random_dfas():
    """Twenty minimal DFAs from random 4-state tables over {a, b}, fixed seed."""
    rng = random.Random(20)
    return [random_dfa(AB, 4, rng) for _ in range(20)]


@pytest.fixture
def fixtures_dir():
    """Directory holding automaton, stream and malformed input files."""
    return FIXTURES


@pytest.fixture
def ab():
    return AB


@pytest.fixture
def starts_a():
    """aΣ*: linear in both models."""
    return make_dfa(AB, "s", ["y"], ["s a y", "s b n", "y a y", "y b y", "n a n", "n b n"])


@pytest.fixture
def ends_a():
    """Σ*a: constant fixed-size, logarithmic variable-size."""
    return make_dfa(AB, "p", ["q"], ["p a q", "p b p", "q a q", "q b p"])


@pytest.fixture
def ends_b():
    return make_dfa(AB, "p", ["q"], ["p b q", "p a p", "q b q", "q a p"])


@pytest.fixture
def even_length():
    return make_dfa(AB, "e", ["e"], ["e a o", "e b o", "o a e", "o b e"])


@pytest.fixture
def even_a():
    """Even number of a's: linear in both models."""
    return make_dfa(AB, "e", ["e"], ["e a o", "e b e", "o a e", "o b o"])


@pytest.fixture
def contains_ab():
    return make_dfa(AB, "s", ["f"], ["s a x", "s b s", "x a x", "x b f", "f a f", "f b f"])


@pytest.fixture
def a_star():
    return make_dfa(AB, "s", ["s"], ["s a s"])


@pytest.fixture
def empty():
    return empty_dfa(AB)


@pytest.fixture
def universal():
    return universal_dfa(AB)


@pytest.fixture
def L1():
    return minimize(gen_Lk(1))


@pytest.fixture
def L2():
    return minimize(gen_Lk(2))


@pytest.fixture
def zero_plus():
    """0⁺ over {0, 1}: at most two alternations."""
    return make_dfa(BITS, "s", ["f"], ["s 0 f", "f 0 f"])
