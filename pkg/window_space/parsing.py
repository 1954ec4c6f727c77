"""Automaton, stream and certificate file formats.

Automaton text format, one item per line::

    type: dfa
    alphabet: a b
    states: p q
    initial: p
    final: q
    p a -> q

A token starting with '#' begins a comment. The JSON mirror carries the
same keys plus "transitions" as [source, symbol, target] triples.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Literal

from .classify import ConstantWitness, CriticalTuple, NonWellBehavedWitness
from .constants import AUTOMATON_KEYS, AUTOMATON_TYPES, COMMENT_PREFIX, POP_TOKEN, TRANSITION_ARROW
from .decompose import (
    ComplementNode,
    DecompositionCertificate,
    Formula,
    IntersectionNode,
    Leaf,
    LeafTag,
    UnionNode,
)
from .errors import ParseError
from .models import Alphabet, Dfa, Nfa
from .streaming import POP, StreamToken

logger = logging.getLogger(__name__)

OutputFormat = Literal["text", "json"]


# --- automata -----------------------------------------------------------------------


def _build(
    fields: dict[str, list[str]],
    transitions: list[tuple[str, str, str, int | None]],
) -> Dfa | Nfa:
    for key in AUTOMATON_KEYS:
        if key not in fields:
            raise ParseError(f"missing '{key}' entry")
    if len(fields["type"]) != 1 or fields["type"][0] not in AUTOMATON_TYPES:
        raise ParseError(f"type must be one of {', '.join(AUTOMATON_TYPES)}")
    kind = fields["type"][0]
    try:
        alphabet = Alphabet(tuple(fields["alphabet"]))
    except ValueError as e:
        raise ParseError(f"bad alphabet: {e}") from None

    states = fields["states"]
    declared = set(states)
    for name in fields["initial"] + fields["final"]:
        if name not in declared:
            raise ParseError(f"undeclared state {name!r}")
    for p, a, q, line in transitions:
        for name in (p, q):
            if name not in declared:
                raise ParseError(f"undeclared state {name!r}", line)
        if a not in alphabet:
            raise ParseError(f"symbol {a!r} is not in the alphabet", line)

    try:
        if kind == "nfa":
            return Nfa.from_names(
                alphabet, states, fields["initial"], [(p, a, q) for p, a, q, _ in transitions], fields["final"]
            )
        if len(fields["initial"]) != 1:
            raise ParseError("a dfa needs exactly one initial state")
        table: dict[tuple[str, str], str] = {}
        for p, a, q, line in transitions:
            if (p, a) in table and table[(p, a)] != q:
                raise ParseError(f"second transition for ({p}, {a}) in a dfa", line)
            table[(p, a)] = q
        return Dfa.build(alphabet, states, fields["initial"][0], table, fields["final"])
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None


def parse_automaton_text(text: str) -> Dfa | Nfa:
    fields: dict[str, list[str]] = {}
    transitions: list[tuple[str, str, str, int | None]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        for i, token in enumerate(tokens):
            if token.startswith(COMMENT_PREFIX):
                tokens = tokens[:i]
                break
        if not tokens:
            continue
        head = tokens[0]
        if head.endswith(":") and head[:-1] in AUTOMATON_KEYS:
            key = head[:-1]
            if key in fields:
                raise ParseError(f"duplicate '{key}' entry", lineno)
            fields[key] = tokens[1:]
        elif len(tokens) == 4 and tokens[2] == TRANSITION_ARROW:
            transitions.append((tokens[0], tokens[1], tokens[3], lineno))
        else:
            raise ParseError(f"expected 'key: values' or '<state> <symbol> -> <state>', got {raw.strip()!r}", lineno)
    return _build(fields, transitions)


def automaton_from_dict(data: dict) -> Dfa | Nfa:
    if not isinstance(data, dict):
        raise ParseError("automaton must be a JSON object")
    fields = {}
    for key in AUTOMATON_KEYS:
        if key not in data:
            raise ParseError(f"missing '{key}' entry")
        value = data[key]
        fields[key] = [value] if isinstance(value, str) else [str(v) for v in value]
    transitions = []
    for item in data.get("transitions", []):
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError(f"transition must be [source, symbol, target], got {item!r}")
        transitions.append((str(item[0]), str(item[1]), str(item[2]), None))
    return _build(fields, transitions)


def parse_automaton(text: str) -> Dfa | Nfa:
    """Parse either format; JSON is recognized by a leading '{'."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno) from None
        return automaton_from_dict(data)
    return parse_automaton_text(text)


def load_automaton(path: Path | str) -> Dfa | Nfa:
    text = Path(path).read_text(encoding="utf-8")
    automaton = parse_automaton(text)
    logger.debug(f"Loaded {type(automaton).__name__} with {automaton.size} states from {path}")
    return automaton


def format_automaton(a: Dfa | Nfa, fmt: OutputFormat = "text") -> str:
    data = a.to_dict()
    if fmt == "json":
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    lines = [f"{key}: {' '.join(data[key]) if isinstance(data[key], list) else data[key]}".rstrip() for key in AUTOMATON_KEYS]
    lines.extend(f"{p} {a} {TRANSITION_ARROW} {q}" for p, a, q in data["transitions"])
    return "\n".join(lines) + "\n"


# --- streams -------------------------------------------------------------------------


def parse_stream(text: str, alphabet: Alphabet) -> list[StreamToken]:
    """Whitespace-separated tokens; '!' is Pop."""
    tokens: list[StreamToken] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        for token in raw.split():
            if token == POP_TOKEN:
                tokens.append(POP)
            elif token in alphabet:
                tokens.append(token)
            else:
                raise ParseError(f"stream token {token!r} is not in the alphabet", lineno)
    return tokens


def load_stream(path: Path | str, alphabet: Alphabet) -> list[StreamToken]:
    return parse_stream(Path(path).read_text(encoding="utf-8"), alphabet)


# --- certificates and witnesses ----------------------------------------------------------


def _dfa_from(data: object) -> Dfa:
    automaton = automaton_from_dict(data)  # type: ignore[arg-type]
    if not isinstance(automaton, Dfa):
        raise ParseError("expected a dfa")
    return automaton


def _word(data: dict, key: str) -> tuple[str, ...]:
    value = data.get(key)
    if not isinstance(value, list):
        raise ParseError(f"'{key}' must be a list of symbol tokens")
    return tuple(str(v) for v in value)


def formula_from_dict(data: dict) -> Formula:
    op = data.get("op")
    if op == "leaf":
        try:
            tag = LeafTag(data.get("tag"))
        except ValueError:
            raise ParseError(f"unknown leaf tag {data.get('tag')!r}") from None
        return Leaf(_dfa_from(data.get("automaton")), tag, data.get("k"))
    if op == "complement":
        return ComplementNode(formula_from_dict(data["part"]))
    if op in ("union", "intersection"):
        parts = tuple(formula_from_dict(p) for p in data.get("parts", []))
        return UnionNode(parts) if op == "union" else IntersectionNode(parts)
    raise ParseError(f"unknown formula node {op!r}")


def certificate_document(certificate: DecompositionCertificate) -> dict:
    return {"kind": "certificate", **certificate.to_dict()}


def witness_document(witness: CriticalTuple | ConstantWitness | NonWellBehavedWitness) -> dict:
    kinds = {
        CriticalTuple: "critical-tuple",
        ConstantWitness: "constant-witness",
        NonWellBehavedWitness: "non-well-behaved",
    }
    return {"kind": kinds[type(witness)], "automaton": witness.dfa.to_dict(), **witness.to_dict()}


def load_document(data: dict) -> DecompositionCertificate | CriticalTuple | ConstantWitness | NonWellBehavedWitness:
    """Rebuild a certificate or witness; construction re-runs every check."""
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    kind = data.get("kind")
    if kind == "certificate":
        return DecompositionCertificate(_dfa_from(data.get("target")), formula_from_dict(data.get("formula", {})))
    dfa = _dfa_from(data.get("automaton"))
    if kind == "critical-tuple":
        return CriticalTuple(dfa, _word(data, "u0"), _word(data, "u1"), _word(data, "w0"), _word(data, "w1"))
    if kind == "constant-witness":
        return ConstantWitness(dfa, _word(data, "x"), _word(data, "y"), _word(data, "z"))
    if kind == "non-well-behaved":
        index = {name: i for i, name in enumerate(dfa.states)}
        try:
            p, p0, p1 = (index[data[key]] for key in ("p", "p0", "p1"))
        except KeyError as e:
            raise ParseError(f"unknown or missing state {e}") from None
        return NonWellBehavedWitness(
            dfa,
            _word(data, "u"),
            _word(data, "u0"),
            _word(data, "v0"),
            _word(data, "u1"),
            _word(data, "v1"),
            p,
            p0,
            p1,
        )
    raise ParseError(f"unknown document kind {kind!r}")


def load_document_file(path: Path | str):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno) from None
    return load_document(data)
