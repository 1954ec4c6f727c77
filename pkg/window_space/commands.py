"""Command implementations for the window-space CLI.

Each cmd_* function loads its inputs, runs the library operation inside a
`cli.<command>` span and returns a Report. Rendering and exit codes are the
caller's business; nothing here writes to stdout.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import random
import time
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from functools import wraps
from pathlib import Path
from typing import Literal

from . import state
from .automata import as_nfa, determinize, minimize
from .classify import PROBLEMS, Classification, Problem, classify_dfa, classify_nfa, decide
from .constants import VERIFY_RANDOM_TOKENS
from .decompose import (
    DecompositionCertificate,
    alternation_decomposition,
    constant_decomposition,
    log_class_decomposition,
)
from .errors import InternalConsistencyError, PreconditionError
from .exactspace import constant_fixed_algorithm, optimal_variable_algorithm, space_table, sparse_fixed_algorithm
from .families import FAMILY_KINDS, FamilyKind, FamilySpec
from .helpers import file_digest, format_word
from .models import Dfa, Nfa
from .parsing import (
    OutputFormat,
    certificate_document,
    format_automaton,
    load_automaton,
    load_document_file,
    load_stream,
    witness_document,
)
from .streaming import (
    POP,
    FixedWindowSpec,
    StreamingAlgorithm,
    StreamToken,
    last_n,
    random_stream,
    reference_variable_algorithm,
    trivial_fixed_algorithm,
)
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer(__name__)

ReportFormat = Literal["text", "json", "csv"]
Algorithm = Literal["trivial", "reference", "optimal-variable", "sparse", "constant"]
ALGORITHMS: tuple[Algorithm, ...] = ("trivial", "reference", "optimal-variable", "sparse", "constant")
DecompositionKind = Literal["log", "constant", "alternation"]
DECOMPOSITION_KINDS: tuple[DecompositionKind, ...] = ("log", "constant", "alternation")

_FIXED_ALGORITHMS = ("trivial", "sparse", "constant")

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


@dataclass
class Report:
    command: str
    arguments: dict
    input_digest: str | None = None
    results: dict = field(default_factory=dict)
    text: list[str] = field(default_factory=list)
    csv_rows: list[list] | None = None
    budget_notes: list[str] = field(default_factory=list)
    timing: float | None = None
    exit_code: int = EXIT_YES

    def to_dict(self, timing: bool = False) -> dict:
        data = {
            "command": self.command,
            "arguments": self.arguments,
            "input_digest": self.input_digest,
            "results": self.results,
            "budget_notes": self.budget_notes,
        }
        if timing:
            data["timing_seconds"] = self.timing
        return data

    def render(self, fmt: ReportFormat = "text", timing: bool = False) -> str:
        """Render for stdout. Timing is included only on request so output stays reproducible."""
        if fmt == "json":
            return json.dumps(self.to_dict(timing), indent=2, ensure_ascii=False) + "\n"
        if fmt == "csv":
            if self.csv_rows is None:
                raise PreconditionError(f"{self.command} has no tabular output")
            buffer = io.StringIO()
            csv.writer(buffer, lineterminator="\n").writerows(self.csv_rows)
            return buffer.getvalue()
        lines = list(self.text)
        lines.extend(f"note: {note}" for note in self.budget_notes)
        if timing and self.timing is not None:
            lines.append(f"time: {self.timing:.3f}s")
        return "\n".join(lines) + "\n"


def _command(name: str) -> Callable[[Callable[..., Report]], Callable[..., Report]]:
    """Run a command inside its span and record wall-clock time on the report."""

    def decorator(func: Callable[..., Report]) -> Callable[..., Report]:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Report:
            with tracer.start_as_current_span(f"cli.{name}") as span:
                started = time.perf_counter()
                report = func(*args, **kwargs)
                report.timing = time.perf_counter() - started
                span.set_attribute("exit_code", report.exit_code)
                logger.debug(f"{name} finished in {report.timing:.3f}s")
                return report

        return wrapper

    return decorator


def _load(path: Path | str) -> tuple[Dfa | Nfa, str]:
    return load_automaton(path), file_digest(Path(path))


def _as_dfa(a: Dfa | Nfa) -> Dfa:
    return a if isinstance(a, Dfa) else determinize(a)


def _write_json(path: Path | str, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")


def _witness_lines(classification: Classification) -> list[str]:
    lines = []
    if classification.critical is not None:
        t = classification.critical
        lines.append(
            "critical tuple: "
            + ", ".join(f"{name}={format_word(w)}" for name, w in (("u0", t.u0), ("u1", t.u1), ("w0", t.w0), ("w1", t.w1)))
        )
    if classification.witness is not None:
        lines.append(f"linear lower bound: V(n) >= n/{classification.witness.c} - O(1)")
    if classification.constant_witness is not None:
        cw = classification.constant_witness
        lines.append(f"not constant: x={format_word(cw.x)}, y={format_word(cw.y)}, z={format_word(cw.z)}")
    return lines


def _cell(value: int | None, missing: str = "-") -> int | str:
    return missing if value is None else value


# --- classify / measure ---------------------------------------------------------------


@_command("classify")
def cmd_classify(path: Path | str) -> Report:
    automaton, digest = _load(path)
    if isinstance(automaton, Dfa):
        classification = classify_dfa(automaton)
    else:
        classification = classify_nfa(automaton)
    space = classification.space_class
    text = [
        f"fixed: {space.fixed.value}",
        f"variable: {space.variable.value}",
        f"minimal states: {classification.minimal.size}",
        *_witness_lines(classification),
    ]
    return Report(
        command="classify",
        arguments={"input": str(path)},
        input_digest=digest,
        results=classification.to_dict(),
        text=text,
    )


@_command("measure")
def cmd_measure(path: Path | str, max_n: int, pad: str | None = None) -> Report:
    if max_n < 0:
        raise PreconditionError(f"--max-n must be >= 0, got {max_n}")
    automaton, digest = _load(path)
    rows = space_table(_as_dfa(automaton), max_n, pad=pad)
    notes = [f"n={row.n}: {note}" for row in rows for note in row.notes]
    for note in notes:
        logger.warning(note)
    csv_rows: list[list] = [["n", "F_bits", "V_bits", "psi_count"]]
    csv_rows.extend([row.n, _cell(row.F_bits, ""), _cell(row.V_bits, ""), _cell(row.psi_count, "")] for row in rows)
    text = [
        f"n={row.n} F={_cell(row.F_bits)} V={_cell(row.V_bits)} psi={_cell(row.psi_count)}" for row in rows
    ]
    return Report(
        command="measure",
        arguments={"input": str(path), "max_n": max_n, "pad": pad},
        input_digest=digest,
        results={"rows": [row.to_dict() for row in rows]},
        text=text,
        csv_rows=csv_rows,
        budget_notes=notes,
    )


# --- simulate ----------------------------------------------------------------------


def build_algorithm(l: Dfa, algo: Algorithm, spec: FixedWindowSpec | None) -> StreamingAlgorithm:
    """Construct a named algorithm for minimal DFA l; fixed-size ones need a window spec."""
    if algo in _FIXED_ALGORITHMS and spec is None:
        raise PreconditionError(f"--window is required for the {algo} algorithm")
    if algo == "trivial":
        return trivial_fixed_algorithm(l, spec)  # type: ignore[arg-type]
    if algo == "sparse":
        return sparse_fixed_algorithm(l, spec)  # type: ignore[arg-type]
    if algo == "constant":
        return constant_fixed_algorithm(l, spec)  # type: ignore[arg-type]
    if algo == "reference":
        return reference_variable_algorithm(l)
    if algo == "optimal-variable":
        return optimal_variable_algorithm(l)
    raise PreconditionError(f"unknown algorithm {algo!r}; expected one of {', '.join(ALGORITHMS)}")


def _windows(tokens: Iterable[StreamToken], spec: FixedWindowSpec | None) -> Iterator[tuple[str, ...]]:
    window: list[str] = []
    for token in tokens:
        if token is POP:
            if window:
                window.pop(0)
        else:
            window.append(token)  # type: ignore[arg-type]
            if spec is not None and len(window) > spec.n:
                window.pop(0)
        yield tuple(window) if spec is None else last_n(window, spec)


def _count_mismatches(
    alg: StreamingAlgorithm, reference: StreamingAlgorithm, tokens: Iterable[StreamToken]
) -> int:
    mismatches = 0
    current, expected = alg.initial, reference.initial
    for token in tokens:
        current = alg.step(current, token)
        expected = reference.step(expected, token)
        if alg.accepts(current) != reference.accepts(expected):
            mismatches += 1
    return mismatches


@_command("simulate")
def cmd_simulate(
    path: Path | str,
    algo: Algorithm,
    stream: Path | str | None = None,
    window: int | None = None,
    pad: str | None = None,
    verify: bool = False,
) -> Report:
    automaton, digest = _load(path)
    l = minimize(_as_dfa(automaton))
    spec = None if window is None else FixedWindowSpec.for_alphabet(l.alphabet, window, pad)
    if algo not in _FIXED_ALGORITHMS:
        spec = None
    alg = build_algorithm(l, algo, spec)
    tokens = [] if stream is None else load_stream(stream, l.alphabet)

    current = alg.initial
    peak = len(alg.encode(current))
    trace = []
    text = []
    for token, win in zip(tokens, _windows(tokens, spec), strict=True):
        current = alg.step(current, token)
        bits = alg.encode(current)
        peak = max(peak, len(bits))
        accepted = alg.accepts(current)
        trace.append({"token": str(token), "window": list(win), "accept": accepted, "bits": len(bits)})
        text.append(f"{token}\t{format_word(win)}\t{'accept' if accepted else 'reject'}\t{len(bits)} bits")
    text.append(f"peak bits: {peak}")
    results: dict = {"algorithm": algo, "model": alg.model, "trace": trace, "peak_bits": peak}

    exit_code = EXIT_YES
    if verify:
        if alg.model == "fixed":
            reference = trivial_fixed_algorithm(l, spec)  # type: ignore[arg-type]
            pop_rate = 0.0
        else:
            reference = reference_variable_algorithm(l)
            pop_rate = 0.5
        rng = random.Random(state.SEED)
        extra_stream = random_stream(l.alphabet, VERIFY_RANDOM_TOKENS, rng, pop_rate=pop_rate)
        mismatches = _count_mismatches(alg, reference, tokens) + _count_mismatches(alg, reference, extra_stream)
        results["verify"] = {"random_tokens": VERIFY_RANDOM_TOKENS, "seed": state.SEED, "mismatches": mismatches}
        text.append(f"verify: {mismatches} mismatches over {len(tokens) + VERIFY_RANDOM_TOKENS} tokens")
        if mismatches:
            logger.error(f"{algo} disagrees with the reference algorithm on {mismatches} tokens")
            exit_code = EXIT_NO

    return Report(
        command="simulate",
        arguments={
            "input": str(path),
            "algo": algo,
            "stream": None if stream is None else str(stream),
            "window": window,
            "pad": pad,
            "verify": verify,
        },
        input_digest=digest,
        results=results,
        text=text,
        exit_code=exit_code,
    )


# --- decide / decompose / generate / verify ------------------------------------------------


@_command("decide")
def cmd_decide(problem: Problem, path: Path | str, out: Path | str | None = None) -> Report:
    if problem not in PROBLEMS:
        raise PreconditionError(f"unknown problem {problem!r}; expected one of {', '.join(PROBLEMS)}")
    automaton, digest = _load(path)
    result = decide(problem, automaton)
    text = [f"{problem}: {'yes' if result.answer else 'no'}"]
    if result.witness is not None:
        text.append(f"witness: {json.dumps(result.witness.to_dict(), ensure_ascii=False)}")
        if out is not None:
            _write_json(out, witness_document(result.witness))
            text.append(f"witness written to {out}")
    return Report(
        command="decide",
        arguments={"problem": problem, "input": str(path), "out": None if out is None else str(out)},
        input_digest=digest,
        results=result.to_dict(),
        text=text,
        exit_code=EXIT_YES if result.answer else EXIT_NO,
    )


_DECOMPOSERS: dict[str, Callable[[Dfa], DecompositionCertificate]] = {
    "log": log_class_decomposition,
    "constant": constant_decomposition,
    "alternation": alternation_decomposition,
}


@_command("decompose")
def cmd_decompose(path: Path | str, kind: DecompositionKind, out: Path | str | None = None) -> Report:
    if kind not in _DECOMPOSERS:
        raise PreconditionError(f"unknown decomposition {kind!r}; expected one of {', '.join(DECOMPOSITION_KINDS)}")
    automaton, digest = _load(path)
    certificate = _DECOMPOSERS[kind](minimize(_as_dfa(automaton)))
    document = certificate_document(certificate)
    results: dict = {"kind": kind, "leaves": certificate.leaf_count}
    text = [f"{kind} decomposition: {certificate.leaf_count} leaves"]
    if out is not None:
        _write_json(out, document)
        load_document_file(out)
        text.append(f"certificate written to {out}")
    else:
        results["certificate"] = document
    results["verification"] = "ok"
    text.append("verification: ok")
    return Report(
        command="decompose",
        arguments={"input": str(path), "kind": kind, "out": None if out is None else str(out)},
        input_digest=digest,
        results=results,
        text=text,
    )


@_command("generate")
def cmd_generate(
    family: FamilyKind,
    k: int | None = None,
    payload: Path | str | None = None,
    out: Path | str | None = None,
    fmt: OutputFormat = "text",
) -> Report:
    if family not in FAMILY_KINDS:
        raise PreconditionError(f"unknown family {family!r}; expected one of {', '.join(FAMILY_KINDS)}")
    payload_automaton = None if payload is None else as_nfa(load_automaton(payload))
    automaton = FamilySpec(family, k, payload_automaton).build()
    rendered = format_automaton(automaton, fmt)
    text = rendered.splitlines()
    if out is not None:
        Path(out).write_text(rendered, encoding="utf-8")
        logger.info(f"Wrote {out}")
        text = [f"{family}: {automaton.size} states written to {out}"]
    return Report(
        command="generate",
        arguments={
            "family": family,
            "k": k,
            "payload": None if payload is None else str(payload),
            "out": None if out is None else str(out),
        },
        input_digest=None if payload is None else file_digest(Path(payload)),
        results={"family": family, "states": automaton.size, "automaton": automaton.to_dict()},
        text=text,
    )


@_command("verify")
def cmd_verify(path: Path | str) -> Report:
    """Re-check a certificate or witness file; a failed check is a 'no', not an error."""
    digest = file_digest(Path(path))
    try:
        document = load_document_file(path)
    except InternalConsistencyError as e:
        logger.error(f"Verification of {path} failed: {e}")
        return Report(
            command="verify",
            arguments={"input": str(path)},
            input_digest=digest,
            results={"verification": "failed", "reason": str(e)},
            text=[f"verification: failed ({e})"],
            exit_code=EXIT_NO,
        )
    return Report(
        command="verify",
        arguments={"input": str(path)},
        input_digest=digest,
        results={"verification": "ok", "document": type(document).__name__},
        text=["verification: ok"],
    )
