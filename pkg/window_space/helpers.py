"""Helper functions for words, bit strings and codes."""

import hashlib
import itertools
from collections.abc import Iterable, Iterator, Sequence
from pathlib import Path

from .models import Alphabet, Word

_FIRST_BIT = {"0": "10", "1": "11"}
_OTHER_BIT = {"0": "00", "1": "01"}


def as_word(word: Iterable[str]) -> Word:
    """Normalize a word to a tuple of tokens; a plain string is split per character."""
    return tuple(word)


def reverse_word(word: Sequence[str]) -> Word:
    return tuple(reversed(word))


def format_word(word: Sequence[str]) -> str:
    """Render a word for text output: single-character tokens are joined, others spaced."""
    if not word:
        return "ε"
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return " ".join(word)


def words_of_length(alphabet: Alphabet, n: int) -> Iterator[Word]:
    """All words of length n in lexicographic order (canonical symbol order)."""
    return itertools.product(alphabet.symbols, repeat=n)


def words_up_to(alphabet: Alphabet, n: int) -> Iterator[Word]:
    """All words of length <= n in length-lexicographic order."""
    for length in range(n + 1):
        yield from words_of_length(alphabet, length)


def count_words_up_to(alphabet_size: int, n: int) -> int:
    return sum(alphabet_size**length for length in range(n + 1))


def floor_log2(x: int) -> int:
    """⌊log₂ x⌋ for x >= 1."""
    if x < 1:
        raise ValueError(f"floor_log2 needs x >= 1, got {x}")
    return x.bit_length() - 1


def ceil_log2(x: int) -> int:
    """⌈log₂ x⌉ for x >= 1 (0 for x == 1)."""
    if x < 1:
        raise ValueError(f"ceil_log2 needs x >= 1, got {x}")
    return (x - 1).bit_length()


def to_bits(value: int, width: int) -> str:
    """Fixed-width binary; width 0 encodes only the value 0."""
    if value < 0 or value >= 1 << width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return format(value, f"0{width}b") if width else ""


def length_lex_code(index: int) -> str:
    """The index-th bit string in length-lexicographic order: "", "0", "1", "00", ...

    The code of index i has length ⌊log₂(i+1)⌋.
    """
    if index < 0:
        raise ValueError(f"code index must be >= 0, got {index}")
    return bin(index + 1)[3:]


def encode_tuple(parts: Sequence[str]) -> str:
    """Block code for a tuple of non-empty bit strings.

    Each part's first bit maps 0->10, 1->11 and every other bit maps 0->00,
    1->01, so the output has exactly twice as many bits and part boundaries
    are recoverable.
    """
    out = []
    for part in parts:
        if not part:
            raise ValueError("encode_tuple parts must be non-empty")
        if any(bit not in "01" for bit in part):
            raise ValueError(f"not a bit string: {part!r}")
        out.append(_FIRST_BIT[part[0]])
        out.extend(_OTHER_BIT[bit] for bit in part[1:])
    return "".join(out)


def decode_tuple(bits: str) -> tuple[str, ...]:
    """Left inverse of encode_tuple."""
    if len(bits) % 2:
        raise ValueError("block-coded string must have even length")
    parts: list[list[str]] = []
    for i in range(0, len(bits), 2):
        marker, bit = bits[i], bits[i + 1]
        if marker == "1":
            parts.append([bit])
        elif not parts:
            raise ValueError("block-coded string must start with a part marker")
        else:
            parts[-1].append(bit)
    return tuple("".join(p) for p in parts)


def file_digest(path: Path) -> str:
    """SHA256 of a file's bytes, used as the input digest in reports."""
    sha256 = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            sha256.update(chunk)
    return sha256.hexdigest()
