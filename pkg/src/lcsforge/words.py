"""Freely reduced words over an indexed generator alphabet.

A letter is a signed integer: ``+i`` is the generator ``x_i`` (``i >= 1``)
and ``-i`` is its inverse.  Every ``Word`` is stored freely reduced, so group
equality is plain tuple equality.  The commutator convention throughout is
``[a, b] = a b a^-1 b^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

__all__ = [
    "GeneratorSymbol",
    "Word",
    "EPSILON",
    "word",
    "reduce_letters",
    "concat",
    "invert",
    "commutator",
    "support",
    "format_word",
    "parse_word",
]


class GeneratorSymbol(NamedTuple):
    """A single letter: generator index (>= 1) and sign (+1 or -1)."""

    index: int
    sign: int

    def encoded(self) -> int:
        return self.index * self.sign


Letter = Union[int, GeneratorSymbol]


def _encode(letter: Letter) -> int:
    if isinstance(letter, GeneratorSymbol):
        if letter.index < 1:
            raise ValueError(f"generator index must be >= 1, got {letter.index}")
        if letter.sign not in (1, -1):
            raise ValueError(f"generator sign must be +1 or -1, got {letter.sign}")
        return letter.index * letter.sign
    v = int(letter)
    if v == 0:
        raise ValueError("0 is not a valid signed letter")
    return v


def reduce_letters(letters: Iterable[Letter]) -> tuple[int, ...]:
    """Freely reduce a letter sequence; the result has no adjacent v, -v pair."""
    stack: list[int] = []
    for raw in letters:
        v = _encode(raw)
        if stack and stack[-1] == -v:
            stack.pop()
        else:
            stack.append(v)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty tuple is the identity."""

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError("letters are not freely reduced; use word()")
        if any(v == 0 for v in self.letters):
            raise ValueError("0 is not a valid signed letter")

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def symbols(self) -> tuple[GeneratorSymbol, ...]:
        return tuple(
            GeneratorSymbol(abs(v), 1 if v > 0 else -1) for v in self.letters
        )

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


EPSILON = Word()


def word(letters: Iterable[Letter]) -> Word:
    """Reduce an arbitrary letter sequence into a Word."""
    return Word(reduce_letters(letters))


def concat(*words: Word) -> Word:
    out: list[int] = []
    for w in words:
        for v in w.letters:
            if out and out[-1] == -v:
                out.pop()
            else:
                out.append(v)
    return Word(tuple(out))


def invert(u: Word) -> Word:
    return Word(tuple(-v for v in reversed(u.letters)))


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return concat(u, v, invert(u), invert(v))


def support(u: Word) -> frozenset[int]:
    """The set of generator indices occurring in u."""
    return frozenset(abs(v) for v in u.letters)


def format_word(u: Word) -> str:
    """Serialize: ``x3`` for a generator, ``X3`` for its inverse, ``.`` joined;
    the identity is ``e``."""
    if not u.letters:
        return "e"
    return ".".join(f"x{v}" if v > 0 else f"X{-v}" for v in u.letters)


_LETTER_RE = re.compile(r"^([xX])(\d+)$")


def parse_word(text: str) -> Word:
    text = text.strip()
    if text == "e" or text == "":
        return EPSILON
    letters = []
    for tok in text.split("."):
        m = _LETTER_RE.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        idx = int(m.group(2))
        if idx < 1:
            raise ValueError(f"bad generator index in {tok!r}")
        letters.append(idx if m.group(1) == "x" else -idx)
    return word(letters)
