import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import InsufficientTermsError, LengthMismatchError, RationalParseError
from .numeric import Rational, parse_rational, render_rational

_SEPARATORS = re.compile(r"[,\s]+")


class Parity(str, Enum):
    ODD = "odd"
    EVEN = "even"


@dataclass(frozen=True)
class SequenceSegment:
    """A finite window of an infinite sequence; position 1 is the first shown term."""

    terms: tuple[Rational, ...]

    def __post_init__(self):
        terms = tuple(Fraction(t) for t in self.terms)
        if not terms:
            raise InsufficientTermsError("a sequence segment needs at least one term")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, values: Iterable) -> "SequenceSegment":
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Rational]:
        return iter(self.terms)

    def __getitem__(self, index):
        return self.terms[index]

    def window(self, start: int, length: int) -> "SequenceSegment":
        """Terms ``start .. start+length-1`` using 1-based positions."""
        if start < 1 or start + length - 1 > len(self.terms):
            raise InsufficientTermsError(
                f"window {start}..{start + length - 1} outside segment of length {len(self.terms)}"
            )
        return SequenceSegment(self.terms[start - 1:start - 1 + length])

    def last(self, length: int) -> "SequenceSegment":
        return self.window(len(self.terms) - length + 1, length)

    def __str__(self) -> str:
        return render_segment(self)


def parse_segment(text: str) -> SequenceSegment:
    tokens = [tok for tok in _SEPARATORS.split(text.strip()) if tok]
    if not tokens:
        raise RationalParseError("empty sequence")
    return SequenceSegment(tuple(parse_rational(tok, position=i) for i, tok in enumerate(tokens, 1)))


def render_segment(p: SequenceSegment) -> str:
    return ", ".join(render_rational(t) for t in p.terms)


def segment_axpy(p: SequenceSegment, h: Rational, s: SequenceSegment) -> SequenceSegment:
    """Element-wise ``p - h*s``."""
    if len(p) != len(s):
        raise LengthMismatchError(f"segment lengths differ: {len(p)} vs {len(s)}")
    return SequenceSegment(tuple(a - h * b for a, b in zip(p.terms, s.terms)))


def deinterleave(p: SequenceSegment) -> tuple[SequenceSegment, SequenceSegment, Parity]:
    """Split into the odd-position and even-position subsequences.

    The returned parity names the subsequence that holds position ``len(p) + 1``.
    """
    if len(p) < 4:
        raise InsufficientTermsError(f"deinterleaving needs at least 4 terms, got {len(p)}")
    odd = SequenceSegment(p.terms[0::2])
    even = SequenceSegment(p.terms[1::2])
    next_parity = Parity.ODD if (len(p) + 1) % 2 == 1 else Parity.EVEN
    return odd, even, next_parity


def interleave(odd: SequenceSegment, even: SequenceSegment) -> SequenceSegment:
    if len(odd) not in (len(even), len(even) + 1):
        raise LengthMismatchError(
            f"cannot interleave {len(odd)} odd terms with {len(even)} even terms"
        )
    terms: list[Rational] = []
    for i, term in enumerate(odd.terms):
        terms.append(term)
        if i < len(even):
            terms.append(even.terms[i])
    return SequenceSegment(tuple(terms))
