"""Model vectors and their algebra.

A model vector ``v`` of length n predicts the next term of a segment from its
last n terms by a right-aligned dot product. The leftmost coefficient is the
*trailing* one, the rightmost the *leading* one. Vectors are always stored in
canonical form: left zeros are trimmed, so a non-empty vector has a non-zero
trailing coefficient and the empty vector is the identity under ``compose``.
"""
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator

from .errors import InsufficientTermsError, LengthMismatchError, RationalParseError
from .numeric import Rational, parse_rational, render_rational
from .sequences import SequenceSegment

_SEPARATORS = re.compile(r"[,\s]+")


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True)
class ModelVector:
    coefficients: tuple[Rational, ...] = ()

    def __post_init__(self):
        coefficients = [Fraction(c) for c in self.coefficients]
        while coefficients and coefficients[0] == 0:
            coefficients.pop(0)
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def of(cls, *values) -> "ModelVector":
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self) -> Iterator[Rational]:
        return iter(self.coefficients)

    def __getitem__(self, index):
        return self.coefficients[index]

    @property
    def is_identity(self) -> bool:
        return not self.coefficients

    @property
    def trailing(self) -> Rational:
        return self.coefficients[0]

    @property
    def leading(self) -> Rational:
        return self.coefficients[-1]

    def __str__(self) -> str:
        return render_vector(self)


IDENTITY = ModelVector()


def parse_vector(text: str) -> ModelVector:
    """Parse ``(c1, c2, ...)``; the parentheses are optional."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    elif "(" in body or ")" in body:
        raise RationalParseError("unbalanced parentheses in model vector", text.strip())
    tokens = [tok for tok in _SEPARATORS.split(body.strip()) if tok]
    return ModelVector(tuple(parse_rational(tok, position=i) for i, tok in enumerate(tokens, 1)))


def render_vector(v: ModelVector) -> str:
    return "(" + ", ".join(render_rational(c) for c in v.coefficients) + ")"


def _dot(v: ModelVector, terms: tuple[Rational, ...]) -> Rational:
    return sum((c * t for c, t in zip(v.coefficients, terms)), Fraction(0))


def apply(v: ModelVector, p: SequenceSegment) -> Rational:
    """Dot product of ``v`` with the last ``len(v)`` terms of ``p``."""
    if v.is_identity:
        raise InsufficientTermsError("cannot apply the empty model vector")
    if len(p) < len(v):
        raise InsufficientTermsError(
            f"insufficient terms: vector of length {len(v)} needs {len(v)}, segment has {len(p)}"
        )
    return _dot(v, p.terms[len(p) - len(v):])


def passes(v: ModelVector, p: SequenceSegment) -> bool:
    if len(p) != len(v) + 1:
        raise LengthMismatchError(
            f"passing needs a segment of length {len(v) + 1}, got {len(p)}"
        )
    return apply(v, SequenceSegment(p.terms[:-1])) == p.terms[-1]


def consistent(v: ModelVector, p: SequenceSegment) -> bool:
    """True iff ``v`` passes on every contiguous window of length ``len(v)+1``."""
    n = len(v)
    if n >= len(p):
        raise InsufficientTermsError(
            f"consistency needs more terms than the vector: |v|={n}, |p|={len(p)}"
        )
    if v.is_identity:
        raise InsufficientTermsError("cannot test the empty model vector")
    terms = p.terms
    return all(_dot(v, terms[i:i + n]) == terms[i + n] for i in range(len(terms) - n))


# a composed vector recognizes every sum of its factors' solutions
recognizes = consistent


def compose(a: ModelVector, b: ModelVector) -> ModelVector:
    """Model composition ``a ⊗ b``.

    Both operands are left-padded with zeros to a common length n; the result
    is ``0n·a + 0n·b - f`` where ``f[m] = sum(a_j * b_k for j + k = m + 1)``
    for m < 2n and ``f[2n] = 0``, then trimmed.
    """
    if a.is_identity:
        return b
    if b.is_identity:
        return a
    n = max(len(a), len(b))
    a_pad = (Fraction(0),) * (n - len(a)) + a.coefficients
    b_pad = (Fraction(0),) * (n - len(b)) + b.coefficients

    c = []
    for m in range(1, 2 * n + 1):
        value = Fraction(0)
        if m > n:
            value += a_pad[m - n - 1] + b_pad[m - n - 1]
        if m < 2 * n:
            f = Fraction(0)
            for j in range(max(1, m + 1 - n), min(n, m) + 1):
                f += a_pad[j - 1] * b_pad[m - j]
            value -= f
        c.append(value)
    return ModelVector(tuple(c))


def compose_all(vectors: Iterable[ModelVector]) -> ModelVector:
    return reduce(compose, vectors, IDENTITY)


def characteristic(v: ModelVector) -> list[Rational]:
    """Coefficients, lowest degree first, of ``x^n - v_n x^(n-1) - ... - v_1``."""
    return [-c for c in v.coefficients] + [Fraction(1)]


def deconvolve(g: ModelVector, a: ModelVector) -> ModelVector | None:
    """The ``b`` with ``a ⊗ b == g``, or None when ``a`` is not a factor of ``g``.

    Solved from the trailing coefficient upward: each quotient coefficient
    comes from one equation of the triangular system, and the remaining
    equations must then hold exactly.
    """
    if a.is_identity:
        return g
    if len(a) > len(g):
        return None
    big = characteristic(g)
    small = characteristic(a)
    n = len(a)
    quotient: list[Rational] = []
    for k in range(len(g) - n + 1):
        acc = big[k]
        for i in range(1, min(k, n) + 1):
            acc -= small[i] * quotient[k - i]
        quotient.append(acc / small[0])

    for k in range(len(g) - n + 1, len(big)):
        total = sum(
            (small[i] * quotient[k - i] for i in range(max(0, k - len(quotient) + 1), min(k, n) + 1)),
            Fraction(0),
        )
        if total != big[k]:
            return None
    return ModelVector(tuple(-q for q in quotient[:-1]))


def subsumes(g: ModelVector, a: ModelVector) -> bool:
    """True iff ``a`` is a factor of ``g`` under composition."""
    return deconvolve(g, a) is not None


def extend(v: ModelVector, p: SequenceSegment, k: int, direction: Direction | str) -> SequenceSegment:
    """Continue ``p`` by ``k`` terms using the recurrence of ``v``."""
    direction = Direction(direction)
    n = len(v)
    if v.is_identity:
        raise InsufficientTermsError("cannot extend with the empty model vector")
    if len(p) < n:
        raise InsufficientTermsError(
            f"insufficient terms: vector of length {n} needs {n}, segment has {len(p)}"
        )
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")

    terms = list(p.terms)
    if direction is Direction.FORWARD:
        for _ in range(k):
            terms.append(_dot(v, tuple(terms[-n:])))
    else:
        # solve v_1*y + sum(v_i * t_(i-1)) = t_n for the earliest unknown y
        for _ in range(k):
            rest = sum((v.coefficients[i] * terms[i - 1] for i in range(1, n)), Fraction(0))
            terms.insert(0, (terms[n - 1] - rest) / v.trailing)
    return SequenceSegment(tuple(terms))
