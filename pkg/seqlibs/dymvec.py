"""Dynamic model vector construction.

Candidate theories are built from the stable shortest first. Each candidate's
model vector is tested for consistency with the problem, and the first
consistent one wins. Interleaved problems are tried as two parity
subsequences sharing one model vector.

Within a length class candidates are ordered by theory size, then by the
stable's preference ranks of their factors. Testing is vectorised and exact:
candidate vectors become rows of an integer numerator matrix with one common
denominator per row, problems are scaled to integers, and a window passes iff
``numerators @ window == denominator * next_term``.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import isprime, nextprime

from .errors import SequenceError
from .matrix import WeightVector
from .modelvector import ModelVector, apply, consistent
from .numeric import Rational, common_denominator
from .sequences import Parity, SequenceSegment, deinterleave
from .stable import Stable
from .theory import Theory, theory_weights

logger = logging.getLogger(__name__)

PRIMES_LIMIT = 10 ** 4
MIN_PRIMES = 4


class Method(str, Enum):
    SEARCH = "search"
    INTERLEAVED = "interleaved"
    PRIMES = "primes"
    FALLBACK = "fallback"


@dataclass(frozen=True)
class Solution:
    prediction: Rational
    method: Method
    description: tuple[str, ...]
    theory: Theory | None = None
    vector: ModelVector | None = None
    weights: WeightVector | None = field(default=None, compare=False)

    @property
    def interleaved(self) -> bool:
        return self.method is Method.INTERLEAVED

    @property
    def size(self) -> int:
        if self.theory is None:
            return len(self.description)
        size = self.theory.size
        return 2 * size if self.interleaved else size


@dataclass(frozen=True)
class NoSolution:
    reason: str = "no solution"

    def __bool__(self) -> bool:
        return False


# --- candidate enumeration ---
#
# Candidates are grown one factor at a time as integer characteristic
# polynomials; a Theory is only built for the rows a caller asks about.

Factors = tuple[tuple[int, int], ...]
Poly = tuple[int, ...]


def _integer_poly(v: ModelVector) -> Poly:
    """Primitive integer form of ``x^n - v_n x^(n-1) - ... - v_1``, low to high."""
    scale = common_denominator(v.coefficients)
    poly = [int(-c * scale) for c in v.coefficients] + [scale]
    divisor = math.gcd(*poly)
    return tuple(c // divisor for c in poly)


def _poly_mul(a: Poly, b: Poly) -> Poly:
    product = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            product[i + j] += x * y
    return tuple(product)


@lru_cache(maxsize=32)
def _multisets(stable: Stable, k: int) -> tuple[tuple[Factors, Poly], ...]:
    """Every multiset of stable entries whose copies sum to length ``k``.

    Factors are ``(rank, count)`` pairs in rank order. Each multiset is the
    extension of a shorter one by a single copy of its highest ranked base.
    """
    found = []
    for rank, base in enumerate(stable.ordered):
        rest = k - len(base)
        if rest < 0:
            continue
        prefixes = _multisets(stable, rest) if rest else (((), (1,)),)
        base_poly = _integer_poly(base.vector)
        for factors, poly in prefixes:
            last_rank, last_count = factors[-1] if factors else (-1, 0)
            if rank > last_rank:
                grown = factors + ((rank, 1),)
            elif rank == last_rank and last_count < base.max_multiplicity:
                grown = factors[:-1] + ((rank, last_count + 1),)
            else:
                continue
            found.append((grown, _poly_mul(poly, base_poly)))
    return tuple(found)


def _search_key(factors: Factors) -> tuple:
    return len(factors), tuple(r for r, _ in factors), tuple(c for _, c in factors)


@dataclass(frozen=True, eq=False)
class CandidateTable:
    """Candidate model vectors of one length, as integer rows in search order."""

    stable: Stable
    factors: tuple[Factors, ...]
    numerators: np.ndarray
    denominators: np.ndarray

    def __len__(self) -> int:
        return len(self.factors)

    def theory(self, row: int) -> Theory:
        ordered = self.stable.ordered
        return Theory(tuple((ordered[rank], count) for rank, count in self.factors[row]))

    def vector(self, row: int) -> ModelVector:
        d = int(self.denominators[row])
        return ModelVector(tuple(Fraction(int(n), d) for n in self.numerators[row]))

    def consistent_mask(self, scaled: np.ndarray) -> np.ndarray:
        """Rows consistent with an integer-scaled problem."""
        k = self.numerators.shape[1]
        windows = np.array([scaled[j:j + k] for j in range(len(scaled) - k)], dtype=object)
        targets = scaled[k:]
        predicted = self.numerators.dot(windows.T)
        expected = np.outer(self.denominators, targets)
        return np.all(predicted == expected, axis=1)


@lru_cache(maxsize=32)
def candidate_table(stable: Stable, k: int) -> CandidateTable:
    """Candidates of length ``k``, one per distinct model vector, in search order."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    seen: set[Poly] = set()
    factors, numerators, denominators = [], [], []
    for choice, poly in sorted(_multisets(stable, k), key=lambda item: _search_key(item[0])):
        if poly in seen:
            continue
        seen.add(poly)
        factors.append(choice)
        numerators.append([-c for c in poly[:k]])
        denominators.append(poly[k])
    logger.debug("%d candidate theories of length %d", len(factors), k)
    return CandidateTable(
        stable,
        tuple(factors),
        np.array(numerators, dtype=object).reshape(len(factors), k),
        np.array(denominators, dtype=object),
    )


@lru_cache(maxsize=8)
def enumerate_candidates(stable: Stable, k: int) -> tuple[Theory, ...]:
    """All theories of total length ``k``, one per distinct model vector, in search order."""
    table = candidate_table(stable, k)
    return tuple(table.theory(row) for row in range(len(table)))


def _scaled(p: SequenceSegment) -> np.ndarray:
    scale = common_denominator(p.terms)
    return np.array([int(t * scale) for t in p.terms], dtype=object)


def _search_cap(lengths: int, max_length: int | None) -> int:
    return lengths if max_length is None else min(lengths, max_length)


# --- solving ---

def _weights(p: SequenceSegment, theory: Theory) -> WeightVector | None:
    try:
        return theory_weights(p, theory)[0]
    except SequenceError as e:
        logger.warning("could not recover weights for %s: %s", theory, e)
        return None


def solve_plain(p: SequenceSegment, stable: Stable, max_length: int | None = None) -> Solution | None:
    """The shortest candidate consistent with ``p``, or None."""
    if len(p) < 2:
        return None
    scaled = _scaled(p)
    for k in range(1, _search_cap(len(p) - 1, max_length) + 1):
        table = candidate_table(stable, k)
        if not len(table):
            continue
        hits = np.flatnonzero(table.consistent_mask(scaled))
        if len(hits):
            theory = table.theory(int(hits[0]))
            logger.debug("plain search: %s %s at length %d", theory.derived, theory, k)
            return Solution(
                prediction=apply(theory.derived, p),
                method=Method.SEARCH,
                description=tuple(theory.description),
                theory=theory,
                vector=theory.derived,
                weights=_weights(p, theory),
            )
    return None


def solve_interleaved(p: SequenceSegment, stable: Stable, max_length: int | None = None) -> Solution | None:
    """The shortest candidate consistent with both parity subsequences, or None."""
    if len(p) < 4:
        return None
    odd, even, next_parity = deinterleave(p)
    target = odd if next_parity is Parity.ODD else even
    scaled_odd, scaled_even = _scaled(odd), _scaled(even)
    cap = _search_cap(min(len(odd), len(even)) - 1, max_length)
    for k in range(1, cap + 1):
        table = candidate_table(stable, k)
        if not len(table):
            continue
        mask = table.consistent_mask(scaled_odd) & table.consistent_mask(scaled_even)
        hits = np.flatnonzero(mask)
        if len(hits):
            theory = table.theory(int(hits[0]))
            logger.debug("interleaved search: %s %s at length %d", theory.derived, theory, k)
            return Solution(
                prediction=apply(theory.derived, target),
                method=Method.INTERLEAVED,
                description=tuple(theory.description),
                theory=theory,
                vector=theory.derived,
                weights=_weights(target, theory),
            )
    return None


def recognize_primes(p: SequenceSegment) -> Rational | None:
    """Next prime when ``p`` is a run of consecutive primes below the limit."""
    if len(p) < MIN_PRIMES:
        return None
    if any(t.denominator != 1 or not 2 <= t < PRIMES_LIMIT for t in p.terms):
        return None
    terms = [int(t) for t in p.terms]
    if not isprime(terms[0]):
        return None
    for prev, cur in zip(terms, terms[1:]):
        if nextprime(prev) != cur:
            return None
    return Fraction(int(nextprime(terms[-1])))


def solve(p: SequenceSegment, stable: Stable, max_length: int | None = None) -> Solution | NoSolution:
    if stable.primes_recognizer:
        following = recognize_primes(p)
        if following is not None:
            return Solution(prediction=following, method=Method.PRIMES, description=("primes",))

    plain = solve_plain(p, stable, max_length)
    interleaved = solve_interleaved(p, stable, max_length)
    if plain and interleaved:
        return interleaved if interleaved.size < plain.size else plain
    if plain or interleaved:
        return plain or interleaved

    fallback = stable.fallback_vector
    if fallback is not None and len(fallback) <= len(p):
        logger.debug("falling back to %s", fallback)
        return Solution(
            prediction=apply(fallback, p),
            method=Method.FALLBACK,
            description=("fallback",),
            vector=fallback,
        )
    return NoSolution()


def is_sound(solution: Solution, p: SequenceSegment) -> bool:
    """Search results must be consistent with what they were found on."""
    if solution.method is Method.SEARCH:
        return consistent(solution.vector, p)
    if solution.method is Method.INTERLEAVED:
        odd, even, _ = deinterleave(p)
        return consistent(solution.vector, odd) and consistent(solution.vector, even)
    return True


def minimal_consistent_length(p: SequenceSegment, stable: Stable) -> int | None:
    """Shortest candidate length consistent with ``p``, by plain rescan."""
    for k in range(1, len(p)):
        table = candidate_table(stable, k)
        if any(consistent(table.vector(row), p) for row in range(len(table))):
            return k
    return None
