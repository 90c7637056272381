"""The matrix-inversion pathway.

Problems are assumed to be linear combinations of base segments. With the
segments as the columns of a square matrix ``M`` and their following terms in
``z``, the weights are ``w = M^-1 p`` and the model vector is ``z M^-1``.
All arithmetic is exact: matrices are numpy object arrays of ``Fraction``.
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Protocol, Sequence

import numpy as np

from .errors import (
    CorpusFormatError,
    InsufficientTermsError,
    LengthMismatchError,
    SingularMatrixError,
)
from .modelvector import Direction, ModelVector, extend
from .numeric import Rational, parse_rational, render_rational
from .sequences import SequenceSegment, parse_segment

logger = logging.getLogger(__name__)


class RationalMatrix:
    """Square grid of rationals backed by a numpy object array."""

    def __init__(self, rows: Iterable[Iterable]):
        grid = np.array([[Fraction(x) for x in row] for row in rows], dtype=object)
        if grid.size == 0:
            grid = np.empty((0, 0), dtype=object)
        if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
            raise LengthMismatchError(f"matrix must be square, got shape {grid.shape}")
        self.grid = grid

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Rational]]) -> "RationalMatrix":
        return cls(list(zip(*columns)) if columns else [])

    @property
    def size(self) -> int:
        return self.grid.shape[0]

    def rows(self) -> list[tuple[Rational, ...]]:
        return [tuple(row) for row in self.grid]

    def column(self, j: int) -> tuple[Rational, ...]:
        return tuple(self.grid[:, j])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(self.grid.dot(other.grid))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.grid.shape == other.grid.shape and bool(np.all(self.grid == other.grid))

    def __repr__(self) -> str:
        return f"RationalMatrix({[[render_rational(x) for x in row] for row in self.grid]})"

    def __str__(self) -> str:
        return render_matrix(self)


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, index):
        return self.weights[index]

    def __str__(self) -> str:
        return "(" + ", ".join(render_rational(w) for w in self.weights) + ")"


def render_matrix(m: RationalMatrix) -> str:
    cells = [[render_rational(x) for x in row] for row in m.grid]
    width = max((len(c) for row in cells for c in row), default=0)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


# --- segment rules ---
# A rule yields the term of a base sequence at any integer index, so shifted
# copies of a base segment can be materialized in either direction.

class SegmentRule(Protocol):
    def term(self, index: int) -> Rational: ...

    def segment(self, start: int, length: int) -> tuple[Rational, ...]: ...


class _IndexedRule:
    def segment(self, start: int, length: int) -> tuple[Rational, ...]:
        return tuple(self.term(i) for i in range(start, start + length))


@dataclass(frozen=True)
class PolynomialRule(_IndexedRule):
    """``i ** degree``: constant, linear, quadratic, cubic."""
    degree: int

    def term(self, index: int) -> Rational:
        return Fraction(index) ** self.degree


@dataclass(frozen=True)
class AlternatingRule(_IndexedRule):
    """``(-1) ** (i + 1) * i ** degree``: alternating, alternating-linear."""
    degree: int

    def term(self, index: int) -> Rational:
        sign = 1 if index % 2 == 1 else -1
        return sign * Fraction(index) ** self.degree


@dataclass(frozen=True)
class PowerRule(_IndexedRule):
    """``t ** (i - 1) * i ** degree``; from index 1 the plain powers are 1, t, t^2, ..."""
    base: Rational
    degree: int = 0

    def term(self, index: int) -> Rational:
        return Fraction(self.base) ** (index - 1) * Fraction(index) ** self.degree


@dataclass(frozen=True)
class RecurrenceRule(_IndexedRule):
    """A sequence generated by a model vector from seed terms at indices 1..L."""
    vector: ModelVector
    seed: tuple[Rational, ...]

    def __post_init__(self):
        if len(self.seed) != len(self.vector):
            raise LengthMismatchError(
                f"seed of length {len(self.seed)} for a recurrence of length {len(self.vector)}"
            )

    def segment(self, start: int, length: int) -> tuple[Rational, ...]:
        terms = SequenceSegment(self.seed)
        first = 1
        if start < 1:
            terms = extend(self.vector, terms, 1 - start, Direction.BACKWARD)
            first = start
        last = start + length - 1
        missing = last - (first + len(terms) - 1)
        if missing > 0:
            terms = extend(self.vector, terms, missing, Direction.FORWARD)
        offset = start - first
        return terms.terms[offset:offset + length]

    def term(self, index: int) -> Rational:
        return self.segment(index, 1)[0]


@dataclass(frozen=True)
class ExplicitRule(_IndexedRule):
    """Terms known only on a fixed window; there is nothing to shift into."""
    terms: tuple[Rational, ...]
    start: int = 1

    def term(self, index: int) -> Rational:
        offset = index - self.start
        if not 0 <= offset < len(self.terms):
            raise InsufficientTermsError(f"index {index} outside the known terms")
        return Fraction(self.terms[offset])


@dataclass(frozen=True)
class BaseSegment:
    terms: SequenceSegment
    next_term: Rational
    label: str = ""
    rule: SegmentRule | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "next_term", Fraction(self.next_term))

    @classmethod
    def from_rule(cls, label: str, rule: SegmentRule, length: int, start: int = 1) -> "BaseSegment":
        window = rule.segment(start, length + 1)
        return cls(SequenceSegment(window[:-1]), window[-1], label, rule)


# --- exact elimination ---

def _as_grid(rows: Sequence[Sequence[Rational]]) -> np.ndarray:
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def _row_reduce(grid: np.ndarray, ncols: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the first ``ncols`` columns.

    The first non-zero entry at or below the current row is the pivot.
    """
    grid = grid.copy()
    nrows = grid.shape[0]
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        for j in range(row, nrows):
            if grid[j, col] != 0:
                break
        else:
            continue
        if j != row:
            grid[[row, j]] = grid[[j, row]]
        grid[row, :] = grid[row, :] / grid[row, col]
        for j in range(nrows):
            if j != row and grid[j, col] != 0:
                grid[j, :] = grid[j, :] - grid[j, col] * grid[row, :]
        pivots.append(col)
        row += 1
    return grid, pivots


def rank_exact(rows: Sequence[Sequence[Rational]]) -> int:
    if not len(rows):
        return 0
    grid = _as_grid(rows)
    return len(_row_reduce(grid, grid.shape[1])[1])


def invert_exact(m: RationalMatrix) -> RationalMatrix:
    """Gauss-Jordan inverse; raises SingularMatrixError when ``m`` has no inverse."""
    n = m.size
    augmented = np.concatenate([m.grid, RationalMatrix.identity(n).grid], axis=1)
    reduced, pivots = _row_reduce(augmented, n)
    if len(pivots) < n:
        raise SingularMatrixError()
    return RationalMatrix(reduced[:, n:])


def solve_exact(rows: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> list[Rational] | None:
    """Unique solution of a possibly over-determined exact system.

    Returns None when the equations contradict each other and raises
    SingularMatrixError when they leave some unknown free.
    """
    if len(rows) != len(rhs):
        raise LengthMismatchError(f"{len(rows)} equations but {len(rhs)} right-hand sides")
    grid = _as_grid([list(row) + [value] for row, value in zip(rows, rhs)])
    ncols = grid.shape[1] - 1
    reduced, pivots = _row_reduce(grid, ncols)
    if any(reduced[i, ncols] != 0 for i in range(len(pivots), reduced.shape[0])):
        return None
    if len(pivots) < ncols:
        raise SingularMatrixError()
    return [reduced[i, ncols] for i in range(ncols)]


# --- model vectors from base segments ---

def base_matrix(bases: Sequence[BaseSegment]) -> RationalMatrix:
    n = len(bases)
    for base in bases:
        if len(base.terms) != n:
            raise LengthMismatchError(
                f"base segment {base.label or '?'} has {len(base.terms)} terms, system dimension is {n}"
            )
    return RationalMatrix.from_columns([base.terms.terms for base in bases])


def next_term_vector(bases: Sequence[BaseSegment]) -> np.ndarray:
    return np.array([base.next_term for base in bases], dtype=object)


def derive_model_vector(bases: Sequence[BaseSegment]) -> ModelVector:
    """``z M^-1``, the vector mapping any combination of the bases to its next term."""
    inverse = invert_exact(base_matrix(bases))
    return ModelVector(tuple(next_term_vector(bases).dot(inverse.grid)))


def solve_by_inversion(p: SequenceSegment, bases: Sequence[BaseSegment]) -> tuple[Rational, WeightVector]:
    if len(p) != len(bases):
        raise LengthMismatchError(f"problem has {len(p)} terms for {len(bases)} base segments")
    inverse = invert_exact(base_matrix(bases))
    weights = inverse.grid.dot(np.array(p.terms, dtype=object))
    answer = next_term_vector(bases).dot(weights) if len(bases) else Fraction(0)
    logger.debug("weights %s, answer %s", [render_rational(w) for w in weights], answer)
    return Fraction(answer), WeightVector(tuple(weights))


# --- base sequence set criteria ---

@dataclass(frozen=True)
class ShiftCheck:
    label: str
    forward: bool | None
    backward: bool | None

    @property
    def passed(self) -> bool:
        return bool(self.forward) and bool(self.backward)


@dataclass(frozen=True)
class BsscReport:
    rank: int
    dimension: int
    shifts: tuple[ShiftCheck, ...]
    note: str = "shift closure checked for single shifts in each direction"

    @property
    def independent(self) -> bool:
        return self.rank == self.dimension

    @property
    def shift_closed(self) -> bool:
        return all(check.passed for check in self.shifts)

    @property
    def passed(self) -> bool:
        return self.independent and self.shift_closed


def _in_span(columns: list[tuple[Rational, ...]], target: tuple[Rational, ...]) -> bool:
    try:
        return solve_exact(list(zip(*columns)), target) is not None
    except SingularMatrixError:
        # consistent but under-determined: dependent columns still span it
        return True


def validate_bssc(
    bases: Sequence[BaseSegment],
    rules: Sequence[SegmentRule | None] | None = None,
    start: int = 1,
) -> BsscReport:
    """Check linear independence and closure under shifting.

    Independence is the exact rank of the base matrix. Closure is checked on
    a window of ``2n + 1`` terms: every segment moved one place forward and
    one place back must be a combination of the unshifted segments over the
    whole window. A segment whose rule cannot produce the shifted terms is
    reported with None.
    """
    n = len(bases)
    if rules is None:
        rules = [base.rule for base in bases]
    if len(rules) != n:
        raise LengthMismatchError(f"{len(rules)} rules for {n} base segments")

    rank = rank_exact(base_matrix(bases).rows()) if n else 0
    span = 2 * n + 1
    columns: list[tuple[Rational, ...]] | None = []
    try:
        for rule in rules:
            if rule is None:
                raise InsufficientTermsError("no rule")
            columns.append(rule.segment(start, span))
    except InsufficientTermsError:
        columns = None

    shifts = []
    for base, rule in zip(bases, rules):
        results: list[bool | None] = []
        for step in (1, -1):
            if columns is None or rule is None:
                results.append(None)
                continue
            try:
                shifted = rule.segment(start + step, span)
            except InsufficientTermsError:
                results.append(None)
                continue
            results.append(_in_span(columns, shifted))
        shifts.append(ShiftCheck(base.label, results[0], results[1]))
    report = BsscReport(rank, n, tuple(shifts))
    logger.debug("BSSC report: rank %d of %d, shift closed %s", rank, n, report.shift_closed)
    return report


# --- bases files ---

def parse_bases(text: str) -> list[BaseSegment]:
    """One base segment per line: ``label | t1, t2, ..., tn | next``."""
    bases = []
    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 3:
            raise CorpusFormatError(f"expected 3 fields, got {len(fields)}", line_number)
        label, terms, following = fields
        try:
            segment = parse_segment(terms)
            next_term = parse_rational(following)
        except ValueError as e:
            raise CorpusFormatError(str(e), line_number, label) from e
        known = segment.terms + (next_term,)
        rule = rule_for_label(label)
        if rule is None or rule.segment(1, len(known)) != known:
            rule = ExplicitRule(known)
        bases.append(BaseSegment(segment, next_term, label, rule))
    return bases


def load_bases(path: str) -> list[BaseSegment]:
    with open(path, encoding="utf-8") as f:
        return parse_bases(f.read())


_LABEL_RULES = [
    (re.compile(r"constant"), lambda m: PolynomialRule(0)),
    (re.compile(r"linear"), lambda m: PolynomialRule(1)),
    (re.compile(r"quadratic"), lambda m: PolynomialRule(2)),
    (re.compile(r"cubic"), lambda m: PolynomialRule(3)),
    (re.compile(r"alternating"), lambda m: AlternatingRule(0)),
    (re.compile(r"alternating-linear"), lambda m: AlternatingRule(1)),
    (re.compile(r"powers-of-(-?\d+(?:/\d+)?)"), lambda m: PowerRule(Fraction(m.group(1)))),
    (re.compile(r"reciprocal-powers-of-(\d+)"), lambda m: PowerRule(Fraction(1, int(m.group(1))))),
    (re.compile(r"fibonacci"), lambda m: RecurrenceRule(ModelVector.of(1, 1), (Fraction(1), Fraction(1)))),
    (re.compile(r"fibonacci-shifted"), lambda m: RecurrenceRule(ModelVector.of(1, 1), (Fraction(1), Fraction(2)))),
]


def rule_for_label(label: str) -> SegmentRule | None:
    """The generating rule behind a canonical segment label, if it has one."""
    for pattern, make in _LABEL_RULES:
        m = pattern.fullmatch(label)
        if m:
            return make(m)
    return None
