"""Theories: multisets of base-vector factors.

A theory names the base sequences a problem is assumed to be built from. Its
model vector is the composition of every factor copy; its description lists
one label per base vector, where k copies collapse to the k-th label
(three copies of ``(1)`` read as "quadratic").
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import (
    InconsistentTheoryError,
    InsufficientTermsError,
    SingularMatrixError,
    StableConfigError,
)
from .matrix import (
    AlternatingRule,
    BaseSegment,
    PolynomialRule,
    PowerRule,
    RecurrenceRule,
    SegmentRule,
    WeightVector,
    solve_by_inversion,
    solve_exact,
)
from .modelvector import IDENTITY, ModelVector, compose, compose_all, render_vector
from .numeric import Rational
from .sequences import SequenceSegment

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BaseVector:
    vector: ModelVector
    max_multiplicity: int
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.vector.is_identity:
            raise StableConfigError("a base vector cannot be empty")
        if self.max_multiplicity < 1:
            raise StableConfigError(
                f"multiplicity of {self.key} must be positive, got {self.max_multiplicity}"
            )
        if len(self.labels) != self.max_multiplicity:
            raise StableConfigError(
                f"{self.key} needs {self.max_multiplicity} labels, got {len(self.labels)}"
            )

    @property
    def key(self) -> str:
        return render_vector(self.vector)

    def __len__(self) -> int:
        return len(self.vector)

    def __str__(self) -> str:
        return self.key


@dataclass(frozen=True)
class Theory:
    factors: tuple[tuple[BaseVector, int], ...] = ()
    derived: ModelVector = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        merged: dict[BaseVector, int] = {}
        for base, count in self.factors:
            merged[base] = merged.get(base, 0) + count
        for base, count in merged.items():
            if not 1 <= count <= base.max_multiplicity:
                raise StableConfigError(
                    f"{count} copies of {base.key} exceed its multiplicity {base.max_multiplicity}"
                )
        factors = tuple(merged.items())
        object.__setattr__(self, "factors", factors)
        derived = IDENTITY
        for base, count in factors:
            for _ in range(count):
                derived = compose(derived, base.vector)
        object.__setattr__(self, "derived", derived)

    @classmethod
    def of(cls, *factors: tuple[BaseVector, int]) -> "Theory":
        return cls(tuple(factors))

    def count(self, base: BaseVector) -> int:
        return dict(self.factors).get(base, 0)

    def without(self, base: BaseVector, copies: int | None = None) -> "Theory":
        """The theory with ``copies`` copies of ``base`` removed (all when None)."""
        present = self.count(base)
        if present == 0:
            raise ValueError(f"{base.key} is not a factor of this theory")
        remove = present if copies is None else copies
        factors = []
        for b, count in self.factors:
            if b == base:
                count -= remove
            if count > 0:
                factors.append((b, count))
        return Theory(tuple(factors))

    @property
    def description(self) -> list[str]:
        return theory_description(self)[0]

    @property
    def size(self) -> int:
        return theory_description(self)[1]

    def __len__(self) -> int:
        return len(self.derived)

    def __str__(self) -> str:
        return "{" + ", ".join(self.description) + "}"


def theory_model_vector(t: Theory) -> ModelVector:
    return compose_all(base.vector for base, count in t.factors for _ in range(count))


def theory_description(t: Theory) -> tuple[list[str], int]:
    labels = [base.labels[count - 1] for base, count in t.factors]
    return labels, len(labels)


# --- canonical segments ---

def _copy_rule(value: Rational, degree: int) -> SegmentRule:
    if value == 1:
        return PolynomialRule(degree)
    if value == -1:
        return AlternatingRule(degree)
    return PowerRule(value, degree)


def _entry_rules(base: BaseVector, count: int) -> list[tuple[str, SegmentRule]]:
    if len(base.vector) == 1:
        value = base.vector.trailing
        return [(base.labels[d], _copy_rule(value, d)) for d in range(count)]
    # a recurrence contributes the unit-seed solutions of its repeated vector
    vector = compose_all([base.vector] * count)
    label = base.labels[count - 1]
    n = len(vector)
    return [
        (f"{label} [{j + 1}]", RecurrenceRule(vector, tuple(Fraction(int(i == j)) for i in range(n))))
        for j in range(n)
    ]


def canonical_rules(t: Theory) -> list[tuple[str, SegmentRule]]:
    """Labeled generating rules spanning everything ``t`` recognizes, in factor order."""
    rules = []
    for base, count in t.factors:
        rules.extend(_entry_rules(base, count))
    return rules


def canonical_segments(t: Theory, length: int | None = None, start: int = 1) -> list[BaseSegment]:
    length = len(t.derived) if length is None else length
    return [BaseSegment.from_rule(label, rule, length, start) for label, rule in canonical_rules(t)]


# --- weights ---

def theory_weights(p: SequenceSegment, t: Theory) -> tuple[WeightVector, list[BaseSegment]]:
    """Express the last ``|t|`` terms of ``p`` over the theory's canonical segments."""
    n = len(t.derived)
    if len(p) < n:
        raise InsufficientTermsError(f"theory of length {n} needs {n} terms, got {len(p)}")
    if n == 0:
        return WeightVector(()), []
    segments = canonical_segments(t, n, start=len(p) - n + 1)
    try:
        _, weights = solve_by_inversion(p.last(n), segments)
    except SingularMatrixError as e:
        raise SingularMatrixError(f"canonical segments of {t} are dependent") from e
    return weights, segments


def _window_residuals(v: ModelVector, terms: tuple[Rational, ...]) -> list[Rational]:
    """Actual minus predicted next term for every window; the empty vector predicts 0."""
    n = len(v)
    return [
        terms[j + n] - sum((c * x for c, x in zip(v.coefficients, terms[j:j + n])), Fraction(0))
        for j in range(len(terms) - n)
    ]


def _reduced_system(p: SequenceSegment, reduced: ModelVector, rules: Iterable[SegmentRule]):
    if len(p) <= len(reduced):
        raise InsufficientTermsError(
            f"reduced theory of length {len(reduced)} needs more than {len(p)} terms"
        )
    targets = _window_residuals(reduced, p.terms)
    columns = [_window_residuals(reduced, rule.segment(1, len(p))) for rule in rules]
    return [list(row) for row in zip(*columns)], targets


def derive_weight_iterative(p: SequenceSegment, t: Theory, base: BaseVector) -> tuple[Rational, ModelVector]:
    """Weight of the top copy of a length-1 factor, found without inverting a matrix.

    Removing one copy of ``base`` leaves a reduced theory; the weight h is the
    value for which the reduced model vector is consistent with ``p - h*s``,
    where s is the removed copy's canonical segment. Returns ``(h, reduced vector)``.
    """
    count = t.count(base)
    if count == 0:
        raise ValueError(f"{base.key} is not a factor of {t}")
    if len(base.vector) != 1:
        raise ValueError(f"{base.key} is not independently shiftable; use derive_weights_jointly")
    reduced = t.without(base, 1).derived
    segment_rule = _copy_rule(base.vector.trailing, count - 1)
    rows, targets = _reduced_system(p, reduced, [segment_rule])

    pivot = next((j for j, row in enumerate(rows) if row[0] != 0), None)
    if pivot is None:
        raise InsufficientTermsError(f"no window of the problem determines the weight of {base.key}")
    h = targets[pivot] / rows[pivot][0]
    if any(target != h * row[0] for row, target in zip(rows, targets)):
        raise InconsistentTheoryError()
    logger.debug("weight of %s copy %d: %s", base.key, count, h)
    return h, reduced


def derive_weights_jointly(p: SequenceSegment, t: Theory, base: BaseVector) -> WeightVector:
    """Weights of every segment of one factor entry, determined together."""
    if t.count(base) == 0:
        raise ValueError(f"{base.key} is not a factor of {t}")
    reduced = t.without(base).derived
    rules = [rule for _, rule in _entry_rules(base, t.count(base))]
    rows, targets = _reduced_system(p, reduced, rules)
    try:
        solution = solve_exact(rows, targets)
    except SingularMatrixError as e:
        raise InsufficientTermsError(
            f"too few terms to separate the segments of {base.key}"
        ) from e
    if solution is None:
        raise InconsistentTheoryError()
    return WeightVector(tuple(solution))
