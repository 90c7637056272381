import random
from fractions import Fraction

import pytest

from seqlibs.dymvec import enumerate_candidates
from seqlibs.errors import InconsistentTheoryError, StableConfigError
from seqlibs.matrix import derive_model_vector
from seqlibs.modelvector import IDENTITY, ModelVector
from seqlibs.sequences import SequenceSegment
from seqlibs.theory import (
    BaseVector,
    Theory,
    canonical_segments,
    derive_weight_iterative,
    derive_weights_jointly,
    theory_description,
    theory_model_vector,
    theory_weights,
)


def _seg(*values):
    return SequenceSegment.of(values)


@pytest.fixture
def emv1_theory(base):
    return Theory.of((base("(1)"), 3), (base("(2)"), 1), (base("(-1)"), 1))


@pytest.fixture
def emv2_theory(base):
    return Theory.of((base("(1)"), 3), (base("(1, 1)"), 1))


def test_base_vector_validation():
    with pytest.raises(StableConfigError):
        BaseVector(ModelVector.of(1), 2, ("constant",))
    with pytest.raises(StableConfigError):
        BaseVector(IDENTITY, 1, ("nothing",))
    with pytest.raises(StableConfigError):
        BaseVector(ModelVector.of(1), 0, ())


def test_theory_model_vectors(emv1_theory, emv2_theory):
    assert emv1_theory.derived == ModelVector.of(-2, 5, -2, -4, 4)
    assert emv2_theory.derived == ModelVector.of(-1, 2, 1, -5, 4)
    assert theory_model_vector(emv1_theory) == emv1_theory.derived
    assert Theory().derived == IDENTITY


def test_factor_order_does_not_change_vector(base):
    a = Theory.of((base("(-1)"), 1), (base("(2)"), 1), (base("(1)"), 3))
    b = Theory.of((base("(1)"), 1), (base("(2)"), 1), (base("(1)"), 2), (base("(-1)"), 1))
    assert a.derived == b.derived == ModelVector.of(-2, 5, -2, -4, 4)
    assert b.count(base("(1)")) == 3


def test_descriptions(base, emv1_theory):
    assert theory_description(emv1_theory) == (["quadratic", "powers-of-2", "alternating"], 3)
    assert emv1_theory.size == 3
    assert str(emv1_theory) == "{quadratic, powers-of-2, alternating}"
    assert Theory.of((base("(1)"), 1)).description == ["constant"]
    assert Theory.of((base("(-1)"), 2)).description == ["alternating-linear"]
    assert Theory.of((base("(1)"), 4)).description == ["cubic"]


def test_too_many_copies(base):
    with pytest.raises(StableConfigError):
        Theory.of((base("(2)"), 2))
    with pytest.raises(StableConfigError):
        Theory.of((base("(1)"), 3), (base("(1)"), 2))


def test_without(emv1_theory, base):
    assert emv1_theory.without(base("(-1)")).derived == ModelVector.of(-2, 7, -9, 5)
    assert emv1_theory.without(base("(1)"), 1).count(base("(1)")) == 2
    with pytest.raises(ValueError):
        emv1_theory.without(base("(3)"))


def test_canonical_segments_match_worked_example(emv1_theory):
    segments = canonical_segments(emv1_theory)
    assert [s.label for s in segments] == ["constant", "linear", "quadratic", "powers-of-2", "alternating"]
    assert segments[2].terms == _seg(1, 4, 9, 16, 25)
    assert segments[2].next_term == 36
    assert segments[3].terms == _seg(1, 2, 4, 8, 16)
    assert segments[4].terms == _seg(1, -1, 1, -1, 1)


def test_canonical_segments_of_recurrence(emv2_theory):
    segments = canonical_segments(emv2_theory)
    labels = [s.label for s in segments]
    assert labels[3:] == ["each term is the sum of previous 2 [1]", "each term is the sum of previous 2 [2]"]
    assert segments[3].terms == _seg(1, 0, 1, 1, 2)
    assert segments[4].terms == _seg(0, 1, 1, 2, 3)


def test_theory_weights(emv1_theory):
    weights, segments = theory_weights(_seg(1, 0, 5, 8, 17), emv1_theory)
    assert tuple(weights) == (1, -2, 1, 0, 1)
    assert len(segments) == 5


def test_theory_weights_of_second_worked_problem(emv1_theory):
    weights, segments = theory_weights(_seg(1, 2, 5, 9, 16), emv1_theory)
    assert tuple(weights) == tuple(Fraction(n, d) for n, d in [(1, 2), (-1, 2), (1, 2), (1, 3), (1, 6)])
    assert sum(w * s.next_term for w, s in zip(weights, segments)) == 26


def test_theory_weights_use_last_terms(emv1_theory):
    weights, _ = theory_weights(_seg(99, 1, 0, 5, 8, 17), emv1_theory)
    segments = canonical_segments(emv1_theory, 5, start=2)
    rebuilt = [sum(w * s.terms[i] for w, s in zip(weights, segments)) for i in range(5)]
    assert rebuilt == [1, 0, 5, 8, 17]


def test_theory_weights_reconstruct_random_combinations(stable):
    rng = random.Random(31)
    for _ in range(60):
        k = rng.randint(1, 4)
        theory = rng.choice(enumerate_candidates(stable, k))
        segments = canonical_segments(theory, k)
        true_weights = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in segments]
        p = _seg(*(sum(w * s.terms[i] for w, s in zip(true_weights, segments)) for i in range(k)))
        weights, _ = theory_weights(p, theory)
        assert list(weights) == true_weights


def test_iterative_weight_of_alternating(emv1_theory, base):
    h, reduced = derive_weight_iterative(_seg(1, 0, 5, 8, 17), emv1_theory, base("(-1)"))
    assert h == 1
    assert reduced == ModelVector.of(-2, 7, -9, 5)


def test_iterative_weight_of_powers(emv1_theory, base):
    h, reduced = derive_weight_iterative(_seg(1, 0, 5, 8, 17), emv1_theory, base("(2)"))
    assert h == 0
    assert reduced == ModelVector.of(1, -2, 0, 2)


def test_iterative_weight_of_constant(base):
    h, reduced = derive_weight_iterative(_seg(4, 4, 4), Theory.of((base("(1)"), 1)), base("(1)"))
    assert h == 4
    assert reduced == IDENTITY


def test_iterative_weight_inconsistent(base):
    with pytest.raises(InconsistentTheoryError):
        derive_weight_iterative(_seg(1, 2, 3), Theory.of((base("(1)"), 1)), base("(1)"))


def test_iterative_weight_needs_length_one_factor(emv2_theory, base):
    with pytest.raises(ValueError):
        derive_weight_iterative(_seg(1, 2, 5, 9, 16), emv2_theory, base("(1, 1)"))


def test_iterative_matches_matrix_weights(stable):
    rng = random.Random(37)
    checked = 0
    while checked < 50:
        k = rng.randint(1, 4)
        theory = rng.choice(enumerate_candidates(stable, k))
        singles = [(b, c) for b, c in theory.factors if len(b.vector) == 1]
        if not singles:
            continue
        segments = canonical_segments(theory, k)
        true_weights = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in segments]
        p = _seg(*(sum(w * s.terms[i] for w, s in zip(true_weights, segments)) for i in range(k)))
        matrix_weights, _ = theory_weights(p, theory)

        base_vector, count = rng.choice(singles)
        offset = 0
        for b, c in theory.factors:
            if b == base_vector:
                break
            offset += c if len(b.vector) == 1 else len(b.vector) * c
        h, _ = derive_weight_iterative(p, theory, base_vector)
        assert h == matrix_weights[offset + count - 1]
        checked += 1


def test_joint_weights_of_recurrence(emv2_theory, base):
    p = _seg(1, 2, 5, 9, 16)
    weights, _ = theory_weights(p, emv2_theory)
    joint = derive_weights_jointly(p, emv2_theory, base("(1, 1)"))
    assert tuple(joint) == tuple(weights)[3:]


@pytest.mark.slow
def test_pathways_agree_on_every_short_candidate(stable):
    for k in range(1, 5):
        for theory in enumerate_candidates(stable, k):
            assert derive_model_vector(canonical_segments(theory)) == theory.derived
