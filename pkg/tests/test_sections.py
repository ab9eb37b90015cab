from fractions import Fraction

import pytest

from uconf.configspace import VACUUM, BaseSpace, Configuration
from uconf.fibre_algebra import cauchy_mul, embed_generator, unit_hadamard, zero
from uconf.poisson import Kernel
from uconf.sections import (
    Section,
    convolve,
    jacobiator,
    section,
    section_bracket,
    truncate,
    unit_section,
)

BASE = BaseSpace.of([("p", 1, 1), ("q", 1, 1), ("r", 1, 1)])
K = Kernel.of([(("p", 0), ("q", 0), 1), (("p", 0), ("r", 0), 2)])

P = Configuration(("p",))
Q = Configuration(("q",))
PQ = Configuration(("p", "q"))

e_p = embed_generator(BASE, "p", 0)
e_q = embed_generator(BASE, "q", 0)

delta_p = section({P: e_p}, 3)
delta_q = section({Q: e_q}, 3)


def test_section_normalization():
    s = section({P: e_p, Q: zero(Q)}, 2)
    assert s.support_configs() == (P,)
    assert s.value_at(Q).is_zero()
    assert s.value_at(P) == e_p
    with pytest.raises(ValueError):
        section({P: e_q}, 2)  # value over the wrong configuration
    with pytest.raises(ValueError):
        section({PQ: unit_hadamard(PQ)}, 1)  # bound exceed


def test_section_linear_ops():
    s = delta_p + delta_q
    assert s.support_configs() == (P, Q)
    assert (s - s).is_zero()
    assert 2 * delta_p == delta_p + delta_p
    assert (0 * delta_p).is_zero()


def test_unit_section_neutral():
    assert convolve(unit_section(), delta_p) == delta_p
    assert convolve(delta_p, unit_section()) == delta_p
    assert unit_section().value_at(VACUUM) == unit_hadamard(VACUUM)


def test_convolution_square_frozen():
    s = delta_p + delta_q
    sq = convolve(s, s)
    # overlapping pairs (p,p), (q,q) drop out; (p,q) and (q,p) pile up
    assert sq.support_configs() == (PQ,)
    assert sq.value_at(PQ) == 2 * cauchy_mul(e_p, e_q)
    assert sq.dropped == ()


def test_bracket_frozen():
    out = section_bracket(delta_p, delta_q, K)
    assert out.support_configs() == (PQ,)
    assert out.value_at(PQ) == unit_hadamard(PQ)
    assert section_bracket(delta_q, delta_p, K) == -out


def test_dropped_terms_are_reported_not_lost():
    tight_p = section({P: e_p}, 1)
    tight_q = section({Q: e_q}, 1)
    out = convolve(tight_p, tight_q)
    assert out.is_zero()
    assert out.dropped == ((PQ, cauchy_mul(e_p, e_q)),)
    # dropped output never affects equality
    assert out == section({}, 1)


def test_truncate():
    s = delta_p + convolve(delta_p, delta_q)
    cut = truncate(s, 1)
    assert cut.support_configs() == (P,)
    assert cut.max_points == 1
    assert cut.dropped == ((PQ, cauchy_mul(e_p, e_q)),)
    assert truncate(s, 5).max_points == 3  # never grows past the input bound


def test_truncation_consistency_example():
    s = delta_p + delta_q
    t = delta_p + delta_q
    lhs = truncate(convolve(s, t), 1)
    rhs = truncate(convolve(truncate(s, 1), truncate(t, 1)), 1)
    assert lhs == rhs


def test_jacobiator_zero():
    delta_r = section({Configuration(("r",)): embed_generator(BASE, "r", 0)}, 3)
    assert jacobiator(delta_p, delta_q, delta_r, K).is_zero()
    mixed = delta_p + convolve(delta_q, delta_r)
    assert jacobiator(mixed, delta_q + delta_r, delta_p, K).is_zero()


def test_leibniz_over_convolution():
    delta_r = section({Configuration(("r",)): embed_generator(BASE, "r", 0)}, 3)
    lhs = section_bracket(delta_p, convolve(delta_q, delta_r), K)
    rhs = convolve(section_bracket(delta_p, delta_q, K), delta_r) + convolve(
        delta_q, section_bracket(delta_p, delta_r, K)
    )
    assert lhs == rhs
