from fractions import Fraction

import pytest

from uconf.configspace import BaseSpace, Configuration
from uconf.errors import (
    BasisOutOfRange,
    ConfigMismatch,
    ExprSyntaxError,
    OverlappingConfigurations,
    UnknownPoint,
)
from uconf.expr import parse_element, render, tokenize
from uconf.fibre_algebra import (
    cauchy_mul,
    embed_generator,
    hadamard_mul,
    unit_hadamard,
    zero,
)

BASE = BaseSpace.of([("p", 1, 1), ("q", 2, 1), ("r", 1, 1)])

e_p = embed_generator(BASE, "p", 0)
e_q0 = embed_generator(BASE, "q", 0)
e_q1 = embed_generator(BASE, "q", 1)


def test_tokenizer_composite_opens():
    kinds = [t.kind for t in tokenize("e[p,0] # 1[q] + 0@[r]")]
    assert kinds == [
        "GEN_OPEN", "IDENT", "COMMA", "NUMBER", "RBRACKET",
        "HASH",
        "UNIT_OPEN", "IDENT", "RBRACKET",
        "PLUS",
        "ZERO_OPEN", "IDENT", "RBRACKET",
        "EOF",
    ]
    # "e" alone is an identifier, not a generator opener
    assert tokenize("e")[0].kind == "IDENT"
    with pytest.raises(ExprSyntaxError):
        tokenize("e[p,0] ? 1[]")


def test_parse_atoms():
    assert parse_element("e[p,0]", BASE) == e_p
    assert parse_element("1[p,q]", BASE) == unit_hadamard(Configuration(("p", "q")))
    assert parse_element("1[]", BASE) == unit_hadamard(Configuration())
    assert parse_element("0@[p,q]", BASE) == zero(Configuration(("p", "q")))
    assert parse_element("0@[]", BASE).is_zero()


def test_parse_products_and_precedence():
    # "." binds tighter than "#"
    assert parse_element("e[q,0] . e[q,1]", BASE) == hadamard_mul(e_q0, e_q1)
    assert parse_element("e[p,0] # e[q,0]", BASE) == cauchy_mul(e_p, e_q0)
    got = parse_element("e[p,0] # e[q,0] . e[q,1]", BASE)
    assert got == cauchy_mul(e_p, hadamard_mul(e_q0, e_q1))
    grouped = parse_element("(e[p,0] + e[p,0]) # 1[q]", BASE)
    assert grouped == cauchy_mul(2 * e_p, unit_hadamard(Configuration(("q",))))


def test_parse_coefficients():
    assert parse_element("2 * e[p,0]", BASE) == 2 * e_p
    assert parse_element("-1 * e[p,0]", BASE) == -e_p
    assert parse_element("2/3 * e[p,0]", BASE) == Fraction(2, 3) * e_p
    assert parse_element("e[p,0] + -1 * e[p,0]", BASE).is_zero()
    with pytest.raises(ExprSyntaxError) as err:
        parse_element("1/0 * e[p,0]", BASE)
    assert err.value.position == 2


def test_render_frozen():
    assert render(e_p) == "e[p,0]"
    assert render(2 * e_p) == "2 * e[p,0]"
    assert render(hadamard_mul(e_q0, hadamard_mul(e_q0, e_q1))) == (
        "e[q,0] . e[q,0] . e[q,1]"
    )
    assert render(cauchy_mul(e_p, unit_hadamard(Configuration(("q",))))) == (
        "e[p,0] # 1[q]"
    )
    assert render(unit_hadamard(Configuration())) == "1[]"
    assert render(zero(Configuration(("p", "q")))) == "0@[p,q]"
    two_terms = e_q0 + Fraction(1, 2) * e_q1
    assert render(two_terms) == "e[q,0] + 1/2 * e[q,1]"


def test_roundtrip_frozen():
    for text in [
        "e[p,0]",
        "1[]",
        "0@[p,q,r]",
        "e[p,0] # 1[q]",
        "2/3 * 1[p] # e[q,0] . e[q,1]",
        "1[p] # e[q,0] + 5 * e[p,0] # 1[q]",
    ]:
        elem = parse_element(text, BASE)
        assert render(elem) == text
        assert parse_element(render(elem), BASE) == elem


ERROR_CASES = [
    ("e[p,", ExprSyntaxError, 4),
    ("2 * * e[p,0]", ExprSyntaxError, 4),
    ("(e[p,0]", ExprSyntaxError, 7),
    ("e[p,0] e[q,0]", ExprSyntaxError, 7),
    ("e[z,0]", UnknownPoint, 2),
    ("1[p,z]", UnknownPoint, 4),
    ("e[q,5]", BasisOutOfRange, 4),
    ("e[p,0] . e[q,0]", ConfigMismatch, 7),
    ("e[p,0] + 1[q]", ConfigMismatch, 7),
    ("e[p,0] # e[p,0]", OverlappingConfigurations, 7),
    ("1[p,p]", OverlappingConfigurations, 4),
]


@pytest.mark.parametrize("text,err_class,position", ERROR_CASES)
def test_error_positions(text, err_class, position):
    with pytest.raises(err_class) as err:
        parse_element(text, BASE)
    assert err.value.position == position


def test_syntax_error_lists_expected_tokens():
    with pytest.raises(ExprSyntaxError) as err:
        parse_element("e[p,", BASE)
    assert "NUMBER" in err.value.expected
