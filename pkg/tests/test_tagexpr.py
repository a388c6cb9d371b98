"""Tag expression grammar."""

import pytest

from peakcut.errors import ExprParseError
from peakcut.tagexpr import Atom, parse_tag_expr


def evaluate(source, truths):
    expr = parse_tag_expr(source)
    return expr.evaluate(lambda cat, label: (cat, label) in truths)


def test_single_atom_with_category():
    assert parse_tag_expr("actor:warren") == Atom("actor", "warren")


def test_labels_and_keywords_case_insensitive():
    assert evaluate("Actor:Warren and EMOTION:ANGER", {("actor", "warren"), ("emotion", "anger")})
    assert not evaluate("actor:warren AND emotion:anger", {("actor", "warren")})


def test_or_and_precedence():
    # AND binds tighter: a OR b AND c == a OR (b AND c)
    truths = {(None, "a")}
    assert evaluate("a OR b AND c", truths)
    truths = {(None, "b")}
    assert not evaluate("a OR b AND c", truths)
    assert evaluate("(a OR b) AND b", truths)


def test_bare_label_has_no_category():
    assert parse_tag_expr("warren") == Atom(None, "warren")


def test_parse_error_reports_position():
    with pytest.raises(ExprParseError) as exc:
        parse_tag_expr("actor:warren AND")
    assert exc.value.position == len("actor:warren AND")

    with pytest.raises(ExprParseError) as exc:
        parse_tag_expr("(a OR b")
    assert exc.value.position == len("(a OR b")

    with pytest.raises(ExprParseError) as exc:
        parse_tag_expr("a ) b")
    assert exc.value.position == 2


def test_empty_expression_rejected():
    with pytest.raises(ExprParseError):
        parse_tag_expr("   ")


def test_malformed_atom_rejected():
    with pytest.raises(ExprParseError):
        parse_tag_expr("actor:")
