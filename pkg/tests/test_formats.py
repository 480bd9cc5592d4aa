from __future__ import annotations

from fractions import Fraction

import pytest
from conftest import matrices
from hypothesis import given
from hypothesis import strategies as st

from ptwuality.bouquet import Bouquet, random_bouquet
from ptwuality.checks import random_graft
from ptwuality.errors import ContractViolation, ParseError
from ptwuality.exactla import Matrix
from ptwuality.fields import GF2, gfp
from ptwuality.formats import (
    format_bouquet,
    format_graft,
    format_matrix,
    parse_bouquet,
    parse_graft,
    parse_matrix,
    parse_subset,
)
from ptwuality.graft import Graft
from ptwuality.intpoly import IntPolynomial


def test_parse_matrix_fields():
    M = parse_matrix("field gf2\nn 2\n0 1\n1 0\n")
    assert M.field == GF2 and M.entries == ((0, 1), (1, 0))
    M = parse_matrix("field gfp 7\nn 1\n-1\n")
    assert M.field == gfp(7) and M.entries == ((6,),)
    M = parse_matrix("field q\nn 2\n1/2 -3\n0 4/6\n")
    assert M.entries == ((Fraction(1, 2), -3), (0, Fraction(2, 3)))
    assert parse_matrix("field q\nn 0\n").n == 0


def test_format_matrix_is_canonical():
    text = "field q\nn 2\n1/2 -3\n0 2/3\n"
    assert format_matrix(parse_matrix(text)) == text
    assert format_matrix(Matrix(gfp(5), [[7]])) == "field gfp 5\nn 1\n2\n"


@given(matrices(max_n=5))
def test_matrix_round_trip(M):
    assert parse_matrix(format_matrix(M)) == M


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("", 1, 1),
        ("field gf3\nn 1\n0\n", 1, 7),
        ("field gfp 9\nn 1\n0\n", 1, 11),
        ("field gf2\nsize 2\n", 2, 1),
        ("field gf2\nn two\n", 2, 3),
        ("field gf2\nn 2\n0 1\n1\n", 4, 2),
        ("field gf2\nn 2\n0 1\n1 x\n", 4, 3),
        ("field gf2\nn 2\n0 1 1\n1 0\n", 3, 5),
        ("field gf2\nn 2\n0 1\n", 4, 1),
        ("field q\nn 1\n1/0\n", 3, 1),
        ("field q\nn 1\n0.5\n", 3, 1),
    ],
)
def test_matrix_parse_errors_name_line_and_column(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_matrix(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_parse_subset():
    M = Matrix.identity(GF2, 4)
    assert parse_subset("-", M).mask == 0
    assert parse_subset("0,2", M).positions() == [0, 2]
    with pytest.raises(ContractViolation):
        parse_subset("0,9", M)
    with pytest.raises(ContractViolation):
        parse_subset("a", M)


def test_graft_format():
    text = "vertices: a b c\nedges: a-b b-c\nloops: b\n"
    g = parse_graft(text)
    assert g == Graft("abc", [("a", "b"), ("b", "c")], ["b"])
    assert format_graft(g) == text
    assert parse_graft("vertices: x\n") == Graft("x")
    assert parse_graft("vertices: x y\nedges:\nloops:\n") == Graft("xy")


@given(st.integers(0, 7), st.randoms(use_true_random=False))
def test_graft_round_trip(n, rnd):
    g = random_graft(rnd, n)
    assert parse_graft(format_graft(g)) == g


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("edges: a-b\n", 1, 1),
        ("vertices: a b\nedges: a-c\n", 2, 8),
        ("vertices: a b\nedges: a-b b-a\n", 2, 12),
        ("vertices: a b\nedges: a-a\n", 2, 8),
        ("vertices: a b\nedges: ab\n", 2, 8),
        ("vertices: a a\n", 1, 13),
        ("vertices: a\nloops: q\n", 2, 8),
        ("vertices: a\ncolour: red\n", 2, 1),
        ("vertices: a\nvertices: b\n", 2, 1),
    ],
)
def test_graft_parse_errors(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_graft(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_bouquet_format():
    text = "word: a b a c b c\ntwisted: b\n"
    b = parse_bouquet(text)
    assert b == Bouquet("abacbc", "b")
    assert format_bouquet(b) == text
    assert parse_bouquet("word: a a\ntwisted:\n") == Bouquet("aa")
    assert parse_bouquet("word:\n").n == 0


@given(st.integers(0, 6), st.randoms(use_true_random=False))
def test_bouquet_round_trip(n, rnd):
    b = random_bouquet(rnd, n)
    assert parse_bouquet(format_bouquet(b)) == b


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("word: a b a\n", 1, 9),
        ("word: a a a\n", 1, 11),
        ("word: a a\ntwisted: b\n", 2, 10),
        ("twisted: a\n", 1, 1),
    ],
)
def test_bouquet_parse_errors(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_bouquet(text)
    assert (info.value.line, info.value.column) == (line, column)


# -- polynomial text and JSON ------------------------------------------------------------


def test_polynomial_text_form():
    assert IntPolynomial([0, 1, 3]).to_text() == "1*z + 3*z^2"
    assert IntPolynomial([2]).to_text() == "2"
    assert IntPolynomial([0, 0, 0, 0, 5, 26, 33]).to_text() == "5*z^4 + 26*z^5 + 33*z^6"
    assert IntPolynomial().to_text() == "0"


@given(st.lists(st.integers(0, 10**6), max_size=12))
def test_polynomial_text_and_json_round_trip(cs):
    p = IntPolynomial(cs)
    assert IntPolynomial.from_text(p.to_text()) == p
    assert IntPolynomial.from_json(p.to_json("tau", "gf2", 3)) == p


def test_polynomial_json_shape():
    import json

    obj = json.loads(IntPolynomial([0, 1, 3, 0]).to_json("taudeltatau", "gf2", 2))
    assert obj == {"operator": "taudeltatau", "field": "gf2", "n": 2, "coefficients": [0, 1, 3]}


def test_negative_coefficients_rejected():
    with pytest.raises(ContractViolation):
        IntPolynomial([1, -1])


def test_comment_lines_are_ignored_and_keep_line_numbers():
    M = parse_matrix("# header\nfield gf2\nn 1\n1\n# set {0}\n")
    assert M.entries == ((1,),)
    with pytest.raises(ParseError) as info:
        parse_matrix("# c\nfield gf2\nn 1\nq\n")
    assert info.value.line == 4
    assert parse_graft("vertices: a\n# note\n") == Graft("a")


def test_counterexample_dumps_replay():
    from ptwuality.checks import _dump_matrix

    M = Matrix(gfp(3), [[1, 2], [0, 1]])
    assert parse_matrix(_dump_matrix(M, "X = 0")) == M
