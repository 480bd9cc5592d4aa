from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import faces_by_corners

from ptwuality.bouquet import (
    Bouquet,
    all_bouquets,
    boundary_components,
    check_equivalence,
    check_face_corank,
    check_genus_per_subset,
    delete_edges,
    double_occurrence_words,
    edge_labels,
    euler_genus,
    intersection_graft,
    partial_petrial,
    random_bouquet,
    topological_polynomial,
    topological_polynomials,
    twuality_euler_genus,
)
from ptwuality.errors import ContractViolation, SizeCapExceeded
from ptwuality.exactla import corank, rank
from ptwuality.graft import Graft, adjacency_matrix, graft_polynomial, kn_graft
from ptwuality.intpoly import IntPolynomial
from ptwuality.twuality import ALL_OPERATORS

D, T, DT, TD, TDT = ALL_OPERATORS


def B(word: str, twisted: str = "") -> Bouquet:
    return Bouquet(word.split(), twisted.split())


@st.composite
def bouquets(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    return random_bouquet(draw(st.randoms(use_true_random=False)), n)


# -- construction ------------------------------------------------------------------------


def test_bouquet_validation():
    with pytest.raises(ContractViolation):
        B("a b a")
    with pytest.raises(ContractViolation):
        B("a a a a")
    with pytest.raises(ContractViolation):
        B("a a", "b")
    assert B("").n == 0


def test_delete_and_petrial_examples():
    assert delete_edges(B("a b a b"), {"a"}) == B("b b")
    assert partial_petrial(B("a a"), {"a"}) == B("a a", "a")
    b = B("a b c a c b", "b")
    assert partial_petrial(partial_petrial(b, {"a", "b"}), {"a", "b"}) == b
    assert delete_edges(b, set()) == b
    with pytest.raises(ContractViolation):
        delete_edges(b, {"z"})
    with pytest.raises(ContractViolation):
        partial_petrial(b, {"z"})


# -- faces and genus ------------------------------------------------------------------------


def test_face_examples():
    assert boundary_components(B("")) == 1
    assert boundary_components(B("a a")) == 2
    assert boundary_components(B("a a", "a")) == 1
    assert boundary_components(B("a b a b")) == 1
    assert euler_genus(B("a a")) == 0
    assert euler_genus(B("a a", "a")) == 1
    assert euler_genus(B("a b a b")) == 2


@pytest.mark.parametrize("n", range(4))
def test_faces_match_corner_oracle_exhaustively(n):
    for b in all_bouquets(n):
        assert boundary_components(b) == faces_by_corners(b.word, b.twisted)


@given(bouquets(max_n=9))
def test_faces_match_corner_oracle(b):
    f = boundary_components(b)
    assert f == faces_by_corners(b.word, b.twisted)
    assert f >= 1 and euler_genus(b) >= 0


@given(bouquets(max_n=8))
def test_faces_equal_corank_plus_one(b):
    assert check_face_corank(b)
    assert boundary_components(b) == corank(adjacency_matrix(intersection_graft(b))) + 1


@given(bouquets(max_n=8))
def test_genus_is_rank_of_intersection_matrix(b):
    assert euler_genus(b) == rank(adjacency_matrix(intersection_graft(b)))


def test_twuality_genus_examples():
    loop = B("a a")
    assert twuality_euler_genus(loop, D, {"a"}) == 0
    assert twuality_euler_genus(loop, T, {"a"}) == 1
    assert twuality_euler_genus(B("a b a b"), TDT, set()) == 2


# -- intersection graft ------------------------------------------------------------------------


def test_intersection_graft_examples():
    assert intersection_graft(B("a a")) == Graft("a")
    assert intersection_graft(B("a b a b")) == Graft("ab", [("a", "b")])
    g = intersection_graft(B("a b a c b c", "b"))
    assert g == Graft("abc", [("a", "b"), ("b", "c")], ["b"])


def test_worked_example_agrees_subset_by_subset():
    b = B("a b a c b c", "b")
    assert check_genus_per_subset(b) == []
    assert check_equivalence(b)
    assert check_equivalence(B("a a", "a"))


# -- polynomials ------------------------------------------------------------------------


def test_topological_polynomial_examples():
    assert topological_polynomial(B("a a"), T) == IntPolynomial([1, 1])
    assert topological_polynomial(B("a a"), D) == IntPolynomial([2])
    assert topological_polynomial(B("a b a b"), TDT) == graft_polynomial(TDT, kn_graft(2))
    assert topological_polynomials(B(""), ALL_OPERATORS)[D] == IntPolynomial([1])
    with pytest.raises(SizeCapExceeded):
        topological_polynomial(B("a b a b"), D, max_n=1)


@pytest.mark.parametrize("n", range(3))
def test_per_subset_genus_exhaustive(n):
    for b in all_bouquets(n):
        assert check_genus_per_subset(b) == []


@given(bouquets(max_n=5))
def test_per_subset_genus_random(b):
    assert check_genus_per_subset(b) == []


@given(bouquets(max_n=7))
def test_equivalence_random(b):
    assert check_equivalence(b)


@given(bouquets(max_n=6), st.integers(0, 20))
def test_rotation_invariance(b, k):
    r = b.rotate(k)
    assert boundary_components(r) == boundary_components(b)
    assert topological_polynomials(r) == topological_polynomials(b)


@given(bouquets(max_n=6), st.randoms(use_true_random=False))
def test_relabel_invariance(b, rnd):
    new = [f"x{i}" for i in range(b.n)]
    rnd.shuffle(new)
    r = b.relabel(dict(zip(b.labels, new)))
    assert euler_genus(r) == euler_genus(b)
    assert topological_polynomials(r) == topological_polynomials(b)


def test_object_route_matches_fast_route():
    rng = random.Random(3)
    for _ in range(20):
        b = random_bouquet(rng, rng.randint(0, 5))
        fast = topological_polynomials(b)
        for op in ALL_OPERATORS:
            coeffs = [0] * (b.n + 1)
            labels = b.labels
            for mask in range(1 << b.n):
                F = {labels[i] for i in range(b.n) if mask >> i & 1}
                coeffs[twuality_euler_genus(b, op, F)] += 1
            assert fast[op] == IntPolynomial(coeffs)


# -- generation ---------------------------------------------------------------------------------


def test_word_counts():
    # (2n)! / 2^n words on a fixed alphabet, then 2^n sign patterns
    assert [sum(1 for _ in double_occurrence_words(n)) for n in range(5)] == [1, 1, 6, 90, 2520]
    assert sum(1 for _ in all_bouquets(2)) == 6 * 4
    assert edge_labels(3) == ["a", "b", "c"]
    assert len(set(edge_labels(30))) == 30
