"""Acceptance gate: one test and one PASS/FAIL line per criterion.

Tolerances are pinned here: all polynomial comparisons are exact, and the
wall-clock limits below are the budgets each criterion must meet. Random
instances come from the fixed seed 0x5EED.
"""

from __future__ import annotations

import time

import pytest
from conftest import ACCEPTANCE_LINES
from oracles import polynomial_oracle

from ptwuality import twuality
from ptwuality.checks import (
    DEFAULT_SEED,
    suite_duality,
    suite_equivalence,
    suite_interlace,
    suite_interpolation,
    suite_isolated,
    suite_kn,
    suite_leaf,
    suite_pivot,
    suite_product,
)
from ptwuality.exactla import pivot
from ptwuality.fields import GF2
from ptwuality.graft import KN_OPERATORS, Graft, adjacency_matrix, kn_closed_form_coefficients, kn_graft
from ptwuality.intpoly import IntPolynomial
from ptwuality.twuality import Twuality, all_polynomials, polynomial

LIMITS = {  # seconds
    1: 1.0,
    2: 5.0,
    3: 120.0,
    5: 30.0,
    6: 60.0,
    7: 60.0,
    9: 20.0,
    10: 20.0,
    11: 30.0,
}

W5 = adjacency_matrix(
    Graft(
        "012345",
        [("0", str(i)) for i in range(1, 6)] + [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "1")],
    )
)


def P(*cs):
    return IntPolynomial(cs)


def record(number: int, title: str, ok: bool, seconds: float | None = None, detail: str = "") -> None:
    timing = ""
    if seconds is not None:
        limit = LIMITS.get(number)
        timing = f" [{seconds:.2f}s" + (f" / limit {limit:.0f}s]" if limit else "]")
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}{timing}"
    if detail:
        line += f"  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def failures(results) -> str:
    return "; ".join(f"{r.name}:\n{r.counterexample}" for r in results if not r.passed)


def within(number: int, seconds: float) -> bool:
    return seconds < LIMITS[number]


def test_criterion_01_w5_exact():
    t = time.perf_counter()
    before = all_polynomials(W5)
    after = all_polynomials(pivot(W5, W5.subset(["1", "2"])))
    dt = time.perf_counter() - t
    ok = (
        before[Twuality.TAU_DELTA_TAU] == P(0, 0, 0, 0, 5, 26, 33)
        and before[Twuality.DELTA_TAU] == P(0, 0, 0, 15, 5, 33, 11)
        and after[Twuality.TAU] == P(0, 0, 0, 0, 4, 25, 35)
        and after[Twuality.TAU_DELTA] == P(0, 0, 0, 1, 31, 20, 12)
    )
    record(1, "wheel W_5 polynomials before and after pivot on {1,2}", ok and within(1, dt), dt)
    assert ok
    assert within(1, dt)


def test_criterion_02_kn_closed_forms():
    # first the hand-checkable cases from an independent minor-based oracle
    hand = {
        (Twuality.TAU_DELTA_TAU, 2): [0, 1, 3],
        (Twuality.DELTA_TAU, 2): [0, 3, 1],
        (Twuality.TAU_DELTA, 2): [0, 3, 1],
        (Twuality.TAU_DELTA_TAU, 3): [1, 3, 4],
        (Twuality.DELTA_TAU, 3): [0, 4, 1, 3],
        (Twuality.TAU_DELTA, 3): [1, 0, 7],
    }
    oracle_ok = all(
        polynomial_oracle(op.value, adjacency_matrix(kn_graft(n)).entries, GF2) == cs
        and kn_closed_form_coefficients(op, n) == cs
        for (op, n), cs in hand.items()
    )
    t = time.perf_counter()
    results = suite_kn(DEFAULT_SEED, max_n=10)
    dt = time.perf_counter() - t
    ok = oracle_ok and all(r.passed for r in results)
    cases = sum(r.cases for r in results)
    record(2, f"K_n closed forms, n = 1..10, {len(KN_OPERATORS)} operators", ok and within(2, dt), dt, f"{cases} cases")
    assert oracle_ok
    assert all(r.passed for r in results), failures(results)
    assert within(2, dt)


@pytest.fixture(scope="module")
def equivalence_run():
    t = time.perf_counter()
    results = suite_equivalence(DEFAULT_SEED, exhaustive_n=4, count=200, max_n=8)
    return results, time.perf_counter() - t


def test_criterion_03_bouquet_matrix_equivalence(equivalence_run):
    results, dt = equivalence_run
    equiv, _, per_subset = results
    ok = equiv.passed and per_subset.passed
    record(
        3,
        "topological = matrix polynomials, exhaustive n <= 4 plus 200 random n <= 8",
        ok and within(3, dt),
        dt,
        f"{equiv.cases} bouquets",
    )
    assert equiv.passed, equiv.counterexample
    assert per_subset.passed, per_subset.counterexample
    assert within(3, dt)


def test_criterion_04_faces_equal_corank_plus_one(equivalence_run):
    results, _ = equivalence_run
    faces = results[1]
    record(4, "f(B) = corank + 1 on the same bouquet set", faces.passed, None, f"{faces.cases} bouquets")
    assert faces.passed, faces.counterexample


def test_criterion_05_pivot_invariance():
    t = time.perf_counter()
    results = suite_pivot(DEFAULT_SEED, count=500, max_n=10)
    dt = time.perf_counter() - t
    ok = all(r.passed for r in results)
    record(5, "delta polynomial invariant under pivots, 500 symmetric GF(2) matrices", ok and within(5, dt), dt, results[0].name)
    assert ok, failures(results)
    assert within(5, dt)


def test_criterion_06_inverse_duality():
    t = time.perf_counter()
    results = suite_duality(DEFAULT_SEED, count=300, max_n=8)
    dt = time.perf_counter() - t
    ok = all(r.passed for r in results)
    record(6, "inverse duality, 300 matrices each over GF(2), GF(3), Q", ok and within(6, dt), dt)
    assert ok, failures(results)
    assert within(6, dt)


def test_criterion_07_interpolation():
    t = time.perf_counter()
    results = suite_interpolation(DEFAULT_SEED, count=500, max_n=9)
    dt = time.perf_counter() - t
    ok = all(r.passed for r in results)
    record(7, "interpolation and gap laws, all 3x3 GF(2) plus 500 per field", ok and within(7, dt), dt)
    assert ok, failures(results)
    assert within(7, dt)


def test_criterion_09_product_and_isolated_vertex():
    t = time.perf_counter()
    results = suite_product(DEFAULT_SEED, count=100) + suite_isolated(DEFAULT_SEED, count=100)
    dt = time.perf_counter() - t
    ok = all(r.passed for r in results)
    record(9, "block-diagonal products and isolated-vertex factors, 100 + 100", ok and within(9, dt), dt)
    assert ok, failures(results)
    assert within(9, dt)


def test_criterion_10_leaf_reductions():
    t = time.perf_counter()
    results = suite_leaf(DEFAULT_SEED, count=100)
    dt = time.perf_counter() - t
    ok = all(r.passed for r in results)
    record(10, "delta and tau leaf recursions, 100 grafts", ok and within(10, dt), dt)
    assert ok, failures(results)
    assert within(10, dt)


def test_criterion_11_interlace_identities():
    t = time.perf_counter()
    results = suite_interlace(DEFAULT_SEED, count=200, graft_count=100)
    dt = time.perf_counter() - t
    ok = all(r.passed for r in results)
    record(11, "interlace corank distributions, 200 matrices and 100 grafts", ok and within(11, dt), dt)
    assert ok, failures(results)
    assert within(11, dt)


def test_criterion_12_negative_control():
    MX = pivot(W5, W5.subset(["1", "2"]))
    lhs = polynomial(Twuality.TAU_DELTA_TAU, W5)
    rhs = polynomial(Twuality.TAU, MX)
    ok = lhs == P(0, 0, 0, 0, 5, 26, 33) and rhs == P(0, 0, 0, 0, 4, 25, 35) and lhs != rhs
    record(12, "taudeltatau(W_5) differs from tau(W_5 * {1,2})", ok, None, f"{lhs} vs {rhs}")
    assert ok


def test_criterion_08_degree_laws_everywhere():
    # runs last: every polynomial built by the sweep passes through the
    # degree-law check, which raises on violation, so by now every criterion
    # above has exercised it
    checked = twuality.degree_law_checks
    ok = checked > 0
    record(8, "degree laws and coefficient sums on every computed polynomial", ok, None, f"{checked} polynomials checked")
    assert ok
