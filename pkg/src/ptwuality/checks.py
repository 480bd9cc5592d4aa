"""Seeded property suites: exhaustive small cases plus random instances.

Each suite returns a list of :class:`PropertyResult`, one per property.
A failing property carries a text dump of the first counterexample in the
same formats the CLI reads, so it can be replayed with ``compute``.
Default sample sizes are the ones the acceptance suite uses.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import bouquet as bq
from .exactla import (
    Matrix,
    Subset,
    add_diagonal_indicator,
    has_zero_diagonal,
    is_nonsingular,
    is_symmetric,
    pivot,
    principal_submatrix,
)
from .fields import GF2, Field, Q, gfp
from .formats import format_bouquet, format_graft, format_matrix
from .graft import (
    KN_OPERATORS,
    Graft,
    adjacency_matrix,
    check_interlace_identity,
    graft_from_matrix,
    graft_polynomial,
    graft_polynomial_by_remarking,
    kn_compare,
    leaf_reduce_check_delta,
    leaf_reduce_check_tau,
)
from .intpoly import gap_report
from .twuality import (
    ALL_OPERATORS,
    RankKernel,
    Twuality,
    all_polynomials,
    check_tdt_interlace_identity,
    exponent_table,
    find_nonsingular_diagonal,
    verify_inverse_duality,
    verify_isolated_vertex,
    verify_pivot_invariance,
    verify_product_formula,
)

DEFAULT_SEED = 0x5EED
GF3 = gfp(3)
FIELDS = (GF2, GF3, Q)


@dataclass
class PropertyResult:
    name: str
    passed: bool
    cases: int
    counterexample: str | None = None
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({self.cases} cases, {self.seconds:.2f}s)"


class _Property:
    """Accumulates cases for one property; stops recording after the first failure."""

    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.counterexample: str | None = None
        self.start = time.perf_counter()

    def check(self, ok: bool, dump: Callable[[], str]) -> None:
        self.cases += 1
        if not ok and self.counterexample is None:
            self.counterexample = dump()

    def result(self) -> PropertyResult:
        return PropertyResult(
            self.name, self.counterexample is None, self.cases, self.counterexample, time.perf_counter() - self.start
        )


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_entry(rng: random.Random, field: Field):
    if field.kind == "gf2":
        return rng.randint(0, 1)
    if field.kind == "gfp":
        return rng.randrange(field.p)
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def random_matrix(rng: random.Random, field: Field, n: int) -> Matrix:
    return Matrix(field, [[random_entry(rng, field) for _ in range(n)] for _ in range(n)])


def random_nonsingular(rng: random.Random, field: Field, n: int) -> Matrix:
    while True:
        M = random_matrix(rng, field, n)
        if is_nonsingular(M):
            return M


def random_symmetric_gf2(rng: random.Random, n: int, zero_diagonal: bool = False) -> Matrix:
    bits = [0] * n
    for i in range(n):
        if not zero_diagonal and rng.random() < 0.5:
            bits[i] |= 1 << i
        for j in range(i):
            if rng.random() < 0.5:
                bits[i] |= 1 << j
                bits[j] |= 1 << i
    return Matrix.from_bit_rows(bits)


def random_graft(rng: random.Random, n: int, p_edge: float = 0.5, p_mark: float = 0.5) -> Graft:
    vs = [f"v{i}" for i in range(n)]
    edges = [(vs[i], vs[j]) for i in range(n) for j in range(i) if rng.random() < p_edge]
    return Graft(vs, edges, [v for v in vs if rng.random() < p_mark])


def random_block_diagonal(rng: random.Random, n1: int, n2: int) -> tuple[Matrix, Subset, Subset]:
    """A GF(2) matrix that is block-diagonal for a random interleaved partition."""
    n = n1 + n2
    order = list(range(n))
    rng.shuffle(order)
    first = set(order[:n1])
    bits = [0] * n
    for i in range(n):
        for j in range(n):
            if (i in first) == (j in first) and rng.random() < 0.5:
                bits[i] |= 1 << j
    M = Matrix.from_bit_rows(bits)
    V1 = Subset.of(M.labels, sorted(first))
    return M, V1, V1.complement()


def random_with_isolated_vertex(rng: random.Random, n: int) -> tuple[Matrix, int]:
    M = random_matrix(rng, GF2, n)
    v = rng.randrange(n)
    rows = [list(r) for r in M.entries]
    for u in range(n):
        if u != v:
            rows[u][v] = rows[v][u] = 0
    return Matrix(GF2, rows), v


def random_graft_with_leaf(rng: random.Random, n: int, leaf_marked: bool = False) -> tuple[Graft, str, str]:
    """Random graft on n - 1 vertices plus a leaf x hanging off a random y."""
    base = random_graft(rng, n - 1)
    x = "x"
    y = rng.choice(base.vertices)
    marked = set(base.marked) | ({x} if leaf_marked else set())
    g = Graft(base.vertices + (x,), list(base.edges) + [(x, y)], marked)
    return g, x, y


def random_admissible_set(rng: random.Random, M: Matrix, tries: int = 50) -> Subset | None:
    """A random nonempty X with M[X] non-singular, or None after ``tries`` attempts."""
    for _ in range(tries):
        mask = rng.randrange(1, 1 << M.n) if M.n else 0
        if is_nonsingular(principal_submatrix(M, mask)):
            return Subset(M.labels, mask)
    return None


def all_gf2_matrices(n: int) -> Iterator[Matrix]:
    for code in range(1 << (n * n)):
        yield Matrix.from_bit_rows([(code >> (n * i)) & ((1 << n) - 1) for i in range(n)])


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _dump_matrix(M: Matrix, extra: str = "") -> str:
    return format_matrix(M) + (f"# {extra}\n" if extra else "")


def suite_degrees(seed: int = DEFAULT_SEED, count: int = 100, max_n: int = 7) -> list[PropertyResult]:
    """Degree laws, adjacent-step bounds, rank-jump bounds and diagonal completion."""
    rng = random.Random(seed)
    laws = _Property("degree laws and coefficient sums")
    steps = _Property("adjacent-subset exponent steps")
    jumps = _Property("rank jumps in {0, 1, 2}")
    diag = _Property("some M + I_A is non-singular")
    limits = {Twuality.TAU: 1, Twuality.TAU_DELTA_TAU: 1, Twuality.DELTA: 2, Twuality.DELTA_TAU: 2, Twuality.TAU_DELTA: 2}
    for field in FIELDS:
        for _ in range(count):
            n = rng.randint(0, max_n)
            M = random_matrix(rng, field, n)
            polys = all_polynomials(M)
            ok = all(
                p.min_degree >= 0
                and p.total() == 2**n
                and (p.degree == n if op is Twuality.TAU else p.degree <= n)
                for op, p in polys.items()
            )
            laws.check(ok, lambda: _dump_matrix(M))
            for op in ALL_OPERATORS:
                table = exponent_table(op, M)
                worst = max(
                    (abs(table[a | 1 << v] - table[a]) for a in range(1 << n) for v in range(n) if not a >> v & 1),
                    default=0,
                )
                steps.check(worst <= limits[op], lambda: _dump_matrix(M, f"{op}: step {worst}"))
            kernel = RankKernel(M)
            bad = None
            for a in range(1 << n):
                for v in range(n):
                    if a >> v & 1:
                        continue
                    b = a | 1 << v
                    d1 = kernel.principal(b) - kernel.principal(a)
                    d2 = kernel.shifted(b) - kernel.shifted(a)
                    if d1 not in (0, 1, 2) or d2 not in (0, 1, 2):
                        bad = (a, v, d1, d2)
            jumps.check(bad is None, lambda: _dump_matrix(M, f"mask {bad}"))
            A = find_nonsingular_diagonal(M)
            diag.check(is_nonsingular(add_diagonal_indicator(M, A)), lambda: _dump_matrix(M))
    return [laws.result(), steps.result(), jumps.result(), diag.result()]


def _interpolation_checks(M: Matrix, props: dict[str, _Property]) -> None:
    polys = all_polynomials(M)
    for op in (Twuality.TAU, Twuality.TAU_DELTA_TAU):
        rep = gap_report(polys[op])
        props["interp"].check(rep.is_interpolating, lambda: _dump_matrix(M, f"{op}: {polys[op]}"))
    for op in (Twuality.DELTA, Twuality.DELTA_TAU, Twuality.TAU_DELTA):
        rep = gap_report(polys[op])
        ok = rep.max_gap <= 1
        if rep.is_even_polynomial:
            ok = ok and rep.is_even_interpolating
        if rep.is_odd_polynomial:
            ok = ok and rep.is_odd_interpolating
        props["gaps"].check(ok, lambda: _dump_matrix(M, f"{op}: {polys[op]}"))
    if M.field == GF2 and is_symmetric(M) and has_zero_diagonal(M):
        rep = gap_report(polys[Twuality.DELTA])
        props["even"].check(
            rep.is_even_polynomial and rep.is_even_interpolating,
            lambda: _dump_matrix(M, f"delta: {polys[Twuality.DELTA]}"),
        )


def suite_interpolation(seed: int = DEFAULT_SEED, count: int = 500, max_n: int = 9) -> list[PropertyResult]:
    """Interpolation and gap laws: all 3x3 GF(2) matrices plus random ones per field."""
    rng = random.Random(seed)
    props = {
        "interp": _Property("tau and taudeltatau interpolating"),
        "gaps": _Property("delta, deltatau, taudelta without gaps of size >= 2"),
        "even": _Property("symmetric zero-diagonal delta even-interpolating"),
    }
    for M in all_gf2_matrices(3):
        _interpolation_checks(M, props)
    for field in FIELDS:
        for _ in range(count):
            _interpolation_checks(random_matrix(rng, field, rng.randint(0, max_n)), props)
    for _ in range(count // 5):
        _interpolation_checks(random_symmetric_gf2(rng, rng.randint(0, max_n), zero_diagonal=True), props)
    return list(p.result() for p in props.values())


def suite_product(seed: int = DEFAULT_SEED, count: int = 100, max_block: int = 4) -> list[PropertyResult]:
    rng = random.Random(seed)
    prop = _Property("block-diagonal product formula")
    for _ in range(count):
        M, V1, V2 = random_block_diagonal(rng, rng.randint(0, max_block), rng.randint(0, max_block))
        prop.check(verify_product_formula(M, V1, V2), lambda: _dump_matrix(M, f"V1 = {','.join(V1.labels)}"))
    return [prop.result()]


def suite_isolated(seed: int = DEFAULT_SEED, count: int = 100, max_n: int = 8) -> list[PropertyResult]:
    rng = random.Random(seed)
    prop = _Property("isolated-vertex factor table")
    for _ in range(count):
        M, v = random_with_isolated_vertex(rng, rng.randint(1, max_n))
        prop.check(verify_isolated_vertex(M, v), lambda: _dump_matrix(M, f"isolated vertex {v}"))
    return [prop.result()]


def suite_leaf(seed: int = DEFAULT_SEED, count: int = 100, max_n: int = 8) -> list[PropertyResult]:
    rng = random.Random(seed)
    delta = _Property("delta leaf recursion (unmarked leaf)")
    tau = _Property("tau leaf recursion")
    for _ in range(count):
        g, x, y = random_graft_with_leaf(rng, rng.randint(2, max_n))
        delta.check(leaf_reduce_check_delta(g, x, y), lambda: format_graft(g) + f"# leaf {x}-{y}\n")
        h = g.remarked(g.marked | {x}) if rng.random() < 0.5 else g
        tau.check(leaf_reduce_check_tau(h, x, y), lambda: format_graft(h) + f"# leaf {x}-{y}\n")
    return [delta.result(), tau.result()]


def suite_pivot(seed: int = DEFAULT_SEED, count: int = 500, max_n: int = 10) -> list[PropertyResult]:
    """Pivot invariance of delta, plus pivot involution and corank transfer on smaller cases."""
    rng = random.Random(seed)
    inv = _Property("pivot invariance of delta")
    involution = _Property("pivot involution")
    transfer = _Property("corank M[A] = corank (M*X)[A xor X]")
    graft_inv = _Property("pivoted graft keeps its delta polynomial")
    skipped = 0
    for k in range(count):
        M = random_symmetric_gf2(rng, rng.randint(1, max_n))
        X = random_admissible_set(rng, M)
        if X is None:
            skipped += 1
            continue
        inv.check(verify_pivot_invariance(M, X), lambda: _dump_matrix(M, f"X = {','.join(X.labels)}"))
        if k % 10:
            continue
        MX = pivot(M, X)
        involution.check(pivot(MX, X) == M, lambda: _dump_matrix(M, f"X = {','.join(X.labels)}"))
        if M.n <= 7:
            k1, k2 = RankKernel(M), RankKernel(MX)
            bad = next(
                (
                    a
                    for a in range(1 << M.n)
                    if a.bit_count() - k1.principal(a) != (a ^ X.mask).bit_count() - k2.principal(a ^ X.mask)
                ),
                None,
            )
            transfer.check(bad is None, lambda: _dump_matrix(M, f"X = {','.join(X.labels)}, A mask {bad}"))
    # the same statement phrased through grafts
    for _ in range(count // 10):
        g = random_graft(rng, rng.randint(1, 7))
        M = adjacency_matrix(g)
        X = random_admissible_set(rng, M)
        if X is None:
            continue
        h = graft_from_matrix(pivot(M, X))
        graft_inv.check(
            graft_polynomial(Twuality.DELTA, g) == graft_polynomial(Twuality.DELTA, h),
            lambda: format_graft(g) + f"# X = {','.join(X.labels)}\n",
        )
    res = [inv.result(), involution.result(), transfer.result(), graft_inv.result()]
    res[0].name += f" ({skipped} skipped without admissible X)"
    return res


def suite_duality(seed: int = DEFAULT_SEED, count: int = 300, max_n: int = 8) -> list[PropertyResult]:
    rng = random.Random(seed)
    prop = _Property("inverse duality over GF(2), GF(3), Q")
    for field in FIELDS:
        for _ in range(count):
            M = random_nonsingular(rng, field, rng.randint(0, max_n))
            prop.check(verify_inverse_duality(M), lambda: _dump_matrix(M))
    return [prop.result()]


def suite_equivalence(
    seed: int = DEFAULT_SEED, exhaustive_n: int = 4, count: int = 200, max_n: int = 8, per_subset_n: int = 3
) -> list[PropertyResult]:
    """Topological versus matrix polynomials on bouquets."""
    rng = random.Random(seed)
    equiv = _Property("topological and matrix polynomials agree")
    faces = _Property("faces = corank + 1")
    per_subset = _Property("Euler genus = matrix exponent per subset")

    def dump(b):
        return lambda: format_bouquet(b)

    for n in range(exhaustive_n + 1):
        for b in bq.all_bouquets(n):
            equiv.check(bq.check_equivalence(b), dump(b))
            faces.check(bq.check_face_corank(b), dump(b))
            if n <= per_subset_n:
                per_subset.check(not bq.check_genus_per_subset(b), dump(b))
    for k in range(count):
        b = bq.random_bouquet(rng, rng.randint(0, max_n))
        equiv.check(bq.check_equivalence(b), dump(b))
        faces.check(bq.check_face_corank(b), dump(b))
        if k % 20 == 0 and b.n <= 6:
            per_subset.check(not bq.check_genus_per_subset(b), dump(b))
    return [equiv.result(), faces.result(), per_subset.result()]


def suite_interlace(seed: int = DEFAULT_SEED, count: int = 200, graft_count: int = 100, max_n: int = 8) -> list[PropertyResult]:
    rng = random.Random(seed)
    mats = _Property("taudeltatau coefficients = corank distribution of M + I")
    grafts = _Property("graft taudeltatau = interlace polynomial of (G, V - L)")
    for k in range(count):
        M = random_matrix(rng, FIELDS[k % 3], rng.randint(0, max_n))
        mats.check(check_tdt_interlace_identity(M), lambda: _dump_matrix(M))
    for _ in range(graft_count):
        g = random_graft(rng, rng.randint(0, max_n))
        grafts.check(check_interlace_identity(g), lambda: format_graft(g))
    return [mats.result(), grafts.result()]


def suite_grafts(seed: int = DEFAULT_SEED, count: int = 50, max_n: int = 7) -> list[PropertyResult]:
    """Graft-level statements: tau ignores markings; the re-marking route matches."""
    rng = random.Random(seed)
    tau = _Property("tau polynomial independent of markings")
    remark = _Property("re-marking expansion matches the matrix route")
    for _ in range(count):
        g = random_graft(rng, rng.randint(0, max_n))
        h = g.remarked(v for v in g.vertices if rng.random() < 0.5)
        tau.check(graft_polynomial(Twuality.TAU, g) == graft_polynomial(Twuality.TAU, h), lambda: format_graft(g))
        for op in ALL_OPERATORS:
            remark.check(
                graft_polynomial_by_remarking(op, g) == graft_polynomial(op, g), lambda: format_graft(g) + f"# {op}\n"
            )
    return [tau.result(), remark.result()]


def suite_kn(seed: int = DEFAULT_SEED, max_n: int = 10) -> list[PropertyResult]:
    del seed  # deterministic
    out = []
    for op in KN_OPERATORS:
        prop = _Property(f"K_n closed form for {op}, n = 1..{max_n}")
        for n in range(1, max_n + 1):
            closed, brute, ok = kn_compare(op, n)
            prop.check(ok, lambda: f"K_{n} {op}: closed form {closed}, brute force {list(brute.coefficients)}\n")
        out.append(prop.result())
    return out


SUITES: dict[str, Callable[..., list[PropertyResult]]] = {
    "degrees": suite_degrees,
    "interpolation": suite_interpolation,
    "product": suite_product,
    "isolated": suite_isolated,
    "leaf": suite_leaf,
    "pivot": suite_pivot,
    "duality": suite_duality,
    "equivalence": suite_equivalence,
    "interlace": suite_interlace,
    "grafts": suite_grafts,
    "kn": suite_kn,
}

SUITE_NAMES = ("all",) + tuple(SUITES)


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[PropertyResult]:
    if name == "all":
        return [r for fn in SUITES.values() for r in fn(seed)]
    return SUITES[name](seed)
