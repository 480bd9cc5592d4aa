"""Partial-twuality exponents and polynomials of square matrices.

For an operator in {delta, tau, deltatau, taudelta, taudeltatau} and a
subset A of the index set V, the exponents are

    delta        rank M[A] + rank M[A^c]
    tau          rank (M + I_A)
    deltatau     rank (M + I_A)[A] + rank M[A^c]
    taudelta     rank (M + I_A) - corank M[A]
    taudeltatau  rank M - corank (M + I_A)[A]

and the polynomial is the sum of z^exponent over all 2^|V| subsets.

The sweep needs three rank families indexed by a bitmask A: rank M[A],
rank (M + I)[A] (note (M + I_A)[A] = (M + I)[A]) and rank (M + I_A). Each
subset costs at most three rank computations.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    ContractViolation,
    InternalInvariantViolation,
    NotBlockDiagonal,
    SizeCapExceeded,
)
from .exactla import (
    Matrix,
    Subset,
    add_diagonal_indicator,
    as_mask,
    clear_denominators,
    corank,
    inverse,
    is_block_diagonal,
    pivot,
    principal_submatrix,
    rank,
    rank_bits,
    rank_int,
    rank_mod,
)
from .fields import GF2
from .intpoly import IntPolynomial

DEFAULT_MAX_N = 24


class Twuality(str, enum.Enum):
    DELTA = "delta"
    TAU = "tau"
    DELTA_TAU = "deltatau"
    TAU_DELTA = "taudelta"
    TAU_DELTA_TAU = "taudeltatau"

    @property
    def symbol(self) -> str:
        return self.value.replace("delta", "δ").replace("tau", "τ")

    @classmethod
    def parse(cls, name: str) -> Twuality:
        key = name.strip().lower().replace("δ", "delta").replace("τ", "tau").replace("_", "")
        for op in cls:
            if op.value == key:
                return op
        raise ContractViolation(f"unknown operator {name!r}; expected one of {[o.value for o in cls]}")

    def __str__(self):
        return self.value


ALL_OPERATORS: tuple[Twuality, ...] = tuple(Twuality)


def parse_operators(text: str | Iterable[str]) -> list[Twuality]:
    names = text.split(",") if isinstance(text, str) else list(text)
    ops = [Twuality.parse(s) for s in names if s.strip()]
    if not ops:
        raise ContractViolation("operator list is empty")
    return ops


# ---------------------------------------------------------------------------
# reference route: one subset, straight from the definitions
# ---------------------------------------------------------------------------


def exponent(op: Twuality, M: Matrix, A) -> int:
    """The exponent of ``op`` at subset ``A``, built from explicit submatrices."""
    op = Twuality(op)
    mask = as_mask(M, A)
    comp = ((1 << M.n) - 1) ^ mask
    if op is Twuality.DELTA:
        return rank(principal_submatrix(M, mask)) + rank(principal_submatrix(M, comp))
    MA = add_diagonal_indicator(M, mask)
    if op is Twuality.TAU:
        return rank(MA)
    if op is Twuality.DELTA_TAU:
        return rank(principal_submatrix(MA, mask)) + rank(principal_submatrix(M, comp))
    if op is Twuality.TAU_DELTA:
        return rank(MA) - corank(principal_submatrix(M, mask))
    return rank(M) - corank(principal_submatrix(MA, mask))


def exponents(M: Matrix, A) -> dict[Twuality, int]:
    return {op: exponent(op, M, A) for op in ALL_OPERATORS}


# ---------------------------------------------------------------------------
# fast route: rank families over bitmasks
# ---------------------------------------------------------------------------


def _bits_of(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class RankKernel:
    """Ranks of M[A], (M + I)[A] and M + I_A for bitmasks A, per field."""

    def __init__(self, M: Matrix):
        self.n = M.n
        self.kind = M.field.kind
        self.p = M.field.p
        if self.kind == "gf2":
            self.rows = M.bit_rows
            self.shifted_rows = tuple(r ^ (1 << i) for i, r in enumerate(self.rows))
            self.scales = None
        elif self.kind == "gfp":
            self.rows = tuple(tuple(r) for r in M.entries)
            self.scales = (1,) * self.n
        else:
            ints, scales = clear_denominators(M.entries)
            self.rows = tuple(tuple(r) for r in ints)
            self.scales = tuple(scales)

    def _rank_lists(self, rows: list[list[int]]) -> int:
        if self.kind == "gfp":
            return rank_mod(rows, self.p)
        return rank_int(rows)

    def principal(self, mask: int) -> int:
        if self.kind == "gf2":
            rows = self.rows
            return rank_bits(rows[i] & mask for i in _bits_of(mask))
        pos = list(_bits_of(mask))
        return self._rank_lists([[self.rows[i][j] for j in pos] for i in pos])

    def shifted(self, mask: int) -> int:
        """rank (M + I)[mask]."""
        if self.kind == "gf2":
            rows = self.shifted_rows
            return rank_bits(rows[i] & mask for i in _bits_of(mask))
        pos = list(_bits_of(mask))
        sub = []
        for a, i in enumerate(pos):
            row = [self.rows[i][j] for j in pos]
            row[a] += self.scales[i]
            sub.append(row)
        return self._rank_lists(sub)

    def tau(self, mask: int) -> int:
        """rank (M + I_mask)."""
        if self.kind == "gf2":
            return rank_bits(r ^ (1 << i) if mask >> i & 1 else r for i, r in enumerate(self.rows))
        rows = [list(r) for r in self.rows]
        for i in _bits_of(mask):
            rows[i][i] += self.scales[i]
        return self._rank_lists(rows)

    def full_rank(self) -> int:
        if self.kind == "gf2":
            return rank_bits(self.rows)
        return self._rank_lists([list(r) for r in self.rows])


_NEEDS = {
    Twuality.DELTA: {"principal"},
    Twuality.TAU: {"tau"},
    Twuality.DELTA_TAU: {"principal", "shifted"},
    Twuality.TAU_DELTA: {"principal", "tau"},
    Twuality.TAU_DELTA_TAU: {"shifted"},
}


def _principal_table(kernel: RankKernel, lo: int, hi: int) -> bytes:
    return bytes(kernel.principal(a) for a in range(lo, hi))


def _sweep(kernel: RankKernel, ops: tuple[Twuality, ...], lo: int, hi: int, table, rank_m: int) -> dict:
    """Coefficient vectors for bitmasks in [lo, hi)."""
    n = kernel.n
    full = (1 << n) - 1
    counts = {op: [0] * (n + 1) for op in ops}
    need = set().union(*(_NEEDS[op] for op in ops))
    want_sh = "shifted" in need
    want_t = "tau" in need
    d_c = counts.get(Twuality.DELTA)
    t_c = counts.get(Twuality.TAU)
    dt_c = counts.get(Twuality.DELTA_TAU)
    td_c = counts.get(Twuality.TAU_DELTA)
    tdt_c = counts.get(Twuality.TAU_DELTA_TAU)
    for a in range(lo, hi):
        k = a.bit_count()
        sh = kernel.shifted(a) if want_sh else 0
        t = kernel.tau(a) if want_t else 0
        if table is not None:
            pa = table[a]
            pc = table[full ^ a]
        if d_c is not None:
            d_c[pa + pc] += 1
        if t_c is not None:
            t_c[t] += 1
        if dt_c is not None:
            dt_c[sh + pc] += 1
        if td_c is not None:
            e = t - (k - pa)
            if e < 0:
                raise InternalInvariantViolation(f"negative taudelta exponent at mask {a:#x}")
            td_c[e] += 1
        if tdt_c is not None:
            e = rank_m - (k - sh)
            if e < 0:
                raise InternalInvariantViolation(f"negative taudeltatau exponent at mask {a:#x}")
            tdt_c[e] += 1
    return counts


_WORKER: dict = {}


def _init_worker(M: Matrix, table) -> None:
    _WORKER["kernel"] = RankKernel(M)
    _WORKER["table"] = table


def _worker_table(lo: int, hi: int) -> bytes:
    return _principal_table(_WORKER["kernel"], lo, hi)


def _worker_sweep(ops, lo: int, hi: int, rank_m: int) -> dict:
    return _sweep(_WORKER["kernel"], ops, lo, hi, _WORKER["table"], rank_m)


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


# number of polynomials that have passed check_degree_laws in this process
degree_law_checks = 0


def check_degree_laws(op: Twuality, poly: IntPolynomial, n: int) -> None:
    """Raise if a computed polynomial breaks the always-true degree and count laws.

    Every polynomial produced by :func:`all_polynomials` goes through here.
    """
    global degree_law_checks
    if poly.total() != 1 << n:
        raise InternalInvariantViolation(f"{op}: coefficient sum {poly.total()} != 2^{n}")
    if poly.degree > n:
        raise InternalInvariantViolation(f"{op}: degree {poly.degree} exceeds n = {n}")
    if op is Twuality.TAU and poly.degree != n:
        raise InternalInvariantViolation(f"tau: degree {poly.degree} != n = {n}")
    degree_law_checks += 1


def all_polynomials(
    M: Matrix,
    ops: Iterable[Twuality] = ALL_OPERATORS,
    *,
    max_n: int = DEFAULT_MAX_N,
    threads: int = 1,
) -> dict[Twuality, IntPolynomial]:
    """Every requested polynomial from one shared sweep over the 2^n subsets.

    With ``threads > 1`` the bitmask range is split into contiguous chunks
    handled by worker processes; per-chunk coefficient vectors are summed,
    which gives the same result as the sequential sweep.
    """
    ops = tuple(dict.fromkeys(Twuality(o) for o in ops))
    n = M.n
    if n > max_n:
        raise SizeCapExceeded(n, max_n)
    if n == 0:
        return {op: IntPolynomial.one() for op in ops}
    total = 1 << n
    need_table = any("principal" in _NEEDS[op] for op in ops)
    kernel = RankKernel(M)
    rank_m = kernel.full_rank()

    if threads <= 1 or total < 256:
        table = _principal_table(kernel, 0, total) if need_table else None
        counts = _sweep(kernel, ops, 0, total, table, rank_m)
    else:
        chunks = _chunks(total, threads * 4)
        table = None
        if need_table:
            with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(M, None)) as pool:
                parts = pool.map(_worker_table, *zip(*chunks))
                table = b"".join(parts)
        with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(M, table)) as pool:
            futures = [pool.submit(_worker_sweep, ops, lo, hi, rank_m) for lo, hi in chunks]
            counts = {op: [0] * (n + 1) for op in ops}
            for fut in futures:
                for op, vec in fut.result().items():
                    acc = counts[op]
                    for e, c in enumerate(vec):
                        acc[e] += c

    out = {}
    for op in ops:
        poly = IntPolynomial(counts[op])
        check_degree_laws(op, poly, n)
        out[op] = poly
    return out


def polynomial(op: Twuality, M: Matrix, *, max_n: int = DEFAULT_MAX_N, threads: int = 1) -> IntPolynomial:
    op = Twuality(op)
    return all_polynomials(M, (op,), max_n=max_n, threads=threads)[op]


def exponent_table(op: Twuality, M: Matrix, *, max_n: int = DEFAULT_MAX_N) -> list[int]:
    """Exponent of ``op`` at every bitmask, via the fast rank families."""
    op = Twuality(op)
    if M.n > max_n:
        raise SizeCapExceeded(M.n, max_n)
    kernel = RankKernel(M)
    full = (1 << M.n) - 1
    rank_m = kernel.full_rank()
    pr = _principal_table(kernel, 0, full + 1) if "principal" in _NEEDS[op] else None
    out = []
    for a in range(full + 1):
        k = a.bit_count()
        if op is Twuality.DELTA:
            out.append(pr[a] + pr[full ^ a])
        elif op is Twuality.TAU:
            out.append(kernel.tau(a))
        elif op is Twuality.DELTA_TAU:
            out.append(kernel.shifted(a) + pr[full ^ a])
        elif op is Twuality.TAU_DELTA:
            out.append(kernel.tau(a) - (k - pr[a]))
        else:
            out.append(rank_m - (k - kernel.shifted(a)))
    return out


def polynomial_by_definition(op: Twuality, M: Matrix) -> IntPolynomial:
    """Slow route: :func:`exponent` at every subset. Used to cross-check the sweep."""
    coeffs = [0] * (M.n + 1)
    for a in range(1 << M.n):
        coeffs[exponent(op, M, a)] += 1
    return IntPolynomial(coeffs)


# ---------------------------------------------------------------------------
# interlace polynomial
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorankDistribution:
    """counts[c] = number of subsets A with corank M[A] = c.

    This is the interlace polynomial q(M, x) written in powers of (x - 1).
    """

    counts: Mapping[int, int]

    def total(self) -> int:
        return sum(self.counts.values())

    def as_polynomial(self) -> IntPolynomial:
        """Coefficients in the variable y = x - 1."""
        top = max(self.counts, default=-1)
        return IntPolynomial([self.counts.get(c, 0) for c in range(top + 1)])


def interlace_polynomial(M: Matrix, *, max_n: int = DEFAULT_MAX_N) -> CorankDistribution:
    if M.n > max_n:
        raise SizeCapExceeded(M.n, max_n)
    kernel = RankKernel(M)
    counts: dict[int, int] = {}
    for a in range(1 << M.n):
        c = a.bit_count() - kernel.principal(a) if a else 0
        counts[c] = counts.get(c, 0) + 1
    return CorankDistribution(dict(sorted(counts.items())))


def check_tdt_interlace_identity(M: Matrix, *, max_n: int = DEFAULT_MAX_N) -> bool:
    """Compare P_taudeltatau(M, z) with z^rank(M) q(M + I, 1 + 1/z).

    Substituting x = 1 + 1/z turns each (x - 1)^c into z^-c, so the claim is
    that the coefficient of z^(rank M - c) equals the number of subsets A
    with corank (M + I)[A] = c.
    """
    p = polynomial(Twuality.TAU_DELTA_TAU, M, max_n=max_n)
    dist = interlace_polynomial(add_diagonal_indicator(M, M.full_subset()), max_n=max_n)
    r = rank(M)
    expected = [0] * (r + 1)
    for c, cnt in dist.counts.items():
        if r - c < 0:
            return False
        expected[r - c] += cnt
    return p == IntPolynomial(expected)


# ---------------------------------------------------------------------------
# structure theorems as executable checks
# ---------------------------------------------------------------------------


def find_nonsingular_diagonal(M: Matrix) -> Subset:
    """First A in ascending bitmask order with M + I_A non-singular.

    Such an A always exists for any square matrix over any field, so an
    exhausted search means an arithmetic bug.
    """
    kernel = RankKernel(M)
    for a in range(1 << M.n):
        if kernel.tau(a) == M.n:
            return Subset(M.labels, a)
    raise InternalInvariantViolation("no 0/1 diagonal completion makes the matrix non-singular")


def verify_product_formula(M: Matrix, V1, V2, *, max_n: int = DEFAULT_MAX_N) -> bool:
    """P(M) == P(M[V1]) * P(M[V2]) for all five operators.

    Raises:
        NotBlockDiagonal: if M has entries between V1 and V2.
    """
    if not is_block_diagonal(M, V1, V2):
        raise NotBlockDiagonal("matrix is not block-diagonal for the given partition")
    whole = all_polynomials(M, max_n=max_n)
    p1 = all_polynomials(principal_submatrix(M, V1), max_n=max_n)
    p2 = all_polynomials(principal_submatrix(M, V2), max_n=max_n)
    return all(whole[op] == p1[op] * p2[op] for op in ALL_OPERATORS)


# factor contributed by an isolated vertex over GF(2), keyed by its diagonal entry
ISOLATED_VERTEX_FACTORS: dict[Twuality, tuple[IntPolynomial, IntPolynomial]] = {
    Twuality.DELTA: (IntPolynomial([2]), IntPolynomial([0, 2])),
    Twuality.TAU: (IntPolynomial([1, 1]), IntPolynomial([1, 1])),
    Twuality.DELTA_TAU: (IntPolynomial([1, 1]), IntPolynomial([1, 1])),
    Twuality.TAU_DELTA: (IntPolynomial([2]), IntPolynomial([1, 1])),
    Twuality.TAU_DELTA_TAU: (IntPolynomial([2]), IntPolynomial([1, 1])),
}


def is_isolated(M: Matrix, v: int) -> bool:
    return not any(M.entries[u][v] or M.entries[v][u] for u in range(M.n) if u != v)


def verify_isolated_vertex(M: Matrix, v: int, *, max_n: int = DEFAULT_MAX_N) -> bool:
    """P(M) == c(M_vv) * P(M minus v) for an isolated vertex v of a GF(2) matrix."""
    if M.field != GF2:
        raise ContractViolation("the isolated-vertex factor table is stated over GF(2)")
    if not is_isolated(M, v):
        raise ContractViolation(f"vertex {M.labels[v]} is not isolated")
    rest = principal_submatrix(M, ((1 << M.n) - 1) ^ (1 << v))
    whole = all_polynomials(M, max_n=max_n)
    reduced = all_polynomials(rest, max_n=max_n)
    d = M.entries[v][v]
    return all(whole[op] == ISOLATED_VERTEX_FACTORS[op][d] * reduced[op] for op in ALL_OPERATORS)


def verify_pivot_invariance(M: Matrix, X, *, max_n: int = DEFAULT_MAX_N) -> bool:
    """P_delta(M) == P_delta(M * X). Raises SingularPrincipalMinor if M[X] is singular."""
    MX = pivot(M, X)
    return polynomial(Twuality.DELTA, M, max_n=max_n) == polynomial(Twuality.DELTA, MX, max_n=max_n)


def verify_inverse_duality(M: Matrix, *, max_n: int = DEFAULT_MAX_N) -> bool:
    """P_taudeltatau(M) == P_tau(M^-1) and P_deltatau(M) == P_taudelta(M^-1)."""
    Minv = inverse(M)
    a = all_polynomials(M, (Twuality.TAU_DELTA_TAU, Twuality.DELTA_TAU), max_n=max_n)
    b = all_polynomials(Minv, (Twuality.TAU, Twuality.TAU_DELTA), max_n=max_n)
    return a[Twuality.TAU_DELTA_TAU] == b[Twuality.TAU] and a[Twuality.DELTA_TAU] == b[Twuality.TAU_DELTA]
