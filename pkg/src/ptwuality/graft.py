"""Grafts: simple graphs with a distinguished vertex subset.

The adjacency matrix of a graft (G, L) is the GF(2) matrix with 1 off the
diagonal for adjacent pairs and 1 on the diagonal exactly at the marked
vertices. All graft polynomials are polynomials of that matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .errors import ContractViolation, UnsupportedOperator
from .exactla import Matrix, is_symmetric
from .exactla import rank as matrix_rank
from .fields import GF2
from .intpoly import IntPolynomial
from .twuality import (
    ALL_OPERATORS,
    DEFAULT_MAX_N,
    Twuality,
    all_polynomials,
    check_tdt_interlace_identity,
    interlace_polynomial,
    polynomial,
)

log = logging.getLogger(__name__)


def _edge(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graft:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    marked: frozenset[str]

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]] = (), marked: Iterable[str] = ()):
        vs = tuple(str(v) for v in vertices)
        if len(set(vs)) != len(vs):
            raise ContractViolation("duplicate vertex labels")
        vset = set(vs)
        es = set()
        for e in edges:
            u, v = (str(x) for x in e)
            if u == v:
                raise ContractViolation(f"loop at {u}; grafts are simple graphs")
            if u not in vset or v not in vset:
                raise ContractViolation(f"edge {u}-{v} references an unknown vertex")
            key = _edge(u, v)
            if key in es:
                raise ContractViolation(f"duplicate edge {u}-{v}")
            es.add(key)
        ms = frozenset(str(m) for m in marked)
        if not ms <= vset:
            raise ContractViolation(f"marked vertices {sorted(ms - vset)} are not vertices")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))
        object.__setattr__(self, "marked", ms)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def neighbours(self, v: str) -> set[str]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def degree(self, v: str) -> int:
        return len(self.neighbours(v))

    def remarked(self, marked: Iterable[str]) -> Graft:
        return Graft(self.vertices, self.edges, marked)

    def delete_vertices(self, vs: Iterable[str]) -> Graft:
        drop = set(vs)
        return Graft(
            [v for v in self.vertices if v not in drop],
            [e for e in self.edges if not (set(e) & drop)],
            self.marked - drop,
        )

    def __repr__(self):
        es = " ".join(f"{u}-{v}" for u, v in sorted(self.edges))
        return f"Graft(vertices={' '.join(self.vertices)!r}, edges={es!r}, marked={sorted(self.marked)!r})"


def adjacency_matrix(g: Graft) -> Matrix:
    idx = {v: i for i, v in enumerate(g.vertices)}
    bits = [0] * g.n
    for u, v in g.edges:
        bits[idx[u]] |= 1 << idx[v]
        bits[idx[v]] |= 1 << idx[u]
    for v in g.marked:
        bits[idx[v]] |= 1 << idx[v]
    return Matrix.from_bit_rows(bits, g.vertices)


def graft_from_matrix(M: Matrix) -> Graft:
    """The graft whose adjacency matrix is the symmetric GF(2) matrix ``M``."""
    if M.field != GF2 or not is_symmetric(M):
        raise ContractViolation("only symmetric GF(2) matrices are graft adjacency matrices")
    labs = M.labels
    edges = [(labs[i], labs[j]) for i in range(M.n) for j in range(i) if M[i, j]]
    marked = [labs[i] for i in range(M.n) if M[i, i]]
    return Graft(labs, edges, marked)


def graft_polynomial(op: Twuality, g: Graft, *, max_n: int = DEFAULT_MAX_N, threads: int = 1) -> IntPolynomial:
    return polynomial(op, adjacency_matrix(g), max_n=max_n, threads=threads)


def graft_polynomials(g: Graft, ops=ALL_OPERATORS, *, max_n: int = DEFAULT_MAX_N, threads: int = 1):
    return all_polynomials(adjacency_matrix(g), ops, max_n=max_n, threads=threads)


def graft_polynomial_by_remarking(op: Twuality, g: Graft) -> IntPolynomial:
    """Graft polynomial expanded through the re-marked grafts (G, L xor A).

    Every M + I_A is realised as the adjacency matrix of another graft
    rather than by perturbing a matrix, so this is an independent route to
    the same polynomial.
    """
    op = Twuality(op)
    base = adjacency_matrix(g)
    rank_base = matrix_rank(base)
    vs = g.vertices
    coeffs = [0] * (g.n + 1)

    def r(h: Graft, keep: Sequence[str]) -> int:
        return matrix_rank(adjacency_matrix(h.delete_vertices(set(vs) - set(keep))))

    for mask in range(1 << g.n):
        A = [v for i, v in enumerate(vs) if mask >> i & 1]
        Ac = [v for v in vs if v not in A]
        flipped = g.remarked(g.marked.symmetric_difference(A))
        if op is Twuality.DELTA:
            e = r(g, A) + r(g, Ac)
        elif op is Twuality.TAU:
            e = r(flipped, vs)
        elif op is Twuality.DELTA_TAU:
            e = r(flipped, A) + r(g, Ac)
        elif op is Twuality.TAU_DELTA:
            e = r(flipped, vs) - (len(A) - r(g, A))
        else:
            e = rank_base - (len(A) - r(flipped, A))
        coeffs[e] += 1
    return IntPolynomial(coeffs)


def check_interlace_identity(g: Graft) -> bool:
    """P_taudeltatau(G, L) against z^rank q((G, V \\ L), 1 + 1/z)."""
    M = adjacency_matrix(g)
    p = polynomial(Twuality.TAU_DELTA_TAU, M)
    dist = interlace_polynomial(adjacency_matrix(g.remarked(set(g.vertices) - g.marked)))
    r = matrix_rank(M)
    expected = [0] * (r + 1)
    for c, cnt in dist.counts.items():
        if c > r:
            return False
        expected[r - c] += cnt
    return p == IntPolynomial(expected) and check_tdt_interlace_identity(M)


# ---------------------------------------------------------------------------
# disjoint union and leaf reductions
# ---------------------------------------------------------------------------


def disjoint_union(g1: Graft, g2: Graft) -> Graft:
    """Union of two grafts; colliding labels of ``g2`` get ``#2`` appended."""
    taken = set(g1.vertices)
    rename = {}
    for v in g2.vertices:
        w = v
        while w in taken:
            w += "#2"
        taken.add(w)
        rename[v] = w
    return Graft(
        g1.vertices + tuple(rename[v] for v in g2.vertices),
        list(g1.edges) + [(rename[u], rename[v]) for u, v in g2.edges],
        set(g1.marked) | {rename[v] for v in g2.marked},
    )


def _check_leaf(g: Graft, x: str, y: str) -> None:
    if x not in g.vertices or y not in g.vertices:
        raise ContractViolation(f"{x} or {y} is not a vertex")
    if g.neighbours(x) != {y}:
        raise ContractViolation(f"{x} is not a leaf attached to {y}")


def leaf_reduce_check_delta(g: Graft, x: str, y: str) -> bool:
    """P_delta(G, L) == P_delta(G - x, L) + 2 z^2 P_delta(G - {x, y}, L - y), for an unmarked leaf x."""
    _check_leaf(g, x, y)
    if x in g.marked:
        raise ContractViolation(f"leaf {x} is marked; no delta leaf recursion applies")
    lhs = graft_polynomial(Twuality.DELTA, g)
    a = graft_polynomial(Twuality.DELTA, g.delete_vertices([x]))
    b = graft_polynomial(Twuality.DELTA, g.delete_vertices([x, y]))
    return lhs == a + IntPolynomial([0, 0, 2]) * b


def leaf_reduce_check_tau(g: Graft, x: str, y: str) -> bool:
    """P_tau(G, L) == z P_tau(G - x) + 2 z^2 P_tau(G - {x, y}); markings are irrelevant for tau."""
    _check_leaf(g, x, y)
    lhs = graft_polynomial(Twuality.TAU, g)
    a = graft_polynomial(Twuality.TAU, g.delete_vertices([x]))
    b = graft_polynomial(Twuality.TAU, g.delete_vertices([x, y]))
    return lhs == IntPolynomial([0, 1]) * a + IntPolynomial([0, 0, 2]) * b


# ---------------------------------------------------------------------------
# complete graphs
# ---------------------------------------------------------------------------

KN_OPERATORS = (Twuality.TAU_DELTA_TAU, Twuality.DELTA_TAU, Twuality.TAU_DELTA)


def kn_graft(n: int) -> Graft:
    if n < 1:
        raise ContractViolation("K_n needs n >= 1")
    vs = [str(i) for i in range(n)]
    return Graft(vs, [(vs[i], vs[j]) for i in range(n) for j in range(i)])


def _binom_pow(n: int, sign: int) -> list[int]:
    """Coefficients of (1 + sign*z)^n."""
    return [comb(n, k) * sign**k for k in range(n + 1)]


def _combine(*terms: tuple[int, list[int]]) -> list[int]:
    size = max(len(t) for _, t in terms)
    out = [0] * size
    for scale, t in terms:
        for k, c in enumerate(t):
            out[k] += scale * c
    return out


def _mono(k: int) -> list[int]:
    return [0] * k + [1]


def _shift(cs: list[int], k: int) -> list[int]:
    return [0] * k + cs


def kn_closed_form_coefficients(op: Twuality, n: int) -> list[int]:
    """Expand the printed closed form of the (K_n, empty) polynomial exactly.

    Only taudeltatau, deltatau and taudelta have closed forms here. The raw
    integer list is returned so that a wrong formula shows up as a mismatch
    (possibly with negative entries) instead of an exception.
    """
    op = Twuality(op)
    if op not in KN_OPERATORS:
        raise UnsupportedOperator(f"no closed form for {op} on K_n")
    if n < 1:
        raise ContractViolation("K_n needs n >= 1")
    even = n % 2 == 0
    plus = _binom_pow(n + 1, 1)
    minus = _binom_pow(n + 1, -1)
    if op is Twuality.TAU_DELTA_TAU:
        if even:
            cs = _combine((1, _shift(_binom_pow(n, 1), 1)), (1, _mono(n)), (-1, _mono(n + 1)))
        else:
            cs = _combine((1, _binom_pow(n, 1)), (1, _mono(n - 1)), (-1, _mono(n)))
    else:
        lead = _mono(n) if even else _mono(n - 1)
        if op is Twuality.TAU_DELTA and not even:
            half = [c // 2 for c in _combine((1, plus), (1, minus))]
            cs = _combine((1, lead), (1, half), (-1, _mono(n + 1)))
        else:
            half = [c // 2 for c in _combine((1, plus), (-1, minus))]
            tail = _mono(n + 1) if even else _mono(n)
            cs = _combine((1, lead), (1, half), (-1, tail))
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def kn_closed_form(op: Twuality, n: int) -> IntPolynomial:
    return IntPolynomial(kn_closed_form_coefficients(op, n))


def kn_compare(op: Twuality, n: int) -> tuple[list[int], IntPolynomial, bool]:
    """Closed form versus brute force; brute force is the reported truth."""
    closed = kn_closed_form_coefficients(op, n)
    brute = graft_polynomial(op, kn_graft(n))
    ok = tuple(closed) == brute.coefficients
    if not ok:
        log.warning("K_%d %s: closed form %s disagrees with brute force %s", n, op, closed, brute)
    return closed, brute, ok
