"""Bouquets (one-vertex ribbon graphs) as signed double-occurrence words.

The word lists the loop ends met while walking once around the vertex;
``twisted`` holds the non-orientable loops. Boundary components are counted
by tracing darts: a dart is a loop end together with the direction of
travel along the vertex boundary (``up`` = increasing position). Leaving
end i along its loop lands at the partner end j; a twisted loop reverses
the direction of travel, and travel continues to the neighbouring end
j + 1 or j - 1. Every boundary component is traced once in each direction,
so the number of dart orbits is twice the number of boundary components.

Euler genera of partial twualities are obtained from face counts of
bouquets only, via B1/B2 reductions: for each twuality the surface's
faces match those of one bouquet B1 and its vertices match the faces of
another bouquet B2, both built from B by deleting edges and twisting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import ContractViolation, InternalInvariantViolation, SizeCapExceeded
from .graft import Graft, adjacency_matrix, graft_polynomials
from .exactla import corank
from .intpoly import IntPolynomial
from .twuality import ALL_OPERATORS, DEFAULT_MAX_N, Twuality, check_degree_laws, exponent


@dataclass(frozen=True)
class Bouquet:
    word: tuple[str, ...]
    twisted: frozenset[str]

    def __init__(self, word: Iterable[str], twisted: Iterable[str] = ()):
        w = tuple(str(t) for t in word)
        counts: dict[str, int] = {}
        for t in w:
            counts[t] = counts.get(t, 0) + 1
        bad = sorted(t for t, c in counts.items() if c != 2)
        if bad:
            raise ContractViolation(f"labels {bad} do not occur exactly twice")
        tw = frozenset(str(t) for t in twisted)
        if not tw <= counts.keys():
            raise ContractViolation(f"twisted labels {sorted(tw - counts.keys())} are not in the word")
        object.__setattr__(self, "word", w)
        object.__setattr__(self, "twisted", tw)

    @property
    def labels(self) -> tuple[str, ...]:
        """Edge labels in order of first occurrence."""
        return tuple(dict.fromkeys(self.word))

    @property
    def n(self) -> int:
        return len(self.word) // 2

    def rotate(self, k: int) -> Bouquet:
        if not self.word:
            return self
        k %= len(self.word)
        return Bouquet(self.word[k:] + self.word[:k], self.twisted)

    def relabel(self, mapping: dict[str, str]) -> Bouquet:
        return Bouquet((mapping[t] for t in self.word), (mapping[t] for t in self.twisted))

    def __str__(self):
        return f"word: {' '.join(self.word)}\ntwisted: {' '.join(sorted(self.twisted))}"


def _check_labels(b: Bouquet, F: Iterable[str]) -> frozenset[str]:
    F = frozenset(str(x) for x in F)
    unknown = F - set(b.word)
    if unknown:
        raise ContractViolation(f"unknown edge labels {sorted(unknown)}")
    return F


def delete_edges(b: Bouquet, F: Iterable[str]) -> Bouquet:
    F = _check_labels(b, F)
    return Bouquet((t for t in b.word if t not in F), b.twisted - F)


def partial_petrial(b: Bouquet, F: Iterable[str]) -> Bouquet:
    """Add a half-twist to every loop in F."""
    F = _check_labels(b, F)
    return Bouquet(b.word, b.twisted ^ F)


# ---------------------------------------------------------------------------
# face tracing
# ---------------------------------------------------------------------------


def _dart_orbits(partner: Sequence[int], flip: Sequence[bool]) -> int:
    m = len(partner)
    seen = bytearray(2 * m)
    orbits = 0
    for start in range(2 * m):
        if seen[start]:
            continue
        orbits += 1
        d = start
        while not seen[d]:
            seen[d] = 1
            i, down = d >> 1, d & 1
            j = partner[i]
            if flip[i]:
                down ^= 1
            d = 2 * ((j - 1) % m if down else (j + 1) % m) + down
    return orbits


def _faces(word: Sequence[str], twisted) -> int:
    if not word:
        return 1
    first: dict[str, int] = {}
    partner = [0] * len(word)
    for i, t in enumerate(word):
        if t in first:
            partner[i] = first[t]
            partner[first[t]] = i
        else:
            first[t] = i
    orbits = _dart_orbits(partner, [t in twisted for t in word])
    if orbits % 2:
        raise InternalInvariantViolation(f"odd dart orbit count {orbits} for word {' '.join(word)}")
    return orbits // 2


def boundary_components(b: Bouquet) -> int:
    return _faces(b.word, b.twisted)


def euler_genus(b: Bouquet) -> int:
    """2 - v + e - f with one vertex."""
    g = 1 + b.n - boundary_components(b)
    if g < 0:
        raise InternalInvariantViolation(f"negative Euler genus for {b.word}")
    return g


class _FaceTable:
    """Face counts of every sub-bouquet of one word, keyed by (kept, twisted) label masks."""

    def __init__(self, word: tuple[str, ...]):
        self.labels = tuple(dict.fromkeys(word))
        index = {t: i for i, t in enumerate(self.labels)}
        self.codes = tuple(index[t] for t in word)
        self.memo: dict[tuple[int, int], int] = {}

    def faces(self, kept: int, twist: int) -> int:
        twist &= kept
        key = (kept, twist)
        f = self.memo.get(key)
        if f is None:
            sub = [c for c in self.codes if kept >> c & 1]
            f = _faces(sub, {c for c in sub if twist >> c & 1})
            self.memo[key] = f
        return f


@lru_cache(maxsize=4096)
def _face_table(word: tuple[str, ...]) -> _FaceTable:
    return _FaceTable(word)


def _genus_from_faces(op: Twuality, n: int, f, F: int, Fc: int, S: int, full: int) -> int:
    """Euler genus of the partial twuality on F from two bouquet face counts."""
    if op is Twuality.TAU:
        return 1 + n - f(full, S ^ F)
    if op is Twuality.DELTA:
        f1, f2 = f(Fc, S), f(F, S)
    elif op is Twuality.DELTA_TAU:
        f1, f2 = f(Fc, S), f(F, S ^ F)
    elif op is Twuality.TAU_DELTA:
        f1, f2 = f(full, S ^ F), f(F, S)
    else:
        f1, f2 = f(full, S), f(F, S ^ F)
    return 2 + n - f1 - f2


def twuality_euler_genus(b: Bouquet, op: Twuality, F: Iterable[str]) -> int:
    """Euler genus of the partial twuality of ``b`` on the loops F.

    B1 supplies the faces and B2 the vertices (faces of the dual):

        delta        B1 = B - F          B2 = B - F^c
        deltatau     B1 = B - F          B2 = B^tau(F) - F^c
        taudelta     B1 = B^tau(F)       B2 = B - F^c
        taudeltatau  B1 = B              B2 = B^tau(F) - F^c

    and tau is just the Euler genus of the partial Petrial.
    """
    op = Twuality(op)
    F = _check_labels(b, F)
    Fc = set(b.word) - F
    if op is Twuality.TAU:
        return euler_genus(partial_petrial(b, F))
    twisted_F = partial_petrial(b, F)
    if op is Twuality.DELTA:
        b1, b2 = delete_edges(b, F), delete_edges(b, Fc)
    elif op is Twuality.DELTA_TAU:
        b1, b2 = delete_edges(b, F), delete_edges(twisted_F, Fc)
    elif op is Twuality.TAU_DELTA:
        b1, b2 = twisted_F, delete_edges(b, Fc)
    else:
        b1, b2 = b, delete_edges(twisted_F, Fc)
    g = 2 + b.n - boundary_components(b1) - boundary_components(b2)
    if g < 0:
        raise InternalInvariantViolation(f"negative Euler genus for {op} on {sorted(F)}")
    return g


def topological_polynomials(
    b: Bouquet, ops: Iterable[Twuality] = ALL_OPERATORS, *, max_n: int = DEFAULT_MAX_N
) -> dict[Twuality, IntPolynomial]:
    """Sum of z^genus over all loop subsets, for each operator."""
    ops = tuple(Twuality(o) for o in ops)
    n = b.n
    if n > max_n:
        raise SizeCapExceeded(n, max_n)
    table = _face_table(b.word)
    labels = table.labels
    S = sum(1 << i for i, t in enumerate(labels) if t in b.twisted)
    full = (1 << n) - 1
    f = table.faces
    counts = {op: [0] * (n + 1) for op in ops}
    for F in range(1 << n):
        Fc = full ^ F
        for op in ops:
            g = _genus_from_faces(op, n, f, F, Fc, S, full)
            if g < 0:
                raise InternalInvariantViolation(f"negative Euler genus for {op} at mask {F:#x}")
            counts[op][g] += 1
    out = {}
    for op in ops:
        out[op] = IntPolynomial(counts[op])
        check_degree_laws(op, out[op], n)
    return out


def topological_polynomial(b: Bouquet, op: Twuality, *, max_n: int = DEFAULT_MAX_N) -> IntPolynomial:
    op = Twuality(op)
    return topological_polynomials(b, (op,), max_n=max_n)[op]


# ---------------------------------------------------------------------------
# intersection graft and the bridge to matrices
# ---------------------------------------------------------------------------


def interlaced(b: Bouquet, e: str, f: str) -> bool:
    pe = [i for i, t in enumerate(b.word) if t == e]
    between = sum(1 for i, t in enumerate(b.word) if t == f and pe[0] < i < pe[1])
    return between == 1


def intersection_graft(b: Bouquet) -> Graft:
    """Vertices are loops (first-occurrence order), edges join interlaced loops, marks are twisted loops."""
    labels = b.labels
    pos: dict[str, list[int]] = {t: [] for t in labels}
    for i, t in enumerate(b.word):
        pos[t].append(i)
    edges = []
    for a in range(len(labels)):
        e0, e1 = pos[labels[a]]
        for c in range(a):
            f0, f1 = pos[labels[c]]
            if (e0 < f0 < e1) != (e0 < f1 < e1):
                edges.append((labels[c], labels[a]))
    return Graft(labels, edges, b.twisted)


def check_equivalence(b: Bouquet, *, max_n: int = DEFAULT_MAX_N) -> bool:
    """Topological and matrix polynomials agree for all five operators."""
    top = topological_polynomials(b, max_n=max_n)
    mat = graft_polynomials(intersection_graft(b), max_n=max_n)
    return all(top[op] == mat[op] for op in ALL_OPERATORS)


def check_face_corank(b: Bouquet) -> bool:
    """f(B) == corank(adjacency of the intersection graft) + 1."""
    return boundary_components(b) == corank(adjacency_matrix(intersection_graft(b))) + 1


def check_genus_per_subset(b: Bouquet) -> list[tuple[Twuality, tuple[str, ...], int, int]]:
    """Every (op, F) where the topological genus differs from the matrix exponent.

    An empty list means all 5 * 2^n pairs agree.
    """
    g = intersection_graft(b)
    M = adjacency_matrix(g)
    labels = g.vertices
    bad = []
    for mask in range(1 << b.n):
        F = tuple(t for i, t in enumerate(labels) if mask >> i & 1)
        for op in ALL_OPERATORS:
            top = twuality_euler_genus(b, op, F)
            mat = exponent(op, M, mask)
            if top != mat:
                bad.append((op, F, top, mat))
    return bad


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------


def edge_labels(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"e{i}" for i in range(n)]


def double_occurrence_words(n: int) -> Iterator[tuple[str, ...]]:
    """All (2n)!/2^n words in which each of n labels occurs twice (no symmetry reduction)."""
    labels = edge_labels(n)
    remaining = [2] * n
    word: list[str] = []

    def rec():
        if len(word) == 2 * n:
            yield tuple(word)
            return
        for i, lab in enumerate(labels):
            if remaining[i]:
                remaining[i] -= 1
                word.append(lab)
                yield from rec()
                word.pop()
                remaining[i] += 1

    yield from rec()


def all_bouquets(n: int) -> Iterator[Bouquet]:
    """Every double-occurrence word on n labels with each of the 2^n twist patterns."""
    labels = edge_labels(n)
    for w in double_occurrence_words(n):
        for mask in range(1 << n):
            yield Bouquet(w, (labels[i] for i in range(n) if mask >> i & 1))


def random_bouquet(rng: random.Random, n: int) -> Bouquet:
    labels = edge_labels(n)
    word = labels * 2
    rng.shuffle(word)
    return Bouquet(word, (t for t in labels if rng.random() < 0.5))
