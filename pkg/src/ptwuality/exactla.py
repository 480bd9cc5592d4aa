"""Exact linear algebra over GF(2), GF(p) and Q on labelled square matrices.

Matrices are immutable. Over GF(2) every row is additionally packed into a
Python ``int`` (bit ``j`` of row ``i`` is the entry in column ``j``) and
rank is computed with word-parallel XOR elimination. Rationals never touch
floating point: rows are cleared of denominators and reduced with
fraction-free (Bareiss) elimination on Python integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, NamedTuple, Sequence

from .errors import ContractViolation, SingularMatrix, SingularPrincipalMinor
from .fields import GF2, Field


class Subset:
    """A subset of a matrix's label set, stored as a bitmask in label order."""

    __slots__ = ("universe", "mask")

    def __init__(self, universe: Sequence[str], mask: int = 0):
        self.universe = tuple(universe)
        if mask < 0 or mask >> len(self.universe):
            raise ContractViolation(f"mask {mask:#x} has bits outside a universe of size {len(self.universe)}")
        self.mask = mask

    @classmethod
    def of(cls, universe: Sequence[str], members: Iterable) -> Subset:
        """Build from labels; ints that are not labels are read as positions."""
        universe = tuple(universe)
        index = {lab: i for i, lab in enumerate(universe)}
        mask = 0
        for m in members:
            if m in index:
                mask |= 1 << index[m]
            elif isinstance(m, int) and 0 <= m < len(universe):
                mask |= 1 << m
            else:
                raise ContractViolation(f"{m!r} is not in the universe {universe}")
        return cls(universe, mask)

    @property
    def full(self) -> int:
        return (1 << len(self.universe)) - 1

    def complement(self) -> Subset:
        return Subset(self.universe, self.full ^ self.mask)

    def positions(self) -> list[int]:
        return [i for i in range(len(self.universe)) if self.mask >> i & 1]

    def labels(self) -> tuple[str, ...]:
        return tuple(self.universe[i] for i in self.positions())

    def __len__(self):
        return self.mask.bit_count()

    def __iter__(self):
        return iter(self.labels())

    def __contains__(self, label):
        try:
            return bool(self.mask >> self.universe.index(label) & 1)
        except ValueError:
            return False

    def __xor__(self, other: Subset) -> Subset:
        _same_universe(self.universe, other.universe)
        return Subset(self.universe, self.mask ^ other.mask)

    def __or__(self, other: Subset) -> Subset:
        _same_universe(self.universe, other.universe)
        return Subset(self.universe, self.mask | other.mask)

    def __eq__(self, other):
        return isinstance(other, Subset) and (self.universe, self.mask) == (other.universe, other.mask)

    def __hash__(self):
        return hash((self.universe, self.mask))

    def __repr__(self):
        return "Subset({" + ", ".join(self.labels()) + "})"


def _same_universe(u1, u2):
    if tuple(u1) != tuple(u2):
        raise ContractViolation("subsets over different universes")


class Matrix:
    """A square matrix over an exact field with rows/columns indexed by labels.

    Entries are given row by row in label order and are coerced into the
    field. Labels default to ``"0" .. "n-1"``.
    """

    __slots__ = ("field", "labels", "entries", "_bits")

    def __init__(self, field: Field, entries: Sequence[Sequence], labels: Sequence[str] | None = None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ContractViolation("matrix is not square")
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        labels = tuple(str(lab) for lab in labels)
        if len(labels) != n:
            raise ContractViolation(f"{len(labels)} labels for a {n}x{n} matrix")
        if len(set(labels)) != n:
            raise ContractViolation("labels are not distinct")
        self.field = field
        self.labels = labels
        self.entries = rows
        self._bits = None

    @classmethod
    def from_bit_rows(cls, bits: Sequence[int], labels: Sequence[str] | None = None) -> Matrix:
        n = len(bits)
        return cls(GF2, [[b >> j & 1 for j in range(n)] for b in bits], labels)

    @classmethod
    def identity(cls, field: Field, n: int, labels=None) -> Matrix:
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)], labels)

    @classmethod
    def zeros(cls, field: Field, n: int, labels=None) -> Matrix:
        return cls(field, [[0] * n for _ in range(n)], labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def bit_rows(self) -> tuple[int, ...]:
        """GF(2) rows packed into ints; bit j of row i is entry (i, j)."""
        if self.field != GF2:
            raise ContractViolation("bit rows exist only over GF(2)")
        if self._bits is None:
            self._bits = tuple(sum(1 << j for j, x in enumerate(row) if x) for row in self.entries)
        return self._bits

    def subset(self, members: Iterable = ()) -> Subset:
        return Subset.of(self.labels, members)

    def full_subset(self) -> Subset:
        return Subset(self.labels, (1 << self.n) - 1)

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def entry(self, u: str, v: str):
        return self.entries[self.labels.index(u)][self.labels.index(v)]

    def relabel(self, labels: Sequence[str]) -> Matrix:
        return Matrix(self.field, self.entries, labels)

    def transpose(self) -> Matrix:
        return Matrix(self.field, list(zip(*self.entries)), self.labels)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.field != other.field or self.n != other.n:
            raise ContractViolation("incompatible matrices")
        f = self.field
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append([_dot(f, row, col) for col in cols])
        return Matrix(f, out, self.labels)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.labels == other.labels
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.labels, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in row) for row in self.entries)
        return f"Matrix({self.field!r}, [{body}])"

    def __reduce__(self):
        return (Matrix, (self.field, self.entries, self.labels))


def _dot(f: Field, xs, ys):
    if f.kind == "q":
        return sum((a * b for a, b in zip(xs, ys)), Fraction(0))
    return sum(a * b for a, b in zip(xs, ys)) % f.p


def as_mask(M: Matrix, A) -> int:
    """Resolve ``A`` (a :class:`Subset` over M's labels, or a bitmask) to a bitmask."""
    if isinstance(A, Subset):
        if A.universe != M.labels:
            raise ContractViolation(f"subset universe {A.universe} does not match matrix labels {M.labels}")
        return A.mask
    if isinstance(A, int) and not isinstance(A, bool):
        if A < 0 or A >> M.n:
            raise ContractViolation(f"mask {A:#x} out of range for n={M.n}")
        return A
    raise ContractViolation(f"expected a Subset or bitmask, got {type(A).__name__}")


def _positions(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


# ---------------------------------------------------------------------------
# rank kernels
# ---------------------------------------------------------------------------


def rank_bits(rows: Iterable[int]) -> int:
    """Rank over GF(2) of rows packed as ints (column masking is the caller's job)."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def rank_mod(rows: list[list[int]], p: int) -> int:
    """Rank over GF(p); entries may be any integers and are reduced first."""
    m = len(rows)
    if not m:
        return 0
    rows = [[x % p for x in r] for r in rows]
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        top = rows[rank]
        inv = pow(top[c], -1, p)
        top = [x * inv % p for x in top]
        for i in range(rank + 1, m):
            a = rows[i][c]
            if a:
                rows[i] = [(x - a * y) % p for x, y in zip(rows[i], top)]
        rank += 1
        if rank == m:
            break
    return rank


def rank_int(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix by Bareiss elimination; ``rows`` is consumed.

    After k pivots every active entry is a (k+1)-minor, so the division by the
    previous pivot is exact even when zero columns are skipped.
    """
    m = len(rows)
    if not m:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(rank, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        top = rows[rank]
        p = top[c]
        for i in range(rank + 1, m):
            a = rows[i][c]
            rows[i] = [(p * x - a * y) // prev for x, y in zip(rows[i], top)]
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def clear_denominators(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Scale each rational row to an integer row; returns rows and per-row scales."""
    out, scales = [], []
    for row in rows:
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (d // x.denominator) for x in row])
        scales.append(d)
    return out, scales


def rank_rows(field: Field, rows: Sequence[Sequence]) -> int:
    """Rank of an arbitrary (possibly non-square) list of rows in ``field``."""
    if not rows or not len(rows[0]):
        return 0
    if field.kind == "gf2":
        return rank_bits(sum(1 << j for j, x in enumerate(row) if x) for row in rows)
    if field.kind == "gfp":
        return rank_mod([list(r) for r in rows], field.p)
    return rank_int(clear_denominators(rows)[0])


# ---------------------------------------------------------------------------
# matrix operations
# ---------------------------------------------------------------------------


def principal_submatrix(M: Matrix, A) -> Matrix:
    """Return M[A], keeping label order. M[empty] is the 0x0 matrix."""
    pos = _positions(as_mask(M, A), M.n)
    return Matrix(M.field, [[M.entries[i][j] for j in pos] for i in pos], [M.labels[i] for i in pos])


def add_diagonal_indicator(M: Matrix, A) -> Matrix:
    """Return M + I_A: add 1 to the diagonal entries indexed by A."""
    mask = as_mask(M, A)
    f = M.field
    rows = [list(r) for r in M.entries]
    for i in _positions(mask, M.n):
        rows[i][i] = f.add(rows[i][i], f.one)
    return Matrix(f, rows, M.labels)


def rank(M: Matrix) -> int:
    if M.field.kind == "gf2":
        return rank_bits(M.bit_rows)
    return rank_rows(M.field, M.entries)


def corank(M: Matrix) -> int:
    return M.n - rank(M)


def _invert_rows(f: Field, rows: Sequence[Sequence]) -> list[list] | None:
    """Gauss-Jordan inverse; None when singular."""
    n = len(rows)
    aug = [list(r) + [f.one if i == j else f.zero for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = f.inv(aug[c][c])
        aug[c] = [f.mul(x, inv) for x in aug[c]]
        top = aug[c]
        for i in range(n):
            a = aug[i][c]
            if i != c and a:
                aug[i] = [f.sub(x, f.mul(a, y)) for x, y in zip(aug[i], top)]
    return [r[n:] for r in aug]


def _matmul_rows(f: Field, X, Y, ncols: int):
    cols = [[row[j] for row in Y] for j in range(ncols)]
    return [[_dot(f, row, col) for col in cols] for row in X]


def pivot(M: Matrix, X) -> Matrix:
    """Principal pivot transform M * X.

    With P = M[X] invertible and M = [[P, Q], [R, S]] in block form, the
    result is [[P^-1, -P^-1 Q], [R P^-1, S - R P^-1 Q]], reassembled in the
    original label order. ``pivot(M, empty) == M``.

    Raises:
        SingularPrincipalMinor: if M[X] is singular.
    """
    mask = as_mask(M, X)
    f = M.field
    if mask == 0:
        return M
    xs = _positions(mask, M.n)
    ys = _positions(((1 << M.n) - 1) ^ mask, M.n)
    E = M.entries
    P = [[E[i][j] for j in xs] for i in xs]
    Pinv = _invert_rows(f, P)
    if Pinv is None:
        raise SingularPrincipalMinor(f"principal submatrix on {[M.labels[i] for i in xs]} is singular")
    Qb = [[E[i][j] for j in ys] for i in xs]
    Rb = [[E[i][j] for j in xs] for i in ys]
    Sb = [[E[i][j] for j in ys] for i in ys]
    PinvQ = _matmul_rows(f, Pinv, Qb, len(ys))
    RPinv = _matmul_rows(f, Rb, Pinv, len(xs))
    RPinvQ = _matmul_rows(f, Rb, PinvQ, len(ys))
    out = [[f.zero] * M.n for _ in range(M.n)]
    for a, i in enumerate(xs):
        for b, j in enumerate(xs):
            out[i][j] = Pinv[a][b]
        for b, j in enumerate(ys):
            out[i][j] = f.neg(PinvQ[a][b])
    for a, i in enumerate(ys):
        for b, j in enumerate(xs):
            out[i][j] = RPinv[a][b]
        for b, j in enumerate(ys):
            out[i][j] = f.sub(Sb[a][b], RPinvQ[a][b])
    return Matrix(f, out, M.labels)


def inverse(M: Matrix) -> Matrix:
    inv = _invert_rows(M.field, M.entries)
    if inv is None:
        raise SingularMatrix("matrix is singular")
    return Matrix(M.field, inv, M.labels)


def is_nonsingular(M: Matrix) -> bool:
    return rank(M) == M.n


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------


def is_symmetric(M: Matrix) -> bool:
    E = M.entries
    return all(E[i][j] == E[j][i] for i in range(M.n) for j in range(i))


def has_zero_diagonal(M: Matrix) -> bool:
    return not any(M.entries[i][i] for i in range(M.n))


def is_block_diagonal(M: Matrix, V1, V2) -> bool:
    """True iff every entry between the parts V1 and V2 vanishes.

    Raises:
        ContractViolation: if V1, V2 do not partition the labels.
    """
    m1, m2 = as_mask(M, V1), as_mask(M, V2)
    if m1 & m2 or (m1 | m2) != (1 << M.n) - 1:
        raise ContractViolation("V1 and V2 do not partition the label set")
    p1, p2 = _positions(m1, M.n), _positions(m2, M.n)
    E = M.entries
    return not any(E[i][j] or E[j][i] for i in p1 for j in p2)


class StructuralPredicates(NamedTuple):
    is_symmetric: bool
    has_zero_diagonal: bool
    block_partition: bool | None


def structural_predicates(M: Matrix, V1=None, V2=None) -> StructuralPredicates:
    block = None if V1 is None else is_block_diagonal(M, V1, V2)
    return StructuralPredicates(is_symmetric(M), has_zero_diagonal(M), block)


def direct_sum(M1: Matrix, M2: Matrix) -> Matrix:
    """Block-diagonal M1 (+) M2; labels are concatenated and must stay distinct."""
    if M1.field != M2.field:
        raise ContractViolation("direct sum across fields")
    f = M1.field
    n1, n2 = M1.n, M2.n
    rows = [list(r) + [f.zero] * n2 for r in M1.entries]
    rows += [[f.zero] * n1 + list(r) for r in M2.entries]
    return Matrix(f, rows, M1.labels + M2.labels)
