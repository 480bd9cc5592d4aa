"""Dense polynomials in z with nonnegative integer coefficients."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ContractViolation, ZeroPolynomial


class IntPolynomial:
    """Coefficients ascending by exponent, trailing zeros trimmed.

    >>> IntPolynomial([0, 1, 3])
    IntPolynomial('1*z + 3*z^2')
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int] = ()):
        cs = [int(c) for c in coefficients]
        if any(c < 0 for c in cs):
            raise ContractViolation(f"negative coefficient in {cs}")
        while cs and cs[-1] == 0:
            cs.pop()
        self.coefficients = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls([0] * k + [c])

    @classmethod
    def one(cls) -> IntPolynomial:
        return cls([1])

    def __bool__(self):
        return bool(self.coefficients)

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return 0

    @property
    def degree(self) -> int:
        if not self.coefficients:
            raise ZeroPolynomial("degree of the zero polynomial")
        return len(self.coefficients) - 1

    @property
    def min_degree(self) -> int:
        if not self.coefficients:
            raise ZeroPolynomial("min degree of the zero polynomial")
        return next(i for i, c in enumerate(self.coefficients) if c)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coefficients) if c]

    def total(self) -> int:
        """Sum of coefficients, i.e. the value at z = 1."""
        return sum(self.coefficients)

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coefficients])
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPolynomial:
        out = IntPolynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, (list, tuple)):
            return self == IntPolynomial(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"IntPolynomial({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    # -- external forms -------------------------------------------------

    def to_text(self) -> str:
        """Terms ascending by exponent, e.g. ``1*z + 3*z^2``; zero is ``0``."""
        terms = []
        for k, c in enumerate(self.coefficients):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{k}")
        return " + ".join(terms) if terms else "0"

    _TERM = re.compile(r"^(\d+)(?:\*z(?:\^(\d+))?)?$")

    @classmethod
    def from_text(cls, text: str) -> IntPolynomial:
        text = text.strip()
        if text == "0":
            return cls()
        coeffs: dict[int, int] = {}
        for term in text.split(" + "):
            m = cls._TERM.match(term.strip())
            if not m:
                raise ContractViolation(f"bad polynomial term {term!r}")
            c = int(m.group(1))
            if "z" not in term:
                k = 0
            else:
                k = int(m.group(2)) if m.group(2) else 1
            coeffs[k] = coeffs.get(k, 0) + c
        top = max(coeffs) if coeffs else -1
        return cls([coeffs.get(k, 0) for k in range(top + 1)])

    def to_json(self, operator: str, field_tag: str, n: int) -> str:
        return json.dumps(
            {"operator": operator, "field": field_tag, "n": n, "coefficients": list(self.coefficients)}
        )

    @classmethod
    def from_json(cls, text: str) -> IntPolynomial:
        return cls(json.loads(text)["coefficients"])


@dataclass(frozen=True)
class GapReport:
    support: list[int]
    min_deg: int
    deg: int
    gaps: list[tuple[int, int]]
    is_interpolating: bool
    is_even_polynomial: bool
    is_odd_polynomial: bool
    is_even_interpolating: bool
    is_odd_interpolating: bool
    # informational only; never asserted anywhere
    is_unimodal: bool = field(default=False)
    is_log_concave: bool = field(default=False)

    @property
    def max_gap(self) -> int:
        return max((size for _, size in self.gaps), default=0)


def _gaps(support: Sequence[int]) -> list[tuple[int, int]]:
    return [(a + 1, b - a - 1) for a, b in zip(support, support[1:]) if b - a > 1]


def _unimodal(cs: Sequence[int]) -> bool:
    i = 0
    while i + 1 < len(cs) and cs[i] <= cs[i + 1]:
        i += 1
    while i + 1 < len(cs) and cs[i] >= cs[i + 1]:
        i += 1
    return i + 1 >= len(cs)


def _log_concave(cs: Sequence[int]) -> bool:
    return all(cs[k] * cs[k] >= cs[k - 1] * cs[k + 1] for k in range(1, len(cs) - 1))


def gap_report(p: IntPolynomial) -> GapReport:
    """Support, gaps and (even/odd) interpolation flags of a nonzero polynomial.

    A gap of size k starts at i when i-1 and i+k are in the support but
    nothing strictly between them is. Even/odd parts are P_e, P_o with
    P(z) = P_e(z^2) + z P_o(z^2).
    """
    if not p:
        raise ZeroPolynomial("gap report of the zero polynomial")
    support = p.support()
    gaps = _gaps(support)
    even = [k // 2 for k in support if k % 2 == 0]
    odd = [k // 2 for k in support if k % 2 == 1]
    core = list(p.coefficients[support[0]:])
    return GapReport(
        support=support,
        min_deg=support[0],
        deg=support[-1],
        gaps=gaps,
        is_interpolating=not gaps,
        is_even_polynomial=not odd,
        is_odd_polynomial=not even,
        is_even_interpolating=bool(even) and not _gaps(even),
        is_odd_interpolating=bool(odd) and not _gaps(odd),
        is_unimodal=_unimodal(core),
        is_log_concave=_log_concave(core) and not gaps,
    )
