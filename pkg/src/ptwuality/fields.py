"""Coefficient fields: GF(2), GF(p) and the rationals.

Scalars are plain Python objects: ``int`` in ``[0, p)`` for the finite
fields and :class:`fractions.Fraction` for Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import ContractViolation

_MAX_MODULUS = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


class Field:
    """An exact coefficient field.

    Use the module-level :data:`GF2` and :data:`Q` singletons or
    :func:`gfp` rather than calling the constructor directly. ``gfp(2)``
    normalises to :data:`GF2`.
    """

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind == "gfp":
            if p is None or not isinstance(p, int):
                raise ContractViolation("GF(p) needs an integer modulus")
            if not 2 <= p < _MAX_MODULUS:
                raise ContractViolation(f"modulus {p} outside [2, 2^31)")
            if not is_prime(p):
                raise ContractViolation(f"modulus {p} is not prime")
            if p == 2:
                kind = "gf2"
        elif kind == "gf2":
            p = 2
        elif kind == "q":
            p = 0
        else:
            raise ContractViolation(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def tag(self) -> str:
        """Short external name: ``gf2``, ``gf<p>`` or ``q``."""
        if self.kind == "q":
            return "q"
        return f"gf{self.p}"

    @property
    def header(self) -> str:
        """The ``field ...`` line of the matrix text format."""
        if self.kind == "gf2":
            return "field gf2"
        if self.kind == "gfp":
            return f"field gfp {self.p}"
        return "field q"

    @classmethod
    def from_tag(cls, tag: str) -> Field:
        t = tag.strip().lower()
        if t in ("q", "rational", "rationals"):
            return Q
        if t.startswith("gfp"):
            t = "gf" + t[3:].strip()
        if t.startswith("gf"):
            try:
                p = int(t[2:])
            except ValueError:
                raise ContractViolation(f"bad field tag {tag!r}") from None
            return gfp(p)
        raise ContractViolation(f"bad field tag {tag!r}")

    def __eq__(self, other):
        return isinstance(other, Field) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        if self.kind == "q":
            return "Q"
        return f"GF({self.p})"

    def __reduce__(self):
        return (Field, (self.kind, self.p))

    # -- scalars --------------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.kind == "q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "q" else 1

    def coerce(self, x):
        """Map an int, Fraction or numeric string into the field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ContractViolation(f"{x} has no image in {self!r}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, bool) or not isinstance(x, int):
            x = int(x)
        return x % self.p

    def parse(self, token: str):
        if self.kind == "q":
            return Fraction(token)
        if "/" in token:
            return self.coerce(Fraction(token))
        return int(token) % self.p

    def format(self, x) -> str:
        if self.kind == "q":
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)

    def add(self, a, b):
        return a + b if self.kind == "q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "q" else (a - b) % self.p

    def neg(self, a):
        return -a if self.kind == "q" else (-a) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "q" else (a * b) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "q":
            return 1 / Fraction(a)
        return pow(a, -1, self.p)


GF2 = Field("gf2")
Q = Field("q")


def gfp(p: int) -> Field:
    return GF2 if p == 2 else Field("gfp", p)
