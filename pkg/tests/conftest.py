from __future__ import annotations

from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from ptwuality.exactla import Matrix
from ptwuality.fields import GF2, Q, gfp

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

GF3 = gfp(3)
GF5 = gfp(5)
FIELDS = (GF2, GF3, GF5, Q)


def scalars(field):
    if field.kind == "q":
        return st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))
    return st.integers(0, field.p - 1)


@st.composite
def matrices(draw, field=None, min_n=0, max_n=5):
    f = field if field is not None else draw(st.sampled_from(FIELDS))
    n = draw(st.integers(min_n, max_n))
    rows = [[draw(scalars(f)) for _ in range(n)] for _ in range(n)]
    return Matrix(f, rows)


@st.composite
def symmetric_gf2(draw, min_n=0, max_n=6, zero_diagonal=False):
    n = draw(st.integers(min_n, max_n))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        if not zero_diagonal:
            rows[i][i] = draw(st.integers(0, 1))
        for j in range(i):
            rows[i][j] = rows[j][i] = draw(st.integers(0, 1))
    return Matrix(GF2, rows)


# one line per acceptance criterion, shown in the terminal summary even when
# output capture is on
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
