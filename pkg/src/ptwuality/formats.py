"""Text formats for matrices, grafts and bouquets.

Matrix::

    field gf2            (or: field gfp 7 / field q)
    n 2
    0 1
    1 0

Graft::

    vertices: a b c
    edges: a-b b-c
    loops: b

Bouquet::

    word: a b a c b c
    twisted: b

Lines starting with ``#`` are comments. Parse errors carry 1-based line and
column numbers counted in the original text.
"""

from __future__ import annotations

from fractions import Fraction

from .bouquet import Bouquet
from .errors import ContractViolation, ParseError
from .exactla import Matrix, Subset
from .fields import Field, Q, gfp, GF2
from .graft import Graft


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _content_lines(text: str) -> list[tuple[int, str]]:
    """Numbered lines without full-line ``#`` comments or trailing blank lines."""
    lines = [(k + 1, ln) for k, ln in enumerate(text.splitlines()) if not ln.lstrip().startswith("#")]
    while lines and not lines[-1][1].strip():
        lines.pop()
    return lines


def parse_matrix(text: str) -> Matrix:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty input; expected a 'field' line", 1)
    lineno, first = lines[0]
    toks = _tokens(first)
    if not toks or toks[0][0] != "field":
        raise ParseError("expected 'field gf2', 'field gfp <p>' or 'field q'", lineno, toks[0][1] if toks else 1)
    kind = toks[1][0] if len(toks) > 1 else None
    if kind == "gf2" and len(toks) == 2:
        field = GF2
    elif kind == "q" and len(toks) == 2:
        field = Q
    elif kind == "gfp" and len(toks) == 3:
        try:
            field = gfp(int(toks[2][0]))
        except (ValueError, ContractViolation) as exc:
            raise ParseError(f"bad modulus {toks[2][0]!r}: {exc}", lineno, toks[2][1]) from None
    else:
        raise ParseError("expected 'field gf2', 'field gfp <p>' or 'field q'", lineno, toks[1][1] if len(toks) > 1 else 1)

    if len(lines) < 2:
        raise ParseError("missing 'n <size>' line", lineno + 1)
    lineno, second = lines[1]
    toks = _tokens(second)
    if len(toks) != 2 or toks[0][0] != "n":
        raise ParseError("expected 'n <size>'", lineno, toks[0][1] if toks else 1)
    try:
        n = int(toks[1][0])
        if n < 0:
            raise ValueError
    except ValueError:
        raise ParseError(f"bad size {toks[1][0]!r}", lineno, toks[1][1]) from None

    body = lines[2:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else lineno + 1)
        raise ParseError(f"expected {n} matrix rows, found {len(body)}", where)
    rows = []
    for lineno, line in body:
        toks = _tokens(line)
        if len(toks) != n:
            col = toks[n][1] if len(toks) > n else len(line) + 1
            raise ParseError(f"expected {n} entries, found {len(toks)}", lineno, col)
        row = []
        for tok, col in toks:
            try:
                row.append(_parse_scalar(field, tok))
            except (ValueError, ZeroDivisionError, ContractViolation):
                raise ParseError(f"bad entry {tok!r} for {field!r}", lineno, col) from None
        rows.append(row)
    return Matrix(field, rows)


def _parse_scalar(field: Field, tok: str):
    if field.kind == "q":
        if not all(c in "+-/0123456789" for c in tok):
            raise ValueError(tok)
        return Fraction(tok)
    if not tok.lstrip("+-").isdigit():
        if "/" in tok:
            return field.coerce(Fraction(tok))
        raise ValueError(tok)
    return int(tok)


def format_matrix(M: Matrix) -> str:
    lines = [M.field.header, f"n {M.n}"]
    lines += [" ".join(M.field.format(x) for x in row) for row in M.entries]
    return "\n".join(lines) + "\n"


def parse_subset(text: str, M: Matrix) -> Subset:
    """Comma-separated label indices; ``-`` is the empty set."""
    text = text.strip()
    if text in ("-", ""):
        return Subset(M.labels, 0)
    mask = 0
    for part in text.split(","):
        try:
            i = int(part)
        except ValueError:
            raise ContractViolation(f"bad subset member {part!r}") from None
        if not 0 <= i < M.n:
            raise ContractViolation(f"subset member {i} out of range 0..{M.n - 1}")
        mask |= 1 << i
    return Subset(M.labels, mask)


def _keyed_lines(text: str, keys: tuple[str, ...], required: tuple[str, ...]) -> dict[str, tuple[int, str, int]]:
    """Map key -> (line, rest-of-line, column where the rest starts)."""
    found: dict[str, tuple[int, str, int]] = {}
    for lineno, line in _content_lines(text):
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in keys:
            raise ParseError(f"expected one of {', '.join(k + ':' for k in keys)}", lineno, 1)
        if key in found:
            raise ParseError(f"duplicate '{key}:' line", lineno, 1)
        found[key] = (lineno, rest, len(line) - len(rest) + 1)
    for key in required:
        if key not in found:
            raise ParseError(f"missing '{key}:' line", 1)
    return found


def parse_graft(text: str) -> Graft:
    found = _keyed_lines(text, ("vertices", "edges", "loops"), ("vertices",))
    lineno, rest, off = found["vertices"]
    vertices = []
    for tok, col in _tokens(rest):
        if "-" in tok:
            raise ParseError(f"vertex label {tok!r} may not contain '-'", lineno, off + col - 1)
        if tok in vertices:
            raise ParseError(f"duplicate vertex {tok!r}", lineno, off + col - 1)
        vertices.append(tok)
    vset = set(vertices)
    edges = []
    if "edges" in found:
        lineno, rest, off = found["edges"]
        seen = set()
        for tok, col in _tokens(rest):
            u, sep, v = tok.partition("-")
            if not sep or not u or not v or "-" in v:
                raise ParseError(f"bad edge {tok!r}; expected u-v", lineno, off + col - 1)
            if u not in vset or v not in vset:
                raise ParseError(f"edge {tok!r} names an unknown vertex", lineno, off + col - 1)
            if u == v:
                raise ParseError(f"loop {tok!r} not allowed in a simple graph", lineno, off + col - 1)
            key = frozenset((u, v))
            if key in seen:
                raise ParseError(f"duplicate edge {tok!r}", lineno, off + col - 1)
            seen.add(key)
            edges.append((u, v))
    marked = []
    if "loops" in found:
        lineno, rest, off = found["loops"]
        for tok, col in _tokens(rest):
            if tok not in vset:
                raise ParseError(f"marked vertex {tok!r} is not a vertex", lineno, off + col - 1)
            marked.append(tok)
    return Graft(vertices, edges, marked)


def format_graft(g: Graft) -> str:
    order = {v: i for i, v in enumerate(g.vertices)}
    edges = sorted(g.edges, key=lambda e: sorted(order[x] for x in e))
    return (
        f"vertices: {' '.join(g.vertices)}\n"
        f"edges: {' '.join(f'{u}-{v}' for u, v in edges)}\n"
        f"loops: {' '.join(v for v in g.vertices if v in g.marked)}\n"
    )


def parse_bouquet(text: str) -> Bouquet:
    found = _keyed_lines(text, ("word", "twisted"), ("word",))
    lineno, rest, off = found["word"]
    toks = _tokens(rest)
    counts: dict[str, int] = {}
    for tok, col in toks:
        counts[tok] = counts.get(tok, 0) + 1
        if counts[tok] > 2:
            raise ParseError(f"label {tok!r} occurs more than twice", lineno, off + col - 1)
    for tok, col in toks:
        if counts[tok] != 2:
            raise ParseError(f"label {tok!r} occurs only once", lineno, off + col - 1)
    twisted = []
    if "twisted" in found:
        tl, trest, toff = found["twisted"]
        for tok, col in _tokens(trest):
            if tok not in counts:
                raise ParseError(f"twisted label {tok!r} is not in the word", tl, toff + col - 1)
            twisted.append(tok)
    return Bouquet([t for t, _ in toks], twisted)


def format_bouquet(b: Bouquet) -> str:
    order = {t: i for i, t in enumerate(b.labels)}
    return f"word: {' '.join(b.word)}\ntwisted: {' '.join(sorted(b.twisted, key=order.get))}\n"
