"""Exact rational matrices, a thin layer over sympy's DomainMatrix.

Matrices act on column vectors.  Zero-sized shapes are supported so that
representations may vanish at a vertex.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .core_model import InputError, format_rational, parse_rational

Mat = DomainMatrix


def q(x) -> object:
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, str):
        f = parse_rational(x)
        return QQ(f.numerator, f.denominator)
    return QQ.convert(x)


def to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def mat(rows: Sequence[Sequence], nrows: int | None = None, ncols: int | None = None) -> Mat:
    rows = [list(r) for r in rows]
    r = len(rows) if nrows is None else nrows
    c = (len(rows[0]) if rows else 0) if ncols is None else ncols
    if len(rows) != r or any(len(row) != c for row in rows):
        raise InputError(f"matrix rows do not match the shape {r}x{c}")
    return DomainMatrix([[q(x) for x in row] for row in rows], (r, c), QQ)


def sparse(entries: dict, nrows: int, ncols: int) -> Mat:
    """From ``{row: {col: value}}``."""
    rep = {i: {j: q(v) for j, v in row.items() if v} for i, row in entries.items()}
    rep = {i: row for i, row in rep.items() if row}
    return DomainMatrix(rep, (nrows, ncols), QQ).to_dense()


def zeros(r: int, c: int) -> Mat:
    return DomainMatrix.zeros((r, c), QQ).to_dense()


def eye(n: int) -> Mat:
    return DomainMatrix.eye(n, QQ).to_dense()


def rows_of(a: Mat) -> list:
    return [[to_fraction(x) for x in row] for row in a.to_dense().to_list()]


def to_json(a: Mat) -> list:
    return [[format_rational(x) for x in row] for row in rows_of(a)]


def from_json(rows, nrows: int, ncols: int) -> Mat:
    if nrows == 0 or ncols == 0:
        if rows not in ([], [[]] * nrows) and any(rows):
            raise InputError("nonempty entries for a zero-sized matrix")
        return zeros(nrows, ncols)
    return mat(rows, nrows, ncols)


def rank(a: Mat) -> int:
    if 0 in a.shape:
        return 0
    return a.rank()


def is_zero(a: Mat) -> bool:
    return 0 in a.shape or a.is_zero_matrix


def nullspace(a: Mat) -> Mat:
    """Columns form a basis of {x : a x = 0}; shape (ncols, k)."""
    r, c = a.shape
    if c == 0:
        return zeros(0, 0)
    if r == 0:
        return eye(c)
    ns = a.to_dense().nullspace()
    if ns.shape[0] == 0 or ns.shape[1] == 0:
        return zeros(c, 0)
    return ns.transpose().to_dense()


def left_nullspace(a: Mat) -> Mat:
    """Rows span {y : y a = 0}; shape (k, nrows)."""
    return nullspace(a.transpose()).transpose()


def rref(a: Mat):
    if 0 in a.shape:
        return a, ()
    return a.to_dense().rref()


def solve(a: Mat, b: Mat) -> Mat | None:
    """Some x with a x = b (free variables set to 0), or None."""
    m, n = a.shape
    p = b.shape[1]
    if b.shape[0] != m:
        raise InputError("solve: row counts differ")
    if n == 0:
        return zeros(0, p) if is_zero(b) else None
    if m == 0:
        return zeros(n, p)
    red, pivots = a.hstack(b).rref()
    if any(c >= n for c in pivots):
        return None
    red_rows = red.to_list()
    out = [[QQ(0)] * p for _ in range(n)]
    for r, c in enumerate(pivots):
        out[c] = list(red_rows[r][n:])
    return DomainMatrix(out, (n, p), QQ) if p else zeros(n, 0)


def inverse(a: Mat) -> Mat:
    n, m = a.shape
    if n != m or rank(a) != n:
        raise InputError("matrix is not invertible")
    if n == 0:
        return zeros(0, 0)
    return a.inv()


def is_invertible(a: Mat) -> bool:
    n, m = a.shape
    return n == m and rank(a) == n


def hstack(*ms: Mat) -> Mat:
    ms = [m for m in ms]
    rows = ms[0].shape[0]
    cols = sum(m.shape[1] for m in ms)
    if rows == 0 or cols == 0:
        return zeros(rows, cols)
    nonempty = [m for m in ms if m.shape[1]]
    return nonempty[0].hstack(*nonempty[1:]) if len(nonempty) > 1 else nonempty[0]


def vstack(*ms: Mat) -> Mat:
    cols = ms[0].shape[1]
    rows = sum(m.shape[0] for m in ms)
    if rows == 0 or cols == 0:
        return zeros(rows, cols)
    nonempty = [m for m in ms if m.shape[0]]
    return nonempty[0].vstack(*nonempty[1:]) if len(nonempty) > 1 else nonempty[0]


def block(blocks: Sequence[Sequence[Mat]]) -> Mat:
    return vstack(*[hstack(*row) for row in blocks])


def mul(a: Mat, b: Mat) -> Mat:
    if a.shape[1] != b.shape[0]:
        raise InputError(f"shape mismatch {a.shape} @ {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return zeros(a.shape[0], b.shape[1])
    return a * b


def column(values: Iterable, n: int) -> Mat:
    vals = list(values)
    return mat([[v] for v in vals], n, 1) if n else zeros(0, 1)


def unit(n: int, k: int) -> Mat:
    return column([1 if i == k else 0 for i in range(n)], n)


def equal(a: Mat, b: Mat) -> bool:
    if a.shape != b.shape:
        return False
    return 0 in a.shape or (a.to_dense() - b.to_dense()).is_zero_matrix
