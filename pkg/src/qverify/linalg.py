"""Exact linear algebra over ``Q(q)`` with fraction-free elimination.

Rows are cleared of denominators and carried as integer polynomials
(``fmpz_poly``); elimination steps are cross-multiplications followed by
removal of the common polynomial content of the row, so no rational-function
division happens until the very end.
"""

from __future__ import annotations

from collections.abc import Sequence

import flint

from .qcoeff import ONE, ZERO, QScalar

__all__ = ["RowEchelon", "inverse", "nullspace", "rank", "solve"]

_Poly = flint.fmpz_poly


def _clear_row(row: Sequence[QScalar]) -> list[_Poly]:
    den = _Poly([1])
    for v in row:
        if not v.is_zero():
            d = v.denominator
            g = den.gcd(d)
            den = den * (d / g)
    out = []
    for v in row:
        if v.is_zero():
            out.append(_Poly([]))
        else:
            out.append(v.numerator * (den / v.denominator))
    return _primitive(out)


def _primitive(row: list[_Poly]) -> list[_Poly]:
    g = None
    for p in row:
        if not p.is_zero():
            g = p if g is None else g.gcd(p)
            if g.degree() == 0 and abs(int(g[0])) == 1:
                return row
    if g is None:
        return row
    return [p / g if not p.is_zero() else p for p in row]


class RowEchelon:
    """Incremental fraction-free row echelon form.

    Rows are inserted one at a time; :meth:`add` reports whether the new row
    increased the rank.  This yields the row rank profile in insertion order,
    which is how standard-word bases are selected greedily.
    """

    def __init__(self, ncols: int) -> None:
        self.ncols = ncols
        self.pivots: list[tuple[int, list[_Poly]]] = []  # (pivot column, row)

    def _reduce(self, row: list[_Poly]) -> list[_Poly]:
        for col, prow in self.pivots:
            c = row[col]
            if c.is_zero():
                continue
            p = prow[col]
            g = p.gcd(c)
            mp, mc = p / g, c / g
            row = [mp * a - mc * b for a, b in zip(row, prow)]
            row = _primitive(row)
        return row

    def add(self, values: Sequence[QScalar]) -> bool:
        row = self._reduce(_clear_row(values))
        for col, v in enumerate(row):
            if not v.is_zero():
                self.pivots.append((col, row))
                return True
        return False

    def in_span(self, values: Sequence[QScalar]) -> bool:
        row = self._reduce(_clear_row(values))
        return all(v.is_zero() for v in row)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows: Sequence[Sequence[QScalar]]) -> int:
    if not rows:
        return 0
    ech = RowEchelon(len(rows[0]))
    for r in rows:
        ech.add(r)
    return ech.rank


def _to_q(p: _Poly) -> QScalar:
    return QScalar(p)


def solve(matrix: Sequence[Sequence[QScalar]], rhs: Sequence[QScalar]) -> list[QScalar]:
    """Solve ``matrix @ y = rhs`` for a square invertible ``matrix``."""
    n = len(matrix)
    aug = [list(matrix[r]) + [rhs[r]] for r in range(n)]
    return _gauss_jordan(aug, n, 1)[0] if n else []


def inverse(matrix: Sequence[Sequence[QScalar]]) -> list[list[QScalar]]:
    n = len(matrix)
    if n == 0:
        return []
    aug = [list(matrix[r]) + [ONE if c == r else ZERO for c in range(n)] for r in range(n)]
    cols = _gauss_jordan(aug, n, n)
    return [[cols[c][r] for c in range(n)] for r in range(n)]


def _gauss_jordan(aug: list[list[QScalar]], n: int, extra: int) -> list[list[QScalar]]:
    """Fraction-free Gauss-Jordan on integer-polynomial rows; returns solution columns."""
    rows = [_clear_row(r) for r in aug]
    width = n + extra
    for col in range(n):
        piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        prow = rows[col]
        p = prow[col]
        for r in range(n):
            if r == col or rows[r][col].is_zero():
                continue
            c = rows[r][col]
            g = p.gcd(c)
            mp, mc = p / g, c / g
            rows[r] = _primitive([mp * a - mc * b for a, b in zip(rows[r], prow)])
    out = []
    for e in range(extra):
        out.append([QScalar(rows[r][n + e], rows[r][r]) if not rows[r][n + e].is_zero() else ZERO for r in range(n)])
    del width
    return out


def nullspace(rows: Sequence[Sequence[QScalar]], ncols: int) -> list[list[QScalar]]:
    """A basis of ``{y : rows @ y = 0}`` via fraction-free reduced echelon form."""
    mat = [_clear_row(r) for r in rows]
    pivcols: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(mat)) if not mat[k][col].is_zero()), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        prow = mat[r]
        p = prow[col]
        for k in range(len(mat)):
            if k == r or mat[k][col].is_zero():
                continue
            c = mat[k][col]
            g = p.gcd(c)
            mat[k] = _primitive([(p / g) * a - (c / g) * b for a, b in zip(mat[k], prow)])
        pivcols.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in set(pivcols)]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for k, pc in enumerate(pivcols):
            entry = mat[k][f]
            if not entry.is_zero():
                vec[pc] = -QScalar(entry, mat[k][pc])
        basis.append(vec)
    return basis
