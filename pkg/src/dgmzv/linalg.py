"""Exact rational linear algebra.

Dense matrices over Q with fraction-free (Bareiss) elimination.  All values
are immutable; every routine is a pure function.

Conventions: ``nullspace`` is the right kernel ``{v : M v = 0}``.  The
row-vector action ``a -> aP`` used throughout the Tasaka matrices lives in
``row_action`` / ``left_kernel`` / ``row_space``.
"""
from __future__ import annotations

import csv
import io
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(x) -> str:
    x = to_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QMatrix:
    """Immutable dense matrix over Q, stored row-major."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                ncols = 0
            else:
                ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def transpose(self) -> "QMatrix":
        return QMatrix(zip(*self._rows), self.nrows) if self.nrows else QMatrix.zeros(self.ncols, 0)

    T = property(transpose)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self._rows)
        return f"QMatrix({self.nrows}x{self.ncols}: [{body}])"

    def _check_same_shape(self, other: "QMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_shape(other)
        return QMatrix(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_shape(other)
        return QMatrix(
            ([a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __neg__(self) -> "QMatrix":
        return QMatrix(([-a for a in r] for r in self._rows), self.ncols)

    def scale(self, c) -> "QMatrix":
        c = to_rational(c)
        return QMatrix(([c * a for a in r] for r in self._rows), self.ncols)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows if other.nrows else ((),) * other.ncols
        out = []
        for r in self._rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * col[k] for k, a in nz), Fraction(0)) for col in cols])
        return QMatrix(out, other.ncols)

    def to_csv(self, labels: Sequence[str]) -> str:
        """CSV dump: a header of column labels, then one line of entries per row."""
        if len(labels) != self.ncols:
            raise ValueError("one label per column required")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(labels)
        for row in self._rows:
            writer.writerow([format_rational(x) for x in row])
        return buf.getvalue()


def vstack(*mats: QMatrix) -> QMatrix:
    mats = [m for m in mats if m is not None]
    ncols = {m.ncols for m in mats}
    if len(ncols) > 1:
        raise ValueError("column counts differ")
    rows = [row for m in mats for row in m.rows]
    return QMatrix(rows, ncols.pop() if ncols else 0)


# --- fraction-free elimination -------------------------------------------

def _integer_rows(rows) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (row space unchanged)."""
    out = []
    for row in rows:
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (d // x.denominator) for x in row])
    return out


def _bareiss(a: list[list[int]], ncols: int, *, reduce: bool) -> tuple[list[list[int]], list[int]]:
    """In-place fraction-free elimination on integer rows.

    With ``reduce`` every pivot column is cleared above and below the pivot
    (fraction-free Gauss-Jordan); on exit all pivot entries equal the last
    pivot.  Without it only rows below are touched.  Every division is exact.
    Returns the rows and the pivot columns.
    """
    nrows = len(a)
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and a[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        prow = a[r]
        piv = prow[c]
        targets = range(nrows) if reduce else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f == 0:
                if piv != prev:
                    a[i] = [x * piv // prev for x in row]
                continue
            a[i] = [(x * piv - f * y) // prev for x, y in zip(row, prow)]
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: QMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    # eliminate along the shorter side
    rows = m.rows if m.nrows <= m.ncols else m.transpose().rows
    ncols = len(rows[0])
    _, pivots = _bareiss(_integer_rows(rows), ncols, reduce=False)
    return len(pivots)


def _rref_with_pivots(m: QMatrix) -> tuple[QMatrix, list[int]]:
    if m.nrows == 0 or m.ncols == 0:
        return QMatrix.zeros(m.nrows, m.ncols), []
    a, pivots = _bareiss(_integer_rows(m.rows), m.ncols, reduce=True)
    out = []
    for i, c in enumerate(pivots):
        d = a[i][c]
        out.append([Fraction(x, d) for x in a[i]])
    out.extend([[Fraction(0)] * m.ncols for _ in range(m.nrows - len(pivots))])
    return QMatrix(out, m.ncols), pivots


def rref(m: QMatrix) -> QMatrix:
    """Canonical reduced row echelon form (zero rows kept at the bottom)."""
    return _rref_with_pivots(m)[0]


def nullspace(m: QMatrix) -> "Subspace":
    """Right kernel ``{v : m v = 0}`` as a canonical subspace of Q^cols."""
    n = m.ncols
    red, pivots = _rref_with_pivots(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i, f]
        basis.append(v)
    return Subspace.span(QMatrix(basis, n), n)


def left_kernel(m: QMatrix) -> "Subspace":
    """``{a : a m = 0}``, the kernel of the row-vector action."""
    return nullspace(m.transpose())


def solve_left(m: QMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution ``a`` of ``a m = b`` (free coordinates set to 0), or None."""
    if len(b) != m.ncols:
        raise ValueError(f"right-hand side of length {len(b)} for a {m.ncols}-column matrix")
    n = m.nrows
    aug = QMatrix([list(col) + [b[j]] for j, col in enumerate(zip(*m.rows))] if n else [[x] for x in b], n + 1)
    red, pivots = _rref_with_pivots(aug)
    if pivots and pivots[-1] == n:
        return None
    a = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        a[c] = red[i, n]
    return tuple(a)


def row_space(m: QMatrix) -> "Subspace":
    """``{a m}``, the image of the row-vector action."""
    return Subspace.span(m, m.ncols)


def row_action(a: Sequence, p: QMatrix) -> tuple[Fraction, ...]:
    """Return ``aP``: the entry at column n is ``sum_m a_m * P[m, n]``."""
    if len(a) != p.nrows:
        raise ValueError(f"vector of length {len(a)} cannot act on a {p.nrows}-row matrix")
    a = [to_rational(x) for x in a]
    out = [Fraction(0)] * p.ncols
    for am, row in zip(a, p.rows):
        if am:
            for j, x in enumerate(row):
                if x:
                    out[j] += am * x
    return tuple(out)


class Subspace:
    """Subspace of Q^n held as the nonzero rows of a canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: QMatrix):
        if basis.ncols != ambient_dim:
            raise ValueError("basis width must equal the ambient dimension")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def span(cls, vectors, ambient_dim: int) -> "Subspace":
        m = vectors if isinstance(vectors, QMatrix) else QMatrix(vectors, ambient_dim)
        if m.ncols != ambient_dim:
            raise ValueError("vector length must equal the ambient dimension")
        red, pivots = _rref_with_pivots(m)
        return cls(ambient_dim, QMatrix(red.rows[: len(pivots)], ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, QMatrix.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, QMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.basis.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def complement(self) -> "Subspace":
        """Orthogonal complement for the standard bilinear form."""
        return nullspace(self.basis)


def _check_ambient(s1: Subspace, s2: Subspace):
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}")


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    _check_ambient(s1, s2)
    # U ∩ V = (U^perp + V^perp)^perp
    return nullspace(vstack(s1.complement().basis, s2.complement().basis))


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    _check_ambient(s1, s2)
    return Subspace.span(vstack(s1.basis, s2.basis), s1.ambient_dim)


def contains(s: Subspace, v: Sequence) -> bool:
    if len(v) != s.ambient_dim:
        raise ValueError("vector length must equal the ambient dimension")
    return rank(vstack(s.basis, QMatrix([v], s.ambient_dim))) == s.dim


def is_subspace(s1: Subspace, s2: Subspace) -> bool:
    """True when s1 ⊆ s2."""
    _check_ambient(s1, s2)
    return rank(vstack(s2.basis, s1.basis)) == s2.dim
