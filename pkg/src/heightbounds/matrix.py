"""Rectangular matrices of polynomials and their minors."""

from __future__ import annotations

from itertools import combinations

from .errors import DimensionMismatch, InputError, ResourceLimit
from .poly import PolyRing, Polynomial, parse_poly

MAX_MINOR_SIZE = 8


class PolyMatrix:
    """An ``nrows x ncols`` matrix over a :class:`PolyRing`, row-major.

    Zero-sized shapes (``n x 0`` or ``0 x m``) are allowed; an ``n x 0``
    matrix presents a free module of rank ``n``.
    """

    __slots__ = ("ring", "nrows", "ncols", "entries")

    def __init__(self, ring: PolyRing, nrows: int, ncols: int, entries=None):
        if nrows < 0 or ncols < 0:
            raise InputError("matrix dimensions must be non-negative")
        if entries is None:
            entries = [ring.zero()] * (nrows * ncols)
        entries = tuple(entries)
        if len(entries) != nrows * ncols:
            raise DimensionMismatch(f"{len(entries)} entries for a {nrows}x{ncols} matrix")
        for f in entries:
            if not isinstance(f, Polynomial) or (f.ring is not ring and f.ring != ring):
                raise InputError("matrix entries must be polynomials over the matrix ring")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.entries = entries

    @classmethod
    def from_rows(cls, ring, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("rows of unequal length")
        conv = [ring(f) if not isinstance(f, Polynomial) else f for r in rows for f in r]
        return cls(ring, len(rows), ncols, conv)

    @classmethod
    def parse(cls, ring, rows):
        """Build from nested lists of expression strings."""
        return cls.from_rows(ring, [[parse_poly(s, ring) for s in r] for r in rows])

    @classmethod
    def from_columns(cls, ring, cols, nrows):
        cols = [list(c) for c in cols]
        if any(len(c) != nrows for c in cols):
            raise DimensionMismatch("columns of unequal length")
        return cls(ring, nrows, len(cols), [cols[j][i] for i in range(nrows) for j in range(len(cols))])

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, n, n, [ring.one() if i == j else ring.zero() for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls(ring, nrows, ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.ncols + j]

    def row(self, i):
        return list(self.entries[i * self.ncols:(i + 1) * self.ncols])

    def column(self, j):
        return [self.entries[i * self.ncols + j] for i in range(self.nrows)]

    def rows(self):
        return [self.row(i) for i in range(self.nrows)]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return PolyMatrix.from_columns(self.ring, self.rows(), self.ncols)

    def hstack(self, other):
        if other.nrows != self.nrows:
            raise DimensionMismatch("hstack needs equal row counts")
        return PolyMatrix.from_columns(self.ring, self.columns() + other.columns(), self.nrows)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        out = []
        for i in range(self.nrows):
            for j in range(other.ncols):
                acc = R.zero()
                for k in range(self.ncols):
                    a = self[i, k]
                    if a:
                        b = other[k, j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return PolyMatrix(R, self.nrows, other.ncols, out)

    def apply_row(self, vec):
        """Row vector ``vec`` times the matrix, as a list of length ncols."""
        vec = list(vec)
        if len(vec) != self.nrows:
            raise DimensionMismatch(f"vector of length {len(vec)} against {self.nrows} rows")
        R = self.ring
        out = []
        for j in range(self.ncols):
            acc = R.zero()
            for i, b in enumerate(vec):
                if b:
                    a = self[i, j]
                    if a:
                        acc = acc + b * a
            out.append(acc)
        return out

    def is_zero(self):
        return not any(self.entries)

    def change_ring(self, ring):
        return PolyMatrix(ring, self.nrows, self.ncols, [f.change_ring(ring) for f in self.entries])

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.shape == other.shape
                and self.ring == other.ring and self.entries == other.entries)

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __str__(self):
        if not self.nrows or not self.ncols:
            return f"[{self.nrows}x{self.ncols} matrix]"
        return "\n".join("[" + ", ".join(str(f) for f in r) + "]" for r in self.rows())

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"


class MinorTable:
    """Memoized cofactor expansion keyed on (row set, column set).

    One table can serve minors of every size of the same matrix.
    """

    def __init__(self, A: PolyMatrix):
        self.A = A
        self.memo = {}

    def det(self, rows: tuple, cols: tuple) -> Polynomial:
        if not rows:
            return self.A.ring.one()
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if len(rows) == 1:
            val = self.A[rows[0], cols[0]]
        else:
            r0, rest = rows[0], rows[1:]
            val = self.A.ring.zero()
            for k, c in enumerate(cols):
                a = self.A[r0, c]
                if not a:
                    continue
                sub = self.det(rest, cols[:k] + cols[k + 1:])
                if sub:
                    term = a * sub
                    val = val - term if k % 2 else val + term
        self.memo[key] = val
        return val

    def minors(self, t: int) -> list:
        A = self.A
        if t < 0:
            raise InputError("minor size must be non-negative")
        if t == 0:
            return [A.ring.one()]
        if t > min(A.nrows, A.ncols):
            return []
        if t > MAX_MINOR_SIZE:
            raise ResourceLimit(f"minors of size {t} exceed the cap of {MAX_MINOR_SIZE}")
        return [self.det(r, c)
                for r in combinations(range(A.nrows), t)
                for c in combinations(range(A.ncols), t)]


def minors(A: PolyMatrix, t: int) -> list:
    """All ``t x t`` minors; row sets then column sets in lexicographic order.

    ``t == 0`` gives ``[1]``; ``t > min(rows, cols)`` gives ``[]``.
    """
    return MinorTable(A).minors(t)
