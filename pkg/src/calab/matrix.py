"""Dense matrices of polynomials (columns are module elements)."""

from __future__ import annotations

from typing import Iterable, Sequence

from .core import PolyRing, Polynomial


class Matrix:
    """Immutable ``nrows x ncols`` matrix over a :class:`PolyRing`."""

    __slots__ = ("ring", "nrows", "ncols", "rows", "_hash")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence], nrows: int | None = None, ncols: int | None = None):
        self.ring = ring
        rows = tuple(tuple(ring(x) if not isinstance(x, Polynomial) else x for x in r) for r in rows)
        self.nrows = len(rows) if nrows is None else nrows
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        self.ncols = ncols
        if len(rows) != self.nrows or any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self._hash = None

    @classmethod
    def zero(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, ring, cols: Sequence[Sequence], nrows: int):
        cols = list(cols)
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls(ring, rows, nrows, len(cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> list[Polynomial]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.ncols)]

    def row(self, i) -> list[Polynomial]:
        return list(self.rows[i])

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, [self.column(j) for j in range(self.ncols)], self.ncols, self.nrows)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
        z = self.ring.zero()
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for j in range(other.ncols):
                s = z
                for k, a in nz:
                    b = other.rows[k][j]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return Matrix(self.ring, out, self.nrows, other.ncols)

    def scale(self, c) -> "Matrix":
        return self.map(lambda f: f * c)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.nrows, self.ncols)

    def __neg__(self):
        return self.map(lambda f: -f)

    def __sub__(self, other):
        return self + (-other)

    def map(self, fn) -> "Matrix":
        return Matrix(self.ring, [[fn(a) for a in r] for r in self.rows], self.nrows, self.ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def submatrix(self, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> "Matrix":
        rows = list(range(self.nrows)) if rows is None else list(rows)
        cols = list(range(self.ncols)) if cols is None else list(cols)
        return Matrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def hstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        if any(m.nrows != self.nrows for m in mats):
            raise ValueError("row count mismatch in hstack")
        rows = [sum((list(m.rows[i]) for m in mats), []) for i in range(self.nrows)]
        return Matrix(self.ring, rows, self.nrows, sum(m.ncols for m in mats))

    def vstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        if any(m.ncols != self.ncols for m in mats):
            raise ValueError("column count mismatch in vstack")
        rows = [r for m in mats for r in m.rows]
        return Matrix(self.ring, rows, len(rows), self.ncols)

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([a * b for a in r for b in s])
        return Matrix(self.ring, rows, self.nrows * other.nrows, self.ncols * other.ncols)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        if not self.nrows or not self.ncols:
            return f"Matrix({self.nrows}x{self.ncols})"
        cells = [[str(a) for a in r] for r in self.rows]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)


def block_diag(ring, *mats: Matrix) -> Matrix:
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    z = ring.zero()
    rows = []
    off = 0
    for m in mats:
        for r in m.rows:
            rows.append([z] * off + list(r) + [z] * (nc - off - m.ncols))
        off += m.ncols
    return Matrix(ring, rows, nr, nc)
