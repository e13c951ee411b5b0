"""Bounded complexes of free modules and of presented modules.

Homological indexing: ``d(i)`` maps degree ``i`` to degree ``i - 1``.  The
total tensor product uses ``d(a (x) b) = da (x) b + (-1)^|a| a (x) db``.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Sequence

from .algebra import (
    FGModule,
    QuotientRing,
    _col_degrees,
    _kernel_into,
    free_module,
    is_zero_module,
    minimalize,
    subquotient,
)
from .matrix import Matrix

INF = math.inf


class ComplexError(ValueError):
    pass


class FreeComplex:
    """Complex of graded free modules ``R^{r_i}`` for ``lo <= i <= hi``.

    ``valid_hi`` is the top degree whose homology is meaningful: a truncated
    resolution carries a spurious kernel in its last term.
    """

    def __init__(self, ring: QuotientRing, diffs: dict, degrees: dict, lo: int | None = None,
                 hi: int | None = None, check: bool = True, valid_hi: int | None = None):
        self.ring = ring
        self._degrees = {i: list(d) for i, d in degrees.items()}
        idx = list(self._degrees)
        self.lo = min(idx) if lo is None else lo
        self.hi = max(idx) if hi is None else hi
        for i in range(self.lo, self.hi + 1):
            self._degrees.setdefault(i, [])
        S = ring.S
        self._diffs = {}
        for i in range(self.lo + 1, self.hi + 1):
            d = diffs.get(i)
            shape = (len(self._degrees[i - 1]), len(self._degrees[i]))
            if d is None:
                d = Matrix.zero(S, *shape)
            if d.shape != shape:
                raise ComplexError(f"differential {i} has shape {d.shape}, expected {shape}")
            self._diffs[i] = d.map(ring.reduce)
        self.valid_hi = self.hi if valid_hi is None else min(valid_hi, self.hi)
        if check:
            self.check()
        self._homology: dict = {}

    def check(self):
        for i in range(self.lo + 2, self.hi + 1):
            dd = self._diffs[i - 1] * self._diffs[i]
            if not dd.map(self.ring.reduce).is_zero():
                raise ComplexError(f"d{i - 1} * d{i} != 0")

    def rank(self, i: int) -> int:
        return len(self._degrees.get(i, ())) if self.lo <= i <= self.hi else 0

    def degrees(self, i: int) -> list[int]:
        return list(self._degrees.get(i, ())) if self.lo <= i <= self.hi else []

    def differential(self, i: int) -> Matrix:
        if self.lo < i <= self.hi:
            return self._diffs[i]
        return Matrix.zero(self.ring.S, self.rank(i - 1), self.rank(i))

    def ranks(self) -> list[int]:
        return [self.rank(i) for i in range(self.lo, self.hi + 1)]

    def truncate(self, length: int) -> "FreeComplex":
        hi = min(self.hi, self.lo + length) if length >= 0 else self.hi
        valid = self.valid_hi
        if any(self.rank(i) for i in range(hi + 1, self.hi + 1)):
            valid = min(valid, hi - 1)
        return FreeComplex(
            self.ring,
            {i: self._diffs[i] for i in range(self.lo + 1, hi + 1)},
            {i: self._degrees[i] for i in range(self.lo, hi + 1)},
            self.lo, hi, check=False, valid_hi=valid,
        )

    def __eq__(self, other):
        if not isinstance(other, FreeComplex) or other.ring != self.ring:
            return False
        if (self.lo, self.hi) != (other.lo, other.hi):
            return False
        return all(self._degrees[i] == other._degrees[i] for i in range(self.lo, self.hi + 1)) and all(
            self._diffs[i] == other._diffs[i] for i in range(self.lo + 1, self.hi + 1)
        )

    def __repr__(self):
        cut = "" if self.valid_hi == self.hi else f" valid_hi={self.valid_hi}"
        return f"FreeComplex[{self.lo}..{self.hi}] ranks={self.ranks()}{cut}"

    def with_coefficients(self, M: FGModule) -> "ModuleComplex":
        """X (x) M with the terms presented as direct sums of copies of M."""
        if M.ring != self.ring:
            raise ValueError("ring mismatch")
        S = self.ring.S
        terms = {}
        for i in range(self.lo, self.hi + 1):
            r = self.rank(i)
            rel = Matrix.identity(S, r).kron(M.relations)
            degs = [a + b for a in self._degrees[i] for b in M.degrees]
            terms[i] = FGModule(self.ring, rel, degs)
        diffs = {i: self._diffs[i].kron(Matrix.identity(S, M.ngens)) for i in self._diffs}
        return ModuleComplex(self.ring, terms, diffs, valid=(self.lo, self.valid_hi))

    def hom_into(self, N: FGModule) -> "ModuleComplex":
        """Hom(X, N) indexed homologically: degree -i holds Hom(X_i, N)."""
        S = self.ring.S
        terms = {}
        for i in range(self.lo, self.hi + 1):
            r = self.rank(i)
            rel = Matrix.identity(S, r).kron(N.relations)
            degs = [b - a for a in self._degrees[i] for b in N.degrees]
            terms[-i] = FGModule(self.ring, rel, degs)
        diffs = {}
        for i in range(self.lo + 1, self.hi + 1):
            # Hom(X_{i-1}, N) -> Hom(X_i, N) sits in homological degree -(i-1) -> -i
            diffs[-(i - 1)] = self._diffs[i].T.kron(Matrix.identity(S, N.ngens))
        return ModuleComplex(self.ring, terms, diffs, valid=(-self.valid_hi, -self.lo))

    def homology(self, i: int) -> FGModule:
        if i not in self._homology:
            self._homology[i] = self.with_coefficients(free_module(self.ring, 1)).homology(i)
        return self._homology[i]

    def inf_sup(self):
        return inf_sup(self)


class ModuleComplex:
    """Complex whose terms are presented modules; ``diffs[i]`` acts on generators."""

    def __init__(self, ring: QuotientRing, terms: dict, diffs: dict, check: bool = True,
                 valid: tuple | None = None):
        self.ring = ring
        self.terms = dict(terms)
        self.lo, self.hi = min(terms), max(terms)
        self.valid_lo, self.valid_hi = valid if valid is not None else (self.lo, self.hi)
        S = ring.S
        self.diffs = {}
        for i in range(self.lo + 1, self.hi + 1):
            src, tgt = self.terms.get(i), self.terms.get(i - 1)
            if src is None:
                src = self.terms[i] = free_module(ring, 0)
            if tgt is None:
                tgt = self.terms[i - 1] = free_module(ring, 0)
            d = diffs.get(i)
            if d is None:
                d = Matrix.zero(S, tgt.ngens, src.ngens)
            self.diffs[i] = d.map(ring.reduce)
        if check:
            self.check()
        self._homology: dict = {}

    def check(self):
        for i in range(self.lo + 2, self.hi + 1):
            dd = self.diffs[i - 1] * self.diffs[i]
            tgt = self.terms[i - 2]
            for c in dd.columns():
                if not tgt.is_zero_element(c):
                    raise ComplexError(f"d{i - 1} * d{i} != 0")

    def term(self, i) -> FGModule:
        return self.terms.get(i) or free_module(self.ring, 0)

    def homology(self, i: int) -> FGModule:
        if i in self._homology:
            return self._homology[i]
        R = self.ring
        T = self.term(i)
        if T.ngens == 0:
            H = free_module(R, 0)
        else:
            if i - 1 >= self.lo and i <= self.hi and self.term(i - 1).ngens:
                tgt = self.term(i - 1)
                K = _kernel_into(R, self.diffs[i], tgt.relations, tgt.degrees, T.degrees)
            else:
                K = Matrix.identity(R.S, T.ngens)
            L = T.relations
            if i + 1 <= self.hi and self.term(i + 1).ngens:
                L = self.diffs[i + 1].hstack(L)
            H = minimalize(subquotient(R, K, L, T.degrees)) if K.ncols else free_module(R, 0)
        self._homology[i] = H
        return H

    def inf_sup(self):
        return inf_sup(self)


def inf_sup(X):
    """(inf, sup) of the homology; (inf, -inf) when X is acyclic.

    Only degrees inside the complex's valid window are inspected.
    """
    lo = max(X.lo, getattr(X, "valid_lo", X.lo))
    hi = min(X.hi, getattr(X, "valid_hi", X.hi))
    nz = [i for i in range(lo, hi + 1) if not is_zero_module(X.homology(i))]
    if not nz:
        return (INF, -INF)
    return (min(nz), max(nz))


def koszul_complex(elements: Sequence, M=None, ring: QuotientRing | None = None):
    """K(x_1..x_n), or K (x) M for a module / complex M."""
    if ring is None:
        ring = M.ring if M is not None else None
    if ring is None:
        raise ValueError("need a ring")
    xs = [ring.reduce(x) for x in elements]
    n = len(xs)
    if n < 1:
        raise ValueError("Koszul complex needs at least one element")
    xdeg = []
    for x in xs:
        d = x.homogeneous_degree()
        xdeg.append(0 if d is None else d)
    S = ring.S
    subsets = {i: list(combinations(range(n), i)) for i in range(n + 1)}
    degrees = {i: [sum(xdeg[s] for s in T) for T in subsets[i]] for i in range(n + 1)}
    diffs = {}
    for i in range(1, n + 1):
        pos = {T: k for k, T in enumerate(subsets[i - 1])}
        rows = [[S.zero()] * len(subsets[i]) for _ in subsets[i - 1]]
        for j, T in enumerate(subsets[i]):
            for k, s in enumerate(T):
                face = T[:k] + T[k + 1:]
                rows[pos[face]][j] = xs[s] if k % 2 == 0 else -xs[s]
        diffs[i] = Matrix(S, rows, len(subsets[i - 1]), len(subsets[i]))
    K = FreeComplex(ring, diffs, degrees, 0, n)
    if M is None:
        return K
    if isinstance(M, FreeComplex):
        return tensor_complexes(K, M)
    return K.with_coefficients(M)


def tensor_complexes(X: FreeComplex, Y: FreeComplex) -> FreeComplex:
    if X.ring != Y.ring:
        raise ValueError("ring mismatch")
    S = X.ring.S
    lo, hi = X.lo + Y.lo, X.hi + Y.hi
    blocks = {}
    degrees = {}
    for n in range(lo, hi + 1):
        bl = []
        off = 0
        degs = []
        for i in range(X.lo, X.hi + 1):
            j = n - i
            if not (Y.lo <= j <= Y.hi):
                continue
            size = X.rank(i) * Y.rank(j)
            bl.append((i, j, off, size))
            off += size
            degs += [a + b for a in X.degrees(i) for b in Y.degrees(j)]
        blocks[n] = bl
        degrees[n] = degs
    diffs = {}
    for n in range(lo + 1, hi + 1):
        rows = [[S.zero()] * len(degrees[n]) for _ in degrees[n - 1]]
        tgt = {(i, j): off for i, j, off, _ in blocks[n - 1]}
        for i, j, off, _ in blocks[n]:
            if (i - 1, j) in tgt and X.rank(i - 1):
                m = X.differential(i).kron(Matrix.identity(S, Y.rank(j)))
                _paste(rows, m, tgt[(i - 1, j)], off, 1)
            if (i, j - 1) in tgt and Y.rank(j - 1):
                m = Matrix.identity(S, X.rank(i)).kron(Y.differential(j))
                _paste(rows, m, tgt[(i, j - 1)], off, -1 if i % 2 else 1)
        diffs[n] = Matrix(S, rows, len(degrees[n - 1]), len(degrees[n]))
    valid = min(X.valid_hi + Y.lo, Y.valid_hi + X.lo)
    return FreeComplex(X.ring, diffs, degrees, lo, hi, valid_hi=valid)


def _paste(rows, m: Matrix, r0: int, c0: int, sign: int):
    for a in range(m.nrows):
        for b in range(m.ncols):
            v = m[a, b]
            if v:
                rows[r0 + a][c0 + b] = rows[r0 + a][c0 + b] + (v if sign == 1 else -v)


def shift(X: FreeComplex, n: int) -> FreeComplex:
    """(Sigma^n X)_i = X_{i-n} with differentials multiplied by (-1)^n."""
    sign = -1 if n % 2 else 1
    diffs = {i + n: X.differential(i).scale(sign) for i in range(X.lo + 1, X.hi + 1)}
    degrees = {i + n: X.degrees(i) for i in range(X.lo, X.hi + 1)}
    return FreeComplex(X.ring, diffs, degrees, X.lo + n, X.hi + n, valid_hi=X.valid_hi + n)


def module_complex(M: FGModule, degree: int = 0, length: int | None = None) -> FreeComplex:
    """Free resolution of M placed so that H_degree = M (a shifted module)."""
    from .algebra import free_resolution

    L = int(M.ring.dim) + 2 if length is None else length
    return shift(free_resolution(M, L), degree)


def two_term_complex(ring: QuotientRing, d: Matrix, target_degrees: Sequence[int], lo: int = 0) -> FreeComplex:
    """``R^a --d--> R^b`` with the target in degree ``lo``."""
    src = _col_degrees(d, list(target_degrees))
    return FreeComplex(ring, {lo + 1: d}, {lo: list(target_degrees), lo + 1: src}, lo, lo + 1)


def homology(X, i: int) -> FGModule:
    return X.homology(i)
