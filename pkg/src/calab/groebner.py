"""Buchberger's algorithm for ideals and submodules of free modules.

Module elements are handled internally as dicts ``{(position, exponent): coeff}``
under a position-over-term order (lower position index dominates).  Ideals are
the rank one case.  Computation modulo a defining ideal ``I`` is done by adding
``I * e_i`` for every free generator ``e_i`` of the ambient module.
"""

from __future__ import annotations

import heapq
import math
from itertools import combinations
from typing import Sequence

from .core import PolyRing, Polynomial
from .matrix import Matrix

NEG_INF = -math.inf


class _Engine:
    """Reduction and completion for one polynomial ring."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self._mk: dict = {}
        self.one_exp = (0,) * ring.nvars

    def mkey(self, t):
        k = self._mk.get(t)
        if k is None:
            k = self._mk[t] = (-t[0], self.ring.key(t[1]))
        return k

    def lead(self, f: dict):
        return max(f, key=self.mkey)

    @staticmethod
    def _divides(a, b):
        for x, y in zip(a, b):
            if x > y:
                return False
        return True

    def _find_reducer(self, t, index):
        pos, e = t
        for le, g in index.get(pos, ()):
            if self._divides(le, e):
                return le, g
        return None

    @staticmethod
    def _sub_mul(f: dict, g: dict, shift, c):
        """In place: f -= c * x^shift * g."""
        for (p, e), d in g.items():
            t = (p, tuple(a + b for a, b in zip(e, shift)))
            v = f.get(t)
            v = -c * d if v is None else v - c * d
            if v:
                f[t] = v
            else:
                f.pop(t, None)

    def reduce(self, f: dict, index) -> dict:
        """Full normal form of ``f`` against monic elements in ``index``."""
        f = dict(f)
        rem = {}
        while f:
            t = self.lead(f)
            c = f[t]
            hit = self._find_reducer(t, index)
            if hit is None:
                rem[t] = c
                del f[t]
                continue
            le, g = hit
            shift = tuple(a - b for a, b in zip(t[1], le))
            self._sub_mul(f, g, shift, c)
        return rem

    def monic(self, f: dict) -> dict:
        c = f[self.lead(f)]
        if c == 1:
            return f
        inv = 1 / c
        return {t: v * inv for t, v in f.items()}

    def spoly(self, f, g):
        lf, lg = self.lead(f), self.lead(g)
        lcm = tuple(max(a, b) for a, b in zip(lf[1], lg[1]))
        s = {}
        self._sub_mul(s, f, tuple(a - b for a, b in zip(lcm, lf[1])), -1 / f[lf])
        self._sub_mul(s, g, tuple(a - b for a, b in zip(lcm, lg[1])), 1 / g[lg])
        return s

    @staticmethod
    def _index(basis):
        index: dict = {}
        for g, lt in basis:
            index.setdefault(lt[0], []).append((lt[1], g))
        return index

    def groebner(self, gens: Sequence[dict], weights: dict | None = None, aux: Sequence[dict] = ()):
        """Reduced Groebner basis of the submodule generated by ``gens`` and ``aux``."""
        return self.completion(gens, weights, aux)[0]

    def completion(self, gens: Sequence[dict], weights: dict | None = None, aux: Sequence[dict] = ()):
        """Buchberger completion processing inputs and pairs by increasing degree.

        Returns ``(reduced_basis, needed)`` where ``needed[k]`` tells whether
        ``gens[k]`` was not already in the span of ``aux`` and the previously
        processed gens.  For homogeneous input the needed gens form a minimal
        generating set modulo ``aux``.
        """
        weights = weights or {}
        gens = [dict(g) for g in gens]
        aux = [dict(g) for g in aux if g]
        ideal_case = all(p == 0 for g in list(gens) + aux for (p, _) in g)

        def wdeg(t):
            return sum(t[1]) + weights.get(t[0], 0)

        basis: list = []
        index: dict = {}
        queue: list = []
        live = set()
        counter = 0
        needed = [False] * len(gens)
        for g in aux:
            counter += 1
            lt = self.lead(g)
            heapq.heappush(queue, (wdeg(lt), 0, counter, "aux", g))
        for k, g in enumerate(gens):
            if not g:
                continue
            counter += 1
            lt = self.lead(g)
            heapq.heappush(queue, (wdeg(lt), 2, counter, k, g))

        def add(h):
            nonlocal counter
            h = self.monic(h)
            lt = self.lead(h)
            k = len(basis)
            basis.append((h, lt))
            index.setdefault(lt[0], []).append((lt[1], h))
            for i in range(k):
                li = basis[i][1]
                if li[0] != lt[0]:
                    continue
                if ideal_case and all(min(a, b) == 0 for a, b in zip(li[1], lt[1])):
                    continue
                lcm = tuple(max(a, b) for a, b in zip(li[1], lt[1]))
                counter += 1
                heapq.heappush(queue, (sum(lcm) + weights.get(lt[0], 0), 1, counter, (i, k), lcm))
                live.add((i, k))

        while queue:
            _, kind, _, tag, payload = heapq.heappop(queue)
            if kind != 1:
                r = self.reduce(payload, index)
                if r:
                    if tag != "aux":
                        needed[tag] = True
                    add(r)
                continue
            i, j = tag
            lcm = payload
            if (i, j) not in live:
                continue
            live.discard((i, j))
            pos = basis[j][1][0]
            skip = False
            for k, item in enumerate(basis):
                if k == i or k == j:
                    continue
                lk = item[1]
                if lk[0] == pos and self._divides(lk[1], lcm):
                    a, b = (i, k) if i < k else (k, i)
                    c, d = (j, k) if j < k else (k, j)
                    if (a, b) not in live and (c, d) not in live:
                        skip = True
                        break
            if skip:
                continue
            r = self.reduce(self.spoly(basis[i][0], basis[j][0]), index)
            if r:
                add(r)
        return self.interreduce([b[0] for b in basis]), needed

    def interreduce(self, elems: list[dict]) -> list[dict]:
        items = [(self.monic(g), self.lead(g)) for g in elems if g]
        items.sort(key=lambda it: self.mkey(it[1]))
        minimal = []
        for g, lt in items:
            if any(m[1][0] == lt[0] and self._divides(m[1][1], lt[1]) for m in minimal):
                continue
            minimal.append((g, lt))
        out = []
        for k, (g, lt) in enumerate(minimal):
            others = self._index([m for i, m in enumerate(minimal) if i != k])
            tail = dict(g)
            c = tail.pop(lt)
            r = self.reduce(tail, others)
            r[lt] = c
            out.append(r)
        out.sort(key=lambda g: self.mkey(self.lead(g)), reverse=True)
        return out

    def is_groebner(self, basis: Sequence[dict]) -> bool:
        index = self._index([(self.monic(g), self.lead(g)) for g in basis if g])
        items = [g for g in basis if g]
        for f, g in combinations(items, 2):
            if self.lead(f)[0] != self.lead(g)[0]:
                continue
            if self.reduce(self.spoly(f, g), index):
                return False
        return True


_ENGINES: dict = {}


def engine(ring: PolyRing) -> _Engine:
    e = _ENGINES.get(ring)
    if e is None:
        e = _ENGINES[ring] = _Engine(ring)
    return e


# ---------- conversions ----------

def poly_to_elem(f: Polynomial, pos: int = 0) -> dict:
    return {(pos, e): c for e, c in f.terms.items()}


def vec_to_elem(col: Sequence[Polynomial], offset: int = 0) -> dict:
    out = {}
    for i, f in enumerate(col):
        for e, c in f.terms.items():
            out[(offset + i, e)] = c
    return out


def elem_to_vec(ring: PolyRing, f: dict, start: int, n: int) -> list[Polynomial]:
    parts: list[dict] = [{} for _ in range(n)]
    for (p, e), c in f.items():
        if start <= p < start + n:
            parts[p - start][e] = c
    return [Polynomial(ring, d) for d in parts]


def elem_to_poly(ring: PolyRing, f: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in f.items()})


# ---------- ideals ----------

def reduced_groebner(gens: Sequence[Polynomial], order=None) -> list[Polynomial]:
    """Reduced Groebner basis (monic, descending leading terms)."""
    gens = [g for g in gens]
    if not gens:
        return []
    ring = gens[0].ring
    if any(g.ring.variables != ring.variables for g in gens):
        raise ValueError("generators live in different rings")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [ring(g) for g in gens]
    eng = engine(ring)
    basis = eng.groebner([poly_to_elem(g) for g in gens if g])
    return [elem_to_poly(ring, b) for b in basis]


def is_groebner_basis(basis: Sequence[Polynomial]) -> bool:
    if not basis:
        return True
    return engine(basis[0].ring).is_groebner([poly_to_elem(g) for g in basis])


def normal_form(f: Polynomial, basis: Sequence[Polynomial], check: bool = True) -> Polynomial:
    """Remainder of ``f`` on division by the Groebner basis ``basis``."""
    if not basis:
        return f
    ring = basis[0].ring
    if check and not is_groebner_basis(basis):
        raise ValueError("basis is not a Groebner basis for the ring's order")
    eng = engine(ring)
    index = eng._index([(eng.monic(poly_to_elem(g)), eng.lead(poly_to_elem(g))) for g in basis if g])
    return elem_to_poly(ring, eng.reduce(poly_to_elem(ring(f)), index))


class Ideal:
    """Ideal of a polynomial ring given by generators; caches its reduced GB."""

    def __init__(self, ring: PolyRing, gens: Sequence):
        self.ring = ring
        gens = [ring(g) if not isinstance(g, Polynomial) else g for g in gens]
        for g in gens:
            if g.ring.variables != ring.variables:
                raise ValueError("generator not in ring")
        self.gens = [g for g in gens if g] or [ring.zero()]
        self._gb = None
        self._index = None

    def gb(self) -> list[Polynomial]:
        if self._gb is None:
            self._gb = reduced_groebner([g for g in self.gens if g], self.ring.order) if any(self.gens) else []
        return self._gb

    def _idx(self):
        if self._index is None:
            eng = engine(self.ring)
            self._index = eng._index([(poly_to_elem(g), eng.lead(poly_to_elem(g))) for g in self.gb()])
        return self._index

    def reduce(self, f: Polynomial) -> Polynomial:
        if not self.gb():
            return self.ring(f)
        eng = engine(self.ring)
        return elem_to_poly(self.ring, eng.reduce(poly_to_elem(self.ring(f)), self._idx()))

    def contains(self, f) -> bool:
        return not self.reduce(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        gb = self.gb()
        return len(gb) == 1 and gb[0].is_constant() and not gb[0].is_zero()

    def is_zero(self) -> bool:
        return not self.gb()

    def is_homogeneous(self) -> bool:
        return all(g.homogeneous_degree() is not None for g in self.gens)

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_op("sum", self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_op("product", self, other)

    def __pow__(self, n: int) -> "Ideal":
        out = Ideal(self.ring, [self.ring.one()])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Ideal) and ideal_equal(self, other)

    def __hash__(self):
        return hash(tuple(self.gb()))

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring.variables != J.ring.variables:
        raise ValueError("ideals in different rings")
    return I.gb() == J.gb()


# ---------- submodules and syzygies ----------

def column_degree(col: Sequence[Polynomial], row_degrees: Sequence[int] | None):
    """Degree of a homogeneous column, ``None`` if not homogeneous."""
    deg = None
    for i, f in enumerate(col):
        if not f:
            continue
        d = f.homogeneous_degree()
        if d is None:
            return None
        d += row_degrees[i] if row_degrees else 0
        if deg is None:
            deg = d
        elif deg != d:
            return None
    return deg


class SubmoduleBasis:
    """Groebner basis of ``<cols> + I * S^rank`` inside the free module ``S^rank``."""

    def __init__(self, ring: PolyRing, rank: int, cols: Sequence[Sequence[Polynomial]],
                 quotient: Sequence[Polynomial] = (), row_degrees: Sequence[int] | None = None):
        self.ring = ring
        self.rank = rank
        eng = engine(ring)
        gens = [vec_to_elem(c) for c in cols]
        aux = [poly_to_elem(f, i) for f in quotient for i in range(rank)]
        weights = {i: d for i, d in enumerate(row_degrees)} if row_degrees else None
        self.basis = eng.groebner(gens, weights, aux)
        self.index = eng._index([(g, eng.lead(g)) for g in self.basis])

    def nf(self, col: Sequence[Polynomial]) -> list[Polynomial]:
        r = engine(self.ring).reduce(vec_to_elem(col), self.index)
        return elem_to_vec(self.ring, r, 0, self.rank)

    def contains(self, col) -> bool:
        return not engine(self.ring).reduce(vec_to_elem(col), self.index)

    def leading_terms(self):
        eng = engine(self.ring)
        return [eng.lead(g) for g in self.basis]


class _GraphBasis:
    """GB of the graph module {(A_j ; e_j)} + I*S^m, target positions dominating."""

    def __init__(self, A: Matrix, quotient: Sequence[Polynomial], row_degrees=None):
        ring = A.ring
        self.ring, self.m, self.n = ring, A.nrows, A.ncols
        eng = engine(ring)
        gens = []
        weights = {}
        rd = list(row_degrees) if row_degrees else [0] * self.m
        for i, d in enumerate(rd):
            weights[i] = d
        for j in range(self.n):
            col = A.column(j)
            g = vec_to_elem(col)
            g[(self.m + j, eng.one_exp)] = ring.field.one
            gens.append(g)
            d = column_degree(col, rd)
            weights[self.m + j] = d if d is not None else 0
        aux = [poly_to_elem(f, i) for f in quotient for i in range(self.m)]
        self.basis = eng.groebner(gens, weights, aux)
        self.index = eng._index([(g, eng.lead(g)) for g in self.basis])

    def syzygies(self) -> list[list[Polynomial]]:
        eng = engine(self.ring)
        out = []
        for g in self.basis:
            if eng.lead(g)[0] >= self.m:
                out.append(elem_to_vec(self.ring, g, self.m, self.n))
        return out

    def lift(self, v: Sequence[Polynomial]):
        r = engine(self.ring).reduce(vec_to_elem(v), self.index)
        if any(p < self.m for (p, _) in r):
            return None
        return [-f for f in elem_to_vec(self.ring, r, self.m, self.n)]


_GRAPH_CACHE: dict = {}


def _graph(A: Matrix, quotient, row_degrees=None) -> _GraphBasis:
    key = (A, tuple(quotient), tuple(row_degrees) if row_degrees else None)
    g = _GRAPH_CACHE.get(key)
    if g is None:
        if len(_GRAPH_CACHE) > 2000:
            _GRAPH_CACHE.clear()
        g = _GRAPH_CACHE[key] = _GraphBasis(A, quotient, row_degrees)
    return g


def syzygy_matrix(A: Matrix, quotient: Sequence[Polynomial] = (), row_degrees=None) -> Matrix:
    """Columns generating ``{v : A v = 0}`` (modulo ``quotient`` when given).

    ``quotient`` is a Groebner basis of the defining ideal of S/I; entries of
    the result are reduced modulo it and zero columns dropped.
    """
    ring = A.ring
    if A.ncols == 0:
        return Matrix(ring, [[] for _ in range(0)], 0, 0)
    qideal = Ideal(ring, quotient) if quotient else None
    cols = []
    seen = set()
    for v in _graph(A, tuple(quotient), row_degrees).syzygies():
        if qideal is not None:
            v = [qideal.reduce(f) for f in v]
        if any(v):
            key = tuple(v)
            if key not in seen:
                seen.add(key)
                cols.append(v)
    return Matrix.from_columns(ring, cols, A.ncols)


def lift(A: Matrix, v: Sequence[Polynomial], quotient: Sequence[Polynomial] = (), row_degrees=None):
    """Coefficients ``c`` with ``A c = v`` modulo ``quotient``, or ``None``."""
    if A.ncols == 0:
        ok = SubmoduleBasis(A.ring, A.nrows, [], quotient).contains(v)
        return [] if ok else None
    return _graph(A, tuple(quotient), row_degrees).lift(v)


def minimal_generators(ring: PolyRing, rank: int, cols: Sequence[Sequence[Polynomial]],
                       quotient: Sequence[Polynomial] = (), row_degrees=None) -> list[int]:
    """Indices of a minimal generating subset of ``cols`` modulo ``I * S^rank``.

    Minimality holds for homogeneous columns; columns are tried in increasing
    degree and kept only when not in the span of the ones kept before.
    """
    eng = engine(ring)
    gens = [vec_to_elem(c) for c in cols]
    aux = [poly_to_elem(f, i) for f in quotient for i in range(rank)]
    weights = {i: d for i, d in enumerate(row_degrees)} if row_degrees else None
    _, needed = eng.completion(gens, weights, aux)
    return [k for k, flag in enumerate(needed) if flag]


# ---------- ideal operations ----------

def _kernel_first_coords(rows: list[list[Polynomial]], ring) -> list[Polynomial]:
    A = Matrix(ring, rows)
    S = syzygy_matrix(A)
    return [S[0, j] for j in range(S.ncols) if S[0, j]]


def ideal_quotient_elem(I: Ideal, f: Polynomial) -> Ideal:
    ring = I.ring
    f = ring(f)
    if not f:
        return Ideal(ring, [ring.one()])
    gens = [g for g in I.gb()]
    if not gens:
        return Ideal(ring, [ring.zero()])
    return Ideal(ring, _kernel_first_coords([[f] + gens], ring))


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    g, h = [x for x in I.gens if x], [x for x in J.gens if x]
    if not g or not h:
        return Ideal(ring, [ring.zero()])
    z = ring.zero()
    rows = [[ring.one()] + g + [z] * len(h), [ring.one()] + [z] * len(g) + h]
    return Ideal(ring, _kernel_first_coords(rows, ring))


def ideal_op(kind: str, I: Ideal, arg) -> Ideal:
    ring = I.ring
    if kind in ("sum", "product", "intersect") or (kind == "quotient" and isinstance(arg, Ideal)):
        if not isinstance(arg, Ideal):
            raise TypeError(f"{kind} expects an ideal argument")
        if arg.ring.variables != ring.variables:
            raise ValueError("argument not in ring")
    if kind == "sum":
        return Ideal(ring, I.gens + arg.gens)
    if kind == "product":
        return Ideal(ring, [a * b for a in I.gens for b in arg.gens])
    if kind == "intersect":
        return ideal_intersect(I, arg)
    if kind == "quotient":
        if isinstance(arg, Ideal):
            parts = [ideal_quotient_elem(I, h) for h in arg.gens if h]
            if not parts:
                return Ideal(ring, [ring.one()])
            out = parts[0]
            for p in parts[1:]:
                out = ideal_intersect(out, p)
            return out
        return ideal_quotient_elem(I, _as_poly(ring, arg))
    if kind == "saturate":
        if isinstance(arg, Ideal):
            cur = I
            while True:
                nxt = ideal_op("quotient", cur, arg)
                if ideal_equal(nxt, cur):
                    return Ideal(ring, cur.gb() or [ring.zero()])
                cur = nxt
        f = _as_poly(ring, arg)
        cur = I
        while True:
            nxt = ideal_quotient_elem(cur, f)
            if ideal_equal(nxt, cur):
                return Ideal(ring, cur.gb() or [ring.zero()])
            cur = nxt
    if kind == "eliminate":
        return eliminate(I, arg)
    raise ValueError(f"unknown ideal operation {kind!r}")


def _as_poly(ring, f) -> Polynomial:
    if isinstance(f, Polynomial):
        if f.ring.variables != ring.variables:
            raise ValueError("argument not in ring")
        return f
    return ring(f)


def eliminate(I: Ideal, variables: Sequence[str]) -> Ideal:
    """``I`` intersected with the subring on the remaining variables."""
    ring = I.ring
    elim = [v for v in ring.variables if v in set(variables)]
    for v in variables:
        if v not in ring.variables:
            raise ValueError(f"unknown variable {v!r}")
    rest = [v for v in ring.variables if v not in set(variables)]
    perm = [ring.variables.index(v) for v in elim + rest]
    big = PolyRing(elim + rest, ring.field, ("elim", len(elim)))

    def fwd(f):
        return Polynomial(big, {tuple(e[i] for i in perm): c for e, c in f.terms.items()})

    inv = [0] * len(perm)
    for k, i in enumerate(perm):
        inv[i] = k

    def back(f):
        return Polynomial(ring, {tuple(e[inv[i]] for i in range(len(perm))): c for e, c in f.terms.items()})

    gb = reduced_groebner([fwd(g) for g in I.gens if g])
    keep = [back(g) for g in gb if not any(any(e[:len(elim)]) for e in g.terms)]
    return Ideal(ring, keep or [ring.zero()])


def ideal_dimension(I: Ideal):
    """Krull dimension of S/I from the leading-term ideal; ``-inf`` for I = (1)."""
    if I.is_unit():
        return NEG_INF
    leads = [g.leading_monomial() for g in I.gb()]
    return _lead_dimension(leads, I.ring.nvars)


def _lead_dimension(leads, n: int) -> int:
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in leads]
    if any(not s for s in supports):
        return NEG_INF
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            U = set(U)
            if all(not s <= U for s in supports):
                return size
    return 0


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """Rabinowitsch: ``f`` in sqrt(I) iff 1 in I + (1 - t f) in S[t]."""
    ring = I.ring
    f = _as_poly(ring, f)
    if not f:
        return True
    t = "_t"
    while t in ring.variables:
        t += "_"
    big = PolyRing(ring.variables + (t,), ring.field, ring.order)

    def up(g):
        return Polynomial(big, {e + (0,): c for e, c in g.terms.items()})

    tf = Polynomial(big, {e + (1,): c for e, c in f.terms.items()})
    J = Ideal(big, [up(g) for g in I.gens if g] + [big.one() - tf])
    return J.is_unit()
