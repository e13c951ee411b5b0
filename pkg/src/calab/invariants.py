"""Depth, Tor/Ext, Serre's conditions, reflexivity, rank and symbolic powers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    FGModule,
    ModuleMap,
    QuotientRing,
    annihilator,
    evaluation_map,
    free_module,
    free_resolution,
    is_zero_module,
    kernel_cokernel,
    length_over_field,
    module_dimension,
    projective_dimension,
    projective_dimension_info,
    quotient_module,
)
from .complexes import FreeComplex, ModuleComplex, inf_sup, koszul_complex
from .core import Polynomial
from .groebner import Ideal, ideal_dimension, ideal_op, radical_membership
from .matrix import Matrix
from .report import CheckReport

INF = math.inf

__all__ = [
    "Unsupported", "PrimeSpec", "depth_koszul", "depth_rees", "local_depth", "height",
    "tor", "ext", "TorVanishing", "tor_vanishes_from_one", "serre_condition",
    "is_reflexive", "is_torsion_free", "rank_of", "ci_dimension", "SymbolicPower",
    "symbolic_power", "is_regular_sequence", "regular_seq_transfer_check",
    "depth_formula_check", "in_support", "has_full_support", "module_dimension",
    "length_over_field",
]


class Unsupported(Exception):
    """The requested invariant is not decided over this base ring."""


class PrimeSpec:
    """A prime of R, given by generators; primality is an input assertion."""

    def __init__(self, ring: QuotientRing, gens: Sequence, declared_prime: bool = True, name: str | None = None):
        self.ring = ring
        self.gens = [g for g in (ring.reduce(g) for g in gens) if g]
        self.ideal = ring.ideal_of(self.gens)
        if self.ideal.is_unit():
            raise ValueError("a prime must be proper")
        self.declared_prime = declared_prime
        self.name = name
        self._height = None

    @property
    def height(self) -> int:
        if self._height is None:
            self._height = int(self.ring.dim - ideal_dimension(self.ideal))
        return self._height

    def contains(self, f) -> bool:
        return self.ideal.contains(self.ring.reduce(f))

    def contains_ideal(self, other) -> bool:
        return all(self.contains(g) for g in _elements(self.ring, other))

    def __repr__(self):
        label = self.name + " = " if self.name else ""
        return label + "(" + ", ".join(str(g) for g in self.gens) + ")"


def _elements(R: QuotientRing, I) -> list[Polynomial]:
    if isinstance(I, PrimeSpec):
        return list(I.gens)
    if isinstance(I, Ideal):
        gens = I.gens
    else:
        gens = list(I)
    return [R.reduce(g) for g in gens]


def _quotient_of(R: QuotientRing, I) -> FGModule:
    els = [g for g in _elements(R, I) if g]
    return quotient_module(R, els) if els else free_module(R, 1)


# ---------- Tor and Ext ----------

def tor(i: int, M: FGModule, N: FGModule) -> FGModule:
    if i < 0:
        raise ValueError("Tor index must be nonnegative")
    key = ("tor", i, id(N))
    if key not in M._cache:
        X = free_resolution(M, i + 1)
        M._cache[key] = (N, X.with_coefficients(N).homology(i))
    return M._cache[key][1]


def ext(i: int, M: FGModule, N: FGModule) -> FGModule:
    if i < 0:
        raise ValueError("Ext index must be nonnegative")
    key = ("ext", i, id(N))
    if key not in M._cache:
        X = free_resolution(M, i + 1)
        M._cache[key] = (N, X.hom_into(N).homology(-i))
    return M._cache[key][1]


# ---------- depth ----------

def depth_koszul(I, X, ring: QuotientRing | None = None):
    """n - sup H(K(x) (x) X) for generators x_1..x_n of I; inf when H(X) = 0."""
    R = ring or X.ring
    xs = _elements(R, I)
    if not xs:
        raise ValueError("depth needs at least one generator")
    n = len(xs)
    if isinstance(X, FGModule):
        if is_zero_module(X):
            return INF
        KX = koszul_complex(xs, X)
    elif isinstance(X, FreeComplex):
        top = inf_sup(X)[1]
        if top == -INF:
            return INF
        KX = koszul_complex(xs, X)
        if KX.valid_hi < min(KX.hi, top + n):
            raise ValueError("complex truncated too early to read off this depth")
    else:
        raise TypeError("depth expects a module or a free complex")
    for i in range(min(KX.hi, KX.valid_hi), KX.lo - 1, -1):
        if not is_zero_module(KX.homology(i)):
            return n - i
    return INF


def depth_rees(I, M: FGModule):
    """min{i : Ext^i(R/I, M) != 0}; inf when IM = M."""
    R = M.ring
    Q = _quotient_of(R, I)
    from .algebra import tensor_modules

    if is_zero_module(tensor_modules(Q, M)):
        return INF
    for i in range(int(R.dim) + 2):
        if not is_zero_module(ext(i, Q, M)):
            return i
    raise RuntimeError("no nonvanishing Ext below dim R + 2 although IM != M")


def local_depth(I, M: FGModule, at: PrimeSpec):
    """depth of M_q with respect to I R_q, via supports of Ext^i(R/I, M)."""
    R = M.ring
    if not at.contains_ideal(I):
        raise ValueError("the ideal is not contained in the localizing prime")
    Q = _quotient_of(R, I)
    for i in range(int(R.dim) + 1):
        E = ext(i, Q, M)
        if is_zero_module(E):
            continue
        if at.ideal.contains_ideal(annihilator(E)):
            return i
    return INF


def height(p: PrimeSpec) -> int:
    return p.height


def in_support(M: FGModule, q: PrimeSpec) -> bool:
    return q.ideal.contains_ideal(annihilator(M))


def has_full_support(M: FGModule) -> bool:
    """Supp M = Spec R, i.e. every element of ann(M) is nilpotent."""
    R = M.ring
    if M.ngens == 0:
        return False
    ann = annihilator(M)
    return all(radical_membership(g, R.ideal) for g in ann.gens)


# ---------- Tor vanishing over hypersurfaces ----------

@dataclass
class TorVanishing:
    value: bool
    checked_to: int
    witness: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.value


def tor_vanishes_from_one(M: FGModule, N: FGModule) -> TorVanishing:
    """Decide Tor_i(M, N) = 0 for all i >= 1 over a hypersurface."""
    R = M.ring
    if not R.is_hypersurface:
        raise Unsupported("Tor vanishing for all i is decided only over hypersurfaces")
    top = int(R.dim) + 2
    for i in range(1, top + 1):
        if not is_zero_module(tor(i, M, N)):
            return TorVanishing(False, i, i, f"Tor_{i} != 0")
    pm = projective_dimension_info(M)
    if pm.value != INF:
        return TorVanishing(True, top, None, f"pd M = {pm.value}")
    pn = projective_dimension_info(N)
    if pn.value != INF:
        return TorVanishing(True, top, None, f"pd N = {pn.value}")
    if pm.periodic_ranks:
        # high syzygies are maximal Cohen-Macaulay, hence 2-periodic
        return TorVanishing(True, top, None, "resolution of M periodic from degree dim R")
    raise RuntimeError("resolution over a hypersurface failed to become periodic")


# ---------- Serre's condition, reflexivity ----------

def serre_condition(M: FGModule, n: int) -> bool:
    """(S_n) via dim Ext^i(M, R) <= dim R - i - n for i >= 1 (Gorenstein base)."""
    R = M.ring
    if not R.is_gorenstein:
        raise Unsupported("Serre's condition is evaluated only over Gorenstein rings")
    if is_zero_module(M):
        return True
    Rf = free_module(R, 1)
    d = int(R.dim)
    for i in range(1, d + 1):
        E = ext(i, M, Rf)
        if module_dimension(E) > d - i - n:
            return False
    return True


def is_reflexive(M: FGModule) -> bool:
    if "reflexive" not in M._cache:
        ev = evaluation_map(M)
        ker, coker = kernel_cokernel(ev.map)
        M._cache["reflexive"] = is_zero_module(ker) and is_zero_module(coker)
    return M._cache["reflexive"]


def is_torsion_free(M: FGModule) -> bool:
    return serre_condition(M, 1)


# ---------- rank, CI-dimension ----------

def _rank_mod(A: Matrix, p: PrimeSpec) -> int:
    """Rank of A over the fraction field of S/p (fraction-free elimination)."""
    red = p.ideal.reduce
    rows = [[red(a) for a in r] for r in A.rows]
    nr, nc = A.nrows, A.ncols
    rank = 0
    col = 0
    r0 = 0
    while r0 < nr and col < nc:
        piv = next((i for i in range(r0, nr) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[r0], rows[piv] = rows[piv], rows[r0]
        a = rows[r0][col]
        for i in range(r0 + 1, nr):
            b = rows[i][col]
            if b:
                rows[i] = [red(a * u - b * v) for u, v in zip(rows[i], rows[r0])]
        r0 += 1
        col += 1
        rank += 1
    return rank


def rank_of(M: FGModule, minimal_primes: Sequence[PrimeSpec]):
    """Common rank of M at the given minimal primes, or None if they disagree."""
    if not minimal_primes:
        raise ValueError("need the list of minimal primes")
    ranks = {M.ngens - _rank_mod(M.relations, p) for p in minimal_primes}
    return ranks.pop() if len(ranks) == 1 else None


def ci_dimension(M: FGModule):
    R = M.ring
    if not (R.is_complete_intersection or R.is_hypersurface):
        raise Unsupported("CI-dimension is computed only over complete intersections")
    m = R.maximal_ideal()
    dM = depth_koszul(m, M)
    if dM == INF:
        return -INF
    return depth_koszul(m, free_module(R, 1)) - dM


# ---------- symbolic powers ----------

@dataclass
class SymbolicPower:
    ideal: Ideal
    certified: bool
    witness: Polynomial
    notes: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "certified" if self.certified else "witness-dependent"


def symbolic_power(p: PrimeSpec, n: int, f) -> SymbolicPower:
    """p^(n) as the saturation of p^n + I by an element f outside p."""
    R = p.ring
    if n < 1:
        raise ValueError("symbolic powers need n >= 1")
    f = R.reduce(f)
    if p.contains(f):
        raise ValueError(f"witness {f} lies in the prime")
    P = Ideal(R.S, p.gens or [R.S.zero()])
    J = ideal_op("sum", P ** n, R.ideal) if R.gb else P ** n
    sat = ideal_op("saturate", J, f)
    notes = []
    radical_ok = all(radical_membership(g, sat) for g in p.ideal.gens) and p.ideal.contains_ideal(sat)
    if not radical_ok:
        notes.append("radical of the saturation differs from p")
    stable = ideal_op("quotient", sat, f) == sat
    if not stable:
        notes.append("saturation not stable under one more quotient")
    return SymbolicPower(sat, radical_ok and stable, f, notes)


# ---------- regular sequences ----------

def _multiplication(M: FGModule, x: Polynomial) -> ModuleMap:
    return ModuleMap(M, M, Matrix.identity(M.S, M.ngens).scale(x), check=False)


def is_regular_sequence(seq: Sequence, M: FGModule) -> bool:
    R = M.ring
    cur = M
    for x in seq:
        x = R.reduce(x)
        if x.constant_coefficient():
            raise ValueError("sequence elements must lie in the maximal ideal")
        ker, coker = kernel_cokernel(_multiplication(cur, x))
        if not is_zero_module(ker):
            return False
        cur = coker
    return not is_zero_module(cur)


# ---------- check reports ----------

ALL_PRIMES_SCOPE = "checked over the declared primes only; the claim quantifies over all primes"


def regular_seq_transfer_check(M: FGModule, primes: Sequence[PrimeSpec], claim_id: str = "regular-sequence-transfer",
                               anchor: str = "Each $M$-regular sequence is $R$-regular") -> CheckReport:
    if not primes:
        raise ValueError("need a nonempty list of primes")
    R = M.ring
    Rf = free_module(R, 1)
    values = {}
    failing = []
    for p in primes:
        dm, dr = depth_rees(p, M), depth_rees(p, Rf)
        label = repr(p)
        values[f"depth({label}, M)"] = dm
        values[f"depth({label}, R)"] = dr
        if dm > dr:
            failing.append(label)
    values["failing_primes"] = failing
    verdict = "refuted" if failing else "verified"
    return CheckReport(claim_id, anchor, f"M={M!r}", values, verdict, [ALL_PRIMES_SCOPE])


def depth_formula_check(M: FGModule, N: FGModule, claim_id: str = "depth-formula",
                        anchor: str = "satisfies the derived depth formula") -> CheckReport:
    from .algebra import tensor_modules

    R = M.ring
    try:
        tv = tor_vanishes_from_one(M, N)
    except Unsupported as exc:
        return CheckReport(claim_id, anchor, "", {"reason": str(exc)}, "not-applicable")
    if not tv:
        return CheckReport(claim_id, anchor, "", {"tor_witness": tv.witness}, "not-applicable",
                           ["pair is not Tor-independent"])
    m = R.maximal_ideal()
    dm, dn = depth_koszul(m, M), depth_koszul(m, N)
    dr = depth_koszul(m, free_module(R, 1))
    dt = depth_koszul(m, tensor_modules(M, N))
    values = {"depth M": dm, "depth N": dn, "depth R": dr, "depth M(x)N": dt,
              "lhs": dm + dn, "rhs": dr + dt}
    verdict = "verified" if dm + dn == dr + dt else "refuted"
    return CheckReport(claim_id, anchor, "", values, verdict, [f"Tor checked to degree {tv.checked_to}: {tv.reason}"])


__all__ += ["projective_dimension", "annihilator"]
