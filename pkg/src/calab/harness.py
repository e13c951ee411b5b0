"""Theorem checkers producing structured verdicts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    FGModule,
    free_module,
    ideal_module,
    is_zero_module,
    projective_dimension,
    quotient_module,
    syzygy_module,
    tensor_modules,
)
from .groebner import Ideal, radical_membership
from .invariants import (
    ALL_PRIMES_SCOPE,
    PrimeSpec,
    Unsupported,
    depth_koszul,
    has_full_support,
    in_support,
    is_reflexive,
    is_torsion_free,
    local_depth,
    rank_of,
    symbolic_power,
    tor,
    tor_vanishes_from_one,
)
from .report import CheckReport, combine

INF = math.inf

__all__ = [
    "CheckReport", "CorpusEntry", "verify_hw_theorem", "verify_main_theorem",
    "verify_appendix", "verify_syzygy_of_symbolic_power", "localized_transfer_check",
    "tor_rigidity_witness", "rigidity_transfer_agreement", "depth_bound_sweep", "run_corpus",
]


@dataclass
class CorpusEntry:
    id: str
    setup: str
    anchor: str = ""
    claims: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def _na(claim_id, anchor, values, reason, scope=()):
    values = dict(values)
    values["not_applicable_because"] = reason
    return CheckReport(claim_id, anchor, "", values, "not-applicable", list(scope))


def _hypersurface_and_nonzero(M, N):
    R = M.ring
    if not R.is_hypersurface:
        return "ring is not a hypersurface"
    if is_zero_module(M) or is_zero_module(N):
        return "modules must be nonzero"
    return None


def verify_hw_theorem(M: FGModule, N: FGModule, minimal_primes: Sequence[PrimeSpec],
                      claim_id: str = "hw-theorem") -> CheckReport:
    """Reflexive tensor product and N with rank force the five listed conclusions."""
    anchor = "M is reflexive, N is torsion-free, Supp(N) = Spec(R)"
    values: dict = {}
    why = _hypersurface_and_nonzero(M, N)
    if why:
        return _na(claim_id, anchor, values, why)
    values["M(x)N reflexive"] = t_refl = is_reflexive(tensor_modules(M, N))
    values["rank N"] = rk = rank_of(N, minimal_primes)
    if not t_refl:
        return _na(claim_id, anchor, values, "M (x) N is not reflexive")
    if rk is None:
        return _na(claim_id, anchor, values, "N has no rank")
    tv = tor_vanishes_from_one(M, N)
    values["Tor_i(M,N)=0 for i>=1"] = bool(tv)
    values["M reflexive"] = m_refl = is_reflexive(M)
    values["N torsion-free"] = n_tf = is_torsion_free(N)
    values["Supp N = Spec R"] = full = has_full_support(N)
    pm, pn = projective_dimension(M), projective_dimension(N)
    values["pd M"], values["pd N"] = pm, pn
    pd_ok = pm != INF or pn != INF
    verdict = combine([bool(tv), m_refl, n_tf, full, pd_ok])
    scope = [f"Tor vanishing decided through degree {tv.checked_to} ({tv.reason})",
             "minimal primes are declared inputs"]
    return CheckReport(claim_id, anchor, f"M={M!r}; N={N!r}", values, verdict, scope)


def localized_transfer_check(M: FGModule, primes: Sequence[PrimeSpec], claim_id: str = "localized-transfer",
                             positive_height_only: bool = False) -> CheckReport:
    """depth(p R_q, M_q) <= depth(p R_q, R_q) for declared p inside q, q in Supp M."""
    anchor = "each M_p-regular sequence is R_p-regular for all p in Supp(M)"
    R = M.ring
    Rf = free_module(R, 1)
    values: dict = {}
    failing = []
    for q in primes:
        if not in_support(M, q):
            values[f"{q!r} in Supp M"] = False
            continue
        for p in primes:
            if not q.contains_ideal(p):
                continue
            if positive_height_only and p.height == 0:
                continue
            dm = local_depth(p, M, q)
            dr = local_depth(p, Rf, q)
            values[f"depth_q({p!r}, M) at {q!r}"] = dm
            values[f"depth_q({p!r}, R) at {q!r}"] = dr
            if dm > dr:
                failing.append(f"p={p!r}, q={q!r}")
    values["failing_pairs"] = failing
    verdict = "refuted" if failing else "verified"
    return CheckReport(claim_id, anchor, f"M={M!r}", values, verdict, [ALL_PRIMES_SCOPE])


def verify_main_theorem(M: FGModule, N: FGModule, minimal_primes: Sequence[PrimeSpec],
                        primes_for_ii: Sequence[PrimeSpec], claim_id: str = "main-theorem") -> CheckReport:
    """Rank of N plus the local depth bound for M force both factors to be reflexive."""
    anchor = "Then M and N are both reflexive"
    values: dict = {}
    why = _hypersurface_and_nonzero(M, N)
    if why:
        return _na(claim_id, anchor, values, why)
    values["M(x)N reflexive"] = t_refl = is_reflexive(tensor_modules(M, N))
    values["rank N"] = rk = rank_of(N, minimal_primes)
    # hypothesis (ii) in its depth form: depth(p R_q, M_q) <= height p for p in U(q)
    failing = []
    for q in primes_for_ii:
        if not in_support(M, q):
            continue
        for p in primes_for_ii:
            if p.height == 0 or not q.contains_ideal(p):
                continue
            d = local_depth(p, M, q)
            values[f"depth_q({p!r}, M) at {q!r}"] = d
            values[f"height {p!r}"] = p.height
            if d > p.height:
                failing.append(f"p={p!r}, q={q!r}")
    values["hypothesis (ii) failing pairs"] = failing
    values["M reflexive"] = is_reflexive(M)
    values["N reflexive"] = is_reflexive(N)
    scope = [ALL_PRIMES_SCOPE]
    if not t_refl:
        return _na(claim_id, anchor, values, "M (x) N is not reflexive", scope)
    if rk is None:
        return _na(claim_id, anchor, values, "N has no rank", scope)
    if failing:
        return _na(claim_id, anchor, values, "hypothesis (ii) fails at " + "; ".join(failing), scope)
    verdict = combine([values["M reflexive"], values["N reflexive"]])
    return CheckReport(claim_id, anchor, f"M={M!r}; N={N!r}", values, verdict, scope)


def _not_a_domain(R, minimal_primes: Sequence[PrimeSpec]) -> bool:
    """Two distinct declared minimal primes whose product is nilpotent."""
    if len(minimal_primes) < 2:
        return False
    p, q = minimal_primes[0], minimal_primes[1]
    if p.ideal == q.ideal:
        return False
    prods = [a * b for a in p.gens for b in q.gens]
    return all(radical_membership(f, R.ideal) for f in prods)


def verify_appendix(p: PrimeSpec, q: PrimeSpec, r: int, s: int, fp, fq,
                    minimal_primes: Sequence[PrimeSpec], claim_id: str = "prime-tensor") -> CheckReport:
    """A tensor of symbolic powers involving a positive-height prime is not reflexive."""
    anchor = "If p or q has positive height, then p^(r) (x) q^(s) is not a reflexive R-module"
    R = p.ring
    values: dict = {"height p": p.height, "height q": q.height}
    if not R.is_hypersurface:
        return _na(claim_id, anchor, values, "ring is not a hypersurface")
    if not _not_a_domain(R, minimal_primes):
        return _na(claim_id, anchor, values, "ring not certified to be a non-domain")
    P = symbolic_power(p, r, fp)
    Q = symbolic_power(q, s, fq)
    values["p^(r) certified"] = P.certified
    values["q^(s) certified"] = Q.certified
    gp = [g for g in (R.reduce(g) for g in P.ideal.gens) if g]
    gq = [g for g in (R.reduce(g) for g in Q.ideal.gens) if g]
    if not gp or not gq:
        return _na(claim_id, anchor, values, "a symbolic power is zero")
    T = tensor_modules(ideal_module(R, gp), ideal_module(R, gq))
    values["tensor reflexive"] = refl = is_reflexive(T)
    scope = []
    if not (P.certified and Q.certified):
        scope.append("symbolic power is witness-dependent")
    if p.height == 0 and q.height == 0:
        return _na(claim_id, anchor, values, "both primes are minimal; no conclusion asserted", scope)
    verdict = "refuted" if refl else "verified"
    if verdict == "verified" and scope:
        verdict = "unknown"
    return CheckReport(claim_id, anchor, f"p={p!r}, q={q!r}, r={r}, s={s}", values, verdict, scope)


def verify_syzygy_of_symbolic_power(M: FGModule, p: PrimeSpec, n: int, r: int, f,
                                    minimal_primes: Sequence[PrimeSpec],
                                    claim_id: str = "syzygy-symbolic-power") -> CheckReport:
    """M (x) syzygy of R/p^(n) reflexive forces r >= 1, reflexivity, pd M < inf = pd N, rank >= 2."""
    anchor = "r >= 1, both M and N are reflexive, and pd(M) < inf = pd(N)"
    R = M.ring
    values: dict = {"r": r, "height p": p.height}
    if not R.is_hypersurface:
        return _na(claim_id, anchor, values, "ring is not a hypersurface")
    if not _not_a_domain(R, minimal_primes):
        return _na(claim_id, anchor, values, "ring not certified to be a non-domain")
    if p.height < 1:
        return _na(claim_id, anchor, values, "prime has height zero")
    if is_zero_module(M):
        return _na(claim_id, anchor, values, "M is zero")
    P = symbolic_power(p, n, f)
    gens = [g for g in (R.reduce(g) for g in P.ideal.gens) if g]
    if not gens:
        return _na(claim_id, anchor, values, "symbolic power is zero")
    N = syzygy_module(quotient_module(R, gens), r)
    values["M(x)N reflexive"] = t_refl = (not is_zero_module(N)) and is_reflexive(tensor_modules(M, N))
    if not t_refl:
        return _na(claim_id, anchor, values, "M (x) N is not a nonzero reflexive module")
    values["M reflexive"] = mr = is_reflexive(M)
    values["N reflexive"] = nr = is_reflexive(N)
    values["pd M"] = pm = projective_dimension(M)
    values["pd N"] = pn = projective_dimension(N)
    subs = [r >= 1, mr, nr, pm != INF, pn == INF]
    free = pm == 0
    values["M free"] = free
    if not free:
        rk = rank_of(M, minimal_primes)
        values["rank M"] = rk
        subs.append(rk is not None and rk >= 2)
    scope = [] if P.certified else ["symbolic power is witness-dependent"]
    verdict = combine(subs)
    if verdict == "verified" and scope:
        verdict = "unknown"
    return CheckReport(claim_id, anchor, f"M={M!r}, p={p!r}, n={n}, r={r}", values, verdict, scope)


def tor_rigidity_witness(M: FGModule, N: FGModule, at: PrimeSpec | None = None,
                         claim_id: str = "not-tor-rigid") -> CheckReport:
    """Tor_1(M,N) = 0 != Tor_2(M,N), optionally after localizing at a prime."""
    anchor = "Tor_1(M,N) = 0 and Tor_2(M,N) != 0"
    t1, t2 = tor(1, M, N), tor(2, M, N)
    if at is None:
        z1, z2 = is_zero_module(t1), is_zero_module(t2)
    else:
        from .algebra import annihilator

        z1 = is_zero_module(t1) or not at.ideal.contains_ideal(annihilator(t1))
        z2 = is_zero_module(t2) or not at.ideal.contains_ideal(annihilator(t2))
    values = {"Tor_1 = 0": z1, "Tor_2 = 0": z2}
    if at is not None:
        values["localized at"] = repr(at)
    verdict = "verified" if z1 and not z2 else "refuted"
    return CheckReport(claim_id, anchor, f"M={M!r}; N={N!r}", values, verdict)


def rigidity_transfer_agreement(M: FGModule, sequences: Sequence[Sequence], primes: Sequence[PrimeSpec],
                                claim_id: str = "rigidity-transfer") -> CheckReport:
    """The transfer condition and Tor_1 = 0 => Tor_2 = 0 against R/(x) agree on the instance."""
    from .invariants import regular_seq_transfer_check

    anchor = "hold if and only if Tor_1(M, R/xR) = 0 implies Tor_2(M, R/xR) = 0"
    R = M.ring
    transfer = regular_seq_transfer_check(M, primes)
    implication = True
    witnesses = []
    for seq in sequences:
        Q = quotient_module(R, seq)
        t1 = is_zero_module(tor(1, M, Q))
        if t1 and not is_zero_module(tor(2, M, Q)):
            implication = False
            witnesses.append("(" + ", ".join(str(R.reduce(x)) for x in seq) + ")")
    values = {"transfer condition": transfer.verdict == "verified", "Tor implication": implication,
              "implication witnesses": witnesses}
    agree = values["transfer condition"] == implication
    scope = [ALL_PRIMES_SCOPE, "Tor implication checked on the listed sequences only"]
    return CheckReport(claim_id, anchor, f"M={M!r}", values, "verified" if agree else "refuted", scope)


def depth_bound_sweep(modules: Sequence[FGModule], ideals: Sequence, minimal_primes: Sequence[PrimeSpec],
                      claim_id: str = "depth-bound") -> CheckReport:
    """depth(I, M) <= depth(I, R) + 1 for torsion-free M with rank over a hypersurface."""
    anchor = "depth(I, M) <= depth_R(I, R) + 1"
    values: dict = {}
    tested = 0
    bad = []
    for k, M in enumerate(modules):
        R = M.ring
        if not R.is_hypersurface:
            raise Unsupported("the depth bound is stated over hypersurfaces")
        if is_zero_module(M) or not is_torsion_free(M) or rank_of(M, minimal_primes) is None:
            values[f"module {k}"] = "skipped (zero, torsion, or no rank)"
            continue
        Rf = free_module(R, 1)
        for I in ideals:
            dm, dr = depth_koszul(I, M), depth_koszul(I, Rf)
            tested += 1
            values[f"module {k}, I={_show(R, I)}"] = [dm, dr]
            if dm > dr + 1:
                bad.append(f"module {k}, I={_show(R, I)}")
    values["instances"] = tested
    values["violations"] = bad
    if tested == 0:
        return _na(claim_id, anchor, values, "no module satisfied the hypotheses")
    return CheckReport(claim_id, anchor, "", values, "refuted" if bad else "verified",
                       ["checked on the listed ideals only"])


def _show(R, I) -> str:
    if isinstance(I, PrimeSpec):
        return repr(I)
    gens = I.gens if isinstance(I, Ideal) else I
    return "(" + ", ".join(str(R.reduce(g)) for g in gens) + ")"


def run_corpus(selection=None) -> list[CheckReport]:
    from .corpus import run_corpus as _run

    return _run(selection)
