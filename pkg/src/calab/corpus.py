"""The worked-example corpus: DSL sessions plus the readings they rely on."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from .harness import CorpusEntry
from .report import CheckReport

# id -> (session file, anchor, notes recorded in every report of the entry)
_CATALOG: dict[str, tuple[str, str, tuple[str, ...]]] = {
    "corA.4": (
        "corA_4.cl",
        "if p or q has positive height, then p^(r) (x) q^(s) is not reflexive",
        ("non-domain certified by a nilpotent product of the declared minimal primes",),
    ),
    "ex1.2": (
        "ex1_2.cl",
        "M (x) N is reflexive, N = Tr(R/p) is not; depth_R(p, M) = 3 > height p = 2",
        ("N is the Auslander transpose of a minimal presentation of R/p",),
    ),
    "ex3.6": (
        "ex3_6.cl",
        "depth_R(p, M) = 3 > height_R(p) = 2",
        (),
    ),
    "ex4.1": (
        "ex4_1.cl",
        "setting N = R/(y): Tor_1(M, N) = 0 != Tor_2(M, N)",
        ("the case analysis over all primes is reduced to (x), (x, y), (y), (x, z), m "
         "and to the listed ideals inside (x)",),
    ),
    "ex4.2": (
        "ex4_2.cl",
        "Tor_1(R/(x), R/(y)) = 0 and Tor_2 = R/p for p = (x, y); M_p is not Tor-rigid",
        ("p is read as (x, y)",
         "Tor-rigidity of M over R is a cited result; only spot checks are computed"),
    ),
    "ex4.3": (
        "ex4_3.cl",
        "Tor_1(M, M) = 0 != k = Tor_2(M, M)",
        (),
    ),
    "exA.3": (
        "exA_3.cl",
        "pd(M) = inf, but M (x) N = N is reflexive",
        ("N is read as the first syzygy of R/(y); with R/(x) the tensor product has "
         "finite length and both readings are reported",),
    ),
    "exA.5": (
        "exA_5.cl",
        "p (x) p = p is reflexive; p (x) q = k is not",
        (),
    ),
    "negative": (
        "negatives.cl",
        "checkers never verify an instance that violates a hypothesis",
        (),
    ),
    "propA.2": (
        "propA_2.cl",
        "r >= 1, M and N reflexive, pd(M) < inf = pd(N)",
        ("rank >= 2 for non-free M is not exercised: every instance has M free",),
    ),
    "rmk3.8": (
        "rmk3_8.cl",
        "transfer condition iff (Tor_1(M, R/xR) = 0 implies Tor_2(M, R/xR) = 0)",
        ("the literal equivalence fails for M = R/(x^2) over k[x,y,z]/(xy): "
         "recorded as an expected refutation",),
    ),
    "rmk4.4": (
        "rmk4_4.cl",
        "depth(I, M) <= depth_R(I, R) + 1",
        (),
    ),
    "rmk4.5": (
        "rmk4_5.cl",
        "Tor-rigidity and regular-sequence transfer are independent, globally and locally",
        ("Tor-rigidity of the direct sum over R is a cited result, not computed",),
    ),
    "sec2": (
        "sec2.cl",
        "support, depth, Serre conditions, CI-dimension, depth formula",
        (),
    ),
    "symbolic": (
        "symbolic.cl",
        "p^(2) = (x) strictly contains p^2 for p = (x, z) on xy = z^2",
        (),
    ),
}

CORPUS_IDS: tuple[str, ...] = tuple(sorted(_CATALOG))


def session_text(name: str) -> str:
    return resources.files("calab").joinpath("sessions", name).read_text(encoding="utf-8")


def corpus_entry(entry_id: str) -> CorpusEntry:
    from .dsl import Check, Assert, parse_session

    if entry_id not in _CATALOG:
        raise KeyError(f"unknown corpus id {entry_id!r}; known: {', '.join(CORPUS_IDS)}")
    fname, anchor, notes = _CATALOG[entry_id]
    text = session_text(fname)
    labels = [s.label or f"line{s.loc[0]}" for s in parse_session(text).statements
              if isinstance(s, (Check, Assert))]
    return CorpusEntry(entry_id, text, anchor, labels, list(notes))


def run_entry(entry_id: str) -> list[CheckReport]:
    from .dsl import evaluate, parse_session

    entry = corpus_entry(entry_id)
    out = []
    for r in evaluate(parse_session(entry.setup), entry_id):
        r.claim_id = f"{entry_id}/{r.claim_id}"
        if not r.anchor:
            r.anchor = entry.anchor
        r.scope = list(r.scope) + [n for n in entry.notes if n not in r.scope]
        out.append(r)
    return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CALAB_THREADS", "1")))
    except ValueError:
        return 1


def run_corpus(selection=None) -> list[CheckReport]:
    """Run the selected entries (all by default); results are merged in id order."""
    if selection is None:
        ids = list(CORPUS_IDS)
    else:
        if isinstance(selection, str):
            selection = [s for s in selection.split(",") if s]
        unknown = [s for s in selection if s not in _CATALOG]
        if unknown:
            raise KeyError(f"unknown corpus id(s): {', '.join(unknown)}")
        ids = sorted(set(selection))
    workers = min(_threads(), len(ids))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(run_entry, ids))
    else:
        chunks = [run_entry(i) for i in ids]
    return [r for chunk in chunks for r in chunk]


def corpus_text(selection=None) -> str:
    ids = CORPUS_IDS if selection is None else sorted(set(selection))
    return "".join(f"## {i}\n{corpus_entry(i).setup}" for i in ids)
