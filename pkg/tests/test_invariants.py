from __future__ import annotations

import math

import pytest

from calab import (
    PrimeSpec,
    Unsupported,
    auslander_transpose,
    ci_dimension,
    depth_formula_check,
    depth_koszul,
    depth_rees,
    ext,
    free_module,
    height,
    ideal_module,
    is_reflexive,
    is_regular_sequence,
    is_torsion_free,
    local_depth,
    quotient_module,
    rank_of,
    regular_seq_transfer_check,
    serre_condition,
    symbolic_power,
    tensor_modules,
    tor,
    tor_vanishes_from_one,
    try_isomorphic,
)
from calab.algebra import length_over_field, present_module
from calab.invariants import has_full_support, in_support
from calab.matrix import Matrix

from conftest import ring

INF = math.inf


def transpose_pair(R4):
    M = quotient_module(R4, ["x"])
    N = auslander_transpose(quotient_module(R4, ["y", "z", "w"]))
    return M, N


def test_depth_koszul_examples(R4):
    A = ring("x,y")
    assert depth_koszul(["x", "y"], free_module(A, 1)) == 2
    assert depth_koszul(["y", "z", "w"], quotient_module(R4, ["x"])) == 3
    zero = present_module(R4, Matrix.identity(R4.S, 1))
    assert depth_koszul(["x"], zero) == INF


def test_depth_rees_examples(R4):
    M = quotient_module(R4, ["x"])
    assert depth_rees(["y", "z", "w"], M) == 3
    assert depth_rees(["x"], M) == 0
    assert depth_rees(R4.maximal_ideal(), quotient_module(R4, R4.maximal_ideal())) == 0


def test_local_depth_examples(R4, R3):
    M = quotient_module(R4, ["x"])
    p = PrimeSpec(R4, ["y", "z", "w"])
    m = PrimeSpec(R4, R4.maximal_ideal())
    assert local_depth(p, M, m) == 3
    assert local_depth(m, M, m) == depth_koszul(m, M)
    E = quotient_module(R3, ["x^2"])
    assert local_depth(["x"], E, PrimeSpec(R3, ["x", "y"])) == 0
    with pytest.raises(ValueError):
        local_depth(["z"], E, PrimeSpec(R3, ["x", "y"]))


def test_height_examples(R4, R2):
    assert height(PrimeSpec(R4, ["y", "z", "w"])) == 2
    assert height(PrimeSpec(R4, R4.maximal_ideal())) == R4.dim
    assert height(PrimeSpec(R2, ["x"])) == 0


def test_tor_examples(R3, Rcone, R4):
    M, N = quotient_module(R3, ["x^2"]), quotient_module(R3, ["y"])
    assert try_isomorphic(tor(0, M, N), tensor_modules(M, N)).verdict == "yes"
    assert tor(1, M, N).ngens == 0 or length_over_field(tor(1, M, N)) == 0
    assert length_over_field(tor(2, M, N)) != 0
    I = ideal_module(Rcone, ["x", "y"])
    assert length_over_field(tor(1, I, I)) == 0
    k = quotient_module(Rcone, Rcone.maximal_ideal())
    assert try_isomorphic(tor(2, I, I), k).verdict == "yes"


def test_ext_basics(R2):
    M = quotient_module(R2, ["x"])
    F = free_module(R2, 1)
    assert try_isomorphic(ext(0, M, F), quotient_module(R2, ["x"])).verdict == "yes"
    assert length_over_field(ext(1, M, F)) == 0
    k = quotient_module(R2, ["x", "y"])
    assert length_over_field(ext(1, k, F)) == 1


def test_tor_vanishing(R4, R3):
    M, N = transpose_pair(R4)
    assert tor_vanishes_from_one(M, free_module(R4, 2)).value is True
    tv = tor_vanishes_from_one(M, N)
    assert tv.value is True
    bad = tor_vanishes_from_one(quotient_module(R3, ["x^2"]), quotient_module(R3, ["y"]))
    assert bad.value is False and bad.witness == 2
    C = ring("x,y", "x^2", "x*y")
    with pytest.raises(Unsupported):
        tor_vanishes_from_one(free_module(C, 1), free_module(C, 1))


def test_serre_examples(R4, R2):
    M, N = transpose_pair(R4)
    assert serre_condition(free_module(R4, 2), 5)
    assert serre_condition(tensor_modules(M, N), 2)
    assert not serre_condition(N, 2)
    assert not serre_condition(quotient_module(R2, ["x", "y"]), 1)
    C = ring("x,y", "x^2", "x*y")
    with pytest.raises(Unsupported):
        serre_condition(free_module(C, 1), 1)


def test_reflexive_examples(R4, R2):
    M, N = transpose_pair(R4)
    assert is_reflexive(free_module(R4, 2))
    P, Q = ideal_module(R2, ["x"]), ideal_module(R2, ["y"])
    assert is_reflexive(tensor_modules(P, P))
    assert not is_reflexive(tensor_modules(P, Q))
    assert not is_reflexive(N)
    assert is_torsion_free(N)
    assert not is_torsion_free(quotient_module(R4, R4.maximal_ideal()))


def test_rank_examples(R2, Rcone):
    mins = [PrimeSpec(R2, ["x"]), PrimeSpec(R2, ["y"])]
    assert rank_of(free_module(R2, 2), mins) == 2
    assert rank_of(quotient_module(R2, ["x"]), mins) is None
    assert rank_of(ideal_module(Rcone, ["x", "y"]), [PrimeSpec(Rcone, [])]) == 1
    with pytest.raises(ValueError):
        rank_of(free_module(R2, 1), [])


def test_ci_dimension_examples(R2):
    assert ci_dimension(free_module(R2, 1)) == 0
    assert ci_dimension(quotient_module(R2, ["x", "y"])) == 1
    assert ci_dimension(quotient_module(R2, ["x"])) == 0


def test_symbolic_power_examples():
    R = ring("x,y,z", "x*y - z^2")
    p = PrimeSpec(R, ["x", "z"])
    sp = symbolic_power(p, 2, R.var("y"))
    assert sp.certified and sp.ideal == R.ideal_of(["x"])
    assert not (R.ideal_of(["x^2", "x*z", "z^2"]).contains(R.var("x")))
    assert symbolic_power(p, 1, R.var("y")).ideal == p.ideal
    m = PrimeSpec(R, R.maximal_ideal())
    assert symbolic_power(m, 2, 1).ideal == R.ideal_of(["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"])
    with pytest.raises(ValueError):
        symbolic_power(p, 2, R.var("x"))


def test_regular_sequence_examples(R4):
    M = quotient_module(R4, ["x"])
    ys = [R4.var(v) for v in "yzw"]
    assert is_regular_sequence(ys, M)
    assert not is_regular_sequence(ys, free_module(R4, 1))
    assert is_regular_sequence([], M)
    assert not is_regular_sequence([R4.var("x")], M)


def test_transfer_check(R4, Rcone):
    primes = [PrimeSpec(R4, g) for g in (["x"], ["y"], ["y", "z", "w"], R4.maximal_ideal())]
    assert regular_seq_transfer_check(free_module(R4, 1), primes).verdict == "verified"
    rep = regular_seq_transfer_check(quotient_module(R4, ["x"]), primes)
    assert rep.verdict == "refuted"
    assert any("declared primes" in s for s in rep.scope)
    cp = [PrimeSpec(Rcone, g) for g in (["x", "y"], ["x", "z"], Rcone.maximal_ideal())]
    assert regular_seq_transfer_check(ideal_module(Rcone, ["x", "y"]), cp).verdict == "verified"


def test_depth_formula(R4, R2):
    M, N = transpose_pair(R4)
    assert depth_formula_check(free_module(R4, 1), N).verdict == "verified"
    rep = depth_formula_check(M, N)
    assert rep.verdict == "verified"
    A, B = quotient_module(R2, ["x + y"]), quotient_module(R2, ["x - y"])
    assert depth_formula_check(A, B).verdict == "not-applicable"


def test_support(R4):
    M = quotient_module(R4, ["x"])
    assert in_support(M, PrimeSpec(R4, ["x"]))
    assert not in_support(M, PrimeSpec(R4, ["y", "z", "w"]))
    assert has_full_support(auslander_transpose(quotient_module(R4, ["y", "z", "w"])))
    assert not has_full_support(M)


def test_prime_spec_rejects_unit(R4):
    with pytest.raises(ValueError):
        PrimeSpec(R4, [1])
