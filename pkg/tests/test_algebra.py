from __future__ import annotations

import math

import pytest

from calab import (
    Ideal,
    Matrix,
    ModuleMap,
    PolyRing,
    QuotientRing,
    annihilator,
    auslander_transpose,
    betti_numbers,
    direct_sum,
    dual,
    evaluation_map,
    free_module,
    free_resolution,
    hom_module,
    ideal_module,
    is_zero_module,
    kernel_cokernel,
    length_over_field,
    make_quotient_ring,
    minimalize,
    module_dimension,
    present_module,
    projective_dimension,
    quotient_module,
    tensor_modules,
    try_isomorphic,
)
from calab.algebra import graded_betti, identity_map, projective_dimension_info, zero_map

from conftest import ring


def residue(R):
    return quotient_module(R, R.maximal_ideal())


def test_quotient_ring_flags(R4, Rcone):
    assert R4.is_hypersurface and R4.dim == 3
    assert Rcone.is_hypersurface and Rcone.dim == 3
    A = ring("x,y", "x", "y")
    assert A.dim == 0 and not A.is_hypersurface
    S = PolyRing(["x", "y"])
    with pytest.raises(ValueError):
        QuotientRing(S, [S.parse("x^2 + y")])
    with pytest.raises(ValueError):
        make_quotient_ring(S, Ideal(S, [1]))


def test_present_module_examples(R4, Rcone):
    M = quotient_module(R4, ["x"])
    assert M.ngens == 1 and M.relations.column(0) == [R4.var("x")]
    F = present_module(R4, Matrix(R4.S, [[]], 1, 0))
    assert projective_dimension(F) == 0
    I = ideal_module(Rcone, ["x", "y"])
    assert I.ngens == 2
    x, y, z, u = (Rcone.var(v) for v in "xyzu")
    for c in I.relations.columns():
        assert Rcone.reduce(x * c[0] + y * c[1]).is_zero()
    assert [u, -z] in I.relations.columns() or [-u, z] in I.relations.columns()
    with pytest.raises(ValueError):
        present_module(R4, Matrix(R4.S, [[R4.var("x")]]), [0, 0])


def test_minimalize_examples(R4):
    S = R4.S
    assert is_zero_module(present_module(R4, Matrix(S, [[1]])))
    M = present_module(R4, Matrix(S, [[S.var("x"), S.zero()], [S.zero(), S.one()]]))
    Mm = minimalize(M)
    assert Mm.ngens == 1 and Mm.relations.column(0) == [S.var("x")]
    T = tensor_modules(quotient_module(R4, ["x"]), auslander_transpose(quotient_module(R4, ["y", "z", "w"])))
    Tm = minimalize(T)
    for col in Tm.relations.columns():
        assert all(not e.is_constant() or e.is_zero() for e in col)


def test_hom_and_dual(R2):
    M = tensor_modules(quotient_module(R2, ["x"]), free_module(R2, 1))
    assert graded_betti(hom_module(free_module(R2, 1), M), 3) == graded_betti(M, 3)
    Rx = ring("x")
    assert is_zero_module(dual(residue(Rx)))
    D = dual(quotient_module(R2, ["x"]))
    assert try_isomorphic(D, quotient_module(R2, ["x"])).verdict == "yes"
    assert try_isomorphic(D, ideal_module(R2, ["y"])).verdict == "yes"


def test_tensor_examples(R2, R4):
    A = tensor_modules(quotient_module(R4, ["x"]), quotient_module(R4, ["y", "z"]))
    assert annihilator(A) == R4.ideal_of(["x", "y", "z"])
    M = quotient_module(R4, ["x", "z^2"])
    assert try_isomorphic(tensor_modules(M, free_module(R4, 1)), M).verdict == "yes"
    PQ = tensor_modules(ideal_module(R2, ["x"]), ideal_module(R2, ["y"]))
    assert length_over_field(PQ) == 1


def test_direct_sum(R4):
    M = quotient_module(R4, ["x"])
    assert try_isomorphic(direct_sum(M, present_module(R4, Matrix(R4.S, [[1]]))), M).verdict == "yes"
    F = direct_sum(free_module(R4, 1), free_module(R4, 1))
    assert projective_dimension(F) == 0 and minimalize(F).ngens == 2


def test_transpose_examples(R2, R4):
    assert is_zero_module(auslander_transpose(free_module(R2, 2)))
    T = auslander_transpose(quotient_module(R2, ["x"]))
    assert try_isomorphic(T, quotient_module(R2, ["x"])).verdict == "yes"
    N = auslander_transpose(quotient_module(R4, ["y", "z", "w"]))
    assert N.ngens == 3 and list(N.degrees) == [-1, -1, -1]
    assert projective_dimension(N) == 1


def test_evaluation_map(R4):
    ev = evaluation_map(free_module(R4, 2))
    k, c = kernel_cokernel(ev.map)
    assert is_zero_module(k) and is_zero_module(c)
    Rx = ring("x")
    kk = residue(Rx)
    ev = evaluation_map(kk)
    assert is_zero_module(ev.double_dual)
    ker, _ = kernel_cokernel(ev.map)
    assert length_over_field(ker) == 1
    N = auslander_transpose(quotient_module(R4, ["y", "z", "w"]))
    ker, coker = kernel_cokernel(evaluation_map(N).map)
    assert not (is_zero_module(ker) and is_zero_module(coker))


def test_free_resolution_examples(R2):
    A = ring("x,y")
    X = free_resolution(residue(A), 2)
    assert X.ranks() == [1, 2, 1]
    M = quotient_module(R2, ["x"])
    X = free_resolution(M, 5)
    assert X.ranks() == [1] * 6
    ds = [X.differential(i).column(0)[0] for i in range(1, 6)]
    x, y = R2.var("x"), R2.var("y")
    assert [d == x or d == -x for d in ds] == [True, False, True, False, True]
    assert all(d == y or d == -y for d in ds[1::2])
    Z = free_resolution(present_module(R2, Matrix(R2.S, [[1]])), 3)
    assert Z.ranks() == [0, 0, 0, 0]


def test_resolution_exact(R4):
    M = auslander_transpose(quotient_module(R4, ["y", "z", "w"]))
    X = free_resolution(M, 4)
    for i in range(1, 4):
        assert is_zero_module(X.homology(i))
    assert try_isomorphic(X.homology(0), M).verdict == "yes"


def test_projective_dimension(R4):
    assert projective_dimension(free_module(R4, 3)) == 0
    A = ring("x,y")
    assert projective_dimension(ideal_module(A, ["x", "y"])) == 1
    info = projective_dimension_info(quotient_module(R4, ["x"]))
    assert info.value == math.inf and info.periodic_ranks and info.checked_to == 5


def test_annihilator(R2, R4):
    assert annihilator(quotient_module(R4, ["x", "z"])) == R4.ideal_of(["x", "z"])
    assert annihilator(free_module(R4, 2)) == R4.ideal_of([])
    PQ = tensor_modules(ideal_module(R2, ["x"]), ideal_module(R2, ["y"]))
    assert annihilator(PQ) == R2.ideal_of(["x", "y"])


def test_kernel_cokernel(R2):
    M = quotient_module(R2, ["x"])
    k, c = kernel_cokernel(identity_map(M))
    assert is_zero_module(k) and is_zero_module(c)
    k, c = kernel_cokernel(zero_map(M, M))
    assert try_isomorphic(k, M).verdict == "yes" and try_isomorphic(c, M).verdict == "yes"
    y = R2.var("y")
    k, c = kernel_cokernel(ModuleMap(M, M, Matrix(R2.S, [[y]])))
    assert is_zero_module(k)
    assert try_isomorphic(c, quotient_module(R2, ["x", "y"])).verdict == "yes"


def test_ill_defined_map_rejected(R2):
    M, F = quotient_module(R2, ["x"]), free_module(R2, 1)
    with pytest.raises(ValueError):
        ModuleMap(M, F, Matrix(R2.S, [[1]]))


def test_is_zero_module(R3):
    S = R3.S
    assert is_zero_module(present_module(R3, Matrix.identity(S, 2)))
    assert not is_zero_module(residue(R3))
    from calab import tor

    assert is_zero_module(tor(1, quotient_module(R3, ["x^2"]), quotient_module(R3, ["y"])))


def test_try_isomorphic(R4):
    M = quotient_module(R4, ["x"])
    assert try_isomorphic(M, M).verdict == "yes"
    r = try_isomorphic(residue(R4), free_module(R4, 1))
    assert r.verdict == "no"
    R = ring("x,y,z,u", "x*y")
    from calab import tor

    T2 = tor(2, quotient_module(R, ["x"]), quotient_module(R, ["y"]))
    res = try_isomorphic(T2, quotient_module(R, ["x", "y"]))
    assert res.verdict == "yes" and res.witness is not None


def test_dimension_and_length(R4):
    k = residue(R4)
    assert module_dimension(k) == 0 and length_over_field(k) == 1
    assert module_dimension(quotient_module(R4, ["x"])) == 3
    assert length_over_field(quotient_module(R4, ["x"])) == math.inf


def test_minimalize_preserves_invariants(R4):
    S = R4.S
    M = present_module(R4, Matrix(S, [[S.var("x"), S.var("z"), S.zero()], [S.zero(), S.one(), S.var("w")]]), [0, 1])
    Mm = minimalize(M)
    assert annihilator(M) == annihilator(Mm)
    assert graded_betti(M, 3) == graded_betti(Mm, 3)
    assert betti_numbers(M, 3) == betti_numbers(Mm, 3)
    assert Mm.ngens == 1
    assert try_isomorphic(Mm, quotient_module(R4, ["x", "z*w"])).verdict == "yes"
