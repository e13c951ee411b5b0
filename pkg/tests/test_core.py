from __future__ import annotations

from fractions import Fraction

import pytest

from calab import GF, QQ, PolyRing, compare_monomials, homogeneous_degree, poly_arith
from calab.core import Fp


def test_compare_grevlex_and_lex():
    assert compare_monomials((2, 0), (1, 1), "grevlex") == 1
    assert compare_monomials((1, 1), (1, 1), "grevlex") == 0
    assert compare_monomials((0, 3), (1, 0), "lex") == -1
    assert compare_monomials((0, 3), (1, 0), "grevlex") == 1


def test_compare_arity_mismatch():
    with pytest.raises(ValueError):
        compare_monomials((1, 0), (1, 0, 0), "grevlex")


def test_poly_arith_examples():
    S = PolyRing(["x", "y"])
    x, y = S.gens()
    assert poly_arith("add", x + y, x - y) == 2 * x
    assert poly_arith("mul", x + y, x - y) == x**2 - y**2
    z = poly_arith("scalar_mul", x + y, 0)
    assert z.is_zero() and z.terms == {}


def test_poly_arith_ring_mismatch():
    S, T = PolyRing(["x", "y"]), PolyRing(["a", "b"])
    with pytest.raises(ValueError):
        poly_arith("add", S.var("x"), T.var("a"))


def test_homogeneous_degree():
    S = PolyRing(["x", "y", "z", "u"])
    assert homogeneous_degree(S.parse("x*y")) == 2
    assert homogeneous_degree(S.parse("x*u - y*z")) == 2
    assert homogeneous_degree(S.parse("x^2 + y")) is None


def test_rationals_stay_reduced():
    S = PolyRing(["x"])
    f = S.parse("2/4*x + 6/3")
    assert f.terms[(1,)] == Fraction(1, 2) and f.terms[(0,)] == 2
    assert (f / 3).terms[(1,)] == Fraction(1, 6)


def test_prime_field():
    F = GF(7)
    assert F(10).value == 3
    assert (F(3) / F(5)) * F(5) == F(3)
    assert F(-1).value == 6
    with pytest.raises(ValueError):
        GF(8)
    with pytest.raises(ZeroDivisionError):
        Fp(1, 7) / Fp(0, 7)


def test_canonical_form_unique():
    S = PolyRing(["x", "y"])
    x, y = S.gens()
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert hash((x + y) ** 2) == hash(x * x + y * y + 2 * x * y)
    assert (x - x).terms == {}


def test_parse_and_print_roundtrip():
    S = PolyRing(["x", "y", "z"], GF(5))
    f = S.parse("3*x^2*y - z + 4")
    assert S.parse(str(f)) == f
    assert QQ.name == "Q" and GF(5).name == "GF(5)"
