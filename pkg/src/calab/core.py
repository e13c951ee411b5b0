"""Exact scalars and sparse multivariate polynomials.

Polynomials are immutable maps from exponent tuples to nonzero coefficients.
Coefficients are :class:`fractions.Fraction` over Q, or :class:`Fp` over a
prime field.  Every ring carries a monomial order used by the Groebner code.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Fp",
    "Field",
    "QQ",
    "GF",
    "PolyRing",
    "Polynomial",
    "compare_monomials",
    "monomial_key",
    "homogeneous_degree",
    "poly_arith",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@total_ordering
class Fp:
    """Element of the prime field Z/p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixing prime fields of different characteristic")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pow__(self, n: int):
        return Fp(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o

    def __lt__(self, other):
        return self.value < self._coerce(other)

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return str(self.value)


class Field:
    """Coefficient field descriptor: Q (``p == 0``) or GF(p)."""

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"GF({self.p})"

    def __call__(self, x):
        if self.p == 0:
            if isinstance(x, Fp):
                raise TypeError("cannot coerce a prime-field element into Q")
            return Fraction(x)
        if isinstance(x, Fp):
            return Fp(x.value, self.p)
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)
        return Fp(int(x), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return self.name


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------- monomial orders ----------

def _grevlex_key(e: Sequence[int]):
    return (sum(e), tuple(-a for a in reversed(e)))


def monomial_key(e: Sequence[int], order):
    """Sort key realising ``order``: larger key means larger monomial."""
    if order == "grevlex":
        return _grevlex_key(e)
    if order == "lex":
        return tuple(e)
    if isinstance(order, tuple) and order[0] == "elim":
        k = order[1]
        return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))
    raise ValueError(f"unknown monomial order {order!r}")


def compare_monomials(a: Sequence[int], b: Sequence[int], order="grevlex") -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise ValueError("exponent vectors of different arity")
    ka, kb = monomial_key(tuple(a), order), monomial_key(tuple(b), order)
    return (ka > kb) - (ka < kb)


def _check_order(order):
    if order in ("grevlex", "lex"):
        return order
    if isinstance(order, (tuple, list)) and len(order) == 2 and order[0] == "elim":
        return ("elim", int(order[1]))
    raise ValueError(f"unknown monomial order {order!r}")


class PolyRing:
    """Polynomial ring k[x1..xn] with a fixed monomial order."""

    def __init__(self, variables: Sequence[str], field: Field = QQ, order="grevlex"):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        self.variables = variables
        self.field = field
        self.order = _check_order(order)
        self.nvars = len(variables)
        self._keys: dict = {}
        self._index = {v: i for i, v in enumerate(variables)}

    def key(self, e):
        k = self._keys.get(e)
        if k is None:
            k = self._keys[e] = monomial_key(e, self.order)
        return k

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.variables, self.field, order)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.variables == self.variables
            and other.field == self.field
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.variables)}]"

    # constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, e: Sequence[int], c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {tuple(e): c} if c else {})

    def var(self, name: str) -> "Polynomial":
        i = self._index[name]
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring.variables != self.variables or x.ring.field != self.field:
                raise ValueError("polynomial from an incompatible ring")
            return Polynomial(self, x.terms)
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    def parse(self, text: str) -> "Polynomial":
        return _PolyParser(self, text).parse()


class Polynomial:
    """Sparse polynomial; ``terms`` maps exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping):
        self.ring = ring
        self.terms = terms if isinstance(terms, dict) else dict(terms)
        self._hash = None

    # --- structure ---
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def leading_monomial(self):
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self):
        return homogeneous_degree(self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    # --- arithmetic ---
    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.ring.variables != self.ring.variables or other.ring.field != self.ring.field:
                raise ValueError("ring mismatch")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {e: a * c for e, a in self.terms.items()})
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            if not c.is_constant() or c.is_zero():
                raise ValueError("can only divide by a nonzero constant")
            c = c.constant_coefficient()
        c = self.ring.field(c)
        return Polynomial(self.ring, {e: a / c for e, a in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, e, c) -> "Polynomial":
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, e)): c * d for m, d in self.terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.variables == other.ring.variables and self.terms == other.terms
        try:
            return self == self.ring.constant(other)
        except (TypeError, ValueError):
            return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return format_polynomial(self)

    __str__ = __repr__


def homogeneous_degree(f: Polynomial):
    """Total degree if every term of ``f`` has the same degree, else ``None``.

    The zero polynomial is homogeneous of every degree; ``0`` is returned.
    """
    degs = {sum(e) for e in f.terms}
    if not degs:
        return 0
    if len(degs) == 1:
        return degs.pop()
    return None


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    if isinstance(g, Polynomial) and g.ring.variables != f.ring.variables:
        raise ValueError("ring mismatch")
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        if isinstance(g, Polynomial):
            raise TypeError("scalar_mul expects a scalar")
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def _format_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(c.numerator if isinstance(c, Fraction) else c)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            v if a == 1 else f"{v}^{a}" for v, a in zip(f.ring.variables, e) if a
        )
        neg = False
        if isinstance(c, Fraction) and c < 0:
            neg, c = True, -c
        cs = _format_coeff(c)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        pieces.append(("-" if neg else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _PolyParser:
    """Recursive-descent parser for ``x^2*y - 3/2*z`` style input."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("num", int(num)))
            elif name is not None:
                self.toks.append(("name", name))
            else:
                self.toks.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        f = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input in polynomial: {self.toks[self.i:]}")
        return f

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        f = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            g = self.power()
            f = f * g if op == "*" else f / g
        return f

    def power(self):
        f = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, n = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            f = f ** n
        return f

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "name":
            if val not in self.ring._index:
                raise ValueError(f"unknown variable {val!r}")
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return f
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError(f"unexpected token {val!r}")


def polys(ring: PolyRing, items: Iterable) -> list[Polynomial]:
    return [ring(x) for x in items]
