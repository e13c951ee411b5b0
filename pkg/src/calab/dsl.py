"""Session language: lexer, parser, pretty-printer and evaluator.

Example::

    ring R = poly(Q, [x, y]) / (x*y);
    prime! p = (x);
    module M = quotient(R, (x^2));
    check refl: reflexive(tensor(M, syzygy(quotient(R, p), 1)));
    assert length(tensor(ideal_module(p), ideal_module((y)))) == 1;
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .report import VERDICTS, CheckReport, jsonable

SCHEMA_VERSION = 1

KEYWORDS = {"ring", "ideal", "prime", "module", "let", "check", "assert", "expect", "poly", "inf"}
EXPECTABLE = ("verified", "refuted", "not-applicable", "unknown")


class SessionError(Exception):
    """Lexical, syntax, name-resolution or evaluation error with a location."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


# ---------- lexer ----------

@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, OP, KW, EOF
    text: str
    line: int
    col: int
    end_line: int
    end_col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<prime>prime!)|(?P<na>not-applicable)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>[0-9]+)"
    r"|(?P<op><=|>=|==|!=|[()\[\],;=+\-*/^:<>])"
)


def tokenize(text: str) -> list[Token]:
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise SessionError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        elif kind in ("ws", "comment"):
            col += len(s)
        else:
            if kind == "prime":
                tk = "KW"
            elif kind == "na":
                tk = "NAME"
            elif kind == "name":
                tk = "KW" if s in KEYWORDS else "NAME"
            elif kind == "int":
                tk = "INT"
            else:
                tk = "OP"
            toks.append(Token(tk, s, line, col, line, col + len(s)))
            col += len(s)
        pos = m.end()
    toks.append(Token("EOF", "", line, col, line, col))
    return toks


# ---------- AST ----------

def _loc():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: int
    loc: tuple = _loc()


@dataclass(frozen=True)
class Inf:
    loc: tuple = _loc()


@dataclass(frozen=True)
class Name:
    id: str
    loc: tuple = _loc()


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple
    loc: tuple = _loc()


@dataclass(frozen=True)
class Paren:
    items: tuple
    loc: tuple = _loc()


@dataclass(frozen=True)
class ListExpr:
    items: tuple
    loc: tuple = _loc()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Any
    right: Any
    loc: tuple = _loc()


@dataclass(frozen=True)
class Neg:
    operand: Any
    loc: tuple = _loc()


@dataclass(frozen=True)
class RingDef:
    name: str
    field_name: str
    char: int
    variables: tuple
    ideal: Any
    loc: tuple = _loc()


@dataclass(frozen=True)
class Def:
    kind: str  # ideal | prime | module | let
    name: str
    expr: Any
    loc: tuple = _loc()


@dataclass(frozen=True)
class Check:
    label: str | None
    expr: Any
    expect: str
    loc: tuple = _loc()


@dataclass(frozen=True)
class Assert:
    label: str | None
    left: Any
    op: str
    right: Any
    expect: str
    loc: tuple = _loc()


@dataclass(frozen=True)
class Session:
    statements: tuple


# ---------- builtin signatures ----------

# argument kinds: ring, ideal, prime, module, int, poly, modules, ideals, primes, polys, any
FUNCTIONS: dict[str, tuple] = {
    # modules
    "quotient": ("ring", "ideal"),
    "ideal_module": ("ideal",),
    "transpose": ("module",),
    "tensor": ("module", "module"),
    "syzygy": ("module", "int"),
    "dsum": ("module", "module"),
    "free": ("ring", "int"),
    "hom": ("module", "module"),
    "dual": ("module",),
    "tor": ("int", "module", "module"),
    "ext": ("int", "module", "module"),
    "residue_field": ("ring",),
    # ideals
    "ann": ("module",),
    "symbolic": ("prime", "int", "poly"),
    "power": ("ideal", "int"),
    "maximal": ("ring",),
    # numbers
    "depth": ("ideal", "module"),
    "depth_rees": ("ideal", "module"),
    "local_depth": ("ideal", "module", "prime"),
    "height": ("prime",),
    "pd": ("module",),
    "length": ("module",),
    "dim": ("module",),
    "rank": ("module", "primes"),
    "ci_dim": ("module",),
    "tor_length": ("int", "module", "module"),
    "ngens": ("module",),
    "betti": ("module", "int"),
    # booleans
    "reflexive": ("module",),
    "torsion_free": ("module",),
    "serre": ("module", "int"),
    "tor_zero": ("module", "module"),
    "pd_finite": ("module",),
    "is_zero": ("module",),
    "regular": ("polys", "module"),
    "full_support": ("module",),
    "in_support": ("module", "prime"),
    "iso": ("module", "module"),
    "ideal_eq": ("ideal", "ideal"),
    "contains": ("ideal", "ideal"),
    "certified": ("prime", "int", "poly"),
    # reports
    "hw_theorem": ("module", "module", "primes"),
    "main_theorem": ("module", "module", "primes", "primes"),
    "prime_tensor": ("prime", "prime", "int", "int", "poly", "poly", "primes"),
    "syzygy_symbolic": ("module", "prime", "int", "int", "poly", "primes"),
    "transfer": ("module", "primes"),
    "local_transfer": ("module", "primes"),
    "depth_formula": ("module", "module"),
    "not_tor_rigid": ("module", "module"),
    "not_tor_rigid_at": ("module", "module", "prime"),
    "rigidity_agreement": ("module", "ideals", "primes"),
    "depth_bound": ("modules", "ideals", "primes"),
}


# ---------- parser ----------

class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.names: dict[str, str] = {}   # name -> kind
        self.labels: set = set()
        self.ring_vars: set = set()
        self.stmt_start = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _prev(self) -> Token | None:
        return self.toks[self.i - 1] if self.i else None

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        prev = self._prev()
        inside = self.i > self.stmt_start
        if inside and tok is self.tok and prev is not None and tok.line > prev.end_line:
            # a missing token at the end of a line: blame that line
            raise SessionError(msg, prev.end_line, prev.end_col)
        raise SessionError(msg, tok.line, tok.col)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("OP", "KW")

    def expect(self, text: str) -> Token:
        if not self.at(text):
            got = self.tok.text or "end of input"
            self.error(f"expected {text!r}, got {got!r}")
        return self.advance()

    def expect_name(self) -> Token:
        if self.tok.kind != "NAME":
            got = self.tok.text or "end of input"
            self.error(f"expected a name, got {got!r}")
        return self.advance()

    # statements
    def parse(self) -> Session:
        out = []
        while self.tok.kind != "EOF":
            out.append(self.statement())
        return Session(tuple(out))

    def define(self, tok: Token, kind: str):
        if tok.text in self.names or tok.text in self.ring_vars:
            raise SessionError(f"redefinition of {tok.text!r}", tok.line, tok.col)
        self.names[tok.text] = kind

    def statement(self):
        self.stmt_start = self.i
        t = self.tok
        loc = (t.line, t.col)
        if t.kind != "KW":
            self.error(f"expected a statement, got {t.text!r}")
        if t.text == "ring":
            return self.ring_stmt()
        if t.text in ("ideal", "prime!", "module", "let"):
            self.advance()
            name = self.expect_name()
            self.expect("=")
            expr = self.expr()
            self.expect(";")
            self.define(name, t.text.rstrip("!"))
            return Def(t.text.rstrip("!"), name.text, expr, loc)
        if t.text in ("check", "assert"):
            self.advance()
            label = None
            if self.tok.kind == "NAME" and self.toks[self.i + 1].text == ":":
                lt = self.advance()
                if lt.text in self.labels:
                    raise SessionError(f"duplicate label {lt.text!r}", lt.line, lt.col)
                self.labels.add(lt.text)
                label = lt.text
                self.advance()
            left = self.expr()
            if t.text == "assert":
                if not (self.tok.kind == "OP" and self.tok.text in ("==", "!=", "<=", ">=", "<", ">")):
                    self.error(f"expected a comparison, got {self.tok.text!r}")
                op = self.advance().text
                right = self.expr()
            expect = "verified"
            if self.at("expect"):
                self.advance()
                v = self.tok
                if v.text not in EXPECTABLE:
                    self.error(f"expected a verdict, got {v.text!r}")
                expect = self.advance().text
            self.expect(";")
            if t.text == "assert":
                return Assert(label, left, op, right, expect, loc)
            return Check(label, left, expect, loc)
        self.error(f"unexpected keyword {t.text!r}")

    def ring_stmt(self) -> RingDef:
        t = self.advance()
        name = self.expect_name()
        self.expect("=")
        self.expect("poly")
        self.expect("(")
        ft = self.expect_name()
        char = 0
        if ft.text == "Q":
            pass
        elif ft.text == "GF":
            self.expect("(")
            if self.tok.kind != "INT":
                self.error("expected a prime characteristic")
            char = int(self.advance().text)
            if char < 2 or any(char % d == 0 for d in range(2, int(char ** 0.5) + 1)):
                raise SessionError(f"{char} is not prime", ft.line, ft.col)
            self.expect(")")
        else:
            raise SessionError(f"unknown field {ft.text!r}", ft.line, ft.col)
        self.expect(",")
        self.expect("[")
        var_toks = [self.expect_name()]
        while self.at(","):
            self.advance()
            var_toks.append(self.expect_name())
        self.expect("]")
        self.expect(")")
        # variables are visible from here on; the previous ring's are not
        self.ring_vars = set()
        for v in var_toks:
            if v.text in self.names or v.text in self.ring_vars:
                raise SessionError(f"redefinition of {v.text!r}", v.line, v.col)
            self.ring_vars.add(v.text)
        ideal = None
        if self.at("/"):
            self.advance()
            ideal = self.expr()
        self.expect(";")
        if name.text in self.names or name.text in self.ring_vars:
            raise SessionError(f"redefinition of {name.text!r}", name.line, name.col)
        self.names[name.text] = "ring"
        return RingDef(name.text, ft.text, char, tuple(v.text for v in var_toks), ideal, (t.line, t.col))

    # expressions: sum > product > unary > power > atom
    def expr(self):
        left = self.term()
        while self.tok.kind == "OP" and self.tok.text in ("+", "-"):
            op = self.advance()
            left = BinOp(op.text, left, self.term(), (op.line, op.col))
        return left

    def term(self):
        left = self.unary()
        while self.tok.kind == "OP" and self.tok.text in ("*", "/"):
            op = self.advance()
            left = BinOp(op.text, left, self.unary(), (op.line, op.col))
        return left

    def unary(self):
        if self.at("-"):
            t = self.advance()
            return Neg(self.unary(), (t.line, t.col))
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            op = self.advance()
            if self.tok.kind != "INT":
                self.error("exponent must be a nonnegative integer")
            e = self.advance()
            return BinOp("^", base, Num(int(e.text), (e.line, e.col)), (op.line, op.col))
        return base

    def atom(self):
        t = self.tok
        loc = (t.line, t.col)
        if t.kind == "INT":
            self.advance()
            return Num(int(t.text), loc)
        if t.kind == "KW" and t.text == "inf":
            self.advance()
            return Inf(loc)
        if t.kind == "NAME":
            self.advance()
            if self.at("("):
                if t.text not in FUNCTIONS:
                    raise SessionError(f"unknown function {t.text!r}", t.line, t.col)
                self.advance()
                args = self.items(")")
                arity = len(FUNCTIONS[t.text])
                if len(args) != arity:
                    raise SessionError(f"{t.text} takes {arity} argument(s), got {len(args)}", t.line, t.col)
                return Call(t.text, tuple(args), loc)
            if t.text not in self.names and t.text not in self.ring_vars:
                raise SessionError(f"undefined name {t.text!r}", t.line, t.col)
            return Name(t.text, loc)
        if self.at("("):
            self.advance()
            items = self.items(")")
            if not items:
                self.error("empty parentheses", t)
            return Paren(tuple(items), loc)
        if self.at("["):
            self.advance()
            return ListExpr(tuple(self.items("]")), loc)
        got = t.text or "end of input"
        self.error(f"unexpected {got!r}")

    def items(self, close: str) -> list:
        out = []
        if self.at(close):
            self.advance()
            return out
        out.append(self.expr())
        while self.at(","):
            self.advance()
            out.append(self.expr())
        self.expect(close)
        return out


def parse_session(text: str) -> Session:
    return Parser(text).parse()


# ---------- printer ----------

def format_expr(e) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Inf):
        return "inf"
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Call):
        return f"{e.func}(" + ", ".join(format_expr(a) for a in e.args) + ")"
    if isinstance(e, Paren):
        return "(" + ", ".join(format_expr(a) for a in e.items) + ")"
    if isinstance(e, ListExpr):
        return "[" + ", ".join(format_expr(a) for a in e.items) + "]"
    if isinstance(e, Neg):
        return "-" + format_expr(e.operand)
    if isinstance(e, BinOp):
        if e.op == "^":
            return f"{format_expr(e.left)}^{format_expr(e.right)}"
        if e.op in ("*", "/"):
            return f"{format_expr(e.left)}{e.op}{format_expr(e.right)}"
        return f"{format_expr(e.left)} {e.op} {format_expr(e.right)}"
    raise TypeError(f"not an expression: {e!r}")


def format_statement(s) -> str:
    if isinstance(s, RingDef):
        fld = "Q" if s.field_name == "Q" else f"GF({s.char})"
        out = f"ring {s.name} = poly({fld}, [{', '.join(s.variables)}])"
        if s.ideal is not None:
            out += " / " + format_expr(s.ideal)
        return out + ";"
    if isinstance(s, Def):
        kw = "prime!" if s.kind == "prime" else s.kind
        return f"{kw} {s.name} = {format_expr(s.expr)};"
    label = f"{s.label}: " if s.label else ""
    tail = "" if s.expect == "verified" else f" expect {s.expect}"
    if isinstance(s, Check):
        return f"check {label}{format_expr(s.expr)}{tail};"
    if isinstance(s, Assert):
        return f"assert {label}{format_expr(s.left)} {s.op} {format_expr(s.right)}{tail};"
    raise TypeError(f"not a statement: {s!r}")


def format_session(ast: Session) -> str:
    return "".join(format_statement(s) + "\n" for s in ast.statements)


# ---------- evaluator ----------

@dataclass
class IdealVal:
    ring: Any
    gens: list

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


@dataclass
class RingVal:
    name: str
    ring: Any


class Evaluator:
    def __init__(self, session_id: str = "session"):
        self.env: dict[str, Any] = {}
        self.ring: RingVal | None = None
        self.entries: list[CheckReport] = []
        self.session_id = session_id
        self._auto = 0

    # --- coercions ---
    def _R(self, loc):
        if self.ring is None:
            raise SessionError("no ring defined", *loc)
        return self.ring.ring

    def as_poly(self, v, loc):
        from .core import Polynomial

        R = self._R(loc)
        if isinstance(v, Polynomial):
            return R.reduce(v)
        if isinstance(v, int) and not isinstance(v, bool):
            return R.S.constant(v)
        if isinstance(v, IdealVal) and len(v.gens) == 1:
            return v.gens[0]
        raise SessionError(f"expected a ring element, got {_kind(v)}", *loc)

    def as_ideal(self, v, loc) -> IdealVal:
        from .core import Polynomial
        from .invariants import PrimeSpec

        R = self._R(loc)
        if isinstance(v, IdealVal):
            return v
        if isinstance(v, PrimeSpec):
            return IdealVal(R, list(v.gens))
        if isinstance(v, Polynomial):
            return IdealVal(R, [R.reduce(v)])
        if isinstance(v, RingVal):
            return IdealVal(R, R.maximal_ideal())
        raise SessionError(f"expected an ideal, got {_kind(v)}", *loc)

    def as_prime(self, v, loc):
        from .invariants import PrimeSpec

        if isinstance(v, PrimeSpec):
            return v
        I = self.as_ideal(v, loc)
        return PrimeSpec(I.ring, I.gens, declared_prime=False)

    def as_module(self, v, loc):
        from .algebra import FGModule, free_module

        if isinstance(v, FGModule):
            return v
        if isinstance(v, RingVal):
            return free_module(v.ring, 1)
        raise SessionError(f"expected a module, got {_kind(v)}", *loc)

    def as_int(self, v, loc):
        if isinstance(v, int) and not isinstance(v, bool):
            return v
        from .core import Polynomial

        if isinstance(v, Polynomial) and v.is_constant():
            c = v.constant_coefficient()
            if getattr(c, "denominator", 1) == 1:
                return int(c)
        raise SessionError(f"expected an integer, got {_kind(v)}", *loc)

    def coerce(self, kind, v, loc):
        if kind == "any":
            return v
        if kind == "ring":
            if isinstance(v, RingVal):
                return v.ring
            raise SessionError(f"expected a ring, got {_kind(v)}", *loc)
        if kind in ("modules", "ideals", "primes", "polys"):
            if not isinstance(v, list):
                raise SessionError(f"expected a list, got {_kind(v)}", *loc)
            return [self.coerce(kind[:-1], x, loc) for x in v]
        return getattr(self, f"as_{kind}")(v, loc)

    # --- expressions ---
    def eval(self, e):
        loc = e.loc
        if isinstance(e, Num):
            return e.value
        if isinstance(e, Inf):
            return math.inf
        if isinstance(e, Name):
            if e.id in self.env:
                return self.env[e.id]
            if self.ring is not None and e.id in self.ring.ring.S.variables:
                return self.ring.ring.var(e.id)
            raise SessionError(f"undefined name {e.id!r}", *loc)
        if isinstance(e, ListExpr):
            return [self.eval(x) for x in e.items]
        if isinstance(e, Paren):
            vals = [self.eval(x) for x in e.items]
            if len(vals) == 1 and not _is_poly_like(vals[0]):
                return vals[0]
            R = self._R(loc)
            return IdealVal(R, [self.as_poly(v, loc) for v in vals])
        if isinstance(e, Neg):
            v = self.eval(e.operand)
            if isinstance(v, (int, float)) and not isinstance(v, bool):
                return -v
            return -self.as_poly(v, loc)
        if isinstance(e, BinOp):
            return self.binop(e)
        if isinstance(e, Call):
            sig = FUNCTIONS[e.func]
            args = [self.coerce(k, self.eval(a), a.loc) for k, a in zip(sig, e.args)]
            try:
                return getattr(self, f"fn_{e.func}")(*args)
            except SessionError:
                raise
            except (ValueError, TypeError) as exc:
                raise SessionError(f"{e.func}: {exc}", *loc) from exc
        raise SessionError(f"cannot evaluate {e!r}", *loc)

    def binop(self, e: BinOp):
        loc = e.loc
        a, b = self.eval(e.left), self.eval(e.right)
        if isinstance(a, int) and isinstance(b, int) and e.op != "/":
            return {"+": a + b, "-": a - b, "*": a * b, "^": a ** b if b >= 0 else None}[e.op]
        if e.op == "^":
            return self.as_poly(a, loc) ** self.as_int(b, e.right.loc)
        pa, pb = self.as_poly(a, loc), self.as_poly(b, loc)
        R = self._R(loc)
        if e.op == "+":
            return R.reduce(pa + pb)
        if e.op == "-":
            return R.reduce(pa - pb)
        if e.op == "*":
            return R.reduce(pa * pb)
        if not pb.is_constant() or not pb:
            raise SessionError("division only by nonzero constants", *loc)
        return R.reduce(pa / pb.constant_coefficient())

    # --- statements ---
    def run(self, ast: Session):
        for s in ast.statements:
            self.statement(s)
        return self.entries

    def statement(self, s):
        from .algebra import QuotientRing
        from .core import GF, QQ, PolyRing
        from .invariants import PrimeSpec

        if isinstance(s, RingDef):
            fld = QQ if s.field_name == "Q" else GF(s.char)
            S = PolyRing(list(s.variables), fld)
            tmp = RingVal(s.name, QuotientRing(S, []))
            self.ring = tmp
            gens = []
            if s.ideal is not None:
                gens = self.as_ideal(self.eval(s.ideal), s.ideal.loc).gens
            try:
                R = QuotientRing(S, gens) if gens else tmp.ring
            except ValueError as exc:
                raise SessionError(str(exc), *s.loc) from exc
            self.ring = RingVal(s.name, R)
            self.env[s.name] = self.ring
            return
        if isinstance(s, Def):
            v = self.eval(s.expr)
            if s.kind == "ideal":
                v = self.as_ideal(v, s.expr.loc)
            elif s.kind == "prime":
                I = self.as_ideal(v, s.expr.loc)
                try:
                    v = PrimeSpec(I.ring, I.gens, declared_prime=True, name=s.name)
                except ValueError as exc:
                    raise SessionError(str(exc), *s.loc) from exc
            elif s.kind == "module":
                v = self.as_module(v, s.expr.loc)
            self.env[s.name] = v
            return
        if isinstance(s, Check):
            self.entries.append(self.check(s))
            return
        if isinstance(s, Assert):
            self.entries.append(self.assertion(s))
            return
        raise TypeError(s)

    def _claim_id(self, s):
        if s.label:
            return s.label
        return f"line{s.loc[0]}"

    def check(self, s: Check) -> CheckReport:
        from .invariants import Unsupported

        cid = self._claim_id(s)
        text = format_statement(s)
        try:
            v = self.eval(s.expr)
        except Unsupported as exc:
            return CheckReport(cid, "", text, {"reason": str(exc)}, "not-applicable", [], s.expect)
        if isinstance(v, CheckReport):
            rep = CheckReport(cid, v.anchor, text, dict(v.values), v.verdict, list(v.scope), s.expect)
            return rep
        if v is None:
            verdict = "unknown"
        elif isinstance(v, bool):
            verdict = "verified" if v else "refuted"
        else:
            raise SessionError(f"check needs a boolean or a report, got {_kind(v)}", *s.loc)
        return CheckReport(cid, "", text, {"value": v}, verdict, _scope_for(s.expr), s.expect)

    def assertion(self, s: Assert) -> CheckReport:
        from .invariants import Unsupported

        cid = self._claim_id(s)
        text = format_statement(s)
        try:
            a, b = self.eval(s.left), self.eval(s.right)
        except Unsupported as exc:
            return CheckReport(cid, "", text, {"reason": str(exc)}, "not-applicable", [], s.expect)
        res = self.compare(a, s.op, b, s.loc)
        values = {"lhs": _value_repr(a), "rhs": _value_repr(b)}
        verdict = "unknown" if res is None else ("verified" if res else "refuted")
        return CheckReport(cid, "", text, values, verdict, _scope_for(s.left) + _scope_for(s.right), s.expect)

    def compare(self, a, op, b, loc):
        from .algebra import FGModule, try_isomorphic
        from .core import Polynomial
        from .groebner import Ideal

        num = (int, float)
        if isinstance(a, num) and isinstance(b, num) and not isinstance(a, bool) and not isinstance(b, bool):
            return {"==": a == b, "!=": a != b, "<=": a <= b, ">=": a >= b, "<": a < b, ">": a > b}[op]
        if op not in ("==", "!="):
            raise SessionError("ordering comparisons need numbers", *loc)
        if isinstance(a, bool) or isinstance(b, bool):
            eq = a == b
        elif isinstance(a, FGModule) or isinstance(b, FGModule):
            r = try_isomorphic(self.as_module(a, loc), self.as_module(b, loc))
            eq = None if r.verdict == "unknown" else r.verdict == "yes"
        elif isinstance(a, (IdealVal, Ideal)) or isinstance(b, (IdealVal, Ideal)):
            eq = self.fn_ideal_eq(self._ideal_any(a, loc), self._ideal_any(b, loc))
        elif isinstance(a, (Polynomial, int)) and isinstance(b, (Polynomial, int)):
            eq = self.as_poly(a, loc) == self.as_poly(b, loc)
        else:
            eq = a == b
        if eq is None:
            return None
        return eq if op == "==" else not eq

    def _ideal_any(self, v, loc):
        return self.as_ideal(v, loc)

    # --- builtins ---
    def _S_ideal(self, I: IdealVal):
        return I.ring.ideal_of(I.gens)

    def _from_S_ideal(self, R, J) -> IdealVal:
        gens = [g for g in (R.reduce(g) for g in J.gb()) if g]
        return IdealVal(R, gens or [R.S.zero()])

    def fn_quotient(self, R, I):
        from .algebra import quotient_module

        return quotient_module(R, I.gens)

    def fn_ideal_module(self, I):
        from .algebra import ideal_module

        return ideal_module(I.ring, I.gens)

    def fn_transpose(self, M):
        from .algebra import auslander_transpose

        return auslander_transpose(M)

    def fn_tensor(self, M, N):
        from .algebra import tensor_modules

        return tensor_modules(M, N)

    def fn_syzygy(self, M, r):
        from .algebra import syzygy_module

        if r < 0:
            raise ValueError("syzygy index must be nonnegative")
        return syzygy_module(M, r)

    def fn_dsum(self, M, N):
        from .algebra import direct_sum

        return direct_sum(M, N)

    def fn_free(self, R, n):
        from .algebra import free_module

        return free_module(R, n)

    def fn_hom(self, M, N):
        from .algebra import hom_module

        return hom_module(M, N)

    def fn_dual(self, M):
        from .algebra import dual

        return dual(M)

    def fn_tor(self, i, M, N):
        from .invariants import tor

        return tor(i, M, N)

    def fn_ext(self, i, M, N):
        from .invariants import ext

        return ext(i, M, N)

    def fn_residue_field(self, R):
        from .algebra import quotient_module

        return quotient_module(R, R.maximal_ideal())

    def fn_ann(self, M):
        from .algebra import annihilator

        return self._from_S_ideal(M.ring, annihilator(M))

    def fn_symbolic(self, p, n, f):
        from .invariants import symbolic_power

        return self._from_S_ideal(p.ring, symbolic_power(p, n, f).ideal)

    def fn_certified(self, p, n, f):
        from .invariants import symbolic_power

        return symbolic_power(p, n, f).certified

    def fn_power(self, I, n):
        from .groebner import Ideal

        J = Ideal(I.ring.S, I.gens) ** n
        return IdealVal(I.ring, [g for g in (I.ring.reduce(g) for g in J.gens) if g] or [I.ring.S.zero()])

    def fn_maximal(self, R):
        return IdealVal(R, R.maximal_ideal())

    def fn_depth(self, I, M):
        from .invariants import depth_koszul

        return depth_koszul(I.gens, M)

    def fn_depth_rees(self, I, M):
        from .invariants import depth_rees

        return depth_rees(I.gens, M)

    def fn_local_depth(self, I, M, q):
        from .invariants import local_depth

        return local_depth(I.gens, M, q)

    def fn_height(self, p):
        return p.height

    def fn_pd(self, M):
        from .algebra import projective_dimension

        return projective_dimension(M)

    def fn_length(self, M):
        from .algebra import length_over_field

        return length_over_field(M)

    def fn_dim(self, M):
        from .algebra import module_dimension

        return module_dimension(M)

    def fn_rank(self, M, primes):
        from .invariants import rank_of

        return rank_of(M, primes)

    def fn_ci_dim(self, M):
        from .invariants import ci_dimension

        return ci_dimension(M)

    def fn_tor_length(self, i, M, N):
        from .algebra import length_over_field
        from .invariants import tor

        return length_over_field(tor(i, M, N))

    def fn_ngens(self, M):
        from .algebra import minimalize

        return minimalize(M).ngens

    def fn_betti(self, M, i):
        from .algebra import betti_numbers

        return betti_numbers(M, i)[i]

    def fn_reflexive(self, M):
        from .invariants import is_reflexive

        return is_reflexive(M)

    def fn_torsion_free(self, M):
        from .invariants import is_torsion_free

        return is_torsion_free(M)

    def fn_serre(self, M, n):
        from .invariants import serre_condition

        return serre_condition(M, n)

    def fn_tor_zero(self, M, N):
        from .invariants import tor_vanishes_from_one

        return bool(tor_vanishes_from_one(M, N))

    def fn_pd_finite(self, M):
        from .algebra import projective_dimension

        return projective_dimension(M) != math.inf

    def fn_is_zero(self, M):
        from .algebra import is_zero_module

        return is_zero_module(M)

    def fn_regular(self, seq, M):
        from .invariants import is_regular_sequence

        return is_regular_sequence(seq, M)

    def fn_full_support(self, M):
        from .invariants import has_full_support

        return has_full_support(M)

    def fn_in_support(self, M, q):
        from .invariants import in_support

        return in_support(M, q)

    def fn_iso(self, M, N):
        from .algebra import try_isomorphic

        r = try_isomorphic(M, N)
        return None if r.verdict == "unknown" else r.verdict == "yes"

    def fn_ideal_eq(self, I, J):
        return self._S_ideal(I) == self._S_ideal(J)

    def fn_contains(self, I, J):
        return self._S_ideal(I).contains_ideal(self._S_ideal(J))

    def fn_hw_theorem(self, M, N, primes):
        from .harness import verify_hw_theorem

        return verify_hw_theorem(M, N, primes)

    def fn_main_theorem(self, M, N, mins, primes):
        from .harness import verify_main_theorem

        return verify_main_theorem(M, N, mins, primes)

    def fn_prime_tensor(self, p, q, r, s, fp, fq, mins):
        from .harness import verify_appendix

        return verify_appendix(p, q, r, s, fp, fq, mins)

    def fn_syzygy_symbolic(self, M, p, n, r, f, mins):
        from .harness import verify_syzygy_of_symbolic_power

        return verify_syzygy_of_symbolic_power(M, p, n, r, f, mins)

    def fn_transfer(self, M, primes):
        from .invariants import regular_seq_transfer_check

        return regular_seq_transfer_check(M, primes)

    def fn_local_transfer(self, M, primes):
        from .harness import localized_transfer_check

        return localized_transfer_check(M, primes)

    def fn_depth_formula(self, M, N):
        from .invariants import depth_formula_check

        return depth_formula_check(M, N)

    def fn_not_tor_rigid(self, M, N):
        from .harness import tor_rigidity_witness

        return tor_rigidity_witness(M, N)

    def fn_not_tor_rigid_at(self, M, N, q):
        from .harness import tor_rigidity_witness

        return tor_rigidity_witness(M, N, at=q)

    def fn_rigidity_agreement(self, M, seqs, primes):
        from .harness import rigidity_transfer_agreement

        return rigidity_transfer_agreement(M, [I.gens for I in seqs], primes)

    def fn_depth_bound(self, mods, ideals, primes):
        from .harness import depth_bound_sweep

        return depth_bound_sweep(mods, [I.gens for I in ideals], primes)


def _is_poly_like(v) -> bool:
    from .core import Polynomial

    return isinstance(v, (Polynomial, int)) and not isinstance(v, bool)


def _kind(v) -> str:
    from .algebra import FGModule
    from .core import Polynomial
    from .invariants import PrimeSpec

    if isinstance(v, bool):
        return "a boolean"
    if isinstance(v, (int, float)):
        return "a number"
    if isinstance(v, Polynomial):
        return "a ring element"
    if isinstance(v, IdealVal):
        return "an ideal"
    if isinstance(v, PrimeSpec):
        return "a prime"
    if isinstance(v, FGModule):
        return "a module"
    if isinstance(v, RingVal):
        return "a ring"
    if isinstance(v, list):
        return "a list"
    if isinstance(v, CheckReport):
        return "a report"
    return type(v).__name__


def _value_repr(v):
    from .algebra import FGModule

    if isinstance(v, FGModule):
        return repr(v)
    if isinstance(v, IdealVal):
        return repr(v)
    return v


def _scope_for(e) -> list:
    """Scope notes implied by the functions an expression uses."""
    notes = []

    def walk(x):
        if isinstance(x, Call):
            if x.func in ("pd", "pd_finite"):
                notes.append("pd decided by resolving to length dim R + 2")
            if x.func == "tor_zero":
                notes.append("Tor vanishing decided through degree dim R + 2 with periodicity")
            if x.func == "symbolic":
                notes.append("symbolic power computed by saturation with a supplied witness")
            for a in x.args:
                walk(a)
        elif isinstance(x, (Paren, ListExpr)):
            for a in x.items:
                walk(a)
        elif isinstance(x, BinOp):
            walk(x.left)
            walk(x.right)
        elif isinstance(x, Neg):
            walk(x.operand)

    walk(e)
    return sorted(set(notes))


def compute(text: str, invariant: str, target: str):
    """Evaluate ``invariant(a, b, ...)`` for target ``"a|b|..."`` against a session's definitions."""
    p = Parser(text)
    ast = p.parse()
    if invariant not in FUNCTIONS:
        raise SessionError(f"unknown function {invariant!r}", 1, 1)
    parts = [s.strip() for s in target.split("|")]
    q = Parser(f"{invariant}({', '.join(parts)})")
    q.names, q.ring_vars = dict(p.names), set(p.ring_vars)
    e = q.expr()
    if q.tok.kind != "EOF":
        q.error(f"unexpected {q.tok.text!r} after target")
    ev = Evaluator()
    for s in ast.statements:
        if not isinstance(s, (Check, Assert)):
            ev.statement(s)
    return ev.eval(e)


def evaluate(ast: Session, session_id: str = "session") -> list[CheckReport]:
    return Evaluator(session_id).run(ast)


def summarize(entries: list[CheckReport]) -> dict:
    by = {v: 0 for v in VERDICTS}
    for r in entries:
        by[r.verdict] += 1
    unexpected = [r.claim_id for r in entries if not r.as_expected]
    return {
        "total": len(entries),
        "as_expected": len(entries) - len(unexpected),
        "unexpected": unexpected,
        "by_verdict": by,
        "ok": not unexpected,
    }


def build_report(entries: list[CheckReport], source_text: str, kind: str = "session") -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "calab", "version": __version__},
        "kind": kind,
        "session_hash": hashlib.sha256(source_text.encode("utf-8")).hexdigest(),
        "entries": [r.to_dict() for r in entries],
        "summary": summarize(entries),
    }


def run_session(text: str, session_id: str = "session") -> dict:
    ast = parse_session(text)
    entries = evaluate(ast, session_id)
    return build_report(entries, text)


__all__ = [
    "SessionError", "Token", "tokenize", "parse_session", "format_session", "format_statement",
    "format_expr", "compute", "evaluate", "build_report", "run_session", "summarize", "Session", "jsonable",
]
