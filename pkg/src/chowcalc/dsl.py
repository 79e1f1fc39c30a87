"""A small declarative language for varieties, sheaves and queries.

::

    variety X = divisor(P 4, 5h);
    sheaf E on K3quartic { rank 2, chern 1 - h + 3/4*h^2 };
    k3lattice L { gram [[4]], omega [1] };
    print chi(O on X);
    print mukai(E, L);

Statements end with ``;`` and ``#`` starts a comment.  Polynomials take
rational coefficients, ``^`` powers and implicit multiplication (``5h``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import ChowClass, VarietyPresentation, format_rational, integrate, normal_form
from .charclasses import (
    SheafData,
    chern_character,
    euler_pairing,
    hrr_chi,
    structure_sheaf,
    tangent_sheaf,
    todd,
)
from .mukai import (
    K3LatticeContext,
    LatticeError,
    LedgerInstance,
    admissibility,
    degeneration_ledger,
    fibre_moduli_dimension,
    mukai_pairing,
    mukai_vector_of,
    odp_correction,
)
from .suite import bezout_section_count, example_suite, point_ideal_invariant
from .varieties import builtin_varieties, divisor_subvariety, product, projective_bundle_over_line, projective_space

__all__ = [
    "DSLError",
    "Program",
    "QueryResult",
    "parse_program",
    "execute",
    "emit",
    "parse_class",
    "QUERY_FUNCTIONS",
]

MAX_DIGITS = 1000
MAX_DEPTH = 100
MAX_EXPONENT = 1000
MAX_COEFF_BITS = 20000

QUERY_FUNCTIONS = (
    "integrate",
    "chi",
    "pairing",
    "d",
    "mukai",
    "admissible",
    "odp",
    "ledger",
    "bezout",
    "hilb",
    "examples",
    "ch",
    "td",
)


class DSLError(Exception):
    """A diagnostic tied to a source position (1-based line and column)."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


# -- lexer -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>[0-9]+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(){}\[\],;=+\-*/^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # number | name | punct | eof
    text: str
    line: int
    col: int
    offset: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise DSLError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "number" and len(text) > MAX_DIGITS:
            raise DSLError(f"integer literal longer than {MAX_DIGITS} digits", line, col)
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, text, line, col, pos))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1, pos))
    return tokens


# -- syntax tree -------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    line: int
    col: int


@dataclass(frozen=True)
class Num(Node):
    value: Fraction


@dataclass(frozen=True)
class Gen(Node):
    name: str


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Any
    right: Any


@dataclass(frozen=True)
class Neg(Node):
    operand: Any


@dataclass(frozen=True)
class Pow(Node):
    base: Any
    exponent: int


@dataclass(frozen=True)
class PSpace(Node):
    n: int


@dataclass(frozen=True)
class ProductExpr(Node):
    parts: tuple


@dataclass(frozen=True)
class DivisorExpr(Node):
    ambient: Any
    divisor: Any


@dataclass(frozen=True)
class BundleExpr(Node):
    twists: tuple


@dataclass(frozen=True)
class VarRef(Node):
    name: str


@dataclass(frozen=True)
class SheafRef(Node):
    name: str  # declared sheaf, or "O" / "T" with a variety
    variety: Any = None


@dataclass(frozen=True)
class VarietyDef(Node):
    name: str
    expr: Any
    text: str


@dataclass(frozen=True)
class SheafDef(Node):
    name: str
    variety: Any
    rank: int
    chern: Any
    text: str


@dataclass(frozen=True)
class LatticeDef(Node):
    name: str
    gram: tuple
    omega: tuple
    text: str


@dataclass(frozen=True)
class Query(Node):
    fn: str
    args: tuple
    text: str


@dataclass(frozen=True)
class Program:
    statements: tuple = ()


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0
        self.depth = 0
        self.varieties: set[str] = set(builtin_varieties())
        self.sheaves: set[str] = set()
        self.lattices: set[str] = set()
        self.declared: set[str] = set()

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return DSLError(message, tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "name") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            got = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, got {got!r}")
        return self.advance()

    def expect_name(self, what: str = "name") -> Token:
        if self.tok.kind != "name":
            raise self.error(f"expected {what}, got {self.tok.text or 'end of input'!r}")
        return self.advance()

    def expect_int(self) -> int:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        if self.tok.kind != "number":
            raise self.error(f"expected integer, got {self.tok.text or 'end of input'!r}")
        v = int(self.advance().text)
        return -v if neg else v

    def expect_rational(self) -> Fraction:
        tok = self.tok
        num = self.expect_int()
        if self.at("/"):
            self.advance()
            den = self.expect_int()
            if den == 0:
                raise self.error("division by zero", tok)
            return Fraction(num, den)
        return Fraction(num)

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error(f"nesting deeper than {MAX_DEPTH}")

    def leave(self):
        self.depth -= 1

    def text_from(self, start: Token) -> str:
        end = self.tokens[self.i - 1]
        return " ".join(self.source[start.offset : end.offset + len(end.text)].split())

    # grammar
    def program(self) -> Program:
        stmts = []
        while self.tok.kind != "eof":
            stmts.append(self.statement())
        return Program(tuple(stmts))

    def statement(self):
        tok = self.tok
        if tok.kind != "name":
            raise self.error(f"expected a statement, got {tok.text!r}")
        if tok.text == "variety":
            stmt = self.variety_def()
        elif tok.text == "sheaf":
            stmt = self.sheaf_def()
        elif tok.text == "k3lattice":
            stmt = self.lattice_def()
        elif tok.text == "print":
            stmt = self.query()
        else:
            raise self.error(f"unknown statement {tok.text!r}")
        self.expect(";")
        return stmt

    def declare(self, tok: Token, kind: set):
        name = tok.text
        if name in self.declared or name in self.varieties or name in ("O", "T", "P"):
            raise self.error(f"name {name!r} is already declared", tok)
        self.declared.add(name)
        kind.add(name)

    def variety_def(self) -> VarietyDef:
        start = self.advance()
        name = self.expect_name("variety name")
        self.expect("=")
        expr = self.vexpr()
        self.declare(name, self.varieties)
        return VarietyDef(start.line, start.col, name.text, expr, self.text_from(start))

    def vexpr(self):
        self.enter()
        first = self.tok
        parts = [self.vprimary()]
        while self.at("*"):
            self.advance()
            parts.append(self.vprimary())
        self.leave()
        if len(parts) == 1:
            return parts[0]
        return ProductExpr(first.line, first.col, tuple(parts))

    def vprimary(self):
        tok = self.tok
        if self.at("("):
            self.advance()
            inner = self.vexpr()
            self.expect(")")
            return inner
        name = self.expect_name("variety expression")
        if name.text == "P" and self.tok.kind == "number":
            n = int(self.advance().text)
            return PSpace(name.line, name.col, n)
        if name.text == "divisor" and self.at("("):
            self.advance()
            ambient = self.vexpr()
            self.expect(",")
            div = self.poly()
            self.expect(")")
            return DivisorExpr(name.line, name.col, ambient, div)
        if name.text == "projbundle" and self.at("("):
            self.advance()
            twists = [self.expect_int()]
            while self.at(","):
                self.advance()
                twists.append(self.expect_int())
            self.expect(")")
            return BundleExpr(name.line, name.col, tuple(twists))
        if name.text not in self.varieties:
            raise self.error(f"undeclared variety {name.text!r}", tok)
        return VarRef(name.line, name.col, name.text)

    def sheaf_def(self) -> SheafDef:
        start = self.advance()
        name = self.expect_name("sheaf name")
        self.expect("on")
        variety = self.vexpr()
        self.expect("{")
        self.expect("rank")
        rank_tok = self.tok
        rank = self.expect_int()
        if rank < 0:
            raise self.error("rank must be non-negative", rank_tok)
        self.expect(",")
        self.expect("chern")
        chern = self.poly()
        self.expect("}")
        self.declare(name, self.sheaves)
        return SheafDef(start.line, start.col, name.text, variety, rank, chern, self.text_from(start))

    def int_list(self) -> tuple:
        self.expect("[")
        out = []
        if not self.at("]"):
            out.append(self.expect_int())
            while self.at(","):
                self.advance()
                out.append(self.expect_int())
        self.expect("]")
        return tuple(out)

    def lattice_def(self) -> LatticeDef:
        start = self.advance()
        name = self.expect_name("lattice name")
        self.expect("{")
        self.expect("gram")
        self.expect("[")
        rows = [self.int_list()]
        while self.at(","):
            self.advance()
            rows.append(self.int_list())
        self.expect("]")
        self.expect(",")
        self.expect("omega")
        omega = self.int_list()
        self.expect("}")
        self.declare(name, self.lattices)
        return LatticeDef(start.line, start.col, name.text, tuple(rows), omega, self.text_from(start))

    # polynomials
    def poly(self):
        self.enter()
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            node = BinOp(op.line, op.col, op.text, node, self.term())
        self.leave()
        return node

    def term(self):
        node = self.unary()
        while True:
            if self.at("*") or self.at("/"):
                op = self.advance()
                node = BinOp(op.line, op.col, op.text, node, self.unary())
            elif self.tok.kind in ("number", "name") or self.at("("):
                tok = self.tok
                node = BinOp(tok.line, tok.col, "*", node, self.unary())
            else:
                return node

    def unary(self):
        if self.at("-") or self.at("+"):
            op = self.advance()
            self.enter()
            operand = self.unary()
            self.leave()
            return Neg(op.line, op.col, operand) if op.text == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            caret = self.advance()
            if self.tok.kind != "number":
                raise self.error("exponent must be a non-negative integer")
            e = int(self.advance().text)
            return Pow(caret.line, caret.col, base, e)
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            return Num(tok.line, tok.col, Fraction(int(tok.text)))
        if tok.kind == "name":
            self.advance()
            return Gen(tok.line, tok.col, tok.text)
        if self.at("("):
            self.advance()
            inner = self.poly()
            self.expect(")")
            return inner
        raise self.error(f"expected a polynomial term, got {tok.text or 'end of input'!r}")

    # queries
    def sheaf_ref(self):
        tok = self.tok
        name = self.expect_name("sheaf")
        if name.text in ("O", "T"):
            self.expect("on")
            return SheafRef(tok.line, tok.col, name.text, self.vexpr())
        if name.text not in self.sheaves:
            raise self.error(f"undeclared sheaf {name.text!r}", tok)
        return SheafRef(tok.line, tok.col, name.text)

    def lattice_ref(self):
        tok = self.tok
        name = self.expect_name("lattice")
        if name.text not in self.lattices:
            raise self.error(f"undeclared lattice {name.text!r}", tok)
        return VarRef(tok.line, tok.col, name.text)

    def query(self) -> Query:
        self.advance()
        start = self.tok
        fn_tok = self.expect_name("query function")
        fn = fn_tok.text
        if fn not in QUERY_FUNCTIONS:
            raise self.error(f"unknown query function {fn!r}", fn_tok)
        self.expect("(")
        args = getattr(self, f"args_{fn}")()
        if not self.at(")"):
            raise self.error(f"too many arguments for {fn}")
        self.advance()
        return Query(fn_tok.line, fn_tok.col, fn, tuple(args), self.text_from(start))

    def _ints(self, fn: str, count: int | None):
        out = []
        if not self.at(")"):
            out.append(self.expect_int())
            while self.at(","):
                self.advance()
                out.append(self.expect_int())
        if count is not None and len(out) != count:
            raise self.error(f"{fn} takes {count} integer arguments, got {len(out)}")
        return out

    def args_integrate(self):
        v = self.vexpr()
        self.expect(",")
        return [v, self.poly()]

    def args_chi(self):
        return [self.sheaf_ref()]

    args_ch = args_chi

    def args_td(self):
        return [self.vexpr()]

    def args_pairing(self):
        a = self.sheaf_ref()
        self.expect(",")
        return [a, self.sheaf_ref()]

    def args_d(self):
        return self._ints("d", 3)

    def args_admissible(self):
        return self._ints("admissible", 4)

    def args_bezout(self):
        return self._ints("bezout", 3)

    def args_odp(self):
        return self._ints("odp", None)

    def args_examples(self):
        return []

    def args_mukai(self):
        first = self.sheaf_ref()
        self.expect(",")
        if self.tok.kind == "name" and self.tok.text in self.lattices:
            return [first, self.lattice_ref()]
        second = self.sheaf_ref()
        self.expect(",")
        return [first, second, self.lattice_ref()]

    def args_hilb(self):
        n = self.expect_int()
        self.expect(",")
        if self.tok.kind == "number" or self.at("-"):
            return [n, self.expect_int()]
        return [n, self.vexpr()]

    def args_ledger(self):
        r = self.expect_int()
        self.expect(",")
        n = self.expect_int()
        self.expect(",")
        deg_t = self.expect_rational()
        self.expect(",")
        self.expect("[")
        fibres = []
        if not self.at("]"):
            fibres.append(self.ledger_pair())
            while self.at(","):
                self.advance()
                fibres.append(self.ledger_pair())
        self.expect("]")
        args = [r, n, deg_t, tuple(fibres)]
        if self.at(","):
            self.advance()
            args.append(self.expect_rational())
        return args

    def ledger_pair(self):
        self.expect("(")
        ri = self.expect_int()
        self.expect(",")
        di = self.expect_rational()
        self.expect(")")
        return (ri, di)


def parse_program(source: str) -> Program:
    """Parse DSL source; raises :class:`DSLError` with a position on failure."""
    if not isinstance(source, str):
        raise DSLError("source must be text", 1, 1)
    return _Parser(source).program()


# -- evaluation --------------------------------------------------------------


class EvalError(Exception):
    def __init__(self, message: str, node: Node | None = None):
        if node is not None:
            message = f"line {node.line}, column {node.col}: {message}"
        super().__init__(message)


@dataclass
class _Env:
    varieties: dict = field(default_factory=dict)
    sheaves: dict = field(default_factory=dict)
    lattices: dict = field(default_factory=dict)


def _check_size(cls: ChowClass, node: Node) -> ChowClass:
    for c in cls.terms.values():
        if c.numerator.bit_length() > MAX_COEFF_BITS or c.denominator.bit_length() > MAX_COEFF_BITS:
            raise EvalError("coefficient too large", node)
    return cls


def eval_poly(node, pres: VarietyPresentation) -> ChowClass:
    if isinstance(node, Num):
        return pres.scalar(node.value)
    if isinstance(node, Gen):
        if node.name not in pres.degrees:
            raise EvalError(f"unknown generator {node.name!r} on {pres.name}", node)
        return pres.gen(node.name)
    if isinstance(node, Neg):
        return -eval_poly(node.operand, pres)
    if isinstance(node, Pow):
        base = eval_poly(node.base, pres)
        if base.constant() == 0 and node.exponent > pres.dimension:
            return pres.zero()
        if node.exponent > MAX_EXPONENT:
            raise EvalError(f"exponent larger than {MAX_EXPONENT}", node)
        return _check_size(base ** node.exponent, node)
    if isinstance(node, BinOp):
        left = eval_poly(node.left, pres)
        right = eval_poly(node.right, pres)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return _check_size(left * right, node)
        if node.op == "/":
            if not right.terms or set(right.terms) != {()}:
                raise EvalError("can only divide by a nonzero rational", node)
            return _check_size(left / right.constant(), node)
    raise EvalError(f"cannot evaluate {type(node).__name__}", node)


def parse_class(text: str, pres: VarietyPresentation) -> ChowClass:
    """Parse a rendered class back into ``pres``."""
    p = _Parser(text)
    node = p.poly()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    try:
        return eval_poly(node, pres)
    except EvalError as exc:
        raise DSLError(str(exc), node.line, node.col) from None


def eval_variety(node, env: _Env) -> VarietyPresentation:
    if isinstance(node, PSpace):
        try:
            return projective_space(node.n)
        except ValueError as exc:
            raise EvalError(str(exc), node) from None
    if isinstance(node, VarRef):
        if node.name in env.varieties:
            return env.varieties[node.name]
        return builtin_varieties()[node.name]
    if isinstance(node, ProductExpr):
        return product(*(eval_variety(p, env) for p in node.parts))
    if isinstance(node, DivisorExpr):
        ambient = eval_variety(node.ambient, env)
        return divisor_subvariety(ambient, eval_poly(node.divisor, ambient))
    if isinstance(node, BundleExpr):
        return projective_bundle_over_line(node.twists)
    raise EvalError(f"cannot evaluate {type(node).__name__}", node)


def eval_sheaf(node: SheafRef, env: _Env) -> SheafData:
    if node.variety is not None:
        pres = eval_variety(node.variety, env)
        return structure_sheaf(pres) if node.name == "O" else tangent_sheaf(pres)
    return env.sheaves[node.name]


def _lattice_for(ctx: K3LatticeContext, pres: VarietyPresentation) -> K3LatticeContext:
    basis = [pres.gen(g) for g, d in pres.generators if d == 1]
    auto = K3LatticeContext.from_classes(basis, ctx.omega) if len(basis) == ctx.rank else None
    if auto is None or auto.gram != ctx.gram:
        raise LatticeError(f"lattice gram does not match the generators of {pres.name}")
    return auto


@dataclass(frozen=True)
class QueryResult:
    query: str
    value: str | None
    kind: str  # scalar | class | report | error
    provenance: str | None = None
    error: str | None = None

    def as_dict(self) -> dict:
        out = {"query": self.query, "value": self.value, "kind": self.kind}
        if self.provenance is not None:
            out["provenance"] = self.provenance
        if self.error is not None:
            out["error"] = self.error
        return out


def _scalar(q: Query, v, provenance=None) -> QueryResult:
    return QueryResult(q.text, format_rational(v), "scalar", provenance)


def _run_query(q: Query, env: _Env) -> QueryResult:
    fn, args = q.fn, q.args
    if fn == "integrate":
        pres = eval_variety(args[0], env)
        return _scalar(q, integrate(eval_poly(args[1], pres)))
    if fn == "chi":
        return _scalar(q, hrr_chi(eval_sheaf(args[0], env)))
    if fn == "ch":
        return QueryResult(q.text, str(chern_character(eval_sheaf(args[0], env)).total), "class")
    if fn == "td":
        return QueryResult(q.text, str(todd(eval_variety(args[0], env))), "class")
    if fn == "pairing":
        return _scalar(q, euler_pairing(eval_sheaf(args[0], env), eval_sheaf(args[1], env)))
    if fn == "d":
        return _scalar(q, fibre_moduli_dimension(*args))
    if fn == "mukai":
        ctx = env.lattices[args[-1].name]
        sheaves = [eval_sheaf(a, env) for a in args[:-1]]
        ctx = _lattice_for(ctx, sheaves[0].pres)
        vs = [mukai_vector_of(s, ctx) for s in sheaves]
        if len(vs) == 1:
            return QueryResult(q.text, str(vs[0]), "report")
        return _scalar(q, mukai_pairing(vs[0], vs[1], ctx))
    if fn == "admissible":
        return QueryResult(q.text, str(admissibility(*args)), "report")
    if fn == "odp":
        return _scalar(q, odp_correction(args))
    if fn == "ledger":
        r, n, deg_t, fibres = args[:4]
        deficit = args[4] if len(args) > 4 else None
        return QueryResult(q.text, str(degeneration_ledger(LedgerInstance(r, n, fibres, deg_t, deficit))), "report")
    if fn == "bezout":
        return _scalar(q, bezout_section_count(args))
    if fn == "hilb":
        n, chi = args
        if not isinstance(chi, int):
            pres = eval_variety(chi, env)
            e = integrate(pres.tangent_chern.grade(pres.dimension))
            chi = int(e)
        return _scalar(q, point_ideal_invariant(n, chi))
    if fn == "examples":
        reports = example_suite()
        good = sum(r.match for r in reports)
        res = QueryResult(q.text, f"{good}/{len(reports)} match", "report", "published")
        if good != len(reports):
            return QueryResult(q.text, res.value, "error", "published", "suite mismatch")
        return res
    raise EvalError(f"unknown query {fn!r}", q)


def _define(stmt, env: _Env) -> None:
    if isinstance(stmt, VarietyDef):
        env.varieties[stmt.name] = eval_variety(stmt.expr, env)
    elif isinstance(stmt, SheafDef):
        pres = eval_variety(stmt.variety, env)
        chern = eval_poly(stmt.chern, pres)
        env.sheaves[stmt.name] = SheafData(stmt.rank, chern)
    elif isinstance(stmt, LatticeDef):
        env.lattices[stmt.name] = K3LatticeContext(stmt.gram, stmt.omega)


def execute(program: Program) -> list[QueryResult]:
    """Run statements in order; failures become error results, never exceptions.

    A failed definition also yields an error result, and later statements that
    use the failed name report their own errors.
    """
    env = _Env()
    results: list[QueryResult] = []
    for stmt in program.statements:
        try:
            if isinstance(stmt, Query):
                results.append(_run_query(stmt, env))
            else:
                _define(stmt, env)
        except KeyError as exc:
            results.append(_failure(stmt, f"line {stmt.line}, column {stmt.col}: undefined {exc.args[0]!r}"))
        except RecursionError:
            results.append(_failure(stmt, f"line {stmt.line}, column {stmt.col}: expression too deep"))
        except Exception as exc:  # noqa: BLE001 - batch runs must not abort
            msg = str(exc)
            if not msg.startswith("line "):
                msg = f"line {stmt.line}, column {stmt.col}: {msg}"
            results.append(_failure(stmt, msg))
    return results


def _failure(stmt, message: str) -> QueryResult:
    return QueryResult(stmt.text, None, "error", None, message)


def emit(results: list[QueryResult], fmt: str = "text") -> bytes:
    """Render results as aligned text columns or newline-delimited JSON."""
    if fmt == "json":
        lines = [json.dumps(r.as_dict(), separators=(",", ":"), ensure_ascii=False) for r in results]
    elif fmt == "text":
        rows = []
        for r in results:
            value = r.value if r.error is None else f"ERROR {r.error}"
            row = [r.query, r.kind, value or ""]
            if r.provenance:
                row.append(f"[{r.provenance}]")
            rows.append(row)
        widths = [max((len(row[i]) for row in rows if len(row) > i), default=0) for i in range(4)]
        lines = []
        for row in rows:
            cells = [c.ljust(widths[i]) for i, c in enumerate(row[:-1])] + [row[-1]]
            lines.append("  ".join(cells).rstrip())
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return "".join(line + "\n" for line in lines).encode("utf-8")
