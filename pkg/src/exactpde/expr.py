"""Expression trees for PDE residuals and solution formulas.

One immutable tree type serves both uses.  Residuals may mention the field
variables ``w, w_t, w_x, w_tt, w_tx, w_xx``; solutions may not (see
:func:`validate_solution`).

Grammar (whitespace-insensitive)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' unary)?          # right-associative
    primary := NUMBER | NAME | NAME '(' args ')' | SLOT PRIMES? '(' expr ')'
             | 'int' '(' NAME '=' expr '..' expr ',' expr ')'
             | 'root' '(' NAME 'in' '[' expr ',' expr ']' ':' expr ';' expr ')'
             | '(' expr ')'

``^`` binds tighter than unary minus, so ``-a^2`` is ``-(a^2)``.  A minus
sign directly in front of a number literal (not followed by ``^``) folds
into a negative constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .errors import ExprSyntaxError, SourceSpan, UnboundName, ValidationError

FIELD_NAMES = ("w", "w_t", "w_x", "w_tt", "w_tx", "w_xx")
VARIABLES = ("t", "x")
UNARY_OPS = ("exp", "ln", "sqrt", "sin", "cos", "sinh", "cosh", "tan", "abs")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")
SPECIAL_ARITY = {
    "lambertw0": 1,
    "lambertwm1": 1,
    "erf": 1,
    "expint1": 1,
    "whitM": 3,
    "kummerM": 3,
}
RESERVED = set(FIELD_NAMES) | set(VARIABLES) | set(UNARY_OPS) | set(SPECIAL_ARITY) | {"int", "root", "in"}
MAX_DERIV_ORDER = 3


def _span():
    return field(default=None, compare=False, repr=False)


class Expr:
    """Base class of all expression nodes."""

    __slots__ = ()

    def children(self) -> tuple["Expr", ...]:
        return ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Const(Expr):
    value: float
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Param(Expr):
    name: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Var(Expr):
    """``t``, ``x`` or a name bound by an enclosing integral or root."""

    name: str
    bound: bool = False
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class FieldVar(Expr):
    name: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class ArbFn(Expr):
    """Application of an arbitrary-function slot or one of its derivatives."""

    slot: str
    order: int
    arg: Expr
    span: SourceSpan | None = _span()

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Unary(Expr):
    op: str
    arg: Expr
    span: SourceSpan | None = _span()

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    lhs: Expr
    rhs: Expr
    span: SourceSpan | None = _span()

    def children(self):
        return (self.lhs, self.rhs)


@dataclass(frozen=True)
class Special(Expr):
    kind: str
    args: tuple[Expr, ...]
    span: SourceSpan | None = _span()

    def children(self):
        return self.args


@dataclass(frozen=True)
class Integral(Expr):
    """``int(dummy = lower .. upper, integrand)``; lower must be constant."""

    dummy: str
    lower: Expr
    upper: Expr
    integrand: Expr
    span: SourceSpan | None = _span()

    def children(self):
        return (self.lower, self.upper, self.integrand)


@dataclass(frozen=True)
class Root(Expr):
    """``root(unknown in [lo, hi] : equation ; body)``.

    ``body`` is evaluated with ``unknown`` bound to the bracketed root of
    ``equation = 0``.  The unknown is in scope in ``equation`` and ``body``
    only; the bracket bounds are evaluated in the enclosing scope.
    """

    unknown: str
    lo: Expr
    hi: Expr
    equation: Expr
    body: Expr
    span: SourceSpan | None = _span()

    def children(self):
        return (self.lo, self.hi, self.equation, self.body)


# aliases matching the node vocabulary used elsewhere
IntegralNode = Integral
RootNode = Root


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


# ---------------------------------------------------------------- tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d+)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*'*)
  | (?P<dots>\.\.)
  | (?P<op>[-+*/^(),\[\]:;=])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str  # num | name | op | dots | end
    text: str
    start: int
    end: int


def _tokenize(src: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", SourceSpan(pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    toks.append(_Tok("end", "", len(src), len(src)))
    return toks


# ------------------------------------------------------------------- parser


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0
        self.scope: list[str] = []

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        return ExprSyntaxError(msg, SourceSpan(tok.start, max(tok.end, tok.start)))

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind not in ("op", "dots", "name"):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def span_from(self, start: int) -> SourceSpan:
        return SourceSpan(start, self.toks[self.i - 1].end)

    # grammar -------------------------------------------------------------

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        start = self.tok.start
        lhs = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = "add" if self.advance().text == "+" else "sub"
            rhs = self.term()
            lhs = Binary(op, lhs, rhs, span=self.span_from(start))
        return lhs

    def term(self) -> Expr:
        start = self.tok.start
        lhs = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = "mul" if self.advance().text == "*" else "div"
            rhs = self.unary()
            lhs = Binary(op, lhs, rhs, span=self.span_from(start))
        return lhs

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            start = self.advance().start
            nxt, after = self.tok, self.peek()
            if nxt.kind == "num" and not (after.kind == "op" and after.text == "^"):
                self.advance()
                return Const(-float(nxt.text), span=self.span_from(start))
            arg = self.unary()
            return Unary("neg", arg, span=self.span_from(start))
        return self.power()

    def power(self) -> Expr:
        start = self.tok.start
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            exponent = self.unary()
            return Binary("pow", base, exponent, span=self.span_from(start))
        return base

    def primary(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Const(float(tok.text), span=SourceSpan(tok.start, tok.end))
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "name":
            return self.name_expr()
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def name_expr(self) -> Expr:
        tok = self.advance()
        raw = tok.text
        name = raw.rstrip("'")
        primes = len(raw) - len(name)
        span = SourceSpan(tok.start, tok.end)
        is_call = self.tok.kind == "op" and self.tok.text == "("
        if primes and not is_call:
            raise self.error(f"derivative {raw!r} must be applied to an argument", tok)
        if name == "int" and is_call and not primes:
            return self.integral(tok.start)
        if name == "root" and is_call and not primes:
            return self.root(tok.start)
        if not is_call:
            if name in self.scope:
                return Var(name, bound=True, span=span)
            if name in VARIABLES:
                return Var(name, span=span)
            if name in FIELD_NAMES:
                return FieldVar(name, span=span)
            if name in RESERVED:
                raise self.error(f"{name!r} is reserved and needs arguments", tok)
            return Param(name, span=span)
        # call
        self.advance()
        args = [self.expr()]
        while self.tok.kind == "op" and self.tok.text == ",":
            self.advance()
            args.append(self.expr())
        self.expect(")")
        span = self.span_from(tok.start)
        if name in UNARY_OPS and not primes:
            if len(args) != 1:
                raise self.error(f"{name} takes one argument", tok)
            return Unary(name, args[0], span=span)
        if name in SPECIAL_ARITY and not primes:
            if len(args) != SPECIAL_ARITY[name]:
                raise self.error(f"{name} takes {SPECIAL_ARITY[name]} argument(s)", tok)
            return Special(name, tuple(args), span=span)
        if name in RESERVED or name in self.scope:
            raise self.error(f"{name!r} cannot be called", tok)
        if len(args) != 1:
            raise self.error(f"arbitrary function {name!r} takes one argument", tok)
        if primes > MAX_DERIV_ORDER:
            raise self.error(f"derivative order {primes} exceeds {MAX_DERIV_ORDER}", tok)
        return ArbFn(name, primes, args[0], span=span)

    def binder_name(self) -> str:
        tok = self.tok
        if tok.kind != "name" or tok.text.endswith("'"):
            raise self.error("expected a binder name")
        if tok.text in RESERVED:
            raise self.error(f"cannot bind reserved name {tok.text!r}")
        self.advance()
        return tok.text

    def integral(self, start: int) -> Expr:
        self.expect("(")
        dummy = self.binder_name()
        self.expect("=")
        lower = self.expr()
        self.expect("..")
        upper = self.expr()
        self.expect(",")
        self.scope.append(dummy)
        body = self.expr()
        self.scope.pop()
        self.expect(")")
        return Integral(dummy, lower, upper, body, span=self.span_from(start))

    def root(self, start: int) -> Expr:
        self.expect("(")
        unknown = self.binder_name()
        self.expect("in")
        self.expect("[")
        lo = self.expr()
        self.expect(",")
        hi = self.expr()
        self.expect("]")
        self.expect(":")
        self.scope.append(unknown)
        equation = self.expr()
        self.expect(";")
        body = self.expr()
        self.scope.pop()
        self.expect(")")
        return Root(unknown, lo, hi, equation, body, span=self.span_from(start))


def parse(src: str, params: set[str] | frozenset[str] | None = None) -> Expr:
    """Parse ``src`` into an expression tree.

    ``params``, when given, names the entry's constant parameters; binding
    one of them as an integration dummy or root unknown is a syntax error.
    """
    e = _Parser(src).parse()
    _check_binders(e, params or frozenset())
    return e


def _check_binders(e: Expr, params) -> None:
    free = {n.name for n in walk(e) if isinstance(n, Param)}
    for node in walk(e):
        if isinstance(node, (Integral, Root)):
            name = node.dummy if isinstance(node, Integral) else node.unknown
            if name in params:
                raise ExprSyntaxError(f"binder {name!r} shadows parameter {name!r}", node.span)
            if name in free:
                raise UnboundName(f"{name!r} is used outside its binder or shadows a parameter", node.span)


# ------------------------------------------------------------------ printer

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}
_SYMBOL = {"add": " + ", "sub": " - ", "mul": "*", "div": "/", "pow": "^"}


def _fmt_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(float(v))


def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return _PREC[e.op]
    if isinstance(e, Unary) and e.op == "neg":
        return 3
    if isinstance(e, Const) and (e.value < 0 or str(e.value).startswith("-")):
        return 3
    return 5


def to_text(e: Expr) -> str:
    """Canonical text; ``parse(to_text(e)) == e`` for every tree."""
    if isinstance(e, Const):
        return _fmt_number(e.value)
    if isinstance(e, (Param, FieldVar)):
        return e.name
    if isinstance(e, Var):
        return e.name
    if isinstance(e, ArbFn):
        return f"{e.slot}{chr(39) * e.order}({to_text(e.arg)})"
    if isinstance(e, Unary):
        if e.op == "neg":
            a = e.arg
            inner = to_text(a)
            if isinstance(a, Const) or _prec(a) < 3:
                inner = f"({inner})"
            return "-" + inner
        return f"{e.op}({to_text(e.arg)})"
    if isinstance(e, Special):
        return f"{e.kind}({', '.join(to_text(a) for a in e.args)})"
    if isinstance(e, Integral):
        return (
            f"int({e.dummy} = {to_text(e.lower)} .. {to_text(e.upper)}, "
            f"{to_text(e.integrand)})"
        )
    if isinstance(e, Root):
        return (
            f"root({e.unknown} in [{to_text(e.lo)}, {to_text(e.hi)}] : "
            f"{to_text(e.equation)} ; {to_text(e.body)})"
        )
    if isinstance(e, Binary):
        p = _PREC[e.op]
        lhs, rhs = to_text(e.lhs), to_text(e.rhs)
        lp, rp = _prec(e.lhs), _prec(e.rhs)
        if e.op == "pow":
            if lp <= 4:
                lhs = f"({lhs})"
            if rp < 3:
                rhs = f"({rhs})"
        else:
            if lp < p or lp == 3:
                lhs = f"({lhs})"
            if rp <= p or rp == 3:
                rhs = f"({rhs})"
        return f"{lhs}{_SYMBOL[e.op]}{rhs}"
    raise TypeError(f"not an expression node: {e!r}")


print_expr = to_text


# -------------------------------------------------------------- inspection


def free_names(e: Expr) -> set[str]:
    """Parameters, slots and field variables used by ``e``.

    ``t``, ``x`` and bound names are excluded.
    """
    out: set[str] = set()
    for node in walk(e):
        if isinstance(node, (Param, FieldVar)):
            out.add(node.name)
        elif isinstance(node, ArbFn):
            out.add(node.slot)
    return out


def params_of(e: Expr) -> set[str]:
    return {n.name for n in walk(e) if isinstance(n, Param)}


def slots_of(e: Expr) -> set[str]:
    return {n.slot for n in walk(e) if isinstance(n, ArbFn)}


def validate_solution(e: Expr) -> None:
    for node in walk(e):
        if isinstance(node, FieldVar):
            raise ValidationError(f"field variable {node.name!r} inside a solution expression", node.span)


def validate_residual(e: Expr) -> None:
    for node in walk(e):
        if isinstance(node, (Integral, Root)):
            raise ValidationError("residuals may not contain integrals or roots", node.span)


def integral_depth(e: Expr) -> int:
    """Maximum nesting depth of integral nodes."""
    if isinstance(e, Integral):
        return 1 + max(integral_depth(c) for c in e.children())
    kids = e.children()
    return max((integral_depth(c) for c in kids), default=0)


def additive_terms(e: Expr) -> list[tuple[float, Expr]]:
    """Split ``e`` into signed top-level additive terms.

    Constant positive factors are distributed so that scaling a residual by
    a constant scales every term alike.
    """
    if isinstance(e, Binary) and e.op in ("add", "sub"):
        rhs = additive_terms(e.rhs)
        if e.op == "sub":
            rhs = [(-s, t) for s, t in rhs]
        return additive_terms(e.lhs) + rhs
    if isinstance(e, Unary) and e.op == "neg":
        return [(-s, t) for s, t in additive_terms(e.arg)]
    if isinstance(e, Binary) and e.op == "mul":
        if isinstance(e.lhs, Const):
            return [(s * e.lhs.value, t) for s, t in additive_terms(e.rhs)]
        if isinstance(e.rhs, Const):
            return [(s * e.rhs.value, t) for s, t in additive_terms(e.lhs)]
    return [(1.0, e)]
