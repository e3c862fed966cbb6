"""A tiny exact-arithmetic expression language for quaternion sessions.

Grammar (whitespace insensitive):

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | atom
    atom   := RATIONAL | NAME | ("conj" | "norm") "(" expr ")" | "(" expr ")"

RATIONAL is an integer or p/q literal; there is no division operator, the
slash only occurs inside literals.  NAME covers the algebra symbols i, j, k
and the generator symbols of the active order (v1..v4, w1..w4, x1..x4, h)
plus user bindings.  Errors carry the offset and the expected token set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .algebra import Quat
from .order import Order, combo_str

_FUNCTIONS = ("conj", "norm")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, expected: tuple[str, ...] = ()) -> None:
        self.pos = pos
        self.expected = expected
        suffix = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"at position {pos}: {message}{suffix}")


class EvalError(ValueError):
    pass


# -- tokens ------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str   # NUMBER NAME OP END
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == "/":
                j = i + 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
                else:
                    raise ParseError("malformed rational literal", i,
                                     expected=("digit after '/'",))
            out.append(Token("NUMBER", text[start:i], start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            out.append(Token("NAME", text[start:i], start))
            continue
        if ch in "+-*()":
            out.append(Token("OP", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    out.append(Token("END", "", n))
    return out


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str          # "+", "-", "*"
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str        # "conj" or "norm"
    arg: "Expr"


Expr = Union[Num, Sym, Neg, BinOp, Call]


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def _take_op(self, *ops: str) -> Optional[str]:
        t = self.cur
        if t.kind == "OP" and t.text in ops:
            self.i += 1
            return t.text
        return None

    def _expect_op(self, op: str) -> None:
        t = self.cur
        if t.kind != "OP" or t.text != op:
            raise ParseError(f"got {t.text or 'end of input'!r}", t.pos, expected=(repr(op),))
        self.i += 1

    def parse(self) -> Expr:
        e = self.expr()
        t = self.cur
        if t.kind != "END":
            raise ParseError(f"trailing input {t.text!r}", t.pos,
                             expected=("'+'", "'-'", "'*'", "end of input"))
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            op = self._take_op("+", "-")
            if op is None:
                return e
            e = BinOp(op, e, self.term())

    def term(self) -> Expr:
        e = self.unary()
        while self._take_op("*"):
            e = BinOp("*", e, self.unary())
        return e

    def unary(self) -> Expr:
        if self._take_op("-"):
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        t = self.cur
        if t.kind == "NUMBER":
            self.i += 1
            if "/" in t.text:
                p, q = t.text.split("/")
                if int(q) == 0:
                    raise ParseError("zero denominator", t.pos)
                return Num(Fraction(int(p), int(q)))
            return Num(Fraction(int(t.text)))
        if t.kind == "NAME":
            self.i += 1
            if self.cur.kind == "OP" and self.cur.text == "(":
                if t.text not in _FUNCTIONS:
                    raise ParseError(f"unknown function {t.text!r}", t.pos,
                                     expected=_FUNCTIONS)
                self._expect_op("(")
                arg = self.expr()
                self._expect_op(")")
                return Call(t.text, arg)
            return Sym(t.text)
        if t.kind == "OP" and t.text == "(":
            self.i += 1
            e = self.expr()
            self._expect_op(")")
            return e
        raise ParseError(f"got {t.text or 'end of input'!r}", t.pos,
                         expected=("number", "name", "'('", "'-'"))


def parse(text: str) -> Expr:
    return _Parser(tokenize(text)).parse()


# -- printing ----------------------------------------------------------------

def format_expr(e: Expr) -> str:
    """Canonical text; format_expr(parse(s)) round-trips the value."""
    return _fmt(e, 0)


def _fmt(e: Expr, prec: int) -> str:
    # precedence levels: 0 additive, 1 multiplicative, 2 unary/atoms
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}({_fmt(e.arg, 0)})"
    if isinstance(e, Neg):
        body = f"-{_fmt(e.operand, 2)}"
        return f"({body})" if prec > 1 else body
    assert isinstance(e, BinOp)
    if e.op == "*":
        body = f"{_fmt(e.left, 1)}*{_fmt(e.right, 2)}"
        return f"({body})" if prec > 1 else body
    body = f"{_fmt(e.left, 0)} {e.op} {_fmt(e.right, 1)}"
    return f"({body})" if prec > 0 else body


# -- evaluation --------------------------------------------------------------

class Session:
    """Evaluation context: an order, its algebra, and user bindings."""

    def __init__(self, order: Order) -> None:
        self.order = order
        self.params = order.params
        self.bindings: dict[str, Quat] = {
            "i": Quat.basis(self.params, 1),
            "j": Quat.basis(self.params, 2),
            "k": Quat.basis(self.params, 3),
        }
        for name, gen in zip(order.gen_names, order.basis):
            if name != "1":
                self.bindings[name] = gen
        self._reserved = frozenset(self.bindings) | frozenset(_FUNCTIONS)

    def lookup(self, name: str) -> Quat:
        q = self.bindings.get(name)
        if q is None:
            raise EvalError(f"unbound symbol {name!r}")
        return q

    def bind(self, name: str, value: Quat) -> None:
        if not (name and (name[0].isalpha() or name[0] == "_")
                and all(c.isalnum() or c == "_" for c in name)):
            raise EvalError(f"invalid variable name {name!r}")
        if name in self._reserved:
            raise EvalError(f"{name!r} is reserved")
        self.bindings[name] = value

    def eval(self, e: Expr) -> Quat:
        return _eval(e, self)


def _eval(e: Expr, session: Session) -> Quat:
    if isinstance(e, Num):
        return Quat.scalar(session.params, e.value)
    if isinstance(e, Sym):
        return session.lookup(e.name)
    if isinstance(e, Neg):
        return -_eval(e.operand, session)
    if isinstance(e, Call):
        v = _eval(e.arg, session)
        if e.func == "conj":
            return v.conj()
        return Quat.scalar(session.params, v.norm())
    assert isinstance(e, BinOp)
    lhs = _eval(e.left, session)
    rhs = _eval(e.right, session)
    if e.op == "+":
        return lhs + rhs
    if e.op == "-":
        return lhs - rhs
    return lhs * rhs


def evaluate(text: str, session: Session) -> Quat:
    return session.eval(parse(text))


def describe_value(session: Session, q: Quat) -> dict:
    """REPL payload: algebra coordinates plus generator coordinates if integral."""
    coords = session.order.coords_in(q)
    return {
        "algebra": [str(c) for c in q.coords],
        "generator": list(coords) if coords is not None else None,
        "text": str(q),
        "generator_text": (
            combo_str(coords, session.order.gen_names) if coords is not None else None
        ),
    }
