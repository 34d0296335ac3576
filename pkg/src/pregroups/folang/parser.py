"""Recursive-descent parser for the ASCII formula grammar.

    formula := "forall" VAR "." formula | "exists" VAR "." formula | disj
    disj    := conj ( "|" conj )*
    conj    := unit ( "&" unit )*
    unit    := "!" unit | "(" formula ")" | quantified | atom
    atom    := term "=" term | term "!=" term | REL "(" term ("," term)* ")"
    term    := primary ( "*" primary )*
    primary := FUNC "(" term ("," term)* ")" | CONST | VAR | "(" term ")"

``a * b`` is shorthand for ``mul(a,b)``. Names are resolved against the
signature; a name that is a constant symbol is never a variable.
"""
from __future__ import annotations

import re

from ..fostruct import Signature
from .syntax import App, Const, Eq, Exists, Forall, Formula, Not, Or, And, Rel, Term, Var

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z0-9_]+)|(?P<op>!=|[()!,.=&|*]))")
KEYWORDS = {"forall", "exists"}
INFIX_FUNCTION = "mul"


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = "name" if m.group("name") else "op"
        value = m.group(kind)
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.tokens = tokenize(text)
        self.i = 0

    # helpers
    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], self.text)

    def accept(self, op: str) -> bool:
        kind, value, _ = self.peek()
        if kind == "op" and value == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        if not self.accept(op):
            kind, value, _ = self.peek()
            got = "end of input" if kind == "end" else repr(value)
            raise self.error(f"expected {op!r}, got {got}")

    def name(self) -> str:
        kind, value, _ = self.peek()
        if kind != "name":
            raise self.error("expected a name")
        self.i += 1
        return value

    # grammar
    def parse(self) -> Formula:
        f = self.formula()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def formula(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "name" and value in KEYWORDS:
            return self.quantified()
        return self.disj()

    def quantified(self) -> Formula:
        word = self.name()
        tok = self.peek()
        var = self.name()
        if var in KEYWORDS or var in self.sig.symbols():
            raise self.error(f"{var!r} cannot be used as a bound variable", tok)
        self.expect(".")
        body = self.formula()
        return Forall(var, body) if word == "forall" else Exists(var, body)

    def disj(self) -> Formula:
        f = self.conj()
        while self.accept("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unit()
        while self.accept("&"):
            f = And(f, self.unit())
        return f

    def unit(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "op" and value == "!" :
            self.i += 1
            return Not(self.unit())
        if kind == "name" and value in KEYWORDS:
            return self.quantified()
        if kind == "op" and value == "(":
            save = self.i
            try:
                self.i += 1
                f = self.formula()
                self.expect(")")
                nxt = self.peek()
                if not (nxt[0] == "op" and nxt[1] in ("=", "!=", "*")):
                    return f
            except ParseError:
                pass
            self.i = save
        return self.atom()

    def atom(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "name" and value in self.sig.relations:
            tok = self.peek()
            self.i += 1
            args = self.arguments()
            arity = self.sig.relations[value]
            if len(args) != arity:
                raise self.error(f"relation {value!r} expects {arity} arguments, got {len(args)}", tok)
            return Rel(value, tuple(args))
        left = self.term()
        if self.accept("="):
            return Eq(left, self.term())
        if self.accept("!="):
            return Not(Eq(left, self.term()))
        raise self.error("expected '=' or '!='")

    def arguments(self) -> list[Term]:
        self.expect("(")
        args = [self.term()]
        while self.accept(","):
            args.append(self.term())
        self.expect(")")
        return args

    def term(self) -> Term:
        t = self.primary()
        while True:
            tok = self.peek()
            if not self.accept("*"):
                return t
            if self.sig.functions.get(INFIX_FUNCTION) != 2:
                raise self.error(f"'*' needs a binary function symbol {INFIX_FUNCTION!r}", tok)
            t = App(INFIX_FUNCTION, (t, self.primary()))

    def primary(self) -> Term:
        if self.accept("("):
            t = self.term()
            self.expect(")")
            return t
        tok = self.peek()
        name = self.name()
        if name in KEYWORDS:
            raise self.error(f"keyword {name!r} used as a term", tok)
        if name in self.sig.functions:
            args = self.arguments()
            arity = self.sig.functions[name]
            if len(args) != arity:
                raise self.error(f"function {name!r} expects {arity} arguments, got {len(args)}", tok)
            return App(name, tuple(args))
        if name in self.sig.relations:
            raise self.error(f"relation {name!r} used as a term", tok)
        nxt = self.peek()
        if nxt[0] == "op" and nxt[1] == "(":
            raise self.error(f"unknown function symbol {name!r}", tok)
        if name in self.sig.constants:
            return Const(name)
        return Var(name)


def parse(text: str, sig: Signature) -> Formula:
    """Parse ``text`` into a formula over ``sig``."""
    return _Parser(text, sig).parse()


def parse_term(text: str, sig: Signature) -> Term:
    p = _Parser(text, sig)
    t = p.term()
    if p.peek()[0] != "end":
        raise p.error(f"unexpected {p.peek()[1]!r}")
    return t
