"""Terms and formulas of a first-order language."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, NamedTuple, Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class App:
    func: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


Term = Union[Var, Const, App]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Eq, Rel, Not, And, Or, Exists, Forall]
ATOMS = (Eq, Rel)
QUANTIFIERS = (Exists, Forall)


def neq(left: Term, right: Term) -> Not:
    return Not(Eq(left, right))


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; raises on an empty iterable."""
    return reduce(And, parts)


def disj(parts: Iterable[Formula]) -> Formula:
    return reduce(Or, parts)


def exists_many(names: Iterable[str], body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = Exists(name, body)
    return body


def forall_many(names: Iterable[str], body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = Forall(name, body)
    return body


# -- metadata --------------------------------------------------------------


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Const):
        return set()
    return set().union(*(term_vars(a) for a in t.args))


def term_level(t: Term) -> int:
    if isinstance(t, App):
        return 1 + max(term_level(a) for a in t.args)
    return 0


def term_constants(t: Term) -> set[str]:
    if isinstance(t, Const):
        return {t.name}
    if isinstance(t, Var):
        return set()
    return set().union(*(term_constants(a) for a in t.args))


def terms_of(f: Formula) -> tuple:
    if isinstance(f, Eq):
        return (f.left, f.right)
    return f.args


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, ATOMS):
        return set().union(*(term_vars(t) for t in terms_of(f)))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def bound_vars(f: Formula) -> set[str]:
    if isinstance(f, ATOMS):
        return set()
    if isinstance(f, Not):
        return bound_vars(f.body)
    if isinstance(f, (And, Or)):
        return bound_vars(f.left) | bound_vars(f.right)
    return bound_vars(f.body) | {f.var}


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


class Metadata(NamedTuple):
    level: int
    degree: int
    constants: frozenset


def metadata(f: Formula) -> Metadata:
    """Level, degree and constant set, by the usual structural recursion."""
    if isinstance(f, ATOMS):
        ts = terms_of(f)
        return Metadata(
            max((term_level(t) for t in ts), default=0),
            0,
            frozenset().union(*(term_constants(t) for t in ts)),
        )
    if isinstance(f, (Not, Exists, Forall)):
        inner = metadata(f.body)
        return Metadata(inner.level, inner.degree + 1, inner.constants)
    a, b = metadata(f.left), metadata(f.right)
    return Metadata(max(a.level, b.level), a.degree + b.degree, a.constants | b.constants)


def substitute(f: Formula, old: str, new: str) -> Formula:
    """Rename free occurrences of variable ``old`` to ``new`` (no capture check)."""

    def sub_t(t):
        if isinstance(t, Var):
            return Var(new) if t.name == old else t
        if isinstance(t, Const):
            return t
        return App(t.func, tuple(sub_t(a) for a in t.args))

    def go(g):
        if isinstance(g, Eq):
            return Eq(sub_t(g.left), sub_t(g.right))
        if isinstance(g, Rel):
            return Rel(g.name, tuple(sub_t(a) for a in g.args))
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, (And, Or)):
            return type(g)(go(g.left), go(g.right))
        if g.var == old:
            return g
        return type(g)(g.var, go(g.body))

    return go(f)


# -- printing --------------------------------------------------------------


def term_text(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    return f"{t.func}({','.join(term_text(a) for a in t.args)})"


def to_text(f: Formula) -> str:
    """Render in the ASCII grammar accepted by :func:`parse`."""
    if isinstance(f, Eq):
        return f"{term_text(f.left)} = {term_text(f.right)}"
    if isinstance(f, Rel):
        return f"{f.name}({','.join(term_text(a) for a in f.args)})"
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            return f"{term_text(f.body.left)} != {term_text(f.body.right)}"
        if isinstance(f.body, Rel):
            return "!" + to_text(f.body)
        return f"!({to_text(f.body)})"
    if isinstance(f, (And, Or)):
        op = " & " if isinstance(f, And) else " | "
        left = to_text(f.left)
        if not (isinstance(f.left, (ATOMS, Not)) or type(f.left) is type(f)):
            left = f"({left})"
        right = to_text(f.right)
        if not isinstance(f.right, (ATOMS, Not)):
            right = f"({right})"
        return left + op + right
    word = "exists" if isinstance(f, Exists) else "forall"
    return f"{word} {f.var} . {to_text(f.body)}"
