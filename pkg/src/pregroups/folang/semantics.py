"""Satisfaction over finite structures, prenex form and sentence classes."""
from __future__ import annotations

import enum
import itertools
from typing import Mapping

from ..fostruct import FiniteStructure
from .syntax import (
    ATOMS,
    And,
    App,
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Rel,
    Term,
    Var,
    free_vars,
    substitute,
)


class EvaluationError(ValueError):
    pass


def eval_term(m: FiniteStructure, t: Term, env: Mapping[str, str]) -> str:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise EvaluationError(f"variable {t.name!r} is not assigned") from None
    if isinstance(t, Const):
        return m.constants[t.name]
    return m.functions[t.func][tuple(eval_term(m, a, env) for a in t.args)]


def _partial_term(m, t, env):
    if isinstance(t, Var):
        return env.get(t.name)
    if isinstance(t, Const):
        return m.constants[t.name]
    args = []
    for a in t.args:
        v = _partial_term(m, a, env)
        if v is None:
            return None
        args.append(v)
    return m.functions[t.func][tuple(args)]


def _partial(m, f, env):
    """Kleene three-valued evaluation: None when unassigned variables matter."""
    if isinstance(f, Eq):
        a = _partial_term(m, f.left, env)
        if a is None:
            return None
        b = _partial_term(m, f.right, env)
        return None if b is None else a == b
    if isinstance(f, Rel):
        args = []
        for t in f.args:
            v = _partial_term(m, t, env)
            if v is None:
                return None
            args.append(v)
        return tuple(args) in m.relations[f.name]
    if isinstance(f, Not):
        v = _partial(m, f.body, env)
        return None if v is None else not v
    if isinstance(f, And):
        a = _partial(m, f.left, env)
        if a is False:
            return False
        b = _partial(m, f.right, env)
        if b is False:
            return False
        return True if (a and b) else None
    if isinstance(f, Or):
        a = _partial(m, f.left, env)
        if a is True:
            return True
        b = _partial(m, f.right, env)
        if b is True:
            return True
        return False if (a is False and b is False) else None
    # quantifier: decided only if the body is decided for every value of the bound variable
    if f.var in env:
        env = {k: v for k, v in env.items() if k != f.var}
    return _partial(m, f.body, env)


def _eval(m: FiniteStructure, f: Formula, env: dict) -> bool:
    if isinstance(f, Eq):
        return eval_term(m, f.left, env) == eval_term(m, f.right, env)
    if isinstance(f, Rel):
        return tuple(eval_term(m, t, env) for t in f.args) in m.relations[f.name]
    if isinstance(f, Not):
        return not _eval(m, f.body, env)
    if isinstance(f, And):
        return _eval(m, f.left, env) and _eval(m, f.right, env)
    if isinstance(f, Or):
        return _eval(m, f.left, env) or _eval(m, f.right, env)
    # Quantifiers range over the whole carrier. Before looping, check
    # whether the body is already decided without the bound variable.
    inner = {k: v for k, v in env.items() if k != f.var}
    decided = _partial(m, f.body, inner)
    if decided is not None:
        return decided
    want = isinstance(f, Exists)
    saved = env.get(f.var, None)
    try:
        for b in m.carrier:
            env[f.var] = b
            if _eval(m, f.body, env) == want:
                return want
        return not want
    finally:
        if saved is None:
            env.pop(f.var, None)
        else:
            env[f.var] = saved


def evaluate(m: FiniteStructure, f: Formula, assignment: Mapping[str, str] | None = None) -> bool:
    """Does ``m`` satisfy ``f`` under ``assignment``?"""
    env = dict(assignment or {})
    missing = free_vars(f) - set(env)
    if missing:
        raise EvaluationError(f"free variables without a value: {sorted(missing)}")
    for name, value in env.items():
        if value not in m.order:
            raise EvaluationError(f"{name!r} is assigned {value!r}, which is not in the carrier")
    return _eval(m, f, env)


def eval_naive(m: FiniteStructure, f: Formula, env: Mapping[str, str]) -> bool:
    """Direct transcription of the satisfaction clauses, without pruning."""
    if isinstance(f, Eq):
        return eval_term(m, f.left, env) == eval_term(m, f.right, env)
    if isinstance(f, Rel):
        return tuple(eval_term(m, t, env) for t in f.args) in m.relations[f.name]
    if isinstance(f, Not):
        return not eval_naive(m, f.body, env)
    if isinstance(f, And):
        return eval_naive(m, f.left, env) and eval_naive(m, f.right, env)
    if isinstance(f, Or):
        return eval_naive(m, f.left, env) or eval_naive(m, f.right, env)
    values = (eval_naive(m, f.body, {**env, f.var: b}) for b in m.carrier)
    return any(values) if isinstance(f, Exists) else all(values)


# -- prenex form -----------------------------------------------------------


def _fresh(base: str, used: set[str]) -> str:
    for i in itertools.count(1):
        name = f"{base}_{i}"
        if name not in used:
            return name


def rename_apart(f: Formula) -> Formula:
    """Give every quantifier its own variable, distinct from all free ones."""
    used = set(free_vars(f))

    def go(g):
        if isinstance(g, ATOMS):
            return g
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, (And, Or)):
            left = go(g.left)
            return type(g)(left, go(g.right))
        var, body = g.var, g.body
        if var in used:
            new = _fresh(var, used | free_vars(body))
            body = substitute(body, var, new)
            var = new
        used.add(var)
        return type(g)(var, go(body))

    return go(f)


def _pull(f):
    if isinstance(f, ATOMS):
        return [], f
    if isinstance(f, Not):
        prefix, matrix = _pull(f.body)
        flipped = [(Exists if q is Forall else Forall, v) for q, v in prefix]
        return flipped, Not(matrix)
    if isinstance(f, (And, Or)):
        pl, ml = _pull(f.left)
        pr, mr = _pull(f.right)
        return pl + pr, type(f)(ml, mr)
    prefix, matrix = _pull(f.body)
    return [(type(f), f.var)] + prefix, matrix


def prenex_parts(f: Formula) -> tuple[list[tuple[type, str]], Formula]:
    return _pull(rename_apart(f))


def to_prenex(f: Formula) -> Formula:
    """Equivalent formula with all quantifiers in front."""
    prefix, matrix = prenex_parts(f)
    for q, v in reversed(prefix):
        matrix = q(v, matrix)
    return matrix


class SentenceClass(str, enum.Enum):
    UNIVERSAL = "universal"
    EXISTENTIAL = "existential"
    NEITHER = "neither"


def classify(f: Formula) -> SentenceClass:
    """Universal / existential / neither, read off the prenex prefix.

    A quantifier-free sentence is reported as universal.
    """
    if free_vars(f):
        raise EvaluationError(f"not a sentence; free variables {sorted(free_vars(f))}")
    prefix, _ = prenex_parts(f)
    kinds = {q for q, _ in prefix}
    if kinds <= {Forall}:
        return SentenceClass.UNIVERSAL
    if kinds == {Exists}:
        return SentenceClass.EXISTENTIAL
    return SentenceClass.NEITHER
