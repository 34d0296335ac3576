"""Existential sentence describing a finite subset up to L-isomorphism."""
from __future__ import annotations

import itertools
from typing import Sequence

from ..fostruct import FiniteStructure, StructureError
from .syntax import App, Const, Eq, Exists, Formula, Not, Rel, Var, conj, exists_many, neq

DELTA = "delta"


def _variable_names(m: FiniteStructure, k: int) -> list[str]:
    taken = m.signature.symbols()
    for prefix in ("x", "v", "var"):
        names = [f"{prefix}{i}" for i in range(1, k + 1)]
        if not taken.intersection(names):
            return names
    raise StructureError("cannot choose variable names disjoint from the signature")


def characteristic_sentence(m: FiniteStructure, s: Sequence[str], form: str = "finite") -> Formula:
    """exists x1..xk (distinctness & constants & function graph & relation diagram).

    The witness x_i -> s[i] satisfies the matrix in ``m``, and a structure
    N over the same signature satisfies the sentence exactly when ``s`` is
    L-isomorphic to a subset of N.

    ``form="delta"`` replaces the inequations against every constant by
    ``!delta(x_j)`` for elements that interpret no constant; that variant
    is only sound for structures obeying the delta axioms.
    """
    s = list(s)
    if len(set(s)) != len(s):
        raise StructureError("subset lists an element twice")
    for e in s:
        if e not in m.order:
            raise StructureError(f"{e!r} is not in the carrier")
    if not s:
        return Exists("x", Eq(Var("x"), Var("x")))
    if form not in ("finite", "delta"):
        raise ValueError(f"unknown form {form!r}")
    if form == "delta" and m.signature.relations.get(DELTA) != 1:
        raise StructureError("delta form needs a unary 'delta' relation")

    k = len(s)
    names = _variable_names(m, k)
    xs = [Var(n) for n in names]
    where = {e: i for i, e in enumerate(s)}
    sig = m.signature
    parts: list[Formula] = []

    # pairwise distinct
    for i, j in itertools.combinations(range(k), 2):
        parts.append(neq(xs[i], xs[j]))

    # constants
    for i, e in enumerate(s):
        named = set(m.constants_of[e])
        if named:
            parts.extend(Eq(xs[i], Const(c)) for c in sig.constants if c in named)
            if form == "finite":
                parts.extend(neq(xs[i], Const(c)) for c in sig.constants if c not in named)
        elif form == "finite":
            parts.extend(neq(xs[i], Const(c)) for c in sig.constants)
        else:
            parts.append(Not(Rel(DELTA, (xs[i],))))

    # function values: pinned to a variable when they land in s, else kept out of s
    for f, n in sig.functions.items():
        table = m.functions[f]
        for idx in itertools.product(range(k), repeat=n):
            lhs = App(f, tuple(xs[i] for i in idx))
            value = table[tuple(s[i] for i in idx)]
            if value in where:
                parts.append(Eq(lhs, xs[where[value]]))
            else:
                parts.extend(neq(lhs, xs[j]) for j in range(k))

    # full relation diagram
    for r, n in sig.relations.items():
        rel = m.relations[r]
        for idx in itertools.product(range(k), repeat=n):
            atom = Rel(r, tuple(xs[i] for i in idx))
            parts.append(atom if tuple(s[i] for i in idx) in rel else Not(atom))

    if not parts:
        parts.append(Eq(xs[0], xs[0]))
    return exists_many(names, conj(parts))


def witness_assignment(m: FiniteStructure, s: Sequence[str]) -> dict[str, str]:
    return dict(zip(_variable_names(m, len(s)), s))
