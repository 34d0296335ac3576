"""Equation systems over finite structures: varieties, cores, transfer sentences."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .folang import parser
from .folang.semantics import eval_term, evaluate
from .folang.syntax import And, App, Eq, Var, Formula, Not, conj, forall_many, free_vars, to_text
from .fostruct import FiniteStructure, Signature

MAX_CORE_EQUATIONS = 12


class EquationError(ValueError):
    pass


@dataclass(frozen=True)
class EquationSystem:
    variables: tuple[str, ...]
    equations: tuple[Eq, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "equations", tuple(self.equations))
        if len(set(self.variables)) != len(self.variables):
            raise EquationError("variables must be distinct")
        for eq in self.equations:
            if not isinstance(eq, Eq):
                raise EquationError(f"not an equation: {to_text(eq)}")
            extra = free_vars(eq) - set(self.variables)
            if extra:
                raise EquationError(f"{to_text(eq)} uses variables outside the system: {sorted(extra)}")

    @classmethod
    def parse(cls, texts: Iterable[str], sig: Signature, variables: Sequence[str] | None = None) -> "EquationSystem":
        """Parse ``term = term`` strings; variables default to first-appearance order."""
        eqs = [parse_equation(t, sig) for t in texts]
        if variables is None:
            seen: list[str] = []
            for eq in eqs:
                for v in _ordered_vars(eq):
                    if v not in seen:
                        seen.append(v)
            variables = seen
        return cls(tuple(variables), tuple(eqs))

    def subsystem(self, indices: Iterable[int]) -> "EquationSystem":
        return EquationSystem(self.variables, tuple(self.equations[i] for i in indices))

    def __len__(self):
        return len(self.equations)


def _ordered_vars(eq: Eq) -> list[str]:
    out: list[str] = []

    def walk(t):
        if isinstance(t, App):
            for a in t.args:
                walk(a)
        elif isinstance(t, Var) and t.name not in out:
            out.append(t.name)

    walk(eq.left)
    walk(eq.right)
    return out


def parse_equation(text: str, sig: Signature) -> Eq:
    f = parser.parse(text, sig)
    if not isinstance(f, Eq):
        raise EquationError(f"{text!r} is not of the form term = term")
    return f


def variety(m: FiniteStructure, sys: EquationSystem) -> frozenset[tuple[str, ...]]:
    """All tuples over the carrier solving every equation of ``sys``."""
    for eq in sys.equations:
        _check_symbols(m, eq)
    sols = set()
    for values in itertools.product(m.carrier, repeat=len(sys.variables)):
        env = dict(zip(sys.variables, values))
        if all(eval_term(m, eq.left, env) == eval_term(m, eq.right, env) for eq in sys.equations):
            sols.add(values)
    return frozenset(sols)


def _check_symbols(m: FiniteStructure, eq: Eq) -> None:
    def walk(t):
        if isinstance(t, App):
            table = m.functions.get(t.func)
            n = m.signature.functions.get(t.func)
            if table is None or n is None or len(table) != len(m.carrier) ** n:
                raise EquationError(f"function {t.func!r} is not totally interpreted")
            for a in t.args:
                walk(a)

    walk(eq.left)
    walk(eq.right)


def noetherian_core(m: FiniteStructure, sys: EquationSystem) -> EquationSystem:
    """Smallest subsystem with the same variety; earlier equations win ties."""
    if len(sys) > MAX_CORE_EQUATIONS:
        raise EquationError(f"core search is capped at {MAX_CORE_EQUATIONS} equations")
    target = variety(m, sys)
    for size in range(len(sys) + 1):
        for idx in itertools.combinations(range(len(sys)), size):
            sub = sys.subsystem(idx)
            if variety(m, sub) == target:
                return sub
    return sys  # unreachable: the full system always qualifies


def transfer_sentence(core: EquationSystem, s: Eq) -> Formula:
    """forall x1..xm !(s1 & ... & sr & !s), i.e. the core implies ``s``."""
    if not isinstance(s, Eq):
        raise EquationError("the conclusion must be an equation")
    extra = free_vars(s) - set(core.variables)
    if extra:
        raise EquationError(f"conclusion uses variables outside the core: {sorted(extra)}")
    if core.equations:
        body: Formula = Not(And(conj(core.equations), Not(s)))
    else:
        body = s
    return forall_many(core.variables, body)


def core_report(m: FiniteStructure, sys: EquationSystem) -> dict:
    core = noetherian_core(m, sys)
    kept = set(core.equations)
    checks = []
    for eq in sys.equations:
        if eq in kept:
            continue
        sentence = transfer_sentence(core, eq)
        checks.append({"equation": to_text(eq), "sentence": to_text(sentence), "holds": evaluate(m, sentence)})
    return {"core": [to_text(e) for e in core.equations], "discarded": checks}
