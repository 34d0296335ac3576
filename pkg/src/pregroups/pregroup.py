"""Pregroups as L^pre structures, Stallings' axioms and S-pregroup constants."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import fostruct, kernels
from .folang import parse
from .folang.semantics import evaluate
from .fostruct import FiniteStructure, Signature, StructureError

IDENTITY = "1"
INV = "inv"
D = "D"
M = "M"
DELTA = "delta"

PREGROUP_SIGNATURE = Signature(constants=(IDENTITY,), functions={INV: 1}, relations={D: 2, M: 3})

AXIOM_NAMES = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")

AXIOM_TEXTS = {
    "i": "forall x . forall y . forall z . (!M(x,y,z) | D(x,y))",
    "ii": "forall x . forall y . (!D(x,y) | (exists z . M(x,y,z)))",
    "iii": "forall w . forall x . forall y . forall z . (!(M(w,x,y) & M(w,x,z)) | y = z)",
    "iv": "forall x . (M(x,1,x) & M(1,x,x))",
    "v": "forall x . (M(x,inv(x),1) & M(inv(x),x,1))",
    "vi": "forall x . forall y . forall z . (!M(x,y,z) | M(inv(y),inv(x),inv(z)))",
    "vii": (
        "forall a . forall b . forall c . forall r . forall s . forall x . "
        "(!(M(a,b,r) & M(b,c,s)) | ((M(a,s,x) & M(r,c,x)) | (!M(a,s,x) & !M(r,c,x))))"
    ),
    "viii": (
        "forall a . forall b . forall c . forall d . forall x . forall y . forall z . "
        "(!(M(a,b,x) & M(b,c,y) & M(c,d,z)) | (exists r . exists s . (M(a,y,r) | M(y,d,s))))"
    ),
}

AXIOM_VARIABLES = {
    "i": "xyz", "ii": "xy", "iii": "wxyz", "iv": "x", "v": "x", "vi": "xyz",
    "vii": "abcrsx", "viii": "abcdxyz",
}


class PregroupError(StructureError):
    pass


class Pregroup:
    """A finite structure read as a (candidate) pregroup.

    The structure needs the constant ``1``, the unary function ``inv`` and
    the relations ``D`` (binary) and ``M`` (ternary); it may carry further
    constants and a unary ``delta`` relation. Nothing is assumed about the
    axioms until :func:`check_axioms` says so.
    """

    def __init__(self, structure: FiniteStructure):
        sig = structure.signature
        if IDENTITY not in sig.constants or sig.functions.get(INV) != 1:
            raise PregroupError("a pregroup needs the constant '1' and a unary function 'inv'")
        if sig.relations.get(D) != 2 or sig.relations.get(M) != 3:
            raise PregroupError("a pregroup needs relations D (binary) and M (ternary)")
        findings = fostruct.validate_structure(structure)
        if findings:
            raise PregroupError("invalid structure: " + "; ".join(map(str, findings)))
        self.structure = structure

    def __repr__(self):
        return f"<{type(self).__name__} on {list(self.carrier)}>"

    @property
    def carrier(self) -> tuple[str, ...]:
        return self.structure.carrier

    @property
    def signature(self) -> Signature:
        return self.structure.signature

    @cached_property
    def index(self) -> dict[str, int]:
        return dict(self.structure.order)

    @property
    def identity(self) -> str:
        return self.structure.constants[IDENTITY]

    def inverse(self, x: str) -> str:
        return self.structure.functions[INV][(x,)]

    @cached_property
    def domain(self) -> frozenset:
        return self.structure.relations[D]

    @cached_property
    def mult(self) -> frozenset:
        return self.structure.relations[M]

    @cached_property
    def _products(self) -> dict[tuple[str, str], str]:
        out: dict = {}
        order = self.index
        for a, b, c in sorted(self.mult, key=lambda t: [order[x] for x in t]):
            out.setdefault((a, b), c)
        return out

    def product(self, a: str, b: str) -> str | None:
        """ab when (a, b) is in D, otherwise None."""
        if (a, b) not in self.domain:
            return None
        return self._products.get((a, b))

    @cached_property
    def tables(self):
        idx = self.index
        n = len(self.carrier)
        prod = [[-1] * n for _ in range(n)]
        for (a, b), c in self._products.items():
            if (a, b) in self.domain:
                prod[idx[a]][idx[b]] = idx[c]
        inv = [idx[self.inverse(x)] for x in self.carrier]
        return kernels.make_tables(prod, inv, idx[self.identity])

    def encode(self, word: Iterable[str]) -> list[int]:
        idx = self.index
        try:
            return [idx[x] for x in word]
        except KeyError as exc:
            raise PregroupError(f"{exc.args[0]!r} is not an element of the pregroup") from None

    def decode(self, word: Iterable[int]) -> tuple[str, ...]:
        carrier = self.carrier
        return tuple(carrier[i] for i in word)

    def to_dict(self) -> dict:
        return self.structure.to_dict(kind="pregroup")


@dataclass(frozen=True)
class Family:
    """A designated subset K with its constant labels: label -> element."""

    name: str
    members: Mapping[str, str] = field(default_factory=dict)

    def constant(self, label: str) -> str:
        return f"{self.name}_{label}"


class SPregroup(Pregroup):
    """Pregroup with designated constant families and the membership predicate delta."""

    def __init__(self, structure: FiniteStructure, families: Sequence[Family] = ()):
        super().__init__(structure)
        if structure.signature.relations.get(DELTA) != 1:
            raise PregroupError("an S-pregroup needs a unary relation 'delta'")
        self.families = tuple(families)

    @property
    def delta(self) -> frozenset:
        return frozenset(t[0] for t in self.structure.relations[DELTA])


def as_pregroup(structure: FiniteStructure) -> Pregroup:
    if structure.signature.relations.get(DELTA) == 1:
        return SPregroup(structure)
    return Pregroup(structure)


# -- axioms ----------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom counterexamples (None when the axiom holds)."""

    witnesses: Mapping[str, tuple | None]
    eval_results: Mapping[str, bool] | None = None

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.witnesses.values())

    def __bool__(self):
        return self.ok

    def passed(self) -> dict[str, bool]:
        return {k: w is None for k, w in self.witnesses.items()}

    @property
    def eval_agrees(self) -> bool | None:
        if self.eval_results is None:
            return None
        return self.eval_results == self.passed()

    def to_dict(self) -> dict:
        doc = {
            "verdict": self.ok,
            "axioms": {
                k: {"holds": w is None, "witness": None if w is None else dict(zip(AXIOM_VARIABLES[k], w))}
                for k, w in self.witnesses.items()
            },
        }
        if self.eval_results is not None:
            doc["eval_agrees"] = self.eval_agrees
        return doc


def axiom_sentences(sig: Signature) -> dict:
    return {k: parse(text, sig) for k, text in AXIOM_TEXTS.items()}


def check_axioms(p: Pregroup, cross_check: bool = False) -> AxiomReport:
    """Evaluate axioms (i)-(viii) by exhaustive scan over the carrier.

    With ``cross_check`` the eight axioms are also parsed from text and
    model-checked; the results are recorded next to the scan.
    """
    carrier = p.carrier
    n = len(carrier)
    idx = p.index
    mrel = bytearray(n ** 3)
    for a, b, c in p.mult:
        mrel[(idx[a] * n + idx[b]) * n + idx[c]] = 1
    drel = bytearray(n * n)
    for a, b in p.domain:
        drel[idx[a] * n + idx[b]] = 1
    inv = [idx[p.inverse(x)] for x in carrier]
    raw = kernels.axiom_witnesses(n, bytes(mrel), bytes(drel), inv, idx[p.identity])
    witnesses = {
        name: None if w is None else tuple(carrier[i] for i in w) for name, w in zip(AXIOM_NAMES, raw)
    }
    evals = None
    if cross_check:
        evals = {k: evaluate(p.structure, f) for k, f in axiom_sentences(p.signature).items()}
    return AxiomReport(witnesses, evals)


def validated(structure: FiniteStructure) -> Pregroup:
    """Build a pregroup and insist that every axiom holds."""
    p = as_pregroup(structure)
    report = check_axioms(p)
    if not report.ok:
        bad = [k for k, w in report.witnesses.items() if w is not None]
        raise PregroupError(f"pregroup axioms fail: {', '.join(bad)}")
    if isinstance(p, SPregroup):
        findings = check_s_axioms(p)
        if findings:
            raise PregroupError("S-pregroup axioms fail: " + "; ".join(findings))
    return p


def load(path, validate: bool | None = None) -> Pregroup:
    """Read a structure file as a pregroup; ``"kind": "pregroup"`` triggers validation."""
    structure, kind = fostruct.load(path)
    if validate is None:
        validate = kind == "pregroup"
    return validated(structure) if validate else as_pregroup(structure)


def product(p: Pregroup, a: str, b: str) -> str | None:
    return p.product(a, b)


def lemma_abc_check(p: Pregroup) -> list[tuple]:
    """Triples (a,b,c) in M whose consequences (c,b^-1,a), (c^-1,a,b^-1) are missing."""
    bad = []
    mult = p.mult
    order = p.index
    for a, b, c in sorted(mult, key=lambda t: [order[x] for x in t]):
        bi, ci = p.inverse(b), p.inverse(c)
        if (c, bi, a) not in mult or (ci, a, bi) not in mult:
            bad.append((a, b, c))
    return bad


def is_subpregroup(q: Pregroup, p: Pregroup) -> bool:
    qs = set(q.carrier)
    if not qs <= set(p.carrier):
        return False
    if q.identity != p.identity:
        return False
    if any(p.inverse(x) != q.inverse(x) for x in q.carrier):
        return False
    if q.domain != frozenset(t for t in p.domain if set(t) <= qs):
        return False
    return q.mult == frozenset(t for t in p.mult if set(t) <= qs)


def restrict(p: Pregroup, subset: Iterable[str]) -> Pregroup:
    """The induced substructure on ``subset`` (closed under inverses)."""
    keep = set(subset)
    if p.identity not in keep:
        raise PregroupError("a subpregroup must contain the identity")
    if any(p.inverse(x) not in keep for x in keep):
        raise PregroupError("subset is not closed under inversion")
    carrier = [x for x in p.carrier if x in keep]
    structure = FiniteStructure(
        signature=PREGROUP_SIGNATURE,
        carrier=carrier,
        constants={IDENTITY: p.identity},
        functions={INV: {(x,): p.inverse(x) for x in carrier}},
        relations={
            D: [t for t in p.domain if set(t) <= keep],
            M: [t for t in p.mult if set(t) <= keep],
        },
    )
    return Pregroup(structure)


# -- S-pregroups -----------------------------------------------------------

_LABEL = re.compile(r"[^A-Za-z0-9_]")


def _label(text: str) -> str:
    return _LABEL.sub("_", text)


def attach_constants(
    p: Pregroup,
    family: Sequence[tuple[str, Mapping[str, str] | Iterable[str]]],
    reference: Mapping[str, Pregroup] | None = None,
) -> SPregroup:
    """Add constants ``<name>_<label>`` for each designated subset and set delta.

    A subset is either a mapping label -> element or a list of elements
    (labels are then the element ids). When ``reference[name]`` gives the
    pregroup the subset is copied from, labels are its element ids and the
    level-<=1 diagram of that subset is checked in ``p``.
    """
    reference = dict(reference or {})
    families = []
    for name, subset in family:
        if isinstance(subset, Mapping):
            members = {str(k): v for k, v in subset.items()}
        else:
            members = {x: x for x in subset}
        families.append(Family(name, members))

    constants = dict(p.structure.constants)
    names = list(p.signature.constants)
    delta = set()
    for fam in families:
        for label, element in fam.members.items():
            if element not in p.index:
                raise PregroupError(f"{element!r} is not in the carrier")
        ref = reference.get(fam.name)
        if ref is not None:
            if ref.identity not in fam.members or fam.members[ref.identity] != p.identity:
                raise PregroupError(f"subset {fam.name!r} does not contain the identity")
        elif p.identity not in fam.members.values():
            raise PregroupError(f"subset {fam.name!r} does not contain the identity")
        for label, element in fam.members.items():
            const = fam.constant(_label(label))
            if const in constants or const in p.signature.symbols():
                raise PregroupError(f"duplicate constant name {const!r}")
            constants[const] = element
            names.append(const)
            delta.add(element)
    sig = Signature(
        constants=names,
        functions=dict(p.signature.functions),
        relations={**{r: n for r, n in p.signature.relations.items() if r != DELTA}, DELTA: 1},
    )
    structure = FiniteStructure(
        signature=sig,
        carrier=p.carrier,
        constants=constants,
        functions=p.structure.functions,
        relations={
            **{r: t for r, t in p.structure.relations.items() if r != DELTA},
            DELTA: [(x,) for x in delta],
        },
    )
    sp = SPregroup(structure, families)
    for fam in families:
        ref = reference.get(fam.name)
        if ref is not None:
            problems = diagram_violations(sp, fam, ref)
            if problems:
                raise PregroupError(f"diagram of {fam.name!r} fails: " + "; ".join(problems))
    return sp


def diagram_violations(p: Pregroup, fam: Family, ref: Pregroup) -> list[str]:
    """Closed atomic facts of level <= 1 over the family's constants that disagree."""
    out = []
    m = fam.members
    labels = list(m)
    for a, b in itertools.product(labels, repeat=2):
        if (a == b) != (m[a] == m[b]):
            out.append(f"{fam.constant(a)} = {fam.constant(b)}")
    for a in labels:
        for b in labels:
            if (ref.inverse(a) == b) != (p.inverse(m[a]) == m[b]):
                out.append(f"inv({fam.constant(a)}) = {fam.constant(b)}")
    for a, b in itertools.product(labels, repeat=2):
        if ((a, b) in ref.domain) != ((m[a], m[b]) in p.domain):
            out.append(f"D({fam.constant(a)},{fam.constant(b)})")
        for c in labels:
            if ((a, b, c) in ref.mult) != ((m[a], m[b], m[c]) in p.mult):
                out.append(f"M({fam.constant(a)},{fam.constant(b)},{fam.constant(c)})")
    return out


def check_s_axioms(p: SPregroup) -> list[str]:
    """Axioms (ix) and (x): designated constants lie in delta, and nothing outside delta names one."""
    problems = []
    delta = p.delta
    designated = [c for c in p.signature.constants if c != IDENTITY]
    for c in designated:
        if p.structure.constants[c] not in delta:
            problems.append(f"(ix) {c} is not in delta")
    for x in p.carrier:
        if x in delta:
            continue
        for c in designated:
            if p.structure.constants[c] == x:
                problems.append(f"(x) {x} lies outside delta but equals {c}")
    return problems
