"""Signatures, finite structures and L-morphisms between finite subsets.

Elements are opaque string ids. The carrier is an ordered tuple and that
declared order is the one used whenever a deterministic choice is needed
(lex-least images, canonical words, ...).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class StructureError(ValueError):
    """Raised for malformed structures or structure files."""


@dataclass(frozen=True)
class Signature:
    constants: tuple[str, ...] = ()
    functions: Mapping[str, int] = field(default_factory=dict)
    relations: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constants", tuple(self.constants))
        object.__setattr__(self, "functions", dict(self.functions))
        object.__setattr__(self, "relations", dict(self.relations))
        names = list(self.constants) + list(self.functions) + list(self.relations)
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise StructureError(f"symbol names used more than once: {dupes}")
        for name, arity in itertools.chain(self.functions.items(), self.relations.items()):
            if not isinstance(arity, int) or arity < 1:
                raise StructureError(f"arity of {name!r} must be a positive integer, got {arity!r}")

    def __hash__(self):
        return hash((frozenset(self.constants), frozenset(self.functions.items()), frozenset(self.relations.items())))

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return (
            set(self.constants) == set(other.constants)
            and self.functions == other.functions
            and self.relations == other.relations
        )

    def symbols(self) -> set[str]:
        return set(self.constants) | set(self.functions) | set(self.relations)

    def intersection(self, other: "Signature") -> "Signature":
        return Signature(
            constants=[c for c in self.constants if c in other.constants],
            functions={f: n for f, n in self.functions.items() if other.functions.get(f) == n},
            relations={r: n for r, n in self.relations.items() if other.relations.get(r) == n},
        )

    def to_dict(self) -> dict:
        return {
            "constants": list(self.constants),
            "functions": dict(self.functions),
            "relations": dict(self.relations),
        }


@dataclass(frozen=True, eq=False)
class FiniteStructure:
    """A finite L-structure.

    ``functions`` maps each symbol to a dict keyed by argument tuples;
    ``relations`` maps each symbol to a frozenset of tuples. Nothing is
    validated on construction, use :func:`validate_structure` for that.
    """

    signature: Signature
    carrier: tuple[str, ...]
    constants: Mapping[str, str] = field(default_factory=dict)
    functions: Mapping[str, Mapping[tuple, str]] = field(default_factory=dict)
    relations: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "constants", dict(self.constants))
        object.__setattr__(
            self, "functions", {f: {tuple(k): v for k, v in t.items()} for f, t in self.functions.items()}
        )
        object.__setattr__(
            self, "relations", {r: frozenset(tuple(x) for x in ts) for r, ts in self.relations.items()}
        )

    @cached_property
    def order(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.carrier)}

    @cached_property
    def constants_of(self) -> dict[str, tuple[str, ...]]:
        """element -> constant symbols it interprets (signature order)."""
        out: dict[str, list[str]] = {e: [] for e in self.carrier}
        for c in self.signature.constants:
            if c in self.constants and self.constants[c] in out:
                out[self.constants[c]].append(c)
        return {e: tuple(cs) for e, cs in out.items()}

    def sort(self, elements: Iterable[str]) -> list[str]:
        return sorted(elements, key=self.order.__getitem__)

    def apply(self, func: str, args: Sequence[str]) -> str:
        return self.functions[func][tuple(args)]

    def holds(self, rel: str, args: Sequence[str]) -> bool:
        return tuple(args) in self.relations[rel]

    def reduct(self, signature: Signature) -> "FiniteStructure":
        """Forget every symbol not in ``signature``."""
        return FiniteStructure(
            signature=signature,
            carrier=self.carrier,
            constants={c: self.constants[c] for c in signature.constants},
            functions={f: self.functions[f] for f in signature.functions},
            relations={r: self.relations[r] for r in signature.relations},
        )

    def relabel(self, mapping: Mapping[str, str], carrier: Sequence[str] | None = None) -> "FiniteStructure":
        """Rename elements through ``mapping``; ``carrier`` fixes the new order."""
        new_carrier = tuple(carrier) if carrier is not None else tuple(mapping[e] for e in self.carrier)
        if sorted(new_carrier) != sorted(mapping[e] for e in self.carrier):
            raise StructureError("relabelled carrier does not match the mapping")
        m = mapping.__getitem__
        return FiniteStructure(
            signature=self.signature,
            carrier=new_carrier,
            constants={c: m(e) for c, e in self.constants.items()},
            functions={f: {tuple(map(m, k)): m(v) for k, v in t.items()} for f, t in self.functions.items()},
            relations={r: {tuple(map(m, x)) for x in ts} for r, ts in self.relations.items()},
        )

    # -- file format ---------------------------------------------------

    def to_dict(self, kind: str | None = None) -> dict:
        doc: dict = {}
        if kind is not None:
            doc["kind"] = kind
        order = self.order
        doc["signature"] = self.signature.to_dict()
        doc["carrier"] = list(self.carrier)
        doc["constants"] = {c: self.constants[c] for c in self.signature.constants if c in self.constants}
        funcs = {}
        for f in self.signature.functions:
            table = self.functions.get(f, {})
            keys = sorted(table, key=lambda k: [order.get(x, len(order)) for x in k])
            funcs[f] = {",".join(k): table[k] for k in keys}
        doc["functions"] = funcs
        rels = {}
        for r in self.signature.relations:
            tuples = self.relations.get(r, frozenset())
            rels[r] = [list(t) for t in sorted(tuples, key=lambda t: [order.get(x, len(order)) for x in t])]
        doc["relations"] = rels
        return doc

    @classmethod
    def from_dict(cls, doc: Mapping) -> "FiniteStructure":
        allowed = {"kind", "signature", "carrier", "constants", "functions", "relations"}
        unknown = set(doc) - allowed
        if unknown:
            raise StructureError(f"unknown keys in structure document: {sorted(unknown)}")
        for key in ("signature", "carrier"):
            if key not in doc:
                raise StructureError(f"structure document lacks {key!r}")
        sig_doc = doc["signature"]
        unknown = set(sig_doc) - {"constants", "functions", "relations"}
        if unknown:
            raise StructureError(f"unknown keys in signature: {sorted(unknown)}")
        sig = Signature(
            constants=sig_doc.get("constants", []),
            functions=sig_doc.get("functions", {}),
            relations=sig_doc.get("relations", {}),
        )
        for section in ("constants", "functions", "relations"):
            extra = set(doc.get(section, {})) - set(getattr(sig, section))
            if extra:
                raise StructureError(f"{section} section names symbols missing from the signature: {sorted(extra)}")
        functions = {}
        for f, table in doc.get("functions", {}).items():
            if isinstance(table, Mapping):
                functions[f] = {tuple(k.split(",")) if k != "" else (): v for k, v in table.items()}
            else:
                functions[f] = {tuple(row[:-1]): row[-1] for row in table}
        return cls(
            signature=sig,
            carrier=doc["carrier"],
            constants=doc.get("constants", {}),
            functions=functions,
            relations={r: [tuple(t) for t in ts] for r, ts in doc.get("relations", {}).items()},
        )


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load(path) -> tuple[FiniteStructure, str | None]:
    """Read a structure file; returns the structure and its ``kind`` tag."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StructureError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise StructureError(f"{path}: top level must be an object")
    return FiniteStructure.from_dict(doc), doc.get("kind")


def save(structure: FiniteStructure, path, kind: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(structure.to_dict(kind)))


# -- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Finding:
    kind: str
    symbol: str | None
    detail: str

    def __str__(self):
        where = f" [{self.symbol}]" if self.symbol else ""
        return f"{self.kind}{where}: {self.detail}"


def validate_structure(m: FiniteStructure) -> list[Finding]:
    """Every violated structure invariant; an empty list means valid."""
    found: list[Finding] = []
    carrier = set(m.carrier)
    if len(carrier) != len(m.carrier):
        found.append(Finding("duplicate element", None, "carrier lists an element twice"))
    if not m.carrier:
        found.append(Finding("empty carrier", None, "carrier must be non-empty"))
    for c in m.signature.constants:
        if c not in m.constants:
            found.append(Finding("missing constant", c, "constant has no interpretation"))
        elif m.constants[c] not in carrier:
            found.append(Finding("foreign element", c, f"interpretation {m.constants[c]!r} not in carrier"))
    for f, n in m.signature.functions.items():
        table = m.functions.get(f)
        if table is None:
            found.append(Finding("missing function", f, "function has no table"))
            continue
        for key, value in table.items():
            if len(key) != n:
                found.append(Finding("arity mismatch", f, f"entry {key!r} has {len(key)} arguments, expected {n}"))
            elif any(x not in carrier for x in key) or value not in carrier:
                found.append(Finding("foreign element", f, f"entry {key!r} -> {value!r} leaves the carrier"))
        for key in itertools.product(m.carrier, repeat=n):
            if key not in table:
                found.append(Finding("non-total function", f, f"no value for {key!r}"))
    for r, n in m.signature.relations.items():
        tuples = m.relations.get(r)
        if tuples is None:
            found.append(Finding("missing relation", r, "relation has no interpretation"))
            continue
        for t in sorted(tuples):
            if len(t) != n:
                found.append(Finding("arity mismatch", r, f"tuple {t!r} has length {len(t)}, expected {n}"))
            elif any(x not in carrier for x in t):
                found.append(Finding("foreign element", r, f"tuple {t!r} leaves the carrier"))
    for section in ("constants", "functions", "relations"):
        for name in getattr(m, section):
            if name not in getattr(m.signature, section):
                found.append(Finding("unknown symbol", name, f"{section[:-1]} not in the signature"))
    return found


# -- morphisms -------------------------------------------------------------


@dataclass(frozen=True)
class MorphismCheck:
    """Result of :func:`is_morphism`. Truthy iff the map is an L-morphism.

    ``failures`` lists every violation as ``(condition, symbol, tuple)``
    where condition is 1 (constants), 2 (functions) or 3 (relations).
    """

    failures: tuple = ()

    def __bool__(self):
        return not self.failures

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def witness(self):
        return self.failures[0] if self.failures else None


def _same_language(source: FiniteStructure, target: FiniteStructure) -> None:
    if source.signature != target.signature:
        raise StructureError("structures are over different signatures")


def is_morphism(phi: Mapping[str, str], source: FiniteStructure, target: FiniteStructure) -> MorphismCheck:
    """Check the three L-morphism conditions for ``phi: S -> target``.

    Constants are compared through their interpretations: if ``s`` names
    the constant ``c`` in the source then ``phi(s)`` must name ``c`` in the
    target.
    """
    _same_language(source, target)
    for s, t in phi.items():
        if s not in source.order:
            raise StructureError(f"{s!r} is not an element of the source")
        if t not in target.order:
            raise StructureError(f"{t!r} is not an element of the target")
    dom = list(phi)
    failures = []
    for s in dom:
        for c in source.constants_of[s]:
            if target.constants[c] != phi[s]:
                failures.append((1, c, (s,)))
    for f, n in source.signature.functions.items():
        table_s, table_t = source.functions[f], target.functions[f]
        for args in itertools.product(dom, repeat=n):
            value = table_s[args]
            if value in phi and table_t[tuple(phi[a] for a in args)] != phi[value]:
                failures.append((2, f, args))
    for r, n in source.signature.relations.items():
        rel_s, rel_t = source.relations[r], target.relations[r]
        for args in itertools.product(dom, repeat=n):
            if args in rel_s and tuple(phi[a] for a in args) not in rel_t:
                failures.append((3, r, args))
    return MorphismCheck(tuple(failures))


def is_isomorphism(phi: Mapping[str, str], source: FiniteStructure, target: FiniteStructure) -> bool:
    if len(set(phi.values())) != len(phi):
        return False
    inverse = {t: s for s, t in phi.items()}
    return bool(is_morphism(phi, source, target)) and bool(is_morphism(inverse, target, source))


def find_isomorphism(
    s: Iterable[str],
    source: FiniteStructure,
    target: FiniteStructure,
    within: Iterable[str] | None = None,
) -> dict[str, str] | None:
    """Lex-least L-isomorphism from ``s`` onto some subset of the target.

    Elements of ``s`` are taken in source carrier order and the returned
    map is the least image tuple under the target carrier order.
    ``within`` restricts the admissible images.
    """
    _same_language(source, target)
    dom = source.sort(set(s))
    dom_set = set(dom)
    allowed = target.carrier if within is None else target.sort(set(within))
    sig = source.signature
    unary = [r for r, n in sig.relations.items() if n == 1]

    def profile(m: FiniteStructure, e: str):
        return m.constants_of[e], tuple((e,) in m.relations[r] for r in unary)

    candidates = []
    for e in dom:
        want = profile(source, e)
        candidates.append([t for t in allowed if profile(target, t) == want])

    phi: dict[str, str] = {}
    used: set[str] = set()

    def consistent(new: str) -> bool:
        assigned = list(phi)
        for r, n in sig.relations.items():
            if n == 1:
                continue
            rel_s, rel_t = source.relations[r], target.relations[r]
            for args in itertools.product(assigned, repeat=n):
                if new not in args:
                    continue
                if (args in rel_s) != (tuple(phi[a] for a in args) in rel_t):
                    return False
        for f, n in sig.functions.items():
            table_s, table_t = source.functions[f], target.functions[f]
            for args in itertools.product(assigned, repeat=n):
                if new not in args:
                    continue
                v = table_s[args]
                w = table_t[tuple(phi[a] for a in args)]
                if v in phi:
                    if phi[v] != w:
                        return False
                elif w in used:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(dom):
            return is_isomorphism(phi, source, target)
        e = dom[i]
        for t in candidates[i]:
            if t in used:
                continue
            phi[e] = t
            used.add(t)
            if consistent(e) and search(i + 1):
                return True
            del phi[e]
            used.discard(t)
        return False

    if not dom_set <= set(source.carrier):
        raise StructureError("subset is not contained in the source carrier")
    return dict(phi) if search(0) else None


# -- closures and bounded F-equivalence -----------------------------------


@dataclass(frozen=True)
class Chain:
    """An ascending chain S_0 <= S_1 <= ... of subsets."""

    sets: tuple[frozenset, ...]

    @property
    def stabilized(self) -> bool:
        return any(a == b for a, b in zip(self.sets, self.sets[1:]))

    @property
    def stabilized_at(self) -> int | None:
        for i, (a, b) in enumerate(zip(self.sets, self.sets[1:])):
            if a == b:
                return i
        return None

    def __getitem__(self, i):
        return self.sets[i]

    def __len__(self):
        return len(self.sets)

    @property
    def last(self) -> frozenset:
        return self.sets[-1]


def generated_closure(s0: Iterable[str], m: FiniteStructure, depth: int) -> Chain:
    """S_{i+1} = S_i plus every function value on tuples from S_i."""
    current = frozenset(s0)
    if not current <= set(m.carrier):
        raise StructureError("initial set is not contained in the carrier")
    sets = [current]
    for _ in range(depth):
        new = set(current)
        for f, n in m.signature.functions.items():
            table = m.functions[f]
            for args in itertools.product(sorted(current), repeat=n):
                new.add(table[args])
        current = frozenset(new)
        sets.append(current)
    return Chain(tuple(sets))


def _fingerprint(m: FiniteStructure, subset: Sequence[str]) -> tuple:
    """Isomorphism invariant of a subset: constant names and relation degree data."""
    sset = set(subset)
    consts = tuple(sorted(c for e in subset for c in m.constants_of[e]))
    rel = []
    for r in m.signature.relations:
        inside = [t for t in m.relations[r] if set(t) <= sset]
        degrees = sorted(sum(t.count(e) for t in inside) for e in subset)
        rel.append((r, len(inside), tuple(degrees)))
    return consts, tuple(rel)


@dataclass(frozen=True)
class FEquivResult:
    equivalent: bool
    witness: tuple[str, ...] | None = None
    direction: str | None = None  # "m->n" or "n->m"
    checked: int = 0

    def __bool__(self):
        return self.equivalent


def _all_have_partners(m: FiniteStructure, n: FiniteStructure, max_size: int):
    reps: dict[tuple, list[tuple[tuple[str, ...], bool]]] = {}
    checked = 0
    for k in range(max_size + 1):
        for subset in itertools.combinations(m.carrier, k):
            checked += 1
            fp = _fingerprint(m, subset)
            known = None
            for rep, ok in reps.get(fp, ()):
                if find_isomorphism(subset, m, m, within=rep) is not None:
                    known = ok
                    break
            if known is None:
                known = find_isomorphism(subset, m, n) is not None
                reps.setdefault(fp, []).append((subset, known))
            if not known:
                return subset, checked
    return None, checked


def bounded_f_equiv(m: FiniteStructure, n: FiniteStructure, max_size: int) -> FEquivResult:
    """Every subset of size <= max_size on either side has an isomorphic partner."""
    _same_language(m, n)
    witness, c1 = _all_have_partners(m, n, max_size)
    if witness is not None:
        return FEquivResult(False, witness, "m->n", c1)
    witness, c2 = _all_have_partners(n, m, max_size)
    if witness is not None:
        return FEquivResult(False, witness, "n->m", c1 + c2)
    return FEquivResult(True, None, None, c1 + c2)
