"""Pregroups built from finite groups: plain groups, free products, amalgams, HNN.

Each builder also records a sidecar mapping from raw names (factor-tagged
elements, or HNN blocks ``t^-e0 g t^e1``) to carrier ids. The normal-form
oracles at the bottom work directly on the group data and never consult
the pregroup tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .fostruct import FiniteStructure, Signature, StructureError
from .pregroup import (
    D,
    IDENTITY,
    INV,
    M,
    PREGROUP_SIGNATURE,
    Pregroup,
    SPregroup,
    attach_constants,
)


class ConstructionError(StructureError):
    pass


# -- finite groups -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group given by its full multiplication table."""

    carrier: tuple[str, ...]
    identity: str
    table: Mapping[tuple[str, str], str]

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "table", {tuple(k): v for k, v in self.table.items()})
        problems = self.problems()
        if problems:
            raise ConstructionError("not a group: " + "; ".join(problems[:5]))

    def problems(self) -> list[str]:
        found = []
        els = self.carrier
        if len(set(els)) != len(els):
            found.append("carrier lists an element twice")
        if self.identity not in els:
            found.append(f"identity {self.identity!r} not in carrier")
            return found
        for a, b in itertools.product(els, repeat=2):
            v = self.table.get((a, b))
            if v not in els:
                found.append(f"{a}*{b} undefined or outside the carrier")
        if found:
            return found
        mul = self.mul
        for a in els:
            if mul(a, self.identity) != a or mul(self.identity, a) != a:
                found.append(f"identity fails at {a}")
            if not any(mul(a, b) == self.identity for b in els):
                found.append(f"{a} has no inverse")
        for a, b, c in itertools.product(els, repeat=3):
            if mul(mul(a, b), c) != mul(a, mul(b, c)):
                found.append(f"associativity fails at ({a},{b},{c})")
                break
        return found

    def mul(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def inv(self, a: str) -> str:
        return self._inverses[a]

    @property
    def _inverses(self) -> dict[str, str]:
        cached = self.__dict__.get("_inv_cache")
        if cached is None:
            cached = {a: next(b for b in self.carrier if self.mul(a, b) == self.identity) for a in self.carrier}
            object.__setattr__(self, "_inv_cache", cached)
        return cached

    @property
    def order(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.carrier)}

    def product(self, letters: Sequence[str]) -> str:
        out = self.identity
        for x in letters:
            out = self.mul(out, x)
        return out

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        if self.identity not in s or not s <= set(self.carrier):
            return False
        return all(self.mul(a, b) in s for a in s for b in s) and all(self.inv(a) in s for a in s)

    def reordered(self, carrier: Sequence[str]) -> "FiniteGroup":
        if sorted(carrier) != sorted(self.carrier):
            raise ConstructionError("new order is not a permutation of the carrier")
        return FiniteGroup(tuple(carrier), self.identity, self.table)

    def relabel(self, mapping: Mapping[str, str]) -> "FiniteGroup":
        m = mapping.__getitem__
        return FiniteGroup(
            tuple(map(m, self.carrier)),
            m(self.identity),
            {(m(a), m(b)): m(c) for (a, b), c in self.table.items()},
        )

    def as_structure(self) -> FiniteStructure:
        """The group in the language (1, mul, inv)."""
        return FiniteStructure(
            signature=Signature(constants=(IDENTITY,), functions={"mul": 2, INV: 1}),
            carrier=self.carrier,
            constants={IDENTITY: self.identity},
            functions={"mul": dict(self.table), INV: {(a,): self.inv(a) for a in self.carrier}},
        )

    def to_dict(self) -> dict:
        return {
            "carrier": list(self.carrier),
            "identity": self.identity,
            "table": {f"{a},{b}": self.mul(a, b) for a in self.carrier for b in self.carrier},
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "FiniteGroup":
        if "cyclic" in doc:
            unknown = set(doc) - {"cyclic", "names", "order"}
            if unknown:
                raise ConstructionError(f"unknown keys in group: {sorted(unknown)}")
            return cyclic_group(int(doc["cyclic"]), doc.get("names"), doc.get("order"))
        unknown = set(doc) - {"carrier", "identity", "table"}
        if unknown:
            raise ConstructionError(f"unknown keys in group: {sorted(unknown)}")
        try:
            table = {tuple(k.split(",")): v for k, v in doc["table"].items()}
            return cls(tuple(doc["carrier"]), doc["identity"], table)
        except KeyError as exc:
            raise ConstructionError(f"group document lacks {exc.args[0]!r}") from None


def cyclic_group(n: int, names: Sequence[str] | None = None, order: Sequence[str] | None = None) -> FiniteGroup:
    """Z/n with ``names[i]`` standing for the i-th power of a generator.

    Default names are "0".."n-1". ``order`` fixes the carrier order.
    """
    if n < 1:
        raise ConstructionError("cyclic group needs n >= 1")
    names = [str(i) for i in range(n)] if names is None else list(names)
    if len(names) != n or len(set(names)) != n:
        raise ConstructionError(f"need {n} distinct names")
    table = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    g = FiniteGroup(tuple(names), names[0], table)
    return g.reordered(order) if order is not None else g


def trivial_group(name: str = "1") -> FiniteGroup:
    return FiniteGroup((name,), name, {(name, name): name})


# -- pregroup assembly -------------------------------------------------------


def _pregroup_structure(carrier: Sequence[str], one: str, inv: Mapping[str, str], mult) -> FiniteStructure:
    mult = set(mult)
    return FiniteStructure(
        signature=PREGROUP_SIGNATURE,
        carrier=tuple(carrier),
        constants={IDENTITY: one},
        functions={INV: {(x,): inv[x] for x in carrier}},
        relations={D: {(a, b) for a, b, _ in mult}, M: mult},
    )


def group_as_pregroup(g: FiniteGroup) -> Pregroup:
    """D is all of G x G and M is the multiplication graph."""
    mult = {(a, b, g.mul(a, b)) for a in g.carrier for b in g.carrier}
    return Pregroup(_pregroup_structure(g.carrier, g.identity, {a: g.inv(a) for a in g.carrier}, mult))


@dataclass
class Built:
    """A constructed pregroup with its raw-name sidecar."""

    pregroup: Pregroup
    sidecar: dict[str, str] = field(default_factory=dict)
    notes: dict = field(default_factory=dict)


def _union_pregroup(a: FiniteGroup, b: FiniteGroup, alias: Mapping[str, str]) -> tuple[Pregroup, dict]:
    """P = A u B with B's elements renamed through ``alias`` (identity and shared part)."""
    name_b = {x: alias.get(x, x) for x in b.carrier}
    fresh = [name_b[x] for x in b.carrier if x not in alias]
    clash = set(fresh) & set(a.carrier)
    if clash:
        raise ConstructionError(f"factor element ids collide: {sorted(clash)}")
    if len(set(name_b.values())) != len(b.carrier):
        raise ConstructionError("aliasing merges distinct elements of the second factor")
    carrier = list(a.carrier) + fresh
    inv = {x: a.inv(x) for x in a.carrier}
    prod = {(x, y): a.mul(x, y) for x in a.carrier for y in a.carrier}
    for x, y in itertools.product(b.carrier, repeat=2):
        key, value = (name_b[x], name_b[y]), name_b[b.mul(x, y)]
        if prod.setdefault(key, value) != value:
            raise ConstructionError(f"factors disagree on the shared product {key[0]}*{key[1]}")
    mult = {(x, y, z) for (x, y), z in prod.items()}
    for x in b.carrier:
        inv.setdefault(name_b[x], name_b[b.inv(x)])
        if inv[name_b[x]] != name_b[b.inv(x)]:
            raise ConstructionError(f"factors disagree on the inverse of {name_b[x]}")
    sidecar = {f"A:{x}": x for x in a.carrier}
    sidecar.update({f"B:{x}": name_b[x] for x in b.carrier})
    return Pregroup(_pregroup_structure(carrier, a.identity, inv, mult)), sidecar


def free_product_pregroup(a: FiniteGroup, b: FiniteGroup) -> Pregroup:
    """A u B with identities merged and D = (A x A) u (B x B)."""
    return free_product(a, b).pregroup


def free_product(a: FiniteGroup, b: FiniteGroup) -> Built:
    p, sidecar = _union_pregroup(a, b, {b.identity: a.identity})
    return Built(p, sidecar)


def _check_embeddings(a: FiniteGroup, b: FiniteGroup, c_in_a: Mapping[str, str], c_in_b: Mapping[str, str]):
    if set(c_in_a) != set(c_in_b):
        raise ConstructionError("the two embeddings have different domains")
    for name, g, emb in (("A", a, c_in_a), ("B", b, c_in_b)):
        if len(set(emb.values())) != len(emb):
            raise ConstructionError(f"embedding into {name} is not injective")
        if not set(emb.values()) <= set(g.carrier):
            raise ConstructionError(f"embedding into {name} leaves the group")
        if not g.is_subgroup(emb.values()):
            raise ConstructionError(f"image in {name} is not a subgroup")
    # the induced bijection between the images must respect multiplication
    back_a = {v: k for k, v in c_in_a.items()}
    for k1, k2 in itertools.product(c_in_a, repeat=2):
        k3 = back_a[a.mul(c_in_a[k1], c_in_a[k2])]
        if b.mul(c_in_b[k1], c_in_b[k2]) != c_in_b[k3]:
            raise ConstructionError("embeddings are not homomorphisms from a common group")
    if c_in_a and back_a.get(a.identity) is None:
        raise ConstructionError("embedding misses the identity")


def amalgam(a: FiniteGroup, b: FiniteGroup, c_in_a: Mapping[str, str], c_in_b: Mapping[str, str]) -> Built:
    """A u_C B; shared elements keep their A ids and get constants ``C_<label>``."""
    c_in_a = {str(k): v for k, v in c_in_a.items()}
    c_in_b = {str(k): v for k, v in c_in_b.items()}
    _check_embeddings(a, b, c_in_a, c_in_b)
    alias = {c_in_b[k]: c_in_a[k] for k in c_in_a}
    alias.setdefault(b.identity, a.identity)
    if len(c_in_a) <= 1:
        built = free_product(a, b)
        notes = {"trivial_C": True}
    else:
        p, sidecar = _union_pregroup(a, b, alias)
        built = Built(p, sidecar)
        notes = {"trivial_C": False}
    members = dict(c_in_a) or {a.identity: a.identity}
    sp = attach_constants(built.pregroup, [("C", members)])
    return Built(sp, built.sidecar, notes)


def amalgam_pregroup(a: FiniteGroup, b: FiniteGroup, c_in_a: Mapping[str, str], c_in_b: Mapping[str, str]) -> SPregroup:
    return amalgam(a, b, c_in_a, c_in_b).pregroup


# -- HNN ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HnnSpec:
    """Base group, isomorphism theta: C1 -> C2 between subgroups, stable letter name."""

    group: FiniteGroup
    theta: Mapping[str, str]
    t: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "theta", dict(self.theta))
        g, th = self.group, self.theta
        if not g.is_subgroup(th.keys()):
            raise ConstructionError("C1 is not a subgroup")
        if not g.is_subgroup(th.values()):
            raise ConstructionError("C2 is not a subgroup")
        if len(set(th.values())) != len(th):
            raise ConstructionError("theta is not injective")
        for h, k in itertools.product(th, repeat=2):
            if th[g.mul(h, k)] != g.mul(th[h], th[k]):
                raise ConstructionError(f"theta is not a homomorphism at ({h},{k})")
        if not self.t or "." in self.t or self.t in g.carrier or self.t + "i" in g.carrier:
            raise ConstructionError(f"unusable stable letter name {self.t!r}")

    @property
    def c1(self) -> tuple[str, ...]:
        return tuple(x for x in self.group.carrier if x in self.theta)

    @property
    def c2(self) -> tuple[str, ...]:
        vals = set(self.theta.values())
        return tuple(x for x in self.group.carrier if x in vals)

    @property
    def theta_inv(self) -> dict[str, str]:
        return {v: k for k, v in self.theta.items()}

    def raw_name(self, e0: int, g: str, e1: int) -> str:
        """Name of the raw element t^-e0 g t^e1."""
        parts = []
        if e0:
            parts.append(self.t + "i")
        if g != self.group.identity or not (e0 or e1):
            parts.append(g)
        if e1:
            parts.append(self.t)
        return ".".join(parts)

    def to_dict(self) -> dict:
        return {"G": self.group.to_dict(), "theta": dict(self.theta), "t": self.t}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "HnnSpec":
        unknown = set(doc) - {"G", "theta", "t"}
        if unknown:
            raise ConstructionError(f"unknown keys in HNN spec: {sorted(unknown)}")
        return cls(FiniteGroup.from_dict(doc["G"]), doc["theta"], doc.get("t", "t"))


def hnn(spec: HnnSpec) -> Built:
    """Classes of G u t^-1 G u G t u t^-1 G t under t^-1 h t ~ theta(h)."""
    g = spec.group
    raws = [(e0, x, e1) for e0, e1 in ((0, 0), (1, 0), (0, 1), (1, 1)) for x in g.carrier]

    def cls(r):
        e0, x, e1 = r
        if e0 == 1 and e1 == 1 and x in spec.theta:
            return (0, spec.theta[x], 0)
        return r

    classes = []
    for r in raws:
        if cls(r) == r:
            classes.append(r)
    ids = {r: spec.raw_name(*r) for r in classes}
    if len(set(ids.values())) != len(ids):
        raise ConstructionError("element ids collide; rename the group elements")
    members: dict[tuple, list] = {r: [] for r in classes}
    for r in raws:
        members[cls(r)].append(r)

    inv = {}
    for r in classes:
        e0, x, e1 = r
        inv[ids[r]] = ids[cls((e1, g.inv(x), e0))]
    mult = {}
    for p, q in itertools.product(classes, repeat=2):
        for (a0, x, a1), (b0, y, b1) in itertools.product(members[p], members[q]):
            if a1 != b0:
                continue
            key = (ids[p], ids[q])
            value = ids[cls((a0, g.mul(x, y), b1))]
            if mult.setdefault(key, value) != value:
                raise ConstructionError(f"product of {key[0]} and {key[1]} is not well defined")
    structure = _pregroup_structure(
        [ids[r] for r in classes], g.identity, inv, {(a, b, c) for (a, b), c in mult.items()}
    )
    p = Pregroup(structure)
    sidecar = {spec.raw_name(*r): ids[cls(r)] for r in raws}
    family = [("C1", {h: h for h in spec.c1}), ("C2", {h: h for h in spec.c2})]
    sp = attach_constants(p, family)
    embedded = len({sidecar[spec.raw_name(0, h, 0)] for h in set(spec.c1) | set(spec.c2)}) == len(
        set(spec.c1) | set(spec.c2)
    )
    return Built(sp, sidecar, {"C_embeds": embedded, "raw_elements": len(raws), "classes": len(classes)})


def hnn_pregroup(spec: HnnSpec) -> SPregroup:
    return hnn(spec).pregroup


# -- independent normal-form oracles ----------------------------------------


def _free_nf(a: FiniteGroup, b: FiniteGroup, word: Sequence[str]) -> str:
    """Alternating syllable form of a word over the merged carrier of A * B."""
    where = {}
    for x in b.carrier:
        if x != b.identity:
            where[x] = ("B", b)
    for x in a.carrier:
        where[x] = ("A", a)
    stack: list[tuple[str, str]] = []
    for x in word:
        if x not in where:
            raise ConstructionError(f"{x!r} is not a letter of the free product")
        tag, grp = where[x]
        if x == grp.identity:
            continue
        if stack and stack[-1][0] == tag:
            merged = grp.mul(stack.pop()[1], x)
            if merged != grp.identity:
                stack.append((tag, merged))
        else:
            stack.append((tag, x))
    return ".".join(x for _, x in stack) or a.identity


def _coset_split(g: FiniteGroup, sub: Sequence[str], x: str, side: str) -> tuple[str, str]:
    """x = c r (side 'right', coset C x) or x = r c (side 'left', coset x C); r is lex-least."""
    order = g.order
    if side == "right":
        coset = [g.mul(c, x) for c in sub]
        r = min(coset, key=order.__getitem__)
        return g.mul(x, g.inv(r)), r
    coset = [g.mul(x, c) for c in sub]
    r = min(coset, key=order.__getitem__)
    return g.mul(g.inv(r), x), r


def _amalgam_nf(a, b, c_in_a, c_in_b, word: Sequence[str]) -> str:
    """c r1 ... rn with r_i nontrivial right-coset reps of C in alternating factors."""
    shared_b = set(c_in_b.values())
    where = {x: "A" for x in a.carrier}
    for x in b.carrier:
        if x not in shared_b:
            where[x] = "B"
    groups = {"A": a, "B": b}
    emb = {"A": dict(c_in_a), "B": dict(c_in_b)}
    back = {k: {v: lab for lab, v in e.items()} for k, e in emb.items()}
    one = next(lab for lab, v in c_in_a.items() if v == a.identity)
    c, syl = one, []  # element = C(c) * r1 * ... * rn
    for x in reversed(list(word)):
        if x not in where:
            raise ConstructionError(f"{x!r} is not a letter of the amalgam")
        tag = where[x]
        grp = groups[tag]
        y = grp.mul(x, emb[tag][c])
        if syl and syl[0][0] == tag:
            y = grp.mul(y, syl.pop(0)[1])
        cpart, r = _coset_split(grp, list(emb[tag].values()), y, "right")
        c = back[tag][cpart]
        if r != grp.identity:
            syl.insert(0, (tag, r))
    return c + "|" + ".".join(f"{t}:{r}" for t, r in syl)


def _hnn_nf(spec: HnnSpec, word: Sequence[str]) -> str:
    """Britton reduction followed by coset normalisation, left to right."""
    g = spec.group
    raw_of = {}
    for e0, e1 in ((0, 0), (1, 0), (0, 1), (1, 1)):
        for x in g.carrier:
            raw_of.setdefault(spec.raw_name(e0, x, e1), (e0, x, e1))
    theta, theta_inv = spec.theta, spec.theta_inv
    # syllables: group elements (str) and stable letters (+1 / -1)
    seq: list = []
    for letter in word:
        if letter not in raw_of:
            raise ConstructionError(f"{letter!r} is not a letter of the HNN pregroup")
        e0, x, e1 = raw_of[letter]
        seq.extend(([-1] if e0 else []) + [x] + ([1] if e1 else []))
    # stack-based pinch removal; the stack alternates group elements and t-letters
    stack: list = [g.identity]
    for item in seq:
        if isinstance(item, str):
            stack[-1] = g.mul(stack[-1], item)
            continue
        if len(stack) >= 2 and stack[-2] == -item:
            h = stack[-1]
            if item == 1 and h in theta:  # t^-1 h t
                del stack[-2:]
                stack[-1] = g.mul(stack[-1], theta[h])
                continue
            if item == -1 and h in theta_inv:  # t h t^-1
                del stack[-2:]
                stack[-1] = g.mul(stack[-1], theta_inv[h])
                continue
        stack.extend([item, g.identity])
    # normal form g0 t^e1 g1 ... with g_i (i < n) a left-coset rep of C1 (before t) or C2 (before t^-1)
    c1, c2 = list(spec.c1), list(spec.c2)
    out = []
    carry = g.identity
    for i in range(0, len(stack), 2):
        x = g.mul(carry, stack[i])
        if i + 1 == len(stack):
            out.append(x)
            break
        e = stack[i + 1]
        if e == 1:
            c, r = _coset_split(g, c1, x, "left")
            carry = theta[c]
        else:
            c, r = _coset_split(g, c2, x, "left")
            carry = theta_inv[c]
        out.extend([r, spec.t if e == 1 else spec.t + "i"])
    return ".".join(out)


def oracle_normal_form(kind: str, data, word: Sequence[str]) -> str:
    """Normal form string of ``word`` by the classical algorithm for ``kind``.

    ``data`` is ``(A, B)`` for "free", ``(A, B, c_in_a, c_in_b)`` for
    "amalgam" and an :class:`HnnSpec` for "hnn".
    """
    if kind == "free":
        a, b = data
        return _free_nf(a, b, word)
    if kind == "amalgam":
        a, b, c_in_a, c_in_b = data
        return _amalgam_nf(a, b, c_in_a, c_in_b, word)
    if kind == "hnn":
        return _hnn_nf(data, word)
    raise ConstructionError(f"unsupported kind {kind!r}")


# -- construction specs (CLI documents) -------------------------------------


def build_from_spec(kind: str, doc: Mapping) -> Built:
    """Assemble a construction from its JSON description."""
    if kind == "group":
        return Built(group_as_pregroup(FiniteGroup.from_dict(doc)))
    if kind == "free":
        unknown = set(doc) - {"A", "B"}
        if unknown:
            raise ConstructionError(f"unknown keys: {sorted(unknown)}")
        return free_product(FiniteGroup.from_dict(doc["A"]), FiniteGroup.from_dict(doc["B"]))
    if kind == "amalgam":
        unknown = set(doc) - {"A", "B", "C_in_A", "C_in_B"}
        if unknown:
            raise ConstructionError(f"unknown keys: {sorted(unknown)}")
        return amalgam(
            FiniteGroup.from_dict(doc["A"]), FiniteGroup.from_dict(doc["B"]), doc["C_in_A"], doc["C_in_B"]
        )
    if kind == "hnn":
        return hnn(HnnSpec.from_dict(doc))
    raise ConstructionError(f"unknown construction {kind!r}")


# -- fixtures ------------------------------------------------------------------


def z3() -> FiniteGroup:
    return cyclic_group(3)


def dinfty_factors() -> tuple[FiniteGroup, FiniteGroup]:
    return cyclic_group(2, ["1", "a"]), cyclic_group(2, ["1", "b"])


def pg_dinfty() -> Pregroup:
    """Z2 * Z2 with carrier 1, a, b."""
    return free_product_pregroup(*dinfty_factors())


def amalgam_factors():
    """Z4 = <x>, Z4 = <y> and the embeddings of Z2 onto their squares."""
    a = cyclic_group(4, ["1", "x", "c", "X"], order=["1", "c", "x", "X"])
    b = cyclic_group(4, ["1", "y", "c", "Y"], order=["1", "c", "y", "Y"])
    return a, b, {"1": "1", "c": "c"}, {"1": "1", "c": "c"}


def pg_am() -> SPregroup:
    """Z4 *_{Z2} Z4 with carrier 1, c, x, X, y, Y."""
    return amalgam_pregroup(*amalgam_factors())


def hnn_z2_spec() -> HnnSpec:
    g = cyclic_group(2, ["1", "g"])
    return HnnSpec(g, {"1": "1", "g": "g"})


def hnn_z2() -> SPregroup:
    return hnn_pregroup(hnn_z2_spec())
