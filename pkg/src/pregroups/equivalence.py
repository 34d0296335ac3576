"""Transfer of finite-subset isomorphisms from pregroups to universal groups.

:func:`transfer` runs the construction behind the theorem that existential
equivalence of S-pregroups passes to their universal groups: close the
letters of a finite set of group elements under the partial product,
find an isomorphic copy of the closure in the second pregroup, push words
through letterwise and check what the argument needs along the way.

Between finite pregroups existential equivalence already forces an
isomorphism, so these reports exercise the construction; they do not
certify anything about infinite groups.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import constructions as cons
from . import ugroup
from .fostruct import Chain, FiniteStructure, Signature, StructureError, bounded_f_equiv, find_isomorphism, is_isomorphism
from .pregroup import Pregroup

__all__ = [
    "TransferReport",
    "product_closure",
    "transfer",
    "application_harness",
    "HarnessReport",
    "bounded_f_equiv",
]

NOTE = (
    "finite pregroups that are existentially equivalent are isomorphic; "
    "this report checks the construction, not a new equivalence"
)


def product_closure(p: Pregroup, s0, steps: int) -> Chain:
    """S_{r+1} = S_r plus every defined product ab with a, b in S_r."""
    current = frozenset(s0)
    if not current <= set(p.carrier):
        raise StructureError("initial set is not contained in the carrier")
    sets = [current]
    for _ in range(steps):
        new = set(current)
        for a, b in itertools.product(current, repeat=2):
            ab = p.product(a, b)
            if ab is not None:
                new.add(ab)
        current = frozenset(new)
        sets.append(current)
    return Chain(tuple(sets))


@dataclass
class TransferReport:
    words: list[tuple[str, ...]]
    J: int
    chain: list[list[str]]
    stabilized_at: int | None
    phi: dict[str, str] | None
    images: list[tuple[str, ...]] = field(default_factory=list)
    verdicts: dict[str, bool] = field(default_factory=dict)
    details: dict[str, list] = field(default_factory=dict)
    note: str = NOTE

    @property
    def ok(self) -> bool:
        return self.phi is not None and all(self.verdicts.values())

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {
            "verdict": self.ok,
            "words": [ugroup.format_word(w) for w in self.words],
            "J": self.J,
            "chain": self.chain,
            "stabilized_at": self.stabilized_at,
            "phi": self.phi,
            "images": [ugroup.format_word(w) for w in self.images],
            "verdicts": dict(self.verdicts),
            "details": {k: [_jsonable(x) for x in v] for k, v in self.details.items()},
            "note": self.note,
        }


def _jsonable(x):
    if isinstance(x, tuple) and all(isinstance(e, str) for e in x):
        return ugroup.format_word(x)
    if isinstance(x, tuple):
        return [_jsonable(e) for e in x]
    return x


def _theta(phi: Mapping[str, str], w: Sequence[str]) -> tuple[str, ...]:
    return tuple(phi[x] for x in w)


def _reduced_words_over(p: Pregroup, letters: Sequence[str], max_length: int):
    for k in range(1, max_length + 1):
        for w in itertools.product(letters, repeat=k):
            if ugroup.is_reduced(p, w):
                yield w


def transfer(p1: Pregroup, p2: Pregroup, f: Sequence[Sequence[str]]) -> TransferReport:
    """Build S_0..S_2J, the isomorphism phi on S_2J, and check theta and its class map."""
    if not f:
        raise ValueError("need at least one word")
    reps = [ugroup.canonical(p1, w).word for w in f]
    J = max(len(w) for w in reps)
    s0 = {x for w in reps for x in w}
    chain = product_closure(p1, s0, 2 * J)
    report = TransferReport(
        words=reps,
        J=J,
        chain=[p1.structure.sort(s) for s in chain.sets],
        stabilized_at=chain.stabilized_at,
        phi=None,
    )
    s = chain.last
    phi = find_isomorphism(s, p1.structure, p2.structure)
    if phi is None:
        report.verdicts["isomorphism"] = False
        return report
    report.phi = {x: phi[x] for x in p1.structure.sort(phi)}
    report.verdicts["isomorphism"] = is_isomorphism(phi, p1.structure, p2.structure)

    # phi(S_r) = T_r, with T_r rebuilt inside P2
    t_chain = product_closure(p2, {phi[x] for x in s0}, 2 * J)
    bad_chain = [r for r, (sr, tr) in enumerate(zip(chain.sets, t_chain.sets)) if {phi[x] for x in sr} != tr]
    report.verdicts["chain"] = not bad_chain
    report.details["chain"] = bad_chain

    # theta preserves reducedness: the D-pattern on S x S is carried over exactly
    bad_d = [
        (a, b)
        for a, b in itertools.product(p1.structure.sort(s), repeat=2)
        if ((a, b) in p1.domain) != ((phi[a], phi[b]) in p2.domain)
    ]
    bad_d += [tuple(w) for w in reps if not ugroup.is_reduced(p2, _theta(phi, w))]
    report.verdicts["reducedness"] = not bad_d
    report.details["reducedness"] = bad_d

    # ~ transport on reduced words over S_0 of length <= J
    letters = p1.structure.sort(s0)
    bad_eq = []
    classes1: dict = {}
    classes2: dict = {}
    for w in _reduced_words_over(p1, letters, J):
        c1 = ugroup.canonical(p1, w).word
        c2 = ugroup.canonical(p2, _theta(phi, w)).word
        if classes1.setdefault(c1, c2) != c2 or classes2.setdefault(c2, c1) != c1:
            bad_eq.append(w)
    for u, v in itertools.product(reps, repeat=2):
        if ugroup.equivalent(p1, u, v) != ugroup.equivalent(p2, _theta(phi, u), _theta(phi, v)):
            bad_eq.append((u, v))
    report.verdicts["transport"] = not bad_eq
    report.details["transport"] = bad_eq

    # the class map on f: images, injectivity, products and inverses within length J
    images = [ugroup.canonical(p2, _theta(phi, w)) for w in reps]
    report.images = [u.word for u in images]
    bad_hom = []
    if len(set(images)) != len(set(reps)):
        bad_hom.append("not injective on f")
    for (u, iu), (v, iv) in itertools.product(zip(reps, images), repeat=2):
        uv = ugroup.reduce(p1, u + v)
        if ugroup.canonical(p1, uv).length > J or not set(uv) <= s:
            continue
        if ugroup.canonical(p2, _theta(phi, uv)) != iu * iv:
            bad_hom.append((u, v))
    for u, iu in zip(reps, images):
        inv_u = tuple(p1.inverse(x) for x in reversed(u))
        if set(inv_u) <= s and ugroup.canonical(p2, _theta(phi, inv_u)) != iu.inverse():
            bad_hom.append((u, "inverse"))
    report.verdicts["homomorphism"] = not bad_hom
    report.details["homomorphism"] = bad_hom
    return report


# -- the three applications ------------------------------------------------


def _labelled_group(g: cons.FiniteGroup, families: Sequence[tuple[str, Mapping[str, str]]]) -> FiniteStructure:
    """The group in the language (1, mul, inv) plus constants <family>_<label>."""
    base = g.as_structure()
    names = list(base.signature.constants)
    constants = dict(base.constants)
    for fam, members in families:
        for label, element in members.items():
            names.append(f"{fam}_{label}")
            constants[f"{fam}_{label}"] = element
    sig = Signature(constants=names, functions=dict(base.signature.functions))
    return FiniteStructure(sig, base.carrier, constants, base.functions, {})


@dataclass
class HarnessReport:
    kind: str
    hypothesis: dict[str, bool]
    subsets: dict[str, bool] = field(default_factory=dict)
    transfers: list[TransferReport] = field(default_factory=list)
    configurations: dict[str, dict] = field(default_factory=dict)
    note: str = NOTE

    @property
    def ok(self) -> bool:
        """Verdict for the configuration as given; alternatives are informational."""
        return all(self.hypothesis.values()) and all(self.subsets.values()) and all(self.transfers)

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {
            "verdict": self.ok,
            "kind": self.kind,
            "hypothesis": self.hypothesis,
            "subsets": self.subsets,
            "transfers": [t.to_dict() for t in self.transfers],
            "configurations": self.configurations,
            "note": self.note,
        }


def _hypothesis(pairs: Mapping[str, tuple[FiniteStructure, FiniteStructure]], max_size: int) -> dict[str, bool]:
    out = {}
    for name, (m, n) in pairs.items():
        k = min(max_size, len(m.carrier), len(n.carrier))
        out[name] = m.signature == n.signature and bounded_f_equiv(m, n, k).equivalent
    return out


def _sample_words(p: Pregroup, rng: random.Random, count: int, size: int, length: int) -> list[list[tuple]]:
    pool = list(_reduced_words_over(p, p.carrier, length))
    return [rng.sample(pool, min(size, len(pool))) for _ in range(count)]


def _subsets(p: Pregroup, max_size: int):
    carrier = p.carrier
    yield tuple(carrier)
    for k in range(1, max_size + 1):
        yield from itertools.combinations(carrier, k)


def _union_partner(subset, side1, side2, id1, id2) -> dict[str, str] | None:
    """Split a subset of A u B along the factors and rejoin componentwise partners."""
    phi: dict[str, str] = {}
    for name in side1:
        comp1, comp2 = side1[name], side2[name]
        part = [x for x in comp1.carrier if id1[name][x] in subset]
        psi = find_isomorphism(part, comp1, comp2)
        if psi is None:
            return None
        for x, y in psi.items():
            key, value = id1[name][x], id2[name][y]
            if phi.setdefault(key, value) != value:
                return None
    return phi


def _factor_maps(built: cons.Built) -> dict[str, dict[str, str]]:
    out: dict[str, dict[str, str]] = {"A": {}, "B": {}}
    for raw, cid in built.sidecar.items():
        side, x = raw.split(":", 1)
        out[side][x] = cid
    return out


def _hnn_partner(subset, spec1: cons.HnnSpec, built1: cons.Built, g1, spec2, built2, g2) -> dict[str, str] | None:
    """Split the raw preimage of a subset into the four blocks and match each inside the base group."""
    raw1 = {}
    for e0, e1 in ((0, 0), (1, 0), (0, 1), (1, 1)):
        for x in spec1.group.carrier:
            raw1[(e0, x, e1)] = built1.sidecar[spec1.raw_name(e0, x, e1)]
    phi: dict[str, str] = {}
    for e0, e1 in ((0, 0), (1, 0), (0, 1), (1, 1)):
        block = [x for x in spec1.group.carrier if raw1[(e0, x, e1)] in subset]
        psi = find_isomorphism(block, g1, g2)
        if psi is None:
            return None
        for x, y in psi.items():
            key = raw1[(e0, x, e1)]
            value = built2.sidecar[spec2.raw_name(e0, y, e1)]
            if phi.setdefault(key, value) != value:
                return None
    return phi


def application_harness(
    kind: str,
    components1,
    components2,
    max_size: int = 3,
    samples: int = 10,
    seed: int = 0,
    word_length: int = 3,
    subset_size: int = 2,
) -> HarnessReport:
    """Hypothesis check, componentwise subset partners and sampled transfers.

    components are ``(A, B)`` for "free", ``(A, B, c_in_a, c_in_b)`` for
    "amalgam" and an :class:`HnnSpec` for "hnn".
    """
    rng = random.Random(seed)
    if kind in ("free", "amalgam"):
        if kind == "free":
            a1, b1 = components1
            a2, b2 = components2
            built1, built2 = cons.free_product(a1, b1), cons.free_product(a2, b2)
            fam1, fam2 = [], []
            fam1b, fam2b = [], []
        else:
            a1, b1, ca1, cb1 = components1
            a2, b2, ca2, cb2 = components2
            built1, built2 = cons.amalgam(a1, b1, ca1, cb1), cons.amalgam(a2, b2, ca2, cb2)
            fam1, fam2 = [("C", ca1)], [("C", ca2)]
            fam1b, fam2b = [("C", cb1)], [("C", cb2)]
        side1 = {"A": _labelled_group(a1, fam1), "B": _labelled_group(b1, fam1b)}
        side2 = {"A": _labelled_group(a2, fam2), "B": _labelled_group(b2, fam2b)}
        hyp = _hypothesis({n: (side1[n], side2[n]) for n in side1}, max_size)
        id1, id2 = _factor_maps(built1), _factor_maps(built2)
        report = HarnessReport(kind, hyp)
        p1, p2 = built1.pregroup, built2.pregroup
        for subset in _subsets(p1, subset_size):
            phi = _union_partner(set(subset), side1, side2, id1, id2)
            ok = phi is not None and is_isomorphism(phi, p1.structure, p2.structure)
            report.subsets[ugroup.format_word(subset)] = ok
        for words in _sample_words(p1, rng, samples, 3, word_length):
            report.transfers.append(transfer(p1, p2, words))
        return report

    if kind == "hnn":
        spec1, spec2 = components1, components2
        report = _hnn_run(spec1, spec2, max_size, rng, samples, word_length, subset_size)
        ident = cons.HnnSpec(spec2.group, {h: h for h in spec2.c1}, spec2.t)
        if dict(spec2.theta) != dict(ident.theta):
            alt = _hnn_run(spec1, ident, max_size, random.Random(seed), samples, word_length, subset_size)
            report.configurations["identity_on_second"] = alt.to_dict()
        return report
    raise ValueError(f"unknown kind {kind!r}")


def _hnn_run(spec1, spec2, max_size, rng, samples, word_length, subset_size) -> HarnessReport:
    def families(spec):
        return [("C1", {h: h for h in spec.c1}), ("C2", {h: h for h in spec.c2})]

    g1 = _labelled_group(spec1.group, families(spec1))
    g2 = _labelled_group(spec2.group, families(spec2))
    hyp = _hypothesis({"G": (g1, g2)}, max_size)
    report = HarnessReport("hnn", hyp)
    if not all(hyp.values()):
        return report
    built1, built2 = cons.hnn(spec1), cons.hnn(spec2)
    p1, p2 = built1.pregroup, built2.pregroup
    for subset in _subsets(p1, subset_size):
        phi = _hnn_partner(set(subset), spec1, built1, g1, spec2, built2, g2)
        ok = phi is not None and is_isomorphism(phi, p1.structure, p2.structure)
        report.subsets[ugroup.format_word(subset)] = ok
    for words in _sample_words(p1, rng, samples, 3, word_length):
        report.transfers.append(transfer(p1, p2, words))
    return report
