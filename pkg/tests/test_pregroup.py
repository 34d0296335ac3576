import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from pregroups import constructions as C
from pregroups.fostruct import FiniteStructure
from pregroups.pregroup import (
    AXIOM_NAMES,
    Pregroup,
    PregroupError,
    SPregroup,
    attach_constants,
    check_axioms,
    check_s_axioms,
    is_subpregroup,
    lemma_abc_check,
    load,
    product,
    restrict,
)

from conftest import FIXTURES


def mutate(p, add=(), remove=(), d_add=(), d_remove=()):
    s = p.structure
    rels = dict(s.relations)
    rels["M"] = (set(rels["M"]) | set(add)) - set(remove)
    rels["D"] = (set(rels["D"]) | set(d_add)) - set(d_remove)
    return Pregroup(FiniteStructure(s.signature, s.carrier, s.constants, s.functions, rels))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_are_pregroups(name):
    report = check_axioms(FIXTURES[name](), cross_check=True)
    assert report.ok
    assert report.eval_agrees


def test_z3_all_pass(z3):
    assert check_axioms(z3).passed() == {k: True for k in AXIOM_NAMES}


def test_missing_inverse_triple(dinf):
    broken = mutate(dinf, remove=[("a", "a", "1")])
    report = check_axioms(broken, cross_check=True)
    assert report.witnesses["v"] == ("a",)
    assert not report.passed()["ii"]
    assert report.eval_agrees


def test_domain_without_product(dinf):
    broken = mutate(dinf, d_add=[("a", "b")])
    report = check_axioms(broken)
    assert report.witnesses["ii"] == ("a", "b")
    assert [k for k, ok in report.passed().items() if not ok] == ["ii"]


def test_functionality_witness(dinf):
    broken = mutate(dinf, add=[("a", "a", "b")])
    report = check_axioms(broken, cross_check=True)
    assert report.witnesses["iii"] == ("a", "a", "1", "b")
    assert report.eval_agrees


def test_product_examples(dinf):
    assert product(dinf, "a", "a") == "1"
    assert product(dinf, "a", "b") is None


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_identity_and_inverse_products(name):
    p = FIXTURES[name]()
    for x in p.carrier:
        assert product(p, x, p.identity) == x
        assert product(p, product(p, x, p.identity), p.identity) == x
        assert product(p, x, p.inverse(x)) == p.identity


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_axiom_vi_closure(name):
    p = FIXTURES[name]()
    for x, y, z in p.mult:
        assert (p.inverse(y), p.inverse(x), p.inverse(z)) in p.mult


def test_lemma_abc_examples(z3, dinf):
    assert ("0", "1", "1") in z3.mult and ("2", "1", "0") in z3.mult
    assert lemma_abc_check(z3) == []
    assert ("1", "a", "a") in dinf.mult
    assert lemma_abc_check(dinf) == []


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_lemma_abc_on_fixtures(name):
    assert lemma_abc_check(FIXTURES[name]()) == []


def test_subpregroups(dinf):
    q = restrict(dinf, ["1", "a"])
    assert is_subpregroup(q, dinf)
    assert is_subpregroup(dinf, dinf)
    s = q.structure
    rels = {"D": set(s.relations["D"]) - {("a", "a")}, "M": s.relations["M"]}
    thin = Pregroup(FiniteStructure(s.signature, s.carrier, s.constants, s.functions, rels))
    assert not is_subpregroup(thin, dinf)


def test_attach_identity_only(dinf):
    sp = attach_constants(dinf, [("K", ["1"])])
    assert isinstance(sp, SPregroup)
    assert sp.delta == {"1"}
    assert check_s_axioms(sp) == []


def test_attach_amalgam_constants(am):
    assert am.delta == {"1", "c"}
    assert am.structure.constants["C_c"] == "c"
    assert check_s_axioms(am) == []


def test_attach_requires_identity(dinf):
    with pytest.raises(PregroupError):
        attach_constants(dinf, [("K", ["a"])])


def test_attach_duplicate_names(dinf):
    with pytest.raises(PregroupError):
        attach_constants(dinf, [("K", ["1"]), ("K", ["1"])])


def test_attach_checks_diagram(dinf):
    z2 = C.group_as_pregroup(C.cyclic_group(2, ["1", "a"]))
    sp = attach_constants(dinf, [("K", {"1": "1", "a": "a"})], reference={"K": z2})
    assert sp.delta == {"1", "a"}
    z2b = C.group_as_pregroup(C.cyclic_group(2, ["1", "b"]))
    with pytest.raises(PregroupError):
        # label b is mapped onto an element that is not its image in the reference
        attach_constants(dinf, [("K", {"1": "1", "b": "1"})], reference={"K": z2b})


def test_s_axiom_x_violation(am):
    s = am.structure
    rels = dict(s.relations)
    rels["delta"] = {("1",)}
    broken = SPregroup(FiniteStructure(s.signature, s.carrier, s.constants, s.functions, rels))
    problems = check_s_axioms(broken)
    assert any(p.startswith("(ix)") for p in problems)
    assert any(p.startswith("(x)") for p in problems)


def test_load_validates_tagged_files(tmp_path, dinf):
    broken = mutate(dinf, remove=[("a", "a", "1")])
    path = tmp_path / "p.json"
    path.write_text(json.dumps(broken.structure.to_dict(kind="pregroup")))
    with pytest.raises(PregroupError):
        load(path)
    path.write_text(json.dumps(broken.structure.to_dict()))
    assert isinstance(load(path), Pregroup)


def test_missing_symbols_rejected(z3):
    g = C.z3().as_structure()
    with pytest.raises(PregroupError):
        Pregroup(g)


def all_triples(p):
    return list(itertools.product(p.carrier, repeat=3))


def test_every_single_mutation_of_dinf():
    d = C.pg_dinfty()
    for t in all_triples(d):
        m = mutate(d, remove=[t]) if t in d.mult else mutate(d, add=[t])
        report = check_axioms(m, cross_check=True)
        assert report.eval_agrees, t


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_random_mutations_of_amalgam(data):
    p = C.pg_am()
    triples = all_triples(p)
    picks = data.draw(st.lists(st.sampled_from(triples), min_size=1, max_size=3, unique=True))
    add = [t for t in picks if t not in p.mult]
    remove = [t for t in picks if t in p.mult]
    report = check_axioms(mutate(p, add=add, remove=remove), cross_check=True)
    assert report.eval_agrees
