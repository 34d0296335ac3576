import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from pregroups import constructions as C
from pregroups.equivalence import application_harness, product_closure, transfer
from pregroups.fostruct import StructureError
from pregroups.ugroup import canonical, equivalent, is_reduced, reduced_words

from conftest import FIXTURES, am_renamed_factors, am_swapped, dinf_swapped, z3_pregroup
from test_constructions import hnn_identity_z4_spec, hnn_inversion_spec


def test_product_closure_examples(dinf, am):
    chain = product_closure(dinf, {"a", "b"}, 2)
    assert chain.sets[1] == {"1", "a", "b"}
    assert chain.stabilized_at == 1
    chain = product_closure(am, {"x", "y"}, 3)
    assert chain.sets[1] == {"x", "y", "c"}
    assert chain.sets[2] == set(am.carrier)
    assert chain.stabilized_at == 2
    assert product_closure(am, {"1"}, 2).stabilized_at == 0


def test_product_closure_rejects_foreign_elements(dinf):
    with pytest.raises(StructureError):
        product_closure(dinf, {"z"}, 1)


def test_transfer_relabelled_dinf(dinf):
    report = transfer(dinf, dinf_swapped(), [("a", "b")])
    assert report.ok
    assert report.phi == {"1": "1", "a": "b", "b": "a"}
    assert report.images == [("b", "a")]
    assert report.J == 2


def test_transfer_to_z3_fails(dinf):
    report = transfer(dinf, z3_pregroup(), [("a",)])
    assert not report.ok
    assert report.phi is None
    assert report.verdicts == {"isomorphism": False}
    assert report.chain == [["a"], ["1", "a"], ["1", "a"]]


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_self_transfer_is_identity(name):
    p = FIXTURES[name]()
    words = [w for w in reduced_words(p, 2)][:6]
    report = transfer(p, p, words)
    assert report.ok
    assert all(report.phi[x] == x for x in report.phi)


def test_transfer_amalgam_swapped(am):
    report = transfer(am, am_swapped(), [("x", "y"), ("Y", "X", "y")])
    assert report.ok
    json.dumps(report.to_dict())


def test_transfer_rejects_empty_list(dinf):
    with pytest.raises(ValueError):
        transfer(dinf, dinf, [])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.sampled_from(["1", "c", "x", "X", "y", "Y"]), min_size=1, max_size=3), min_size=1, max_size=3))
def test_transfer_properties_amalgam(words):
    p1, p2 = C.pg_am(), am_swapped()
    report = transfer(p1, p2, words)
    assert report.ok
    phi = report.phi
    # phi(S_r) = T_r recomputed on the target side
    t_chain = product_closure(p2, {phi[x] for x in report.chain[0]}, len(report.chain) - 1)
    for sr, tr in zip(report.chain, t_chain.sets):
        assert {phi[x] for x in sr} == tr
    letters = report.chain[0]
    for k in range(1, report.J + 1):
        for w in itertools.product(letters, repeat=k):
            if is_reduced(p1, w):
                assert is_reduced(p2, tuple(phi[x] for x in w))
    for u, v in itertools.product(report.words, repeat=2):
        assert equivalent(p1, u, v) == equivalent(p2, tuple(phi[x] for x in u), tuple(phi[x] for x in v))


def test_harness_free():
    z2 = C.cyclic_group(2, ["1", "a"]), C.cyclic_group(2, ["1", "b"])
    report = application_harness("free", z2, z2, word_length=4, samples=5)
    assert report.ok
    assert all(t.J <= 4 for t in report.transfers)


def test_harness_free_detects_different_factors():
    z2 = C.cyclic_group(2, ["1", "a"]), C.cyclic_group(2, ["1", "b"])
    other = C.cyclic_group(2, ["1", "a"]), C.cyclic_group(3, ["1", "b", "B"])
    report = application_harness("free", z2, other, samples=2)
    assert not report.hypothesis["B"]
    assert not report.ok


def test_harness_amalgam_relabelled():
    report = application_harness("amalgam", C.amalgam_factors(), am_renamed_factors(), samples=5)
    assert report.ok
    assert all(report.subsets.values())


def test_harness_hnn_z2():
    report = application_harness("hnn", C.hnn_z2_spec(), C.hnn_z2_spec(), samples=5)
    assert report.ok
    assert report.configurations == {}
    spec = C.hnn_z2_spec()
    p = C.hnn_z2()
    for t in report.transfers:
        for a, b in itertools.product(t.images, repeat=2):
            prod = canonical(p, a) * canonical(p, b)
            assert C.oracle_normal_form("hnn", spec, a + b) == C.oracle_normal_form("hnn", spec, prod.word)


def test_harness_hnn_theta_configurations():
    # same base group and labelled subgroups, but inversion on one side and the identity on the other
    mixed = application_harness("hnn", hnn_identity_z4_spec(), hnn_inversion_spec(), samples=3)
    assert mixed.hypothesis == {"G": True}
    assert not mixed.ok
    assert not all(mixed.subsets.values())
    assert mixed.configurations["identity_on_second"]["verdict"] is True

    both = application_harness("hnn", hnn_inversion_spec(), hnn_inversion_spec(), samples=3)
    assert both.ok
    assert both.configurations["identity_on_second"]["verdict"] is False


def test_harness_report_serializes():
    report = application_harness("hnn", C.hnn_z2_spec(), C.hnn_z2_spec(), samples=2)
    doc = json.loads(json.dumps(report.to_dict()))
    assert doc["verdict"] is True and doc["kind"] == "hnn"
    assert "note" in doc


def test_harness_unknown_kind():
    with pytest.raises(ValueError):
        application_harness("graph", None, None)
