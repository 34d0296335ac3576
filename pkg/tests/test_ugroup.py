import itertools
from collections import defaultdict

import pytest
from hypothesis import given, settings, strategies as st

from pregroups.pregroup import restrict
from pregroups.ugroup import (
    MAX_CANONICAL_LENGTH,
    UElement,
    WordError,
    canonical,
    embed,
    equivalent,
    format_word,
    identity,
    interleave,
    interleavings,
    is_reduced,
    parse_word,
    reduce,
    reduce_rightmost,
    reduced_words,
    subgroup_agreement,
    u_inv,
    u_mul,
    words,
)

from conftest import FIXTURES
from oracles import naive_interleavings, naive_reduce, naive_reduced


def test_word_text_round_trip():
    assert parse_word("a, b,a") == ("a", "b", "a")
    assert parse_word("") == ()
    assert format_word(("a", "b")) == "a,b"


def test_reduce_examples(dinf, z3):
    assert reduce(dinf, ("a", "a", "b")) == ("b",)
    assert reduce(dinf, ("a", "b", "a")) == ("a", "b", "a")
    assert reduce(z3, ("1", "1", "1")) == ("0",)
    assert reduce(dinf, ()) == ("1",)


def test_is_reduced_examples(dinf):
    assert is_reduced(dinf, ("a", "b", "a", "b"))
    assert not is_reduced(dinf, ("a", "a"))
    assert all(is_reduced(dinf, (x,)) for x in dinf.carrier)


def test_interleave_examples(am, dinf):
    assert interleave(am, ("x", "y"), ("c",)) == ("X", "Y")
    assert interleave(am, ("x", "y", "x"), ("1", "1")) == ("x", "y", "x")
    assert interleave(dinf, ("a", "b"), ("a",)) is None


def test_interleave_length_mismatch(am):
    with pytest.raises(WordError):
        interleave(am, ("x", "y"), ())
    with pytest.raises(WordError):
        interleave(am, (), ())


def test_equivalent_examples(am, dinf):
    assert equivalent(am, ("x", "y"), ("X", "Y"))
    assert not equivalent(dinf, ("a", "b"), ("b", "a"))
    assert equivalent(dinf, ("a", "a", "b"), ("b",))


def test_canonical_examples(am, dinf):
    assert canonical(am, ("X", "Y")).word == ("x", "y")
    assert all(canonical(am, (g,)).word == (g,) for g in am.carrier)
    assert canonical(dinf, ("a", "a", "b")) == canonical(dinf, ("b",))


def test_canonical_length_guard(dinf):
    w = ("a", "b") * 5
    with pytest.raises(WordError):
        canonical(dinf, w)
    assert len(canonical(dinf, w[:MAX_CANONICAL_LENGTH]).word) == MAX_CANONICAL_LENGTH


def test_mul_inv_examples(dinf, am):
    ab, ba = canonical(dinf, ("a", "b")), canonical(dinf, ("b", "a"))
    assert (ab * ba).is_identity
    assert u_mul(dinf, ab, identity(dinf)) == ab
    assert embed(dinf, "a") * embed(dinf, "b") == ab
    assert u_inv(dinf, ab) == ba
    assert identity(dinf).inverse() == identity(dinf)
    assert embed(am, "x").inverse() == embed(am, "X")
    assert identity(dinf).length == 0 and ab.length == 2


def test_mixing_pregroups_rejected(dinf, z3):
    with pytest.raises(WordError):
        embed(dinf, "a") * embed(z3, "1")
    with pytest.raises(WordError):
        embed(dinf, "zz")


def test_embed(any_pregroup):
    p = any_pregroup
    assert embed(p, p.identity) == identity(p)
    assert len({embed(p, g) for g in p.carrier}) == len(p.carrier)
    for a, b in p.domain:
        assert embed(p, p.product(a, b)) == embed(p, a) * embed(p, b)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_reduce_matches_naive(name):
    p = FIXTURES[name]()
    for w in words(p, 4):
        r = reduce(p, w)
        assert r == naive_reduce(p.structure, w)
        assert naive_reduced(p.structure, r)
        assert len(r) <= len(w)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_equivalent_matches_brute_force(name):
    p = FIXTURES[name]()
    by_length = defaultdict(list)
    for w in reduced_words(p, 4):
        by_length[len(w)].append(w)
    for k, ws in by_length.items():
        for c in ws:
            brute = naive_interleavings(p.structure, c)
            assert set(interleavings(p, c)) == brute
            for d in ws:
                assert equivalent(p, c, d) == (d in brute), (c, d)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_equivalence_relation(name):
    p = FIXTURES[name]()
    ws = list(reduced_words(p, 3))
    classes = {w: canonical(p, w) for w in ws}
    for c, d in itertools.product(ws, repeat=2):
        e = equivalent(p, c, d)
        assert e == equivalent(p, d, c)
        assert e == (classes[c] == classes[d])
    for c in ws:
        assert equivalent(p, c, c)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_interleaving_preserves_reducedness(name):
    p = FIXTURES[name]()
    for c in reduced_words(p, 3):
        for a in itertools.product(p.carrier, repeat=len(c) - 1):
            out = interleave(p, c, a)
            if out is not None:
                assert is_reduced(p, out)
                assert equivalent(p, c, out)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_canonical_is_least_reduced_member(name):
    p = FIXTURES[name]()
    key = lambda w: [p.index[x] for x in w]
    for c in reduced_words(p, 3):
        u = canonical(p, c)
        assert is_reduced(p, u.word)
        assert key(u.word) == min(key(w) for w in naive_interleavings(p.structure, c))


def fixture_words(max_len=6):
    return st.sampled_from(sorted(FIXTURES)).flatmap(
        lambda name: st.tuples(
            st.just(name),
            st.lists(st.sampled_from(FIXTURES[name]().carrier), max_size=max_len),
        )
    )


@settings(max_examples=150, deadline=None)
@given(fixture_words())
def test_reduction_strategies_agree_up_to_equivalence(case):
    name, w = case
    p = FIXTURES[name]()
    left, right = reduce(p, w), reduce_rightmost(p, w)
    assert is_reduced(p, right)
    assert equivalent(p, left, right)
    assert canonical(p, left) == canonical(p, right)


@settings(max_examples=100, deadline=None)
@given(fixture_words(4), st.data())
def test_canonical_iff_equivalent(case, data):
    name, w1 = case
    p = FIXTURES[name]()
    w2 = data.draw(st.lists(st.sampled_from(p.carrier), max_size=4))
    assert (canonical(p, w1) == canonical(p, w2)) == equivalent(p, w1, w2)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_group_laws(name):
    p = FIXTURES[name]()
    elems = sorted({canonical(p, w) for w in reduced_words(p, 2)}, key=lambda u: (u.length, u.word))
    one = identity(p)
    for u in elems:
        assert u * one == u == one * u
        assert (u * u.inverse()).is_identity
        assert (u.inverse() * u).is_identity
    sample = elems[:10]
    for u, v, w in itertools.product(sample, repeat=3):
        assert (u * v) * w == u * (v * w)


def test_subgroup_agreement_examples(dinf):
    q = restrict(dinf, ["1", "a"])
    assert subgroup_agreement(q, dinf, ("a",), ("a",)) == (True, True)
    assert subgroup_agreement(q, dinf, ("a",), ("1",)) == (False, False)


@pytest.mark.parametrize("name,subset", [("dinf", ["1", "a"]), ("am", ["1", "c", "x", "X"]), ("hnn", ["1", "g"])])
def test_subgroup_agreement_exhaustive(name, subset):
    p = FIXTURES[name]()
    q = restrict(p, subset)
    ws = list(words(q, 3))
    for c, d in itertools.product(ws, repeat=2):
        in_q, in_p = subgroup_agreement(q, p, c, d)
        assert in_q == in_p


def test_subgroup_agreement_requires_subpregroup(dinf, z3):
    with pytest.raises(Exception):
        subgroup_agreement(z3, dinf, ("0",), ("0",))


def test_uelement_equality_is_by_pregroup(dinf):
    other = FIXTURES["dinf"]()
    assert UElement(dinf, ("a",)) != UElement(other, ("a",))
