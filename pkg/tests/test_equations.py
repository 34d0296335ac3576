import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pregroups import constructions as C
from pregroups.equations import (
    EquationError,
    EquationSystem,
    core_report,
    noetherian_core,
    parse_equation,
    transfer_sentence,
    variety,
)
from pregroups.folang import App, Const, Eq, Var, evaluate, to_text


@pytest.fixture
def g():
    return C.z3().as_structure()


def system(g, texts, variables=None):
    return EquationSystem.parse(texts, g.signature, variables)


def test_variety_square(g):
    # the constant 1 names the element 0; x*x = y means y = 2x mod 3
    assert variety(g, system(g, ["x*x = y"])) == {("0", "0"), ("1", "2"), ("2", "1")}


def test_empty_system_one_variable(g):
    assert variety(g, EquationSystem(("x",), ())) == {("0",), ("1",), ("2",)}


def test_inequations_rejected(g):
    with pytest.raises(EquationError):
        parse_equation("x != y", g.signature)
    with pytest.raises(EquationError):
        parse_equation("exists x . x = x", g.signature)


def test_variables_must_cover_equations(g):
    with pytest.raises(EquationError):
        system(g, ["x = y"], ["x"])


def test_core_example(g):
    s = system(g, ["x = x", "x*x = y", "(x*x)*1 = y"])
    core = noetherian_core(g, s)
    assert [to_text(e) for e in core.equations] == ["mul(x,x) = y"]


def test_singleton_cores(g):
    assert noetherian_core(g, system(g, ["x = x"])).equations == ()
    s = system(g, ["x*x = 1"])
    assert noetherian_core(g, s) == s


def test_empty_core(g):
    empty = EquationSystem(("x",), ())
    assert noetherian_core(g, empty) == empty


def test_core_is_capped(g):
    s = system(g, ["x = x"] * 13)
    with pytest.raises(EquationError):
        noetherian_core(g, s)


def test_transfer_examples(g):
    core = system(g, ["x*x = y"])
    s = parse_equation("(x*x)*1 = y", g.signature)
    assert evaluate(g, transfer_sentence(core, s))
    empty = EquationSystem(("x",), ())
    f = transfer_sentence(empty, parse_equation("x = x", g.signature))
    assert to_text(f) == "forall x . x = x" and evaluate(g, f)
    core = system(g, ["x = 1"])
    assert evaluate(g, transfer_sentence(core, parse_equation("x*x = 1", g.signature)))


def test_transfer_can_be_false(g):
    core = system(g, ["x = x"])
    assert not evaluate(g, transfer_sentence(core, parse_equation("x = 1", g.signature)))


def test_transfer_variable_mismatch(g):
    core = system(g, ["x = 1"])
    with pytest.raises(EquationError):
        transfer_sentence(core, parse_equation("y = 1", g.signature))


def test_core_report(g):
    doc = core_report(g, system(g, ["x = x", "x*x = y", "(x*x)*1 = y"]))
    assert doc["core"] == ["mul(x,x) = y"]
    assert [d["holds"] for d in doc["discarded"]] == [True, True]


VARS3 = ("x", "y", "z")
terms = st.recursive(
    st.sampled_from([Var(v) for v in VARS3] + [Const("1")]),
    lambda t: st.one_of(t.map(lambda a: App("inv", (a,))), st.builds(lambda a, b: App("mul", (a, b)), t, t)),
    max_leaves=4,
)
equations = st.builds(Eq, terms, terms)


@settings(max_examples=60, deadline=None)
@given(st.lists(equations, max_size=5), st.lists(equations, max_size=2))
def test_variety_is_antitone(eqs, more):
    g = C.z3().as_structure()
    small = EquationSystem(VARS3, eqs)
    big = EquationSystem(VARS3, eqs + more)
    assert variety(g, big) <= variety(g, small)


@settings(max_examples=60, deadline=None)
@given(st.lists(equations, max_size=5))
def test_core_properties(eqs):
    g = C.z3().as_structure()
    s = EquationSystem(VARS3, eqs)
    core = noetherian_core(g, s)
    assert variety(g, core) == variety(g, s)
    for eq in s.equations:
        assert evaluate(g, transfer_sentence(core, eq))
    # minimality: no smaller subsystem has the same variety
    target = variety(g, s)
    for idx in itertools.combinations(range(len(s)), len(core) - 1 if core.equations else 0):
        if len(idx) < len(core):
            assert variety(g, s.subsystem(idx)) != target
