import pytest

from pregroups import constructions as C
from pregroups.pregroup import Pregroup


def z3_pregroup():
    return C.group_as_pregroup(C.z3())


def dinf_swapped():
    """PG_Dinf with the carrier listed as 1, b, a."""
    d = C.pg_dinfty()
    return Pregroup(d.structure.relabel({x: x for x in d.carrier}, carrier=["1", "b", "a"]))


def am_swapped():
    a, b, ca, cb = C.amalgam_factors()
    return C.amalgam_pregroup(b, a, cb, ca)


def am_renamed_factors():
    a, b, ca, cb = C.amalgam_factors()
    ren_a = a.relabel({"1": "1", "c": "c", "x": "u", "X": "U"})
    ren_b = b.relabel({"1": "1", "c": "c", "y": "v", "Y": "V"})
    return ren_a, ren_b, ca, cb


FIXTURES = {
    "z3": z3_pregroup,
    "dinf": C.pg_dinfty,
    "am": C.pg_am,
    "hnn": C.hnn_z2,
}


@pytest.fixture
def z3():
    return z3_pregroup()


@pytest.fixture
def dinf():
    return C.pg_dinfty()


@pytest.fixture
def am():
    return C.pg_am()


@pytest.fixture
def hnn():
    return C.hnn_z2()


@pytest.fixture
def z3_group():
    return C.z3().as_structure()


@pytest.fixture(params=sorted(FIXTURES))
def any_pregroup(request):
    return FIXTURES[request.param]()
