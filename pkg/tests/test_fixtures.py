import pytest

from operadmassey.errors import InputError, UnsupportedCharacteristicError
from operadmassey.exactla import FieldSpec
from operadmassey.fixtures import (SwissCheeseFragmentSpec, acyclic_extension, build_sc_fragment,
                                   build_sc_homology, zero_fragment)
from operadmassey.homology import class_of, homology
from operadmassey.operadcore import Permutation, act, boundary, compose, validate

S = Permutation((2, 1))
F2 = FieldSpec(2)


def _eigen(O, profile, degree):
    H = homology(O, profile, degree)
    assert H.dimension == 1
    r = H.representatives[0]
    return class_of(O, act(O, r, S)).coords[0]


def test_d2_table():
    O = build_sc_fragment(2)
    assert homology(O, "o,o;o", 0).dimension == 2
    assert homology(O, "c;o", 0).dimension == 1
    assert homology(O, "c,c;c", 1).dimension == 1
    assert homology(O, "c,o;o", 1).dimension == 0
    H = homology(O, "c,c;o", 1)
    assert H.dimension == 1
    assert not class_of(O, compose(O, O.cell("f"), 1, O.element("l"))).is_zero()


@pytest.mark.parametrize("d", [3, 4, 5])
def test_general_table(d):
    O = build_sc_fragment(d)
    sign = lambda k: -1 if k % 2 else 1
    assert _eigen(O, "o,o;o", d - 2) == sign(d - 1)
    assert _eigen(O, "c,c;c", d - 1) == sign(d)
    assert homology(O, "c,c;o", d - 1).dimension == 1
    assert homology(O, "c,o;o", d - 1).dimension == 0
    assert not class_of(O, compose(O, O.cell("f"), 1, O.element("l"))).is_zero()


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_named_elements(d):
    O = build_sc_fragment(d)
    assert boundary(O, O.element("l")).is_zero()
    if d == 2:
        eta, nu = O.element("eta"), O.element("nu")
        a, f = O.cell("a"), O.cell("f")
        assert boundary(O, eta) == act(O, compose(O, a, 2, f), S) - compose(O, a, 1, f)
        E = compose(O, eta, 2, f)
        assert boundary(O, nu) == E + act(O, E, S) - compose(O, f, 1, O.element("l"))


def test_char2():
    with pytest.raises(UnsupportedCharacteristicError):
        build_sc_fragment(3, F2)
    with pytest.raises(UnsupportedCharacteristicError):
        SwissCheeseFragmentSpec(4, F2).check()
    O = build_sc_fragment(2, F2)
    assert validate(O).passed
    assert homology(O, "o,o;o", 0).dimension == 2


def test_bad_d():
    with pytest.raises(InputError):
        build_sc_fragment(1)
    with pytest.raises(InputError):
        build_sc_homology(0)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_homology_fixture_validates(d):
    assert validate(build_sc_homology(d)).passed
    assert validate(build_sc_homology(d, FieldSpec(5))).passed


@pytest.mark.parametrize("d", [2, 3])
def test_acyclic_extension_validates_and_preserves_homology(d):
    O = build_sc_fragment(d)
    E = acyclic_extension(O)
    assert validate(E).passed
    for p in O.profiles:
        for k in set(O.degrees(p)) | set(E.degrees(p)):
            assert homology(E, p, k).dimension == homology(O, p, k).dimension


def test_zero_fragment():
    O = zero_fragment(build_sc_fragment(2))
    assert not O.cells and validate(O).passed
