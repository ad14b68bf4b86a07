import itertools

import pytest
from hypothesis import given, settings, strategies as st

from operadmassey.errors import IncompleteFragmentError, InputError, SemanticError
from operadmassey.exactla import FieldSpec
from operadmassey.fixtures import acyclic_extension, build_sc_fragment, zero_morphism
from operadmassey.operadcore import (Element, FragmentBuilder, OperadMorphism, Permutation, Profile, act,
                                     apply_morphism, boundary, compose, slot_for, validate, validate_morphism)

Q = FieldSpec()
S = Permutation((2, 1))


@pytest.fixture(scope="module")
def sc2():
    return build_sc_fragment(2)


def test_profile_parse_and_substitute():
    p = Profile.parse("c, o ; o")
    assert str(p) == "c,o;o" and p.arity == 2
    assert p.substitute(1, Profile.parse("c,c;c")) == Profile.parse("c,c,o;o")
    assert p.permuted(S) == Profile.parse("o,c;o")
    with pytest.raises(InputError):
        p.substitute(2, Profile.parse("c;c"))
    with pytest.raises(InputError):
        Profile.parse("c,o")


def test_permutation_group_law_words():
    perms = [Permutation(t) for t in itertools.permutations((1, 2, 3))]
    for s, t in itertools.product(perms, repeat=2):
        assert (s * t)(1) == s(t(1))
    for p in perms:
        w = p.adjacent_word()
        prod = Permutation.identity(3)
        for k in w:
            prod = prod * Permutation.transposition(3, k)
        assert prod == p
        assert (p * p.inverse()).is_identity()


def test_right_action_group_law(sc2):
    # act is a right action on arity-2 (c,c;o) cells for all words of length <= 4
    O = sc2
    x = O.element({"w1": 1, "q2": 2, "c1": -1})
    for n in range(5):
        for word in itertools.product(((1, 2), (2, 1)), repeat=n):
            y, total = x, Permutation.identity(2)
            for w in word:
                y = act(O, y, Permutation(w))
                total = total * Permutation(w)
            assert y == act(O, x, total)


def test_element_arithmetic(sc2):
    O = sc2
    x = O.element({"w1": 1})
    assert x - x == O.zero("c,c;o", 1) and (x - x).is_zero()
    assert 2 * x == x + x
    with pytest.raises(InputError):
        x + O.element({"z1": 1})


def test_sign_example_leibniz(sc2):
    O = sc2
    eta, f = O.cell("eta1"), O.cell("f")
    v = compose(O, eta, 2, f)
    assert v == O.cell("w1")
    assert boundary(O, v) == compose(O, boundary(O, eta), 2, f) + compose(O, eta, 2, boundary(O, f))
    assert boundary(O, v) == O.element({"z2": 1, "z1": -1})


def test_equivariance_instance(sc2):
    O = sc2
    lhs = act(O, compose(O, O.cell("eta1"), 2, O.cell("f")), S)
    rhs = compose(O, act(O, O.cell("eta1"), S), 1, O.cell("f"))
    assert lhs == rhs == O.cell("w2")


def test_incomplete_fragment_names_triple(sc2):
    with pytest.raises(IncompleteFragmentError) as e:
        compose(sc2, sc2.cell("a"), 1, sc2.cell("eta1"))
    assert "a" in str(e.value) and "eta1" in str(e.value)


def test_zero_coefficient_terms_skip_lookup(sc2):
    O = sc2
    assert compose(O, O.zero("o,o;o", 0), 1, O.cell("eta1")).is_zero()


@pytest.mark.parametrize("d", [2, 3, 4, 5])
@pytest.mark.parametrize("field", [FieldSpec(), FieldSpec(5)])
def test_fixture_validates(d, field):
    rep = validate(build_sc_fragment(d, field))
    assert rep.passed, str(rep)
    assert rep.checked > 0


def test_kernel_shape_restricted_to_w_q(sc2):
    from operadmassey.homology import boundary_matrix
    from operadmassey.exactla import kernel
    O = sc2
    cells = O.cells_in("c,c;o", 1)
    K = kernel(boundary_matrix(O, "c,c;o", 1))
    assert K.dim == 3
    idx = [cells.index(c) for c in ("w1", "w2", "q1", "q2")]
    others = [k for k in range(len(cells)) if k not in idx]
    sub = [v for v in K.basis if not any(v[k] for k in others)]
    wq = [tuple(v[k] for k in idx) for v in sub]
    from operadmassey.exactla import Subspace
    assert Subspace.span(Q, 4, wq) == Subspace.span(Q, 4, [(1, 1, 0, 0), (0, 0, 1, 1)])


def test_mutated_differential_is_reported(sc2):
    b = FragmentBuilder.from_fragment(sc2)
    b.set_boundary("eta2", {"w1": 1, "w2": 1, "q1": 1, "q2": 1})
    rep = validate(b.build())
    assert not rep.passed
    hit = [v for v in rep.violations if "b1" in v.cells]
    assert hit and hit[0].axiom == "action commutes with d"
    assert hit[0].discrepancy is not None and not hit[0].discrepancy.is_zero()


def test_mutated_composite_breaks_chain_rule(sc2):
    b = FragmentBuilder.from_fragment(sc2)
    b.set_composite("eta1", 2, "f", {"q1": 1})
    rep = validate(b.build())
    assert any(v.axiom == "chain rule" for v in rep.violations)


def test_builder_rejections():
    b = FragmentBuilder(Q, ("c",))
    b.add_cell("x", "c;c", 0)
    with pytest.raises(SemanticError, match="duplicate cell"):
        b.add_cell("x", "c;c", 1)
    with pytest.raises(SemanticError, match="unknown color"):
        b.add_cell("y", "c;o", 0)
    with pytest.raises(SemanticError, match="unknown cell"):
        b.set_boundary("nope", {})
    b.add_cell("y", "c;c", 1)
    with pytest.raises(SemanticError, match="degree mismatch"):
        b.set_boundary("y", {"y": 1})
    b.add_cell("u", "c,c;c", 0)
    with pytest.raises(SemanticError, match="profile mismatch"):
        b.set_boundary("y", {"u": 1})


def test_slot_for(sc2):
    # the only open input of (c,o;o) is raw slot 2
    assert slot_for(sc2, "c,o;o", "o", 1) == 2
    assert slot_for(sc2, "o,o;o", "o", 2) == 2
    assert slot_for(sc2, "c,c;o", "c", 1) == 1


def test_identity_morphism(sc2):
    phi = OperadMorphism.identity(sc2)
    assert validate_morphism(phi).passed
    x = sc2.element({"w1": 2, "q1": -1})
    assert apply_morphism(phi, x) == x


def test_zero_and_inclusion_morphisms(sc2):
    assert validate_morphism(zero_morphism(sc2)).passed
    inc = OperadMorphism.inclusion(sc2, acyclic_extension(sc2))
    assert validate_morphism(inc).passed
    assert apply_morphism(zero_morphism(sc2), sc2.cell("eta2")).is_zero()


def test_bad_morphism_reported(sc2):
    # w1 -> w2 does not commute with composition (eta1 o_2 f = w1 must go to itself)
    table = {c: {c: 1} for c in sc2.cells}
    table["w1"] = {"w2": 1}
    rep = validate_morphism(OperadMorphism.from_coeffs(sc2, sc2, table))
    assert not rep.passed


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.sampled_from(["w1", "w2", "q1", "q2", "c1", "c2"]), st.integers(-3, 3), max_size=6))
def test_boundary_commutes_with_action(coeffs):
    O = build_sc_fragment(2)
    x = Element.build(O.field, Profile.parse("c,c;o"), 1, coeffs.items())
    assert boundary(O, act(O, x, S)) == act(O, boundary(O, x), S)
    assert act(O, act(O, x, S), S) == x
