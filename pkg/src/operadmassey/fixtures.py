"""Finite cell models of the Swiss-cheese chain operad and its homology.

Colors are ``c`` (closed) and ``o`` (open); closed inputs are listed first.
Only the bidegrees needed by the relations, the eye cycle and the type II
product are modeled.  Raw slots: ``eta o_2 f`` is composition at the open
input of ``(c,o;o)``.

d = 2 cells::

    (o,o;o)_0  a, a21                 a.s = a21
    (c;o)_0    f
    (c,c;c)    p1, p2 | m1, m2         dm1 = p2 - p1, l = m1 + m2
    (c,o;o)    s1, s2 | eta1           d eta1 = s2 - s1
    (o,c;o)    t1, t2 | eta1t          mirror of (c,o;o) under s
    (c,c;o)    z1, z2, r1, r2 | w1, w2, q1, q2, c1, c2 | eta2, b1

General d >= 3 uses a free Z/2 cell sphere S^{d-1} for (c,c;c) (cells
e{k}, e{k}t), a single ``a`` in degree d-2 with a.s = (-1)^{d-1} a, and one
degree-0 basepoint per profile where the modeled space is connected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, UnsupportedCharacteristicError
from .exactla import FieldSpec
from .operadcore import FragmentBuilder, OperadFragment, OperadMorphism

COLORS = ("c", "o")
CHAR2_REMARK = ("for d >= 3 the construction needs 1/2; in characteristic 2 the operad is "
                "only known to be non-formal as an S2-module, which is not computed here")


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class SwissCheeseFragmentSpec:
    d: int = 2
    field: FieldSpec = FieldSpec()

    def check(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise InputError(f"d must be an integer >= 2, got {self.d!r}")
        if self.d >= 3 and self.field.characteristic == 2:
            raise UnsupportedCharacteristicError(f"d = {self.d} over F_2: {CHAR2_REMARK}")


def build_sc_fragment(spec: SwissCheeseFragmentSpec | int = 2, field: FieldSpec | None = None) -> OperadFragment:
    if isinstance(spec, int):
        spec = SwissCheeseFragmentSpec(spec, field or FieldSpec())
    spec.check()
    return _build_d2(spec.field) if spec.d == 2 else _build_general(spec.d, spec.field)


def _build_d2(F: FieldSpec) -> OperadFragment:
    b = FragmentBuilder(F, COLORS)
    for p in ("o,o;o", "c;o", "c,c;c", "c,o;o", "o,c;o", "c,c;o"):
        b.add_profile(p)
    b.add_cell("a", "o,o;o", 0).add_cell("a21", "o,o;o", 0)
    b.add_cell("f", "c;o", 0)
    b.add_cell("p1", "c,c;c", 0).add_cell("p2", "c,c;c", 0)
    b.add_cell("m1", "c,c;c", 1, {"p2": 1, "p1": -1})
    b.add_cell("m2", "c,c;c", 1, {"p1": 1, "p2": -1})
    b.add_cell("s1", "c,o;o", 0).add_cell("s2", "c,o;o", 0)
    b.add_cell("eta1", "c,o;o", 1, {"s2": 1, "s1": -1})
    b.add_cell("t1", "o,c;o", 0).add_cell("t2", "o,c;o", 0)
    b.add_cell("eta1t", "o,c;o", 1, {"t1": 1, "t2": -1})
    for z in ("z1", "z2", "r1", "r2"):
        b.add_cell(z, "c,c;o", 0)
    b.add_cell("w1", "c,c;o", 1, {"z2": 1, "z1": -1})
    b.add_cell("w2", "c,c;o", 1, {"z1": 1, "z2": -1})
    b.add_cell("q1", "c,c;o", 1, {"r2": 1, "r1": -1})
    b.add_cell("q2", "c,c;o", 1, {"r1": 1, "r2": -1})
    b.add_cell("c1", "c,c;o", 1, {"r1": 1, "z1": -1})
    b.add_cell("c2", "c,c;o", 1, {"r2": 1, "z2": -1})
    b.add_cell("eta2", "c,c;o", 2, {"w1": 1, "w2": 1, "q1": -1, "q2": -1})
    b.add_cell("b1", "c,c;o", 2, {"c1": 1, "c2": -1, "q1": 1, "w1": -1})

    for x, y in [("a", "a21"), ("p1", "p2"), ("m1", "m2"), ("s1", "t2"), ("s2", "t1"),
                 ("eta1", "eta1t"), ("z1", "z2"), ("r1", "r2"), ("w1", "w2"), ("q1", "q2"), ("c1", "c2")]:
        b.set_action(x, 1, {y: 1}).set_action(y, 1, {x: 1})
    b.set_action("eta2", 1, {"eta2": 1})
    b.set_action("b1", 1, {"b1": -1, "eta2": -1})

    table = [("a", 1, "f", "s1"), ("a", 2, "f", "t1"), ("a21", 1, "f", "s2"), ("a21", 2, "f", "t2"),
             ("s1", 2, "f", "z1"), ("s2", 2, "f", "z2"), ("t1", 1, "f", "z1"), ("t2", 1, "f", "z2"),
             ("eta1", 2, "f", "w1"), ("eta1t", 1, "f", "w2"),
             ("f", 1, "p1", "r1"), ("f", 1, "p2", "r2"), ("f", 1, "m1", "q1"), ("f", 1, "m2", "q2")]
    for x, i, y, v in table:
        b.set_composite(x, i, y, {v: 1})
    b.add_element("l", {"m1": 1, "m2": 1})
    b.add_element("eta", {"eta1": 1})
    b.add_element("nu", {"eta2": 1})
    return b.build()


def _build_general(d: int, F: FieldSpec) -> OperadFragment:
    ea = _sgn(d - 1)  # sign of s on a
    b = FragmentBuilder(F, COLORS)
    for p in ("o,o;o", "c;o", "c,c;c", "c,o;o", "o,c;o", "c,c;o"):
        b.add_profile(p)
    b.add_cell("a", "o,o;o", d - 2).add_cell("pt_oo", "o,o;o", 0)
    b.add_cell("f", "c;o", 0)

    # S^{d-1} with the antipodal action: d e_k = e_{k-1}t + (-1)^k e_{k-1}
    for k in range(d):
        for suffix in ("", "t"):
            for prof, base in (("c,c;c", "e"), ("c,c;o", "r")):
                b.add_cell(f"{base}{k}{suffix}", prof, k)
    for k in range(1, d):
        for base in ("e", "r"):
            b.set_boundary(f"{base}{k}", {f"{base}{k - 1}t": 1, f"{base}{k - 1}": _sgn(k)})
            b.set_boundary(f"{base}{k}t", {f"{base}{k - 1}": 1, f"{base}{k - 1}t": _sgn(k)})

    b.add_cell("s1", "c,o;o", d - 2).add_cell("eta", "c,o;o", d - 1, {"s1": 1}).add_cell("pt_co", "c,o;o", 0)
    b.add_cell("t1", "o,c;o", d - 2).add_cell("eta_t", "o,c;o", d - 1, {"t1": 1}).add_cell("pt_oc", "o,c;o", 0)
    b.add_cell("z", "c,c;o", d - 2)
    b.add_cell("w", "c,c;o", d - 1, {"z": 1}).add_cell("wt", "c,c;o", d - 1, {"z": ea})
    nu = {"w": 1, "wt": -ea, f"r{d - 1}": -1, f"r{d - 1}t": -_sgn(d)}
    b.add_cell("nu", "c,c;o", d, nu)

    b.set_action("a", 1, {"a": ea}).set_action("pt_oo", 1, {"pt_oo": 1})
    for k in range(d):
        for base in ("e", "r"):
            b.set_action(f"{base}{k}", 1, {f"{base}{k}t": 1}).set_action(f"{base}{k}t", 1, {f"{base}{k}": 1})
    for x, y in [("s1", "t1"), ("eta", "eta_t"), ("pt_co", "pt_oc"), ("w", "wt")]:
        b.set_action(x, 1, {y: 1}).set_action(y, 1, {x: 1})
    b.set_action("z", 1, {"z": ea})
    b.set_action("nu", 1, {"nu": _sgn(d)})

    b.set_composite("a", 1, "f", {"s1": 1}).set_composite("a", 2, "f", {"t1": ea})
    b.set_composite("s1", 2, "f", {"z": 1}).set_composite("t1", 1, "f", {"z": ea})
    b.set_composite("eta", 2, "f", {"w": 1}).set_composite("eta_t", 1, "f", {"wt": 1})
    for k in range(d):
        for suffix in ("", "t"):
            b.set_composite("f", 1, f"e{k}{suffix}", {f"r{k}{suffix}": 1})
    b.add_element("l", {f"e{d - 1}": 1, f"e{d - 1}t": _sgn(d)})
    return b.build()


def build_sc_homology(d: int = 2, field: FieldSpec | None = None) -> OperadFragment:
    """Zero-differential fragment of the homology operad in the modeled bidegrees."""
    if not isinstance(d, int) or d < 2:
        raise InputError(f"d must be an integer >= 2, got {d!r}")
    F = field or FieldSpec()
    b = FragmentBuilder(F, COLORS)
    for p in ("c,c;c", "c;o", "o,o;o", "c,c;o", "c,o;o", "o,c;o"):
        b.add_profile(p)
    b.add_cell("f2", "c,c;c", 0).add_cell("g2", "c,c;c", d - 1)
    b.add_cell("e10", "c;o", 0)
    b.add_cell("h0", "c,c;o", 0).add_cell("h1", "c,c;o", d - 1)
    b.add_cell("e02", "o,o;o", 0)
    if d == 2:
        b.add_cell("e02t", "o,o;o", 0)
        b.set_action("e02", 1, {"e02t": 1}).set_action("e02t", 1, {"e02": 1})
    else:
        b.add_cell("b02", "o,o;o", d - 2)
        b.set_action("e02", 1, {"e02": 1}).set_action("b02", 1, {"b02": _sgn(d - 1)})
    b.set_action("f2", 1, {"f2": 1}).set_action("g2", 1, {"g2": _sgn(d)})
    b.set_action("h0", 1, {"h0": 1}).set_action("h1", 1, {"h1": _sgn(d)})
    b.set_composite("e10", 1, "f2", {"h0": 1}).set_composite("e10", 1, "g2", {"h1": 1})
    return b.build()


def acyclic_extension(O: OperadFragment, degree: int | None = None) -> OperadFragment:
    """Enlarge a Swiss-cheese fixture by contractible cell pairs.

    Adds ``gamma -> beta`` in (c,o;o) with ``beta`` in ``degree`` (default:
    the degree of eta), its mirror in (o,c;o) and their composites with
    ``f`` in (c,c;o).  Homology is unchanged, but ``beta`` is a new cycle in
    the bidegree of the bounding chains.
    """
    b = FragmentBuilder.from_fragment(O)
    dg = max(O.degrees("c,o;o")) if degree is None else degree
    b.add_cell("beta", "c,o;o", dg).add_cell("gamma", "c,o;o", dg + 1, {"beta": 1})
    b.add_cell("beta_t", "o,c;o", dg).add_cell("gamma_t", "o,c;o", dg + 1, {"beta_t": 1})
    b.add_cell("B", "c,c;o", dg).add_cell("G", "c,c;o", dg + 1, {"B": 1})
    b.add_cell("B_t", "c,c;o", dg).add_cell("G_t", "c,c;o", dg + 1, {"B_t": 1})
    for x, y in [("beta", "beta_t"), ("gamma", "gamma_t"), ("B", "B_t"), ("G", "G_t")]:
        b.set_action(x, 1, {y: 1}).set_action(y, 1, {x: 1})
    b.set_composite("beta", 2, "f", {"B": 1}).set_composite("gamma", 2, "f", {"G": 1})
    b.set_composite("beta_t", 1, "f", {"B_t": 1}).set_composite("gamma_t", 1, "f", {"G_t": 1})
    return b.build()


def acyclic_inclusion(O: OperadFragment) -> OperadMorphism:
    return OperadMorphism.inclusion(O, acyclic_extension(O))


def zero_fragment(O: OperadFragment) -> OperadFragment:
    """Fragment with the same colors and profiles as ``O`` and no cells."""
    b = FragmentBuilder(O.field, O.colors)
    for p in O.profiles:
        b.add_profile(p)
    return b.build()


def zero_morphism(O: OperadFragment) -> OperadMorphism:
    return OperadMorphism(O, zero_fragment(O), {})
