"""Free colored dg operad on finitely many generators.

A monomial is a tree whose vertices carry generator names, with children
listed in the generator's own slot order and leaves labeled 1..n (leaf p
is input p of the monomial).  A monomial stands for the iterated
composite of its vertices taken in preorder; reordering vertices costs the
Koszul sign of the permutation of odd-degree vertices.

A generator of arity 2 may carry a rule ``g.(21) = eps g``.  Such vertices
are normalized so the child with the smaller minimal leaf comes first,
emitting ``eps``.  Free generators keep their slot order, which already
gives a basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable

from .errors import InputError, UnsupportedCharacteristicError
from .exactla import FieldSpec
from .operadcore import Permutation, Profile, ValidationReport, Violation, _prof


@dataclass(frozen=True)
class Vertex:
    gen: str
    children: tuple  # int leaf labels or Vertex

    def __str__(self):
        return f"{self.gen}(" + ",".join(str(c) for c in self.children) + ")"


TreeMonomial = Vertex


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    profile: Profile
    degree: int
    action_rule: object = None  # scalar eps with g.(21) = eps g
    differential: FreeElement | None = None


def _min_leaf(t) -> int:
    if isinstance(t, int):
        return t
    return min(_min_leaf(c) for c in t[2])


def _preorder(t) -> list:
    if isinstance(t, int):
        return []
    out = [t[0]]
    for c in t[2]:
        out.extend(_preorder(c))
    return out


class FreeOperad:
    def __init__(self, field: FieldSpec, colors: Iterable[str]):
        self.field = field
        self.colors = tuple(colors)
        self.generators: dict = {}

    # -- generators
    def add_generator(self, name: str, profile, degree: int, rule=None) -> FreeElement:
        profile = _prof(profile)
        if name in self.generators:
            raise InputError(f"duplicate generator {name!r}")
        for c in profile.inputs + (profile.output,):
            if c not in self.colors:
                raise InputError(f"unknown color {c!r}")
        if rule is not None:
            if profile.arity != 2:
                raise InputError("action rules are only supported on arity-2 generators")
            rule = self.field(rule)
        self.generators[name] = GeneratorSpec(name, profile, degree, rule)
        return self.generator(name)

    def set_differential(self, name: str, dx: FreeElement):
        g = self.generators[name]
        if (dx.profile, dx.degree) != (g.profile, g.degree - 1):
            raise InputError(f"differential of {name} must live in ({g.profile},{g.degree - 1})")
        self.generators[name] = replace(g, differential=dx)

    def generator(self, name: str) -> FreeElement:
        g = self.generators[name]
        t = Vertex(name, tuple(range(1, g.profile.arity + 1)))
        return FreeElement(self, g.profile, g.degree, ((t, self.field.one),))

    def zero(self, profile, degree: int) -> FreeElement:
        return FreeElement(self, _prof(profile), degree, ())

    # -- trees
    def _deg(self, name: str) -> int:
        return self.generators[name].degree

    def _tag(self, t, ids) -> tuple:
        if isinstance(t, int):
            return t
        return (next(ids), t.gen, tuple(self._tag(c, ids) for c in t.children))

    def _untag(self, n):
        if isinstance(n, int):
            return n
        return Vertex(n[1], tuple(self._untag(c) for c in n[2]))

    def _finish(self, n, order: list):
        """Canonicalize a tagged tree; returns (Vertex, scalar)."""
        coeff = self.field.one
        degs = {}

        def canon(n):
            nonlocal coeff
            if isinstance(n, int):
                return n
            uid, g, ch = n
            degs[uid] = self._deg(g)
            ch = tuple(canon(c) for c in ch)
            rule = self.generators[g].action_rule
            if rule is not None and _min_leaf(ch[1]) < _min_leaf(ch[0]):
                ch = (ch[1], ch[0])
                coeff = coeff * rule
            return (uid, g, ch)

        n = canon(n)
        pos = {u: k for k, u in enumerate(_preorder(n))}
        odd = [pos[u] for u in order if degs[u] % 2]
        inv = sum(1 for x, y in itertools.combinations(odd, 2) if x > y)
        if inv % 2:
            coeff = -coeff
        return self._untag(n), coeff

    def canonical(self, t: Vertex):
        ids = itertools.count()
        n = self._tag(t, ids)
        return self._finish(n, _preorder(n))

    def tree_profile(self, t: Vertex) -> Profile:
        colors = {}

        def walk(n, color=None):
            if isinstance(n, int):
                colors[n] = color
                return
            g = self.generators[n.gen]
            if color is not None and g.profile.output != color:
                raise InputError(f"edge color mismatch at {n.gen}")
            if len(n.children) != g.profile.arity:
                raise InputError(f"vertex {n.gen} has {len(n.children)} children, arity {g.profile.arity}")
            for c, col in zip(n.children, g.profile.inputs):
                walk(c, col)

        walk(t)
        if sorted(colors) != list(range(1, len(colors) + 1)):
            raise InputError("leaf labels are not a bijection onto 1..n")
        return Profile(tuple(colors[k] for k in range(1, len(colors) + 1)), self.generators[t.gen].profile.output)

    def tree_degree(self, t) -> int:
        if isinstance(t, int):
            return 0
        return self._deg(t.gen) + sum(self.tree_degree(c) for c in t.children)

    def monomial(self, t: Vertex, coeff=1) -> FreeElement:
        t2, c = self.canonical(t)
        return FreeElement.build(self, self.tree_profile(t2), self.tree_degree(t2), [(t2, c * self.field(coeff))])

    def check(self) -> ValidationReport:
        """Generator differentials square to zero and respect the action rules."""
        bad = []
        n = 0
        for name, g in self.generators.items():
            x = self.generator(name)
            n += 2
            dd = derive(derive(x))
            if dd:
                bad.append(Violation("d∘d = 0", (name,), dd))
            if g.action_rule is not None:
                s = Permutation((2, 1))
                lhs, rhs = derive(act_free(x, s)), act_free(derive(x), s)
                if lhs != rhs:
                    bad.append(Violation("d commutes with action rule", (name,), lhs - rhs))
        return ValidationReport(tuple(bad), n, 0)


@dataclass(frozen=True)
class FreeElement:
    operad: FreeOperad = field(compare=False, repr=False)
    profile: Profile
    degree: int
    terms: tuple = ()  # ((Vertex, coeff), ...) sorted by str

    @classmethod
    def build(cls, operad: FreeOperad, profile: Profile, degree: int, items) -> FreeElement:
        acc: dict = {}
        for t, c in items:
            acc[t] = acc[t] + c if t in acc else c
        terms = tuple(sorted(((t, c) for t, c in acc.items() if c), key=lambda tc: str(tc[0])))
        return cls(operad, profile, degree, terms)

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: FreeElement):
        if (other.profile, other.degree) != (self.profile, self.degree):
            raise InputError(f"cannot add free elements of ({self.profile},{self.degree}) "
                             f"and ({other.profile},{other.degree})")

    def __add__(self, other: FreeElement) -> FreeElement:
        self._check(other)
        return FreeElement.build(self.operad, self.profile, self.degree, self.terms + other.terms)

    def __neg__(self) -> FreeElement:
        return FreeElement(self.operad, self.profile, self.degree, tuple((t, -c) for t, c in self.terms))

    def __sub__(self, other: FreeElement) -> FreeElement:
        return self + (-other)

    def __rmul__(self, s) -> FreeElement:
        s = self.operad.field(s)
        return FreeElement.build(self.operad, self.profile, self.degree, [(t, s * c) for t, c in self.terms])

    def __str__(self):
        if not self.terms:
            return "0"
        return " ".join(f"{'+' if str(c)[0] != '-' else '-'} {str(c).lstrip('-')}*{t}" for t, c in self.terms)


def normal_form(x: FreeElement) -> FreeElement:
    F = x.operad
    items = []
    for t, c in x.terms:
        t2, e = F.canonical(t)
        items.append((t2, e * c))
    return FreeElement.build(F, x.profile, x.degree, items)


def graft(x: FreeElement, i: int, y: FreeElement) -> FreeElement:
    F = x.operad
    if y.operad is not F:
        raise InputError("elements of different free operads")
    if not 1 <= i <= x.profile.arity:
        raise InputError(f"slot {i} out of range")
    profile = x.profile.substitute(i, y.profile)
    q = y.profile.arity
    items = []
    for tx, cx in x.terms:
        for ty, cy in y.terms:
            ids = itertools.count()
            nx = F._tag(tx, ids)
            ny = F._tag(ty, ids)
            order = _preorder(nx) + _preorder(ny)

            def shift_y(n):
                if isinstance(n, int):
                    return n + i - 1
                return (n[0], n[1], tuple(shift_y(c) for c in n[2]))

            sub = shift_y(ny)

            def ins(n):
                if isinstance(n, int):
                    if n == i:
                        return sub
                    return n + q - 1 if n > i else n
                return (n[0], n[1], tuple(ins(c) for c in n[2]))

            t, e = F._finish(ins(nx), order)
            items.append((t, e * cx * cy))
    return FreeElement.build(F, profile, x.degree + y.degree, items)


def act_free(x: FreeElement, sigma: Permutation) -> FreeElement:
    F = x.operad
    if len(sigma) != x.profile.arity:
        raise InputError(f"permutation of size {len(sigma)} on arity {x.profile.arity}")
    inv = sigma.inverse()
    items = []
    for t, c in x.terms:
        n = F._tag(t, itertools.count())

        def relabel(n):
            if isinstance(n, int):
                return inv(n)
            return (n[0], n[1], tuple(relabel(ch) for ch in n[2]))

        t2, e = F._finish(relabel(n), _preorder(n))
        items.append((t2, e * c))
    return FreeElement.build(F, x.profile.permuted(sigma), x.degree, items)


def derive(x: FreeElement) -> FreeElement:
    """Extend the generator differentials as a derivation over tree vertices."""
    F = x.operad
    items = []
    for t, c in x.terms:
        ids = itertools.count()
        n = F._tag(t, ids)
        pre = _preorder(n)
        nodes = {}

        def collect(m):
            if isinstance(m, int):
                return
            nodes[m[0]] = m
            for ch in m[2]:
                collect(ch)

        collect(n)
        before = 0
        for k, uid in enumerate(pre):
            v = nodes[uid]
            g = F.generators[v[1]]
            sign = -1 if before % 2 else 1
            before += g.degree
            if not g.differential:
                continue
            for T, cT in g.differential.terms:
                nT = F._tag(T, ids)

                def attach(m):
                    if isinstance(m, int):
                        return v[2][m - 1]
                    return (m[0], m[1], tuple(attach(ch) for ch in m[2]))

                nT = attach(nT)
                t_ids = [u for u in _preorder(nT) if u not in nodes]

                def swap(m):
                    if isinstance(m, int):
                        return m
                    if m[0] == uid:
                        return nT
                    return (m[0], m[1], tuple(swap(ch) for ch in m[2]))

                order = pre[:k] + t_ids + pre[k + 1:]
                t2, e = F._finish(swap(n), order)
                items.append((t2, sign * e * c * cT))
    return FreeElement.build(F, x.profile, x.degree - 1, items)


# ------------------------------------------------ change of representatives

S21 = Permutation((2, 1))


@dataclass
class ChangeOfRepresentatives:
    """The free dg operad and the displayed elements for one value of d."""

    d: int
    operad: FreeOperad
    gens: dict
    terms: dict  # "relation-1"/"relation-2" -> list of signed summands of eta'/nu'
    targets: dict  # same keys -> required boundary


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def change_of_representatives(d: int, field: FieldSpec | None = None,
                              reading: str | None = None) -> ChangeOfRepresentatives:
    """Generators, displayed summands and targets for one value of d.

    ``reading`` fixes the two-slot composite a(f1, f1): ``"12"`` is
    (a o_1 f1) o_2 f1 and ``"21"`` is (a o_2 f1) o_1 f1, which differ by a
    sign since |f1| = 1.  The default is the reading under which the
    displayed identities hold with the sign conventions of this package:
    ``"21"`` for d = 2 and ``"12"`` for d >= 3.
    """
    F = field or FieldSpec()
    if not isinstance(d, int) or d < 2:
        raise InputError(f"d must be an integer >= 2, got {d!r}")
    if d >= 3 and F.characteristic == 2:
        raise UnsupportedCharacteristicError("d >= 3 needs a field of characteristic different from 2")
    P = FreeOperad(F, ("c", "o"))
    g = P.add_generator
    o = graft
    s = lambda x: act_free(x, S21)
    if d == 2:
        ra = rl = None
        da, dl = 0, 1
    else:
        ra, rl = _sgn(d - 1), _sgn(d)
        da, dl = d - 2, d - 1
    G = {
        "a": g("a", "o,o;o", da, ra), "Da": g("Da", "o,o;o", da, ra), "a1": g("a1", "o,o;o", da + 1, ra),
        "f": g("f", "c;o", 0), "Df": g("Df", "c;o", 0), "f1": g("f1", "c;o", 1),
        "l": g("l", "c,c;c", dl, rl), "Dl": g("Dl", "c,c;c", dl, rl), "l2": g("l2", "c,c;c", dl + 1, rl),
    }
    for gen, dgen in (("a1", "Da"), ("f1", "Df"), ("l2", "Dl")):
        P.set_differential(gen, G[dgen])
    a, f, l, a1, f1, l2 = (G[k] for k in ("a", "f", "l", "a1", "f1", "l2"))
    a_, f_, l_ = a + G["Da"], f + G["Df"], l + G["Dl"]
    reading = reading or ("21" if d == 2 else "12")
    if reading not in ("12", "21"):
        raise InputError(f"unknown reading {reading!r} of a(f1, f1)")
    aff = o(o(a, 1, f1), 2, f1) if reading == "12" else o(o(a, 2, f1), 1, f1)
    if d == 2:
        eta = g("eta1", "c,o;o", 1)
        P.set_differential("eta1", s(o(a, 2, f)) - o(a, 1, f))
        E = o(eta, 2, f)
        nu = g("eta2", "c,c;o", 2)
        P.set_differential("eta2", E + s(E) - o(f, 1, l))
        t1 = [eta, s(o(a, 2, f1)), -o(a, 1, f1), s(o(a1, 2, f_)), -o(a1, 1, f_)]
        X = o(eta, 2, f1) + aff
        t2 = [nu, -o(f, 1, l2), -o(f1, 1, l_), -X, -s(X)]

        def rhs1(e):
            return s(o(a_, 2, f_)) - o(a_, 1, f_)

        def rhs2(e):
            E_ = o(e, 2, f_)
            return E_ + s(E_) - o(f_, 1, l_)
    else:
        ea = _sgn(d - 1)
        eta = g("eta", "c,o;o", d - 1)
        P.set_differential("eta", o(a, 1, f))
        E = o(eta, 2, f)
        nu = g("nu", "c,c;o", d)
        P.set_differential("nu", E - ea * s(E) - o(f, 1, l))
        t1 = [eta, o(a1, 1, f_), _sgn(d - 2) * o(a, 1, f1)]
        Ef1 = o(eta, 2, f1)
        t2 = [nu, -o(f1, 1, l_), -o(f, 1, l2), ea * Ef1, -s(Ef1), -aff]

        def rhs1(e):
            return o(a_, 1, f_)

        def rhs2(e):
            E_ = o(e, 2, f_)
            return E_ - ea * s(E_) - o(f_, 1, l_)

    return ChangeOfRepresentatives(d, P, G, {"relation-1": t1, "relation-2": t2},
                                   {"relation-1": rhs1, "relation-2": rhs2})


_ALIASES = {"1": "relation-1", "2": "relation-2", "3'": "relation-1", "4'": "relation-2",
            "relation-1": "relation-1", "relation-2": "relation-2", "relation-3'": "relation-1",
            "relation-4'": "relation-2"}


def _sum(xs: list) -> FreeElement:
    out = xs[0]
    for x in xs[1:]:
        out = out + x
    return out


def verify_change_of_representatives(d: int, which: str | int, field: FieldSpec | None = None,
                                     flip: int | None = None, reading: str | None = None) -> ValidationReport:
    """Check the boundary of the displayed new representative.

    ``flip`` negates one displayed summand (mutation testing).
    """
    key = _ALIASES.get(str(which))
    if key is None:
        raise InputError(f"unknown relation {which!r}; expected 1 or 2")
    C = change_of_representatives(d, field, reading)
    pre = C.operad.check()
    if not pre.passed:
        return pre
    summands = list(C.terms["relation-1"])
    eta_new = _sum(summands if key != "relation-1" or flip is None else
                   [(-x if k == flip else x) for k, x in enumerate(summands)])
    if key == "relation-1":
        lhs, rhs = derive(eta_new), C.targets[key](eta_new)
    else:
        summands = list(C.terms["relation-2"])
        if flip is not None:
            summands = [(-x if k == flip else x) for k, x in enumerate(summands)]
        nu_new = _sum(summands)
        lhs, rhs = derive(nu_new), C.targets[key](eta_new)
    residual = lhs - rhs
    violations = () if not residual else (Violation(key, (f"d={d}",), residual),)
    return ValidationReport(violations, 1, 0)
