"""Massey operadic products, the eye obstruction and the non-formality certificate.

Type I, for cycles a, b, c with [a o_i b] = 0 = [b o_j c]::

    dx = a o_i b,  dy = b o_j c,  M = x o_{i+j-1} c - (-1)^|a| a o_i y

Type II, for i < j with [a o_i b] = 0 = [a o_j c] and q = arity(b)::

    du = a o_i b,  dv = a o_j c,  N = u o_{j+q-1} c - (-1)^{|b||c|} v o_i b

Indeterminacy bidegrees are read off the actual composed profiles, so the
same formulas serve colored fragments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import (FragmentAxiomError, IncompleteFragmentError, InputError, MasseyUndefinedError,
                     NotACycleError, UnsupportedCharacteristicError)
from .exactla import Subspace, kernel, solve
from .homology import (HomologyClass, boundary_matrix, class_of, from_vector, homology, push_class,
                       to_vector)
from .operadcore import (TRANSPOSITION, Element, OperadFragment, OperadMorphism, ValidationReport,
                         Violation, act, apply_morphism, boundary, compose, slot_for)


@dataclass(frozen=True)
class MasseyProblem:
    fragment: OperadFragment = field(compare=False, repr=False)
    kind: str  # "I", "II" or "eye"
    a: Element
    b: Element  # f for the eye pattern
    c: Element | None = None
    i: int = 1
    j: int = 1
    d: int | None = None

    def describe(self) -> str:
        if self.kind == "eye":
            return f"eye(a={self.a}, f={self.b}, d={self.d})"
        return f"<{self.a}; {self.b}; {self.c}>_{self.kind} (i={self.i}, j={self.j})"


@dataclass(frozen=True)
class MasseyCoset:
    problem: MasseyProblem
    representative: HomologyClass
    indeterminacy: Subspace
    cycle: Element  # M, N or W
    chains: tuple = ()  # ((name, bounding chain), ...)

    @property
    def home(self):
        return self.representative.home

    def vanishes(self) -> bool:
        return vanishes(self)

    def __str__(self):
        rep = self.representative
        reps = self.home.representatives
        expr = " + ".join(f"{c}*[{r}]" for c, r in zip(rep.coords, reps) if c) or "0"
        return (f"{self.problem.describe()}: class {expr} in H_{self.home.degree}({self.home.profile}), "
                f"indeterminacy dimension {self.indeterminacy.dim}")


def vanishes(K: MasseyCoset) -> bool:
    return K.indeterminacy.contains(K.representative.coords)


def same_coset(K1: MasseyCoset, K2: MasseyCoset) -> bool:
    h1, h2 = K1.home, K2.home
    if (h1.profile, h1.degree) != (h2.profile, h2.degree) or K1.indeterminacy != K2.indeterminacy:
        return False
    diff = tuple(x - y for x, y in zip(K1.representative.coords, K2.representative.coords))
    return K1.indeterminacy.contains(diff)


def _require_cycle(O: OperadFragment, z: Element, name: str):
    dz = boundary(O, z)
    if dz:
        raise NotACycleError(f"{name} is not a cycle: boundary {dz}", dz)


def bounding_chain(O: OperadFragment, z: Element, what: str = "element") -> Element:
    """Canonical solution of ``dx = z``; MasseyUndefinedError if ``[z] != 0``."""
    _require_cycle(O, z, what)
    A = boundary_matrix(O, z.profile, z.degree + 1)
    x = solve(A, to_vector(O, z))
    if x is None:
        raise MasseyUndefinedError(f"class of {what} = {z} is nonzero; the product is not defined")
    return from_vector(O, z.profile, z.degree + 1, x)


def _check_chain(O: OperadFragment, x: Element, z: Element, name: str) -> Element:
    if (x.profile, x.degree) != (z.profile, z.degree + 1):
        raise InputError(f"bounding chain {name} lives in the wrong bidegree")
    if boundary(O, x) != z:
        raise InputError(f"d({name}) differs from the required boundary {z}")
    return x


def cycle_translations(O: OperadFragment, profile, degree: int) -> list:
    """Basis of the cycles in one bidegree (the freedom in a bounding chain)."""
    if not O.cells_in(profile, degree):
        return []
    Z = kernel(boundary_matrix(O, profile, degree))
    return [from_vector(O, profile, degree, v) for v in Z.basis]


def _span_classes(H, classes) -> Subspace:
    return Subspace.span(H.fragment.field, H.dimension, [h.coords for h in classes])


def _finish(P: MasseyProblem, M: Element, extra, chains) -> MasseyCoset:
    O = P.fragment
    dM = boundary(O, M)
    if dM:
        raise FragmentAxiomError(f"constructed {P.kind} cycle has nonzero boundary {dM}")
    rep = class_of(O, M)
    ind = _span_classes(rep.home, [class_of(O, e) for e in extra])
    return MasseyCoset(P, rep, ind, M, tuple(chains))


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def massey_I(O: OperadFragment, a: Element, b: Element, c: Element, i: int, j: int,
             x: Element | None = None, y: Element | None = None) -> MasseyCoset:
    for name, z in (("a", a), ("b", b), ("c", c)):
        _require_cycle(O, z, name)
    P = MasseyProblem(O, "I", a, b, c, i, j)
    ab, bc = compose(O, a, i, b), compose(O, b, j, c)
    x = bounding_chain(O, ab, "a o_i b") if x is None else _check_chain(O, x, ab, "x")
    y = bounding_chain(O, bc, "b o_j c") if y is None else _check_chain(O, y, bc, "y")
    M = compose(O, x, i + j - 1, c) - _sgn(a.degree) * compose(O, a, i, y)
    extra = [compose(O, a, i, h) for h in homology(O, bc.profile, b.degree + c.degree + 1).representatives]
    extra += [compose(O, h, i + j - 1, c) for h in homology(O, ab.profile, a.degree + b.degree + 1).representatives]
    return _finish(P, M, extra, [("x", x), ("y", y)])


def massey_II(O: OperadFragment, a: Element, b: Element, c: Element, i: int, j: int,
              u: Element | None = None, v: Element | None = None) -> MasseyCoset:
    if not i < j:
        raise InputError(f"type II products need i < j, got i={i}, j={j}")
    for name, z in (("a", a), ("b", b), ("c", c)):
        _require_cycle(O, z, name)
    P = MasseyProblem(O, "II", a, b, c, i, j)
    q = b.profile.arity
    ab, ac = compose(O, a, i, b), compose(O, a, j, c)
    u = bounding_chain(O, ab, "a o_i b") if u is None else _check_chain(O, u, ab, "u")
    v = bounding_chain(O, ac, "a o_j c") if v is None else _check_chain(O, v, ac, "v")
    N = compose(O, u, j + q - 1, c) - _sgn(b.degree * c.degree) * compose(O, v, i, b)
    extra = [compose(O, h, j + q - 1, c) for h in homology(O, ab.profile, a.degree + b.degree + 1).representatives]
    extra += [compose(O, h, i, b) for h in homology(O, ac.profile, a.degree + c.degree + 1).representatives]
    return _finish(P, N, extra, [("u", u), ("v", v)])


def eye_obstruction(O: OperadFragment, a: Element, f: Element, d: int,
                    eta: Element | None = None) -> MasseyCoset:
    """The cycle W built from a bounding chain of the arity-2 relation.

    d = 2: d(eta) = (a o_2 f).(21) - a o_1 f,  W = eta o f + (eta o f).(21)
    d >= 3: d(eta) = a o_1 f,  W = eta o f - (-1)^{d-1} (eta o f).(21)
    where ``o`` is the open input of eta's profile.
    """
    if not isinstance(d, int) or d < 2:
        raise InputError(f"d must be an integer >= 2, got {d!r}")
    if d >= 3 and O.field.characteristic == 2:
        raise UnsupportedCharacteristicError("the d >= 3 eye obstruction needs characteristic different from 2")
    if a.profile.arity != 2 or f.profile.arity != 1:
        raise InputError("eye pattern needs a of arity 2 and f of arity 1")
    _require_cycle(O, a, "a")
    _require_cycle(O, f, "f")
    P = MasseyProblem(O, "eye", a, f, None, 1, 1, d)
    if d == 2:
        rel = act(O, compose(O, a, 2, f), TRANSPOSITION) - compose(O, a, 1, f)
        sign = 1
    else:
        rel = compose(O, a, 1, f)
        sign = -_sgn(d - 1)
    eta = bounding_chain(O, rel, "the eye relation") if eta is None else _check_chain(O, eta, rel, "eta")
    slot = slot_for(O, eta.profile, f.profile.output, 1)

    def W(z):
        zf = compose(O, z, slot, f)
        return zf + sign * act(O, zf, TRANSPOSITION)

    extra = [W(z) for z in homology(O, eta.profile, eta.degree).representatives]
    return _finish(P, W(eta), extra, [("eta", eta)])


def compute(P: MasseyProblem) -> MasseyCoset:
    if P.kind == "I":
        return massey_I(P.fragment, P.a, P.b, P.c, P.i, P.j)
    if P.kind == "II":
        return massey_II(P.fragment, P.a, P.b, P.c, P.i, P.j)
    if P.kind == "eye":
        return eye_obstruction(P.fragment, P.a, P.b, P.d)
    raise InputError(f"unknown Massey product type {P.kind!r}")


def translated_cosets(P: MasseyProblem) -> list:
    """Recompute P with each bounding chain moved by each cycle-basis vector.

    Returns ``[(label, coset), ...]``, the first entry being the canonical one.
    """
    O = P.fragment
    K0 = compute(P)
    chains = dict(K0.chains)
    out = [("canonical", K0)]
    for name, x in K0.chains:
        for k, z in enumerate(cycle_translations(O, x.profile, x.degree)):
            moved = dict(chains, **{name: x + z})
            if P.kind == "I":
                K = massey_I(O, P.a, P.b, P.c, P.i, P.j, moved["x"], moved["y"])
            elif P.kind == "II":
                K = massey_II(O, P.a, P.b, P.c, P.i, P.j, moved["u"], moved["v"])
            else:
                K = eye_obstruction(O, P.a, P.b, P.d, moved["eta"])
            out.append((f"{name} + z{k}", K))
    return out


def transport(phi: OperadMorphism, P: MasseyProblem) -> MasseyProblem:
    f = lambda z: apply_morphism(phi, z) if z is not None else None
    return MasseyProblem(phi.target, P.kind, f(P.a), f(P.b), f(P.c), P.i, P.j, P.d)


def pushforward_check(phi: OperadMorphism, P: MasseyProblem) -> ValidationReport:
    """Check that phi carries the source coset into the target coset."""
    K = compute(P)
    try:
        K2 = compute(transport(phi, P))
    except MasseyUndefinedError as e:
        raise MasseyUndefinedError(f"target product undefined: {e}") from None
    bad = []
    pushed = push_class(phi, K.representative)
    diff = tuple(x - y for x, y in zip(pushed.coords, K2.representative.coords))
    if not K2.indeterminacy.contains(diff):
        bad.append(Violation("representative pushforward", (P.describe(),),
                             None, f"pushed {pushed.coords} vs target {K2.representative.coords}"))
    for v in K.indeterminacy.basis:
        h = push_class(phi, HomologyClass(K.home, v))
        if not K2.indeterminacy.contains(h.coords):
            bad.append(Violation("indeterminacy pushforward", (P.describe(),), None, str(v)))
    return ValidationReport(tuple(bad), 1 + K.indeterminacy.dim, 0)


# ------------------------------------------------------------ certificate

@dataclass(frozen=True)
class Certificate:
    verdict: str  # "non-formal" or "inconclusive"
    witness: MasseyProblem | None
    coset: MasseyCoset | None
    narrative: tuple = ()
    tried: int = 0
    skipped: int = 0

    @property
    def non_formal(self) -> bool:
        return self.verdict == "non-formal"

    def __str__(self):
        return "\n".join([f"verdict: {self.verdict}"] + [f"  {line}" for line in self.narrative])


def homology_representatives(O: OperadFragment) -> list:
    """Canonical representatives of every nonzero homology space, in a fixed order."""
    out = []
    for p in sorted(O.profiles):
        for k in O.degrees(p):
            out.extend(homology(O, p, k).representatives)
    return out


def _declared(O: OperadFragment, x: Element, i: int, y: Element) -> bool:
    return all((cx, i, cy) in O.compositions for cx, _ in x.terms for cy, _ in y.terms)


def candidate_problems(O: OperadFragment) -> list:
    """Default search: type I, then type II, then eye, all over homology representatives.

    Only triples whose primary composites are declared cell by cell are
    listed; the eye uses d = |a| + 2.
    """
    reps = homology_representatives(O)
    out = []
    for a, b, c in product(reps, repeat=3):
        for i in range(1, a.profile.arity + 1):
            if a.profile.inputs[i - 1] != b.profile.output or not _declared(O, a, i, b):
                continue
            for j in range(1, b.profile.arity + 1):
                if b.profile.inputs[j - 1] == c.profile.output and _declared(O, b, j, c):
                    out.append(MasseyProblem(O, "I", a, b, c, i, j))
    for a, b, c in product(reps, repeat=3):
        n = a.profile.arity
        for i in range(1, n + 1):
            if a.profile.inputs[i - 1] != b.profile.output or not _declared(O, a, i, b):
                continue
            for j in range(i + 1, n + 1):
                if a.profile.inputs[j - 1] == c.profile.output and _declared(O, a, j, c):
                    out.append(MasseyProblem(O, "II", a, b, c, i, j))
    for a, f in product(reps, repeat=2):
        pa, pf = a.profile, f.profile
        if (pa.arity == 2 and pf.arity == 1 and pa.inputs[0] == pa.inputs[1] == pa.output == pf.output
                and pf.inputs[0] != pf.output):
            out.append(MasseyProblem(O, "eye", a, f, None, 1, 1, a.degree + 2))
    return out


def nonformality_certificate(O: OperadFragment, candidates=None) -> Certificate:
    """First non-vanishing product among the candidates, if any.

    Vanishing of every tried product proves nothing, hence "inconclusive".
    """
    problems = candidate_problems(O) if candidates is None else list(candidates)
    tried = skipped = 0
    for P in problems:
        try:
            K = compute(P)
        except (MasseyUndefinedError, IncompleteFragmentError, UnsupportedCharacteristicError, InputError):
            skipped += 1
            continue
        tried += 1
        if not vanishes(K):
            narrative = (f"witness: {P.describe()}",
                         f"cycle: {K.cycle}",
                         *(f"bounding chain {n} = {x}" for n, x in K.chains),
                         f"class coordinates {tuple(str(c) for c in K.representative.coords)} "
                         f"on representatives {tuple(str(r) for r in K.home.representatives)}",
                         f"indeterminacy dimension {K.indeterminacy.dim}; 0 is not in the coset",
                         f"{tried} products computed, {skipped} undefined or incomplete skipped")
            return Certificate("non-formal", P, K, narrative, tried, skipped)
    return Certificate("inconclusive", None, None,
                       (f"{tried} defined products all vanish; {skipped} undefined or incomplete skipped",),
                       tried, skipped)
