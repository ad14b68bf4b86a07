"""Finite fragments of colored dg operads.

A fragment lists based chain complexes per profile, a differential, the
action of adjacent transpositions, and a partial table of partial
compositions.  Compositions use raw input positions (1-based); the
color-relative indexing of the open/closed notation goes through
:func:`slot_for`.

Conventions:

* the symmetric action is a right action, ``x.sigma`` having inputs
  ``(x_{sigma(1)}, ..., x_{sigma(n)})``; hence ``act(act(x, s), t) ==
  act(x, s * t)`` with ``(s * t)(i) = s(t(i))``;
* the action carries no sign;
* ``d(x o_i y) = dx o_i y + (-1)^|x| x o_i dy``;
* ``(x o_i y) o_{j+q-1} z = (-1)^{|y||z|} (x o_j z) o_i y`` for ``i < j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .errors import IncompleteFragmentError, InputError, SemanticError
from .exactla import FieldSpec


@dataclass(frozen=True, order=True)
class Profile:
    inputs: tuple
    output: str

    @classmethod
    def parse(cls, text: str) -> Profile:
        """``"c,o;o"`` -> Profile(("c", "o"), "o"); ``";o"`` has no inputs."""
        if text.count(";") != 1:
            raise InputError(f"bad profile {text!r}; expected 'x1,...,xn;y'")
        ins, out = text.split(";")
        inputs = tuple(s.strip() for s in ins.split(",")) if ins.strip() else ()
        out = out.strip()
        if not out or any(not s for s in inputs):
            raise InputError(f"bad profile {text!r}")
        return cls(inputs, out)

    def __str__(self):
        return ",".join(self.inputs) + ";" + self.output

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def permuted(self, sigma: Permutation) -> Profile:
        if len(sigma) != self.arity:
            raise InputError(f"permutation of size {len(sigma)} on arity {self.arity}")
        return Profile(tuple(self.inputs[s - 1] for s in sigma.images), self.output)

    def substitute(self, i: int, other: Profile) -> Profile:
        if not 1 <= i <= self.arity:
            raise InputError(f"slot {i} out of range for {self}")
        if self.inputs[i - 1] != other.output:
            raise InputError(f"color mismatch: slot {i} of {self} is {self.inputs[i - 1]}, "
                             f"inserted output is {other.output}")
        return Profile(self.inputs[: i - 1] + other.inputs + self.inputs[i:], self.output)


def _prof(p) -> Profile:
    return p if isinstance(p, Profile) else Profile.parse(p)


@dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise InputError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, k: int) -> Permutation:
        """Adjacent transposition swapping k and k+1."""
        if not 1 <= k < n:
            raise InputError(f"no adjacent transposition s_{k} in S_{n}")
        im = list(range(1, n + 1))
        im[k - 1], im[k] = im[k], im[k - 1]
        return cls(tuple(im))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(other) != len(self):
            raise InputError("permutation size mismatch")
        return Permutation(tuple(self(other(i)) for i in range(1, len(self) + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for i, s in enumerate(self.images, 1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, len(self) + 1))

    def adjacent_word(self) -> list:
        """Indices k with ``self == s_k1 * s_k2 * ...`` (bubble sort)."""
        im = list(self.images)
        swaps = []
        changed = True
        while changed:
            changed = False
            for k in range(len(im) - 1):
                if im[k] > im[k + 1]:
                    im[k], im[k + 1] = im[k + 1], im[k]
                    swaps.append(k + 1)
                    changed = True
        return swaps[::-1]

    def __str__(self):
        return "(" + "".join(str(i) for i in self.images) + ")"


TRANSPOSITION = Permutation((2, 1))


@dataclass(frozen=True)
class Cell:
    id: str
    profile: Profile
    degree: int


@dataclass(frozen=True)
class Element:
    """Finite sum of cells sharing one profile and degree."""

    field: FieldSpec
    profile: Profile
    degree: int
    terms: tuple = ()  # ((cell_id, coeff), ...) sorted by id, no zeros

    @classmethod
    def build(cls, field: FieldSpec, profile: Profile, degree: int, coeffs) -> Element:
        acc: dict = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for cid, c in items:
            c = field(c)
            acc[cid] = acc[cid] + c if cid in acc else c
        return cls(field, profile, degree, tuple(sorted((k, v) for k, v in acc.items() if v)))

    @classmethod
    def zero(cls, field: FieldSpec, profile: Profile, degree: int) -> Element:
        return cls(field, profile, degree, ())

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, cid: str):
        return self.as_dict().get(cid, self.field.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: Element):
        if not isinstance(other, Element):
            return NotImplemented
        if (other.profile, other.degree) != (self.profile, self.degree) or other.field != self.field:
            raise InputError(f"cannot add elements of ({self.profile}, {self.degree}) "
                             f"and ({other.profile}, {other.degree})")
        return other

    def __add__(self, other: Element) -> Element:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Element.build(self.field, self.profile, self.degree, self.terms + other.terms)

    def __sub__(self, other: Element) -> Element:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> Element:
        return Element(self.field, self.profile, self.degree, tuple((k, -v) for k, v in self.terms))

    def __rmul__(self, scalar) -> Element:
        s = self.field(scalar)
        return Element.build(self.field, self.profile, self.degree, [(k, s * v) for k, v in self.terms])

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.terms:
            s = str(v)
            if s == "1":
                parts.append(f"+ {k}")
            elif s == "-1":
                parts.append(f"- {k}")
            elif s.startswith("-"):
                parts.append(f"- {s[1:]}*{k}")
            else:
                parts.append(f"+ {s}*{k}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _frozen(d) -> Mapping:
    return MappingProxyType(dict(d))


@dataclass(frozen=True)
class OperadFragment:
    field: FieldSpec
    colors: tuple
    profiles: tuple
    cells: Mapping  # id -> Cell
    differential: Mapping  # id -> Element
    actions: Mapping  # (id, k) -> Element
    compositions: Mapping  # (x_id, i, y_id) -> Element
    elements: Mapping = field(default_factory=lambda: MappingProxyType({}))
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for name in ("cells", "differential", "actions", "compositions", "elements"):
            v = getattr(self, name)
            if not isinstance(v, MappingProxyType):
                object.__setattr__(self, name, _frozen(v))

    # convenience accessors
    def cell(self, cid: str) -> Element:
        if cid not in self.cells:
            raise InputError(f"unknown cell {cid!r}")
        c = self.cells[cid]
        return Element(self.field, c.profile, c.degree, ((cid, self.field.one),))

    def element(self, coeffs: Mapping | str) -> Element:
        """Element from ``{cell: coeff}`` (profile inferred) or a named element."""
        if isinstance(coeffs, str):
            if coeffs in self.elements:
                return self.elements[coeffs]
            return self.cell(coeffs)
        if not coeffs:
            raise InputError("cannot infer profile of an empty element; use zero()")
        first = next(iter(coeffs))
        if first not in self.cells:
            raise InputError(f"unknown cell {first!r}")
        c = self.cells[first]
        for k in coeffs:
            if k not in self.cells:
                raise InputError(f"unknown cell {k!r}")
            if (self.cells[k].profile, self.cells[k].degree) != (c.profile, c.degree):
                raise InputError(f"cells {first!r} and {k!r} live in different bidegrees")
        return Element.build(self.field, c.profile, c.degree, coeffs)

    def zero(self, profile, degree: int) -> Element:
        return Element.zero(self.field, _prof(profile), degree)

    def cells_in(self, profile, degree: int) -> list:
        profile = _prof(profile)
        key = ("cells_in", profile, degree)
        if key not in self._cache:
            self._cache[key] = sorted(c.id for c in self.cells.values()
                                      if c.profile == profile and c.degree == degree)
        return self._cache[key]

    def degrees(self, profile) -> list:
        profile = _prof(profile)
        return sorted({c.degree for c in self.cells.values() if c.profile == profile})

    def act(self, x: Element, sigma: Permutation) -> Element:
        return act(self, x, sigma)

    def compose(self, x: Element, i: int, y: Element) -> Element:
        return compose(self, x, i, y)

    def boundary(self, x: Element) -> Element:
        return boundary(self, x)


class FragmentBuilder:
    """Mutable accumulator producing an :class:`OperadFragment`.

    Values are given as ``{cell_id: coeff}``; their profile and degree are
    inferred from the entry they fill, so a value whose cells live
    elsewhere is rejected with a "profile mismatch" diagnostic.
    """

    def __init__(self, field: FieldSpec, colors: Iterable[str]):
        self.field = field
        self.colors = tuple(colors)
        if len(set(self.colors)) != len(self.colors):
            raise SemanticError("duplicate color", f"{self.colors}")
        self.profiles: list = []
        self.cells: dict = {}
        self.differential: dict = {}
        self.actions: dict = {}
        self.compositions: dict = {}
        self.elements: dict = {}

    @classmethod
    def from_fragment(cls, O: OperadFragment) -> FragmentBuilder:
        b = cls(O.field, O.colors)
        b.profiles = list(O.profiles)
        b.cells = dict(O.cells)
        b.differential = dict(O.differential)
        b.actions = dict(O.actions)
        b.compositions = dict(O.compositions)
        b.elements = dict(O.elements)
        return b

    def add_profile(self, profile) -> Profile:
        profile = _prof(profile)
        for c in profile.inputs + (profile.output,):
            if c not in self.colors:
                raise SemanticError("unknown color", f"{c!r} in profile {profile}")
        if profile not in self.profiles:
            self.profiles.append(profile)
        return profile

    def add_cell(self, cid: str, profile, degree: int, boundary: Mapping | None = None):
        profile = self.add_profile(profile)
        if cid in self.cells:
            raise SemanticError("duplicate cell", repr(cid))
        if not isinstance(degree, int) or degree < 0:
            raise SemanticError("bad degree", f"cell {cid!r} has degree {degree!r}")
        self.cells[cid] = Cell(cid, profile, degree)
        if boundary:
            self.set_boundary(cid, boundary)
        return self

    def _value(self, what: str, profile: Profile, degree: int, coeffs) -> Element:
        if isinstance(coeffs, Element):
            items = coeffs.terms
            if coeffs.is_zero():
                return Element.zero(self.field, profile, degree)
        else:
            items = list(coeffs.items())
        for cid, _ in items:
            if cid not in self.cells:
                raise SemanticError("unknown cell", f"{cid!r} referenced in {what}")
            c = self.cells[cid]
            if c.profile != profile:
                raise SemanticError("profile mismatch",
                                    f"{what}: cell {cid!r} has profile {c.profile}, expected {profile}")
            if c.degree != degree:
                raise SemanticError("degree mismatch",
                                    f"{what}: cell {cid!r} has degree {c.degree}, expected {degree}")
        try:
            return Element.build(self.field, profile, degree, items)
        except InputError as e:
            raise SemanticError("bad scalar", f"{what}: {e}") from None

    def _known(self, cid: str, what: str) -> Cell:
        if cid not in self.cells:
            raise SemanticError("unknown cell", f"{cid!r} referenced in {what}")
        return self.cells[cid]

    def set_boundary(self, cid: str, coeffs):
        c = self._known(cid, "differential")
        self.differential[cid] = self._value(f"d({cid})", c.profile, c.degree - 1, coeffs)
        return self

    def set_action(self, cid: str, k: int, coeffs):
        c = self._known(cid, "action")
        if not 1 <= k < c.profile.arity:
            raise SemanticError("bad transposition", f"s_{k} on cell {cid!r} of arity {c.profile.arity}")
        target = c.profile.permuted(Permutation.transposition(c.profile.arity, k))
        self.actions[(cid, k)] = self._value(f"{cid}.s{k}", target, c.degree, coeffs)
        return self

    def set_composite(self, x: str, i: int, y: str, coeffs):
        cx, cy = self._known(x, "composition"), self._known(y, "composition")
        try:
            target = cx.profile.substitute(i, cy.profile)
        except InputError as e:
            raise SemanticError("bad composition", f"{x} o_{i} {y}: {e}") from None
        self.compositions[(x, i, y)] = self._value(f"{x} o_{i} {y}", target, cx.degree + cy.degree, coeffs)
        return self

    def add_element(self, name: str, coeffs, profile=None, degree: int | None = None):
        if name in self.elements:
            raise SemanticError("duplicate element", repr(name))
        if isinstance(coeffs, Element):
            self.elements[name] = coeffs
            return self
        if profile is None:
            if not coeffs:
                raise SemanticError("bad element", f"{name!r} is empty and has no profile")
            first = self._known(next(iter(coeffs)), f"element {name!r}")
            profile, degree = first.profile, first.degree
        self.elements[name] = self._value(f"element {name!r}", _prof(profile), degree, coeffs)
        return self

    def build(self) -> OperadFragment:
        return OperadFragment(self.field, self.colors, tuple(self.profiles), self.cells,
                              self.differential, self.actions, self.compositions, self.elements)


# ---------------------------------------------------------------- operations

def _check_in(O: OperadFragment, x: Element):
    if x.field != O.field:
        raise InputError(f"element over {x.field} used in a fragment over {O.field}")
    for cid, _ in x.terms:
        c = O.cells.get(cid)
        if c is None:
            raise InputError(f"unknown cell {cid!r}")
        if (c.profile, c.degree) != (x.profile, x.degree):
            raise InputError(f"cell {cid!r} does not live in ({x.profile}, {x.degree})")


def _act_adjacent(O: OperadFragment, x: Element, k: int) -> Element:
    target = x.profile.permuted(Permutation.transposition(x.profile.arity, k))
    out = Element.zero(O.field, target, x.degree)
    for cid, coeff in x.terms:
        img = O.actions.get((cid, k))
        if img is None:
            raise IncompleteFragmentError(f"action s_{k} undefined on cell {cid!r}", (cid, k))
        out = out + coeff * img
    return out


def act(O: OperadFragment, x: Element, sigma: Permutation) -> Element:
    """Right action ``x . sigma`` built from the stored adjacent transpositions."""
    _check_in(O, x)
    if len(sigma) != x.profile.arity:
        raise InputError(f"permutation of size {len(sigma)} on an element of arity {x.profile.arity}")
    for k in sigma.adjacent_word():
        x = _act_adjacent(O, x, k)
    return x


def compose(O: OperadFragment, x: Element, i: int, y: Element) -> Element:
    _check_in(O, x)
    _check_in(O, y)
    target = x.profile.substitute(i, y.profile)
    out = Element.zero(O.field, target, x.degree + y.degree)
    acc = []
    for cx, a in x.terms:
        for cy, b in y.terms:
            v = O.compositions.get((cx, i, cy))
            if v is None:
                raise IncompleteFragmentError(f"composite {cx} o_{i} {cy} is not declared", (cx, i, cy))
            if (v.profile, v.degree) != (target, out.degree):
                raise InputError(f"composite {cx} o_{i} {cy} has the wrong bidegree")
            ab = a * b
            acc.extend((k, ab * c) for k, c in v.terms)
    return out + Element.build(O.field, target, out.degree, acc) if acc else out


def boundary(O: OperadFragment, x: Element) -> Element:
    _check_in(O, x)
    acc = []
    for cid, a in x.terms:
        d = O.differential.get(cid)
        if d is not None:
            acc.extend((k, a * c) for k, c in d.terms)
    return Element.build(O.field, x.profile, x.degree - 1, acc)


def slot_for(O: OperadFragment | None, profile, color: str, k: int) -> int:
    """Raw position of the k-th input of ``color`` in ``profile``."""
    profile = _prof(profile)
    seen = 0
    for pos, c in enumerate(profile.inputs, 1):
        if c == color:
            seen += 1
            if seen == k:
                return pos
    raise InputError(f"profile {profile} has only {seen} input(s) of color {color!r}, asked for #{k}")


def block_permutation(sigma: Permutation, i: int, q: int) -> Permutation:
    """``s'`` with ``(x.sigma) o_i y == (x o_{sigma(i)} y) . s'`` for y of arity q."""
    n = len(sigma)
    new = []
    for p in range(1, n + 1):
        if p == i:
            new.extend((sigma(i), t) for t in range(1, q + 1))
        else:
            new.append((sigma(p), 0))
    old = []
    for r in range(1, n + 1):
        if r == sigma(i):
            old.extend((r, t) for t in range(1, q + 1))
        else:
            old.append((r, 0))
    pos = {lab: m for m, lab in enumerate(old, 1)}
    return Permutation(tuple(pos[lab] for lab in new))


def inner_permutation(n: int, i: int, tau: Permutation) -> Permutation:
    """``t''`` with ``x o_i (y.tau) == (x o_i y) . t''`` for x of arity n."""
    q = len(tau)
    im = list(range(1, n + q))
    for t in range(1, q + 1):
        im[i - 1 + t - 1] = i - 1 + tau(t)
    return Permutation(tuple(im))


# ---------------------------------------------------------------- validation

@dataclass(frozen=True)
class Violation:
    axiom: str
    cells: tuple
    discrepancy: Element | None = None
    detail: str = ""

    def __str__(self):
        s = f"{self.axiom} at {', '.join(map(str, self.cells))}"
        if self.discrepancy is not None:
            s += f": discrepancy {self.discrepancy}"
        if self.detail:
            s += f" ({self.detail})"
        return s


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()
    checked: int = 0
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def __str__(self):
        head = f"{'passed' if self.passed else 'FAILED'}: {self.checked} identities checked, " \
               f"{self.skipped} skipped as not fully declared"
        return "\n".join([head] + [f"  - {v}" for v in self.violations])


class _Checker:
    def __init__(self):
        self.violations: list = []
        self.checked = 0
        self.skipped = 0

    def equal(self, axiom: str, cells: tuple, lhs: Callable[[], Element], rhs: Callable[[], Element]):
        """Compare two sides when every term they need is declared."""
        try:
            a, b = lhs(), rhs()
        except IncompleteFragmentError:
            self.skipped += 1
            return
        self.checked += 1
        if (a.profile, a.degree) != (b.profile, b.degree):
            self.violations.append(Violation(axiom, cells, None,
                                             f"sides live in ({a.profile},{a.degree}) vs ({b.profile},{b.degree})"))
        elif a != b:
            self.violations.append(Violation(axiom, cells, a - b))

    def fail(self, axiom: str, cells: tuple, detail: str = "", discrepancy=None):
        self.checked += 1
        self.violations.append(Violation(axiom, cells, discrepancy, detail))

    def report(self) -> ValidationReport:
        return ValidationReport(tuple(self.violations), self.checked, self.skipped)


def validate(O: OperadFragment) -> ValidationReport:
    ck = _Checker()
    for p in O.profiles:
        for c in p.inputs + (p.output,):
            if c not in O.colors:
                ck.fail("unknown-color", (str(p),), f"color {c!r}")
    for c in O.cells.values():
        if c.profile not in O.profiles:
            ck.fail("undeclared-profile", (c.id,), str(c.profile))

    # differential
    for cid, d in O.differential.items():
        c = O.cells[cid]
        if (d.profile, d.degree) != (c.profile, c.degree - 1):
            ck.fail("differential-bidegree", (cid,), f"d({cid}) lives in ({d.profile},{d.degree})")
    for cid in sorted(O.cells):
        x = O.cell(cid)
        ck.equal("d∘d = 0", (cid,), lambda x=x: boundary(O, boundary(O, x)),
                 lambda x=x: O.zero(x.profile, x.degree - 2))

    # action
    for cid in sorted(O.cells):
        c = O.cells[cid]
        n = c.profile.arity
        x = O.cell(cid)
        for k in range(1, n):
            img = O.actions.get((cid, k))
            if img is None:
                ck.fail("action-missing", (cid,), f"s_{k}")
                continue
            s = Permutation.transposition(n, k)
            if (img.profile, img.degree) != (c.profile.permuted(s), c.degree):
                ck.fail("action-bidegree", (cid,), f"s_{k}")
                continue
            ck.equal("action involution", (cid, f"s{k}"), lambda x=x, s=s: act(O, act(O, x, s), s), lambda x=x: x)
            ck.equal("action commutes with d", (cid, f"s{k}"),
                     lambda x=x, s=s: boundary(O, act(O, x, s)), lambda x=x, s=s: act(O, boundary(O, x), s))
        for k in range(1, n - 1):
            s, t = Permutation.transposition(n, k), Permutation.transposition(n, k + 1)
            ck.equal("braid relation", (cid, f"s{k}"), lambda x=x, s=s, t=t: act(O, act(O, act(O, x, s), t), s),
                     lambda x=x, s=s, t=t: act(O, act(O, act(O, x, t), s), t))
        for j, k in combinations(range(1, n), 2):
            if k - j >= 2:
                s, t = Permutation.transposition(n, j), Permutation.transposition(n, k)
                ck.equal("commuting transpositions", (cid, f"s{j}", f"s{k}"),
                         lambda x=x, s=s, t=t: act(O, act(O, x, s), t),
                         lambda x=x, s=s, t=t: act(O, act(O, x, t), s))

    # compositions
    by_left: dict = {}
    for key in sorted(O.compositions):
        xid, i, yid = key
        v = O.compositions[key]
        cx, cy = O.cells.get(xid), O.cells.get(yid)
        if cx is None or cy is None:
            ck.fail("unknown-cell", key)
            continue
        try:
            target = cx.profile.substitute(i, cy.profile)
        except InputError as e:
            ck.fail("composition-colors", key, str(e))
            continue
        if (v.profile, v.degree) != (target, cx.degree + cy.degree):
            ck.fail("composition-bidegree", key, f"value in ({v.profile},{v.degree}), "
                                                 f"expected ({target},{cx.degree + cy.degree})")
            continue
        by_left.setdefault(xid, []).append(key)
        x, y = O.cell(xid), O.cell(yid)
        sign = -1 if cx.degree % 2 else 1
        ck.equal("chain rule", key, lambda v=v: boundary(O, v),
                 lambda x=x, i=i, y=y, sign=sign: compose(O, boundary(O, x), i, y) + sign * compose(O, x, i, boundary(O, y)))
        n, q = cx.profile.arity, cy.profile.arity
        for k in range(1, n):
            s = Permutation.transposition(n, k)
            ii = s.inverse()(i)
            sp = block_permutation(s, ii, q)
            ck.equal("equivariance (outer)", key + (f"s{k}",),
                     lambda x=x, s=s, ii=ii, y=y: compose(O, act(O, x, s), ii, y),
                     lambda v=v, sp=sp: act(O, v, sp))
        for k in range(1, q):
            t = Permutation.transposition(q, k)
            tp = inner_permutation(n, i, t)
            ck.equal("equivariance (inner)", key + (f"s{k}",),
                     lambda x=x, i=i, y=y, t=t: compose(O, x, i, act(O, y, t)),
                     lambda v=v, tp=tp: act(O, v, tp))

    for xid, keys in sorted(by_left.items()):
        x = O.cell(xid)
        for (_, i, yid), (_, j, zid) in combinations(sorted(keys, key=lambda k: (k[1], k[2])), 2):
            if not i < j:
                continue
            y, z = O.cell(yid), O.cell(zid)
            q = y.profile.arity
            sign = -1 if (y.degree * z.degree) % 2 else 1
            ck.equal("parallel composition", (xid, i, yid, j, zid),
                     lambda x=x, i=i, y=y, j=j, z=z, q=q: compose(O, compose(O, x, i, y), j + q - 1, z),
                     lambda x=x, i=i, y=y, j=j, z=z, sign=sign: sign * compose(O, compose(O, x, j, z), i, y))
    for (xid, i, yid) in sorted(O.compositions):
        for (_, k, zid) in by_left.get(yid, []):
            x, y, z = O.cell(xid), O.cell(yid), O.cell(zid)
            ck.equal("sequential composition", (xid, i, yid, k, zid),
                     lambda x=x, i=i, y=y, k=k, z=z: compose(O, compose(O, x, i, y), i + k - 1, z),
                     lambda x=x, i=i, y=y, k=k, z=z: compose(O, x, i, compose(O, y, k, z)))
    return ck.report()


# ---------------------------------------------------------------- morphisms

@dataclass(frozen=True)
class OperadMorphism:
    """Degree-0 map given on cells; cells without an entry map to 0."""

    source: OperadFragment
    target: OperadFragment
    entries: Mapping  # cell id -> Element of target

    def __post_init__(self):
        if not isinstance(self.entries, MappingProxyType):
            object.__setattr__(self, "entries", _frozen(self.entries))

    @classmethod
    def identity(cls, O: OperadFragment) -> OperadMorphism:
        return cls(O, O, {cid: O.cell(cid) for cid in O.cells})

    @classmethod
    def inclusion(cls, source: OperadFragment, target: OperadFragment) -> OperadMorphism:
        return cls(source, target, {cid: target.cell(cid) for cid in source.cells})

    @classmethod
    def from_coeffs(cls, source: OperadFragment, target: OperadFragment, table: Mapping) -> OperadMorphism:
        entries = {}
        for cid, coeffs in table.items():
            c = source.cells[cid]
            entries[cid] = target.zero(c.profile, c.degree) if not coeffs else target.element(coeffs)
        return cls(source, target, entries)


def apply_morphism(phi: OperadMorphism, x: Element) -> Element:
    _check_in(phi.source, x)
    if x.profile not in phi.target.profiles:
        raise InputError(f"profile {x.profile} is absent from the target fragment")
    acc = []
    for cid, a in x.terms:
        img = phi.entries.get(cid)
        if img is None:
            continue
        if (img.profile, img.degree) != (x.profile, x.degree):
            raise InputError(f"morphism entry for {cid!r} is not degree-0 / profile-preserving")
        acc.extend((k, a * c) for k, c in img.terms)
    return Element.build(phi.target.field, x.profile, x.degree, acc)


def validate_morphism(phi: OperadMorphism) -> ValidationReport:
    S, T = phi.source, phi.target
    ck = _Checker()
    if S.field != T.field:
        ck.fail("field-mismatch", (str(S.field), str(T.field)))
        return ck.report()
    bad = set()
    for cid, img in sorted(phi.entries.items()):
        c = S.cells.get(cid)
        if c is None:
            ck.fail("unknown-cell", (cid,))
            bad.add(cid)
        elif (img.profile, img.degree) != (c.profile, c.degree):
            ck.fail("degree-0", (cid,), f"{cid} in ({c.profile},{c.degree}) maps to ({img.profile},{img.degree})")
            bad.add(cid)
        elif c.profile not in T.profiles:
            ck.fail("target-profile", (cid,), str(c.profile))
            bad.add(cid)
    if bad:
        return ck.report()
    f = lambda x: apply_morphism(phi, x)
    for cid in sorted(S.cells):
        x = S.cell(cid)
        if x.profile not in T.profiles:
            continue
        ck.equal("commutes with d", (cid,), lambda x=x: f(boundary(S, x)), lambda x=x: boundary(T, f(x)))
        n = x.profile.arity
        for k in range(1, n):
            s = Permutation.transposition(n, k)
            ck.equal("commutes with action", (cid, f"s{k}"), lambda x=x, s=s: f(act(S, x, s)),
                     lambda x=x, s=s: act(T, f(x), s))
    for (xid, i, yid), v in sorted(S.compositions.items()):
        x, y = S.cell(xid), S.cell(yid)
        ck.equal("commutes with composition", (xid, i, yid), lambda v=v: f(v),
                 lambda x=x, i=i, y=y: compose(T, f(x), i, f(y)))
    return ck.report()
