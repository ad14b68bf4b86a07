"""Homology of a fragment per bidegree, classes, and induced maps."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, NotACycleError
from .exactla import Matrix, QuotientPresentation, Subspace, image, kernel, quotient_basis
from .operadcore import (Element, OperadFragment, OperadMorphism, Profile, _prof, apply_morphism,
                         boundary, compose)


def boundary_matrix(O: OperadFragment, profile, degree: int) -> Matrix:
    """Matrix of d from bidegree ``degree`` to ``degree - 1`` on sorted cell bases."""
    profile = _prof(profile)
    src = O.cells_in(profile, degree)
    tgt = O.cells_in(profile, degree - 1)
    row = {c: r for r, c in enumerate(tgt)}
    cols = []
    for cid in src:
        col = [O.field.zero] * len(tgt)
        for k, v in boundary(O, O.cell(cid)).terms:
            col[row[k]] = v
        cols.append(col)
    if not src:
        return Matrix.zeros(O.field, len(tgt), 0)
    return Matrix.from_columns(O.field, cols, len(tgt))


def to_vector(O: OperadFragment, x: Element) -> tuple:
    cells = O.cells_in(x.profile, x.degree)
    pos = {c: i for i, c in enumerate(cells)}
    v = [O.field.zero] * len(cells)
    for k, c in x.terms:
        v[pos[k]] = c
    return tuple(v)


def from_vector(O: OperadFragment, profile, degree: int, v) -> Element:
    profile = _prof(profile)
    cells = O.cells_in(profile, degree)
    return Element.build(O.field, profile, degree, zip(cells, v))


@dataclass(frozen=True)
class HomologySpace:
    fragment: OperadFragment = field(compare=False, repr=False)
    profile: Profile
    degree: int
    presentation: QuotientPresentation = field(repr=False)
    representatives: tuple  # cycle Elements

    @property
    def dimension(self) -> int:
        return self.presentation.dim

    def coordinates(self, z: Element) -> tuple:
        """Class coordinates of a cycle ``z`` on :attr:`representatives`."""
        O = self.fragment
        if (z.profile, z.degree) != (self.profile, self.degree):
            raise InputError(f"element of ({z.profile},{z.degree}) given to homology "
                             f"of ({self.profile},{self.degree})")
        d = boundary(O, z)
        if d:
            raise NotACycleError(f"element has nonzero boundary {d}", d)
        return self.presentation.coordinates(to_vector(O, z))

    def basis_classes(self) -> list:
        n = self.dimension
        one, zero = self.fragment.field.one, self.fragment.field.zero
        return [HomologyClass(self, tuple(one if j == k else zero for j in range(n))) for k in range(n)]

    def zero_class(self) -> HomologyClass:
        return HomologyClass(self, (self.fragment.field.zero,) * self.dimension)

    def __str__(self):
        reps = ", ".join(str(r) for r in self.representatives) or "-"
        return f"H_{self.degree}({self.profile}): dimension {self.dimension}; representatives {reps}"


@dataclass(frozen=True)
class HomologyClass:
    home: HomologySpace
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.home.dimension:
            raise InputError("class coordinates do not match the homology dimension")

    def is_zero(self) -> bool:
        return not any(self.coords)

    def representative(self) -> Element:
        h = self.home
        out = h.fragment.zero(h.profile, h.degree)
        for c, r in zip(self.coords, h.representatives):
            if c:
                out = out + c * r
        return out

    def __add__(self, other: HomologyClass) -> HomologyClass:
        if other.home != self.home:
            raise InputError("classes live in different homology spaces")
        return HomologyClass(self.home, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, s) -> HomologyClass:
        s = self.home.fragment.field(s)
        return HomologyClass(self.home, tuple(s * a for a in self.coords))

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coords) + f"] in H_{self.home.degree}({self.home.profile})"


def homology(O: OperadFragment, profile, degree: int) -> HomologySpace:
    profile = _prof(profile)
    key = ("homology", profile, degree)
    if key in O._cache:
        return O._cache[key]
    n = len(O.cells_in(profile, degree))
    Z = kernel(boundary_matrix(O, profile, degree)) if n else Subspace.zero(O.field, 0)
    B = image(boundary_matrix(O, profile, degree + 1))
    pres = quotient_basis(Z, B)
    reps = tuple(from_vector(O, profile, degree, r) for r in pres.representatives)
    H = HomologySpace(O, profile, degree, pres, reps)
    O._cache[key] = H
    return H


def class_of(O: OperadFragment, z: Element) -> HomologyClass:
    H = homology(O, z.profile, z.degree)
    return HomologyClass(H, H.coordinates(z))


def is_boundary(O: OperadFragment, z: Element) -> bool:
    return class_of(O, z).is_zero()


def induced_compose(O: OperadFragment, h1: HomologyClass, i: int, h2: HomologyClass) -> HomologyClass:
    return class_of(O, compose(O, h1.representative(), i, h2.representative()))


def push_class(phi: OperadMorphism, h: HomologyClass) -> HomologyClass:
    if h.home.fragment is not phi.source and h.home.fragment != phi.source:
        raise InputError("class does not live in the source of the morphism")
    return class_of(phi.target, apply_morphism(phi, h.representative()))


def euler_characteristic(O: OperadFragment, profile) -> tuple:
    """(alternating cell count, alternating Betti sum) for one profile."""
    profile = _prof(profile)
    cells = betti = 0
    for k in O.degrees(profile):
        s = -1 if k % 2 else 1
        cells += s * len(O.cells_in(profile, k))
        betti += s * homology(O, profile, k).dimension
    return cells, betti
