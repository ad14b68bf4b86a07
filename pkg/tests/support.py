"""Shared test fragments and independent oracles."""

from __future__ import annotations

import itertools
import random

from operadmassey.exactla import FieldSpec
from operadmassey.homology import class_of
from operadmassey.operadcore import Element, FragmentBuilder, OperadFragment, boundary, compose, validate


def dga_fragment(field: FieldSpec | None = None) -> OperadFragment:
    """One color, arity 1: a monomial dga with a nontrivial triple product.

    dX = ab, dY = bc, so <a, b, c> = [Xc - aY] + span[aZ] in H_1.
    Every composite of a degree-1 cell with ``c`` (on the right) or ``a``
    (on the left) is declared, so all bounding chains can be composed.
    """
    F = field or FieldSpec()
    b = FragmentBuilder(F, ("x",))
    P = "x;x"
    for w in ("a", "b", "c", "ab", "bc", "abc", "abc_c", "a_abc", "a_ab", "bc_c"):
        b.add_cell(w, P, 0)
    b.add_cell("X", P, 1, {"ab": 1}).add_cell("Y", P, 1, {"bc": 1})
    b.add_cell("Xc", P, 1, {"abc": 1}).add_cell("aY", P, 1, {"abc": 1})
    b.add_cell("Z", P, 1).add_cell("aZ", P, 1)
    zero = {}
    table = [("a", "b", {"ab": 1}), ("b", "c", {"bc": 1}), ("ab", "c", {"abc": 1}), ("a", "bc", {"abc": 1}),
             ("abc", "c", zero), ("a", "abc", zero), ("a", "ab", zero), ("bc", "c", zero),
             ("X", "c", {"Xc": 1}), ("Y", "c", zero), ("Xc", "c", zero), ("aY", "c", zero),
             ("Z", "c", zero), ("aZ", "c", zero),
             ("a", "X", zero), ("a", "Y", {"aY": 1}), ("a", "Xc", zero), ("a", "aY", zero),
             ("a", "Z", {"aZ": 1}), ("a", "aZ", zero)]
    for x, y, v in table:
        b.set_composite(x, 1, y, v)
    return b.build()


def random_zero_fragment(rng: random.Random, field: FieldSpec | None = None, max_cells: int = 6) -> OperadFragment:
    """Zero differential, one color, arities <= 2, random composition table.

    Arity 1 is a truncated word algebra: a random factor-closed set of words
    in graded letters, composed by concatenation (zero when the word is not
    kept), which is associative by construction.  Arity-2 cells carry the
    trivial action and random composites with arity-1 cells; those tables are
    redrawn until every operad axiom holds.
    """
    F = field or FieldSpec()
    words, degs = _random_words(rng, max_cells)
    for _ in range(1000):
        O = _random_table(rng, F, words, degs, max_cells - len(words))
        if validate(O).passed:
            return O
    raise RuntimeError("no valid random fragment found")


def _random_words(rng: random.Random, max_cells: int):
    letters = "uvw"[: rng.randint(1, 3)]
    degs = {c: rng.choice((0, 1, 1, 2)) for c in letters}
    kept = []
    for n in (1, 2, 3):
        for t in itertools.product(letters, repeat=n):
            w = "".join(t)
            if len(kept) >= max_cells:
                break
            if (n == 1 or (w[:-1] in kept and w[1:] in kept)) and rng.random() < 0.7:
                kept.append(w)
    return kept or [letters[0]], degs


def _random_table(rng: random.Random, F: FieldSpec, words: list, degs: dict, room: int) -> OperadFragment:
    b = FragmentBuilder(F, ("x",))
    b.add_profile("x;x")
    b.add_profile("x,x;x")
    deg = lambda w: sum(degs[c] for c in w)
    cells = [(w, 1, deg(w)) for w in words]
    for w in words:
        b.add_cell(w, "x;x", deg(w))
    for x, y in itertools.product(words, repeat=2):
        b.set_composite(x, 1, y, {x + y: 1} if x + y in words else {})
    for k in range(rng.randint(0, max(room, 0))):
        cid = f"m{k}"
        d = rng.choice((0, 1, 2))
        b.add_cell(cid, "x,x;x", d).set_action(cid, 1, {cid: 1})
        cells.append((cid, 2, d))
    for (x, ax, dx), (y, ay, dy) in itertools.product(cells, repeat=2):
        if ax == ay == 1 or ax + ay - 1 > 2 or rng.random() < 0.3:
            continue
        targets = [c for c, a, d in cells if a == 2 and d == dx + dy]
        value = {}
        if targets and rng.random() < 0.5:
            value = {t: rng.randint(-2, 2) for t in rng.sample(targets, rng.randint(1, len(targets)))}
        for i in range(1, ax + 1):
            b.set_composite(x, i, y, value)
    return b.build()


def all_vectors(field: FieldSpec, n: int):
    """Every vector of F_p^n (tiny p only)."""
    p = field.characteristic
    assert p > 0
    for t in itertools.product(range(p), repeat=n):
        yield tuple(field(v) for v in t)


def brute_force_type_I_classes(O: OperadFragment, a: Element, b: Element, c: Element, i: int, j: int) -> set:
    """All classes [M] over every pair of bounding chains (F_p only)."""
    ab, bc = compose(O, a, i, b), compose(O, b, j, c)
    out = set()
    xs = _solutions(O, ab)
    ys = _solutions(O, bc)
    sign = -1 if a.degree % 2 else 1
    for x in xs:
        for y in ys:
            M = compose(O, x, i + j - 1, c) - sign * compose(O, a, i, y)
            out.add(class_of(O, M).coords)
    return out


def _solutions(O: OperadFragment, z: Element) -> list:
    cells = O.cells_in(z.profile, z.degree + 1)
    sols = []
    for v in all_vectors(O.field, len(cells)):
        x = Element.build(O.field, z.profile, z.degree + 1, zip(cells, v))
        if boundary(O, x) == z:
            sols.append(x)
    return sols


def coset_elements(K) -> set:
    """Representative + every element of the indeterminacy (F_p only)."""
    basis = K.indeterminacy.basis
    F = K.home.fragment.field
    out = set()
    for coeffs in all_vectors(F, len(basis)):
        v = list(K.representative.coords)
        for c, row in zip(coeffs, basis):
            v = [x + c * y for x, y in zip(v, row)]
        out.add(tuple(v))
    return out
