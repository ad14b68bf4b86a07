"""Exact linear algebra over Q and prime fields.

Vectors are plain tuples of scalars.  Rational scalars are
``fractions.Fraction``; residues mod p are :class:`ModP`.  Elimination is
dense and deterministic: pivots are taken left to right, the first nonzero
row wins, and every :class:`Subspace` is stored in reduced row echelon
form, so two subspaces are equal exactly when their bases are.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

Vector = tuple


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


class ModP:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("ModP is immutable")

    def _coerce(self, other) -> ModP:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise InputError(f"cannot mix F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return ModP(other, self.p)
        if isinstance(other, Fraction):
            return ModP(other.numerator, self.p) / ModP(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModP(self.value * pow(other.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``characteristic == 0``, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise InputError(f"characteristic {c} is neither 0 nor prime")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """``"q"`` or ``"fp:P"``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls(0)
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise InputError(f"bad field {text!r}") from None
            return cls(p)
        raise InputError(f"bad field {text!r}; expected 'q' or 'fp:P'")

    def __str__(self):
        return "q" if self.characteristic == 0 else f"fp:{self.characteristic}"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        """Coerce ``value`` (int, Fraction, "n/d" string, or scalar) into this field."""
        p = self.characteristic
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise InputError(f"bad scalar {value!r}") from None
        if isinstance(value, bool):
            value = int(value)
        if p == 0:
            if isinstance(value, ModP):
                raise InputError(f"cannot use an F_{value.p} scalar over Q")
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise InputError(f"not a scalar: {value!r}")
        if isinstance(value, ModP):
            if value.p != p:
                raise InputError(f"cannot use an F_{value.p} scalar over F_{p}")
            return value
        if isinstance(value, int):
            return ModP(value, p)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise InputError(f"{value} has no image in F_{p}")
            return ModP(value.numerator, p) / value.denominator
        raise InputError(f"not a scalar: {value!r}")

    def format(self, x) -> str:
        return str(x)

    def vector(self, values: Iterable) -> Vector:
        return tuple(self(v) for v in values)


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise InputError("matrix entries do not match its shape")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        entries = tuple(field.vector(r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(field, len(entries), cols, entries)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int) -> Matrix:
        columns = [field.vector(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise InputError("column length mismatch")
        entries = tuple(tuple(c[r] for c in columns) for r in range(rows))
        return cls(field, rows, len(columns), entries)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, v: Sequence) -> Vector:
        v = _check_vector(self.field, v, self.cols)
        z = self.field.zero
        out = []
        for row in self.entries:
            s = z
            for a, b in zip(row, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)


@dataclass(frozen=True)
class Subspace:
    """Subspace of field^ambient_dim with a reduced-echelon basis."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple  # RREF rows
    pivots: tuple

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
        rows = [_check_vector(field, v, ambient_dim) for v in vectors]
        red, piv = rref(field, rows, ambient_dim)
        return cls(field, ambient_dim, tuple(red), tuple(piv))

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, (), ())

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> Subspace:
        return cls.span(field, ambient_dim, Matrix.identity(field, ambient_dim).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Normal form of ``v`` modulo this subspace (zero at every pivot)."""
        v = list(_check_vector(self.field, v, self.ambient_dim))
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for k in range(p, self.ambient_dim):
                    if row[k]:
                        v[k] = v[k] - c * row[k]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_subspace(self, other: Subspace) -> bool:
        _same_field(self.field, other.field)
        if other.ambient_dim != self.ambient_dim:
            raise InputError("ambient dimension mismatch")
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` on the echelon basis; ``v`` must lie in the subspace."""
        v = _check_vector(self.field, v, self.ambient_dim)
        if not self.contains(v):
            raise InputError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def __add__(self, other: Subspace) -> Subspace:
        _same_field(self.field, other.field)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)


def _same_field(f: FieldSpec, g: FieldSpec):
    if f != g:
        raise InputError(f"mixed fields {f} and {g}")


def _check_vector(field: FieldSpec, v: Sequence, n: int) -> Vector:
    if len(v) != n:
        raise InputError(f"expected a vector of length {n}, got {len(v)}")
    return field.vector(v)


def rref(field: FieldSpec, rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        k = next((i for i in range(r, len(m)) if m[i][c]), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def solve(A: Matrix, b: Sequence) -> Vector | None:
    """Some ``x`` with ``A x = b`` (free variables set to 0), or None."""
    b = _check_vector(A.field, b, A.rows)
    aug = [list(row) + [bi] for row, bi in zip(A.entries, b)]
    red, piv = rref(A.field, aug, A.cols + 1)
    if piv and piv[-1] == A.cols:
        return None
    x = [A.field.zero] * A.cols
    for row, p in zip(red, piv):
        x[p] = row[A.cols]
    return tuple(x)


def kernel(A: Matrix) -> Subspace:
    red, piv = rref(A.field, A.entries, A.cols)
    free = [j for j in range(A.cols) if j not in piv]
    vecs = []
    for j in free:
        v = [A.field.zero] * A.cols
        v[j] = A.field.one
        for row, p in zip(red, piv):
            v[p] = -row[j]
        vecs.append(v)
    return Subspace.span(A.field, A.cols, vecs)


def image(A: Matrix) -> Subspace:
    return Subspace.span(A.field, A.rows, A.columns())


def member(v: Sequence, S: Subspace) -> bool:
    return S.contains(v)


@dataclass(frozen=True)
class QuotientPresentation:
    """Presentation of Z/B: canonical representatives and a coordinate map.

    Representatives are the echelon basis of the normal forms of Z modulo
    B, so they vanish at every pivot of B and are unique for the pair.
    """

    cycles: Subspace
    boundaries: Subspace
    complement: Subspace

    @property
    def dim(self) -> int:
        return self.complement.dim

    @property
    def representatives(self) -> tuple:
        return self.complement.basis

    def coordinates(self, v: Sequence) -> Vector:
        if not self.cycles.contains(v):
            raise InputError("vector is outside the cycle space")
        nf = self.boundaries.reduce(v)
        return tuple(nf[p] for p in self.complement.pivots)


def quotient_basis(Z: Subspace, B: Subspace) -> QuotientPresentation:
    _same_field(Z.field, B.field)
    if not Z.contains_subspace(B):
        raise InputError("boundary space is not contained in the cycle space")
    comp = Subspace.span(Z.field, Z.ambient_dim, [B.reduce(z) for z in Z.basis])
    return QuotientPresentation(Z, B, comp)
