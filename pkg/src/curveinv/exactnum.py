"""Truncated power series (jets), Laurent jets and jet matrices over Q.

This is the arithmetic bedrock of the package: every order-of-vanishing
computation runs here, in exact rational arithmetic.  A jet stores the
coefficients it actually knows (indices 0..known_order); every operation
propagates the known order pessimistically, so a coefficient is never
reported unless it is genuinely determined by the inputs.

All values are immutable and all operations are pure functions; everything
in this module is safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _poly
from .errors import PreconditionError


class NotAUnit(PreconditionError):
    """Inversion of a (Laurent) jet whose constant term vanishes."""


class SingularToKnownOrder(PreconditionError):
    """A matrix whose determinant vanishes through every stored order."""


class InsufficientJetOrder(PreconditionError):
    """The stored coefficients do not determine the requested quantity."""


@dataclass(frozen=True)
class OrdResult:
    """Order of vanishing: either Finite(k) or Undetermined(>= at_least).

    Undetermined is a value, not an error; it distinguishes "the jet was
    too short to decide" from an actual order.
    """

    value: int | None
    at_least: int

    @classmethod
    def finite(cls, k: int) -> "OrdResult":
        return cls(value=k, at_least=k)

    @classmethod
    def undetermined(cls, at_least: int) -> "OrdResult":
        return cls(value=None, at_least=at_least)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        if self.is_finite:
            return f"Finite({self.value})"
        return f"Undetermined(>={self.at_least})"


@dataclass(frozen=True)
class Jet:
    """Truncated power series with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of the i-th power; ``known_order`` is
    ``len(coeffs) - 1``.  Two jets are comparable only through the minimum
    of their known orders, which is what :meth:`agrees_with` checks.
    """

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a jet stores at least its constant term")
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
        )

    @property
    def known_order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order: int) -> "Jet":
        c = [Fraction(value)] + [Fraction(0)] * order
        return cls(tuple(c))

    @classmethod
    def zero(cls, order: int) -> "Jet":
        return cls.constant(0, order)

    @classmethod
    def one(cls, order: int) -> "Jet":
        return cls.constant(1, order)

    @classmethod
    def variable(cls, order: int) -> "Jet":
        if order < 1:
            raise ValueError("the variable needs order >= 1")
        c = [Fraction(0), Fraction(1)] + [Fraction(0)] * (order - 1)
        return cls(tuple(c))

    @classmethod
    def from_polynomial(cls, p, order: int) -> "Jet":
        c = list(p[: order + 1]) + [Fraction(0)] * max(0, order + 1 - len(p))
        return cls(tuple(c))

    def truncate(self, order: int) -> "Jet":
        if order >= self.known_order:
            return self
        return Jet(self.coeffs[: order + 1])

    def __add__(self, other: "Jet") -> "Jet":
        k = min(self.known_order, other.known_order)
        return Jet(tuple(a + b for a, b in zip(self.coeffs, other.coeffs))[: k + 1])

    def __neg__(self) -> "Jet":
        return Jet(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Jet") -> "Jet":
        return self + (-other)

    def __mul__(self, other: "Jet") -> "Jet":
        k = min(self.known_order, other.known_order)
        return Jet(tuple(_poly.mul_truncated(self.coeffs, other.coeffs, k)))

    def scale(self, c) -> "Jet":
        c = Fraction(c)
        return Jet(tuple(x * c for x in self.coeffs))

    def agrees_with(self, other: "Jet") -> bool:
        k = min(self.known_order, other.known_order)
        return self.coeffs[: k + 1] == other.coeffs[: k + 1]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __str__(self) -> str:
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.known_order + 1})"


def jet_mul(a: Jet, b: Jet) -> Jet:
    """Truncated Cauchy product at the common known order."""
    return a * b


def jet_inverse(a: Jet) -> Jet:
    """Multiplicative inverse of a unit jet, to the same known order."""
    if a.coeffs[0] == 0:
        raise NotAUnit("constant term vanishes; the jet has no inverse")
    n = a.known_order
    inv0 = 1 / a.coeffs[0]
    out = [inv0] + [Fraction(0)] * n
    for k in range(1, n + 1):
        s = Fraction(0)
        for j in range(1, k + 1):
            s += a.coeffs[j] * out[k - j]
        out[k] = -inv0 * s
    return Jet(tuple(out))


def vanishing_order(a: Jet) -> OrdResult:
    """Index of the first nonzero coefficient, if it is stored at all."""
    for i, c in enumerate(a.coeffs):
        if c != 0:
            return OrdResult.finite(i)
    return OrdResult.undetermined(a.known_order + 1)


@dataclass(frozen=True)
class JetMatrix:
    """Square matrix of jets sharing one known order.

    Stored as a tuple of coefficient matrices (``coeffs[k][i][j]`` is the
    k-th series coefficient of entry (i, j)); this keeps matrix products a
    plain convolution of rational matrices.  The empty matrix (dim 0) is
    allowed as the degenerate block arising when a kernel is trivial; its
    determinant is the empty product.
    """

    dim: int
    coeffs: tuple  # tuple of dim x dim rational matrices, length known_order+1

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be non-negative")
        if not self.coeffs:
            raise ValueError("a jet matrix stores at least its constant term")
        frozen = tuple(
            tuple(tuple(Fraction(c) for c in row) for row in mat)
            for mat in self.coeffs
        )
        for mat in frozen:
            if len(mat) != self.dim or any(len(row) != self.dim for row in mat):
                raise ValueError("coefficient matrices must be dim x dim")
        object.__setattr__(self, "coeffs", frozen)

    @property
    def known_order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def identity(cls, dim: int, order: int) -> "JetMatrix":
        mats = [_ident(dim)] + [_zero_mat(dim) for _ in range(order)]
        return cls(dim, tuple(mats))

    @classmethod
    def from_entries(cls, grid) -> "JetMatrix":
        """Build from a grid of jets; the common order is the minimum."""
        dim = len(grid)
        order = min(j.known_order for row in grid for j in row) if dim else 0
        mats = [
            tuple(tuple(grid[i][j].coeffs[k] for j in range(dim)) for i in range(dim))
            for k in range(order + 1)
        ]
        return cls(dim, tuple(mats))

    def entry(self, i: int, j: int) -> Jet:
        return Jet(tuple(mat[i][j] for mat in self.coeffs))

    def entries(self):
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def truncate(self, order: int) -> "JetMatrix":
        if order >= self.known_order:
            return self
        return JetMatrix(self.dim, self.coeffs[: order + 1])

    def __add__(self, other: "JetMatrix") -> "JetMatrix":
        k = min(self.known_order, other.known_order)
        mats = [
            _mat_add(self.coeffs[t], other.coeffs[t]) for t in range(k + 1)
        ]
        return JetMatrix(self.dim, tuple(mats))

    def __sub__(self, other: "JetMatrix") -> "JetMatrix":
        k = min(self.known_order, other.known_order)
        mats = [
            _mat_sub(self.coeffs[t], other.coeffs[t]) for t in range(k + 1)
        ]
        return JetMatrix(self.dim, tuple(mats))

    def __mul__(self, other: "JetMatrix") -> "JetMatrix":
        k = min(self.known_order, other.known_order)
        mats = []
        for t in range(k + 1):
            acc = _zero_mat(self.dim)
            for i in range(t + 1):
                acc = _mat_add(acc, _mat_mul(self.coeffs[i], other.coeffs[t - i]))
            mats.append(acc)
        return JetMatrix(self.dim, tuple(mats))

    def polynomial_lift(self):
        """Entries as exact polynomials built from the stored coefficients."""
        return [
            [
                _poly.poly(mat[i][j] for mat in self.coeffs)
                for j in range(self.dim)
            ]
            for i in range(self.dim)
        ]


def _ident(n):
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def _zero_mat(n):
    return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))


def _mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def _det_cofactor(entries, order: int) -> Jet:
    """First-column cofactor expansion, memoized over row subsets."""
    n = len(entries)
    if n == 0:
        return Jet.one(order)
    cache: dict = {}

    def rec(rows: tuple, col: int) -> Jet:
        if not rows:
            return Jet.one(order)
        key = rows
        hit = cache.get(key)
        if hit is not None:
            return hit
        acc = Jet.zero(order)
        for pos, r in enumerate(rows):
            e = entries[r][col]
            if e.is_zero():
                continue
            rest = rows[:pos] + rows[pos + 1 :]
            term = e * rec(rest, col + 1)
            acc = acc + (term if pos % 2 == 0 else -term)
        cache[key] = acc
        return acc

    return rec(tuple(range(n)), 0)


def jet_det(m: JetMatrix) -> Jet:
    """Determinant in the truncated jet ring.

    Dimensions up to 5 use a fixed cofactor expansion directly on the jets;
    larger matrices go through fraction-free Bareiss elimination on the
    polynomial lift (pivot-based elimination on jets themselves would be
    unsound: the jet ring has zero divisors).  Both strategies agree with
    the truncation of the exact determinant.
    """
    order = m.known_order
    if m.dim <= 5:
        return _det_cofactor(m.entries(), order)
    d = _poly.mat_det_bareiss(m.polynomial_lift())
    return Jet.from_polynomial(d, order)


@dataclass(frozen=True)
class LaurentJet:
    """A jet with a finite pole: t^(-pole_order) times a unit-part jet.

    Coefficients below ``-pole_order`` are exact zeros, those in the window
    ``[-pole_order, -pole_order + unit.known_order]`` are stored, anything
    above is unknown.  Normal form: a positive pole order implies a nonzero
    leading unit coefficient (all-zero windows normalize to pole 0).
    """

    pole_order: int
    unit_part: Jet

    def __post_init__(self):
        if self.pole_order < 0:
            raise ValueError("pole order must be non-negative")
        pole, unit = self.pole_order, self.unit_part
        while pole > 0 and unit.coeffs[0] == 0:
            pole -= 1
            unit = (
                Jet(unit.coeffs[1:]) if unit.known_order >= 1 else Jet.zero(0)
            )
        object.__setattr__(self, "pole_order", pole)
        object.__setattr__(self, "unit_part", unit)

    @classmethod
    def from_jet(cls, j: Jet) -> "LaurentJet":
        return cls(0, j)

    @property
    def known_through(self) -> int:
        """Highest exponent whose coefficient is determined."""
        return -self.pole_order + self.unit_part.known_order

    def leading_exponent(self) -> OrdResult:
        o = vanishing_order(self.unit_part)
        if o.is_finite:
            return OrdResult.finite(o.value - self.pole_order)
        return OrdResult.undetermined(o.at_least - self.pole_order)

    def coefficient(self, exponent: int) -> Fraction:
        idx = exponent + self.pole_order
        if idx < 0:
            return Fraction(0)
        if idx > self.unit_part.known_order:
            raise InsufficientJetOrder(
                f"coefficient of exponent {exponent} is beyond the known window"
            )
        return self.unit_part.coeffs[idx]

    def is_zero(self) -> bool:
        return self.unit_part.is_zero()

    def __add__(self, other: "LaurentJet") -> "LaurentJet":
        pole = max(self.pole_order, other.pole_order)
        a = _pad(self, pole)
        b = _pad(other, pole)
        return LaurentJet(pole, a + b)

    def __neg__(self) -> "LaurentJet":
        return LaurentJet(self.pole_order, -self.unit_part)

    def __sub__(self, other: "LaurentJet") -> "LaurentJet":
        return self + (-other)

    def __mul__(self, other: "LaurentJet") -> "LaurentJet":
        return LaurentJet(
            self.pole_order + other.pole_order, self.unit_part * other.unit_part
        )

    def inverse(self) -> "LaurentJet":
        lead = self.leading_exponent()
        if not lead.is_finite:
            raise NotAUnit(
                "every stored coefficient vanishes; no leading term to invert"
            )
        e = lead.value
        shift = e + self.pole_order  # index of the leading coeff in the unit part
        v = Jet(self.unit_part.coeffs[shift:])
        v_inv = jet_inverse(v)
        if e >= 0:
            # plain jet t^e * v, inverse has pole e
            return LaurentJet(e, v_inv)
        pad = [Fraction(0)] * (-e) + list(v_inv.coeffs)
        return LaurentJet(0, Jet(tuple(pad)))

    def __str__(self) -> str:
        terms = [
            f"{c}*t^{i - self.pole_order}"
            for i, c in enumerate(self.unit_part.coeffs)
            if c != 0
        ]
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.known_through + 1})"


def _pad(x: LaurentJet, pole: int) -> Jet:
    extra = pole - x.pole_order
    if extra == 0:
        return x.unit_part
    return Jet(tuple([Fraction(0)] * extra + list(x.unit_part.coeffs)))


@dataclass(frozen=True)
class LaurentMatrix:
    """Square matrix of Laurent jets (entries may carry different windows)."""

    dim: int
    grid: tuple  # tuple of row tuples of LaurentJet

    def entry(self, i: int, j: int) -> LaurentJet:
        return self.grid[i][j]

    def det(self) -> LaurentJet:
        """Determinant by cofactor expansion.

        Entries that vanish through their whole window are treated as exact
        zeros (true for every matrix this module itself produces).
        """
        if self.dim == 0:
            return LaurentJet(0, Jet.one(0))
        cache: dict = {}
        entries = self.grid

        def rec(rows: tuple, col: int) -> LaurentJet:
            if len(rows) == 1:
                return entries[rows[0]][col]
            hit = cache.get(rows)
            if hit is not None:
                return hit
            acc = None
            for pos, r in enumerate(rows):
                e = entries[r][col]
                if e.is_zero():
                    continue
                term = e * rec(rows[:pos] + rows[pos + 1 :], col + 1)
                if pos % 2 == 1:
                    term = -term
                acc = term if acc is None else acc + term
            if acc is None:
                acc = LaurentJet(0, Jet.zero(0))
            cache[rows] = acc
            return acc

        return rec(tuple(range(self.dim)), 0)

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        n = self.dim
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = None
                for k in range(n):
                    term = self.grid[i][k] * other.grid[k][j]
                    acc = term if acc is None else acc + term
                row.append(acc)
            rows.append(tuple(row))
        return LaurentMatrix(n, tuple(rows))

    @classmethod
    def from_jet_matrix(cls, m: JetMatrix) -> "LaurentMatrix":
        grid = tuple(
            tuple(LaurentJet.from_jet(m.entry(i, j)) for j in range(m.dim))
            for i in range(m.dim)
        )
        return cls(m.dim, grid)


def laurent_matrix_inverse(m: JetMatrix) -> LaurentMatrix:
    """Inverse of a jet matrix as a matrix of Laurent jets.

    Computed as adjugate over determinant; every pole order is bounded by
    the vanishing order of the determinant, and the product with ``m``
    equals the identity through the representable window.
    """
    adj_poly, det_poly = _poly.mat_adjugate_det(m.polynomial_lift())
    order = m.known_order
    det_jet = Jet.from_polynomial(det_poly, order)
    k = vanishing_order(det_jet)
    if not k.is_finite:
        raise SingularToKnownOrder(
            f"determinant vanishes through order {order}"
        )
    det_inv = LaurentJet.from_jet(det_jet).inverse()
    rows = []
    for i in range(m.dim):
        row = []
        for j in range(m.dim):
            a = LaurentJet.from_jet(Jet.from_polynomial(adj_poly[i][j], order))
            q = a * det_inv
            if q.known_through < -q.pole_order:
                raise InsufficientJetOrder(
                    "quotient retains no significant coefficients"
                )
            row.append(q)
        rows.append(tuple(row))
    return LaurentMatrix(m.dim, tuple(rows))
