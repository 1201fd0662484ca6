"""Parity of admissible operator paths and closed loops.

In finite dimension the Leray-Schauder degree of an invertible matrix is
the sign of its determinant and a GL-valued parametrix has a constant
determinant sign, so the parity of an admissible path collapses to the
product of its endpoint determinant signs.  That reduction is the
foundation of this module; the crossing-count and multiplicity-sum
formulations are computed independently (exact Sturm isolation over Q,
square-free factor multiplicities) and must agree with it.

Closed curves are modeled as cyclic sequences of admissible polynomial
segments and symbolic GL connectors.  A connector abstracts a path inside
a contractible group of invertibles, contributes no crossings, and is
deliberately not checked for determinant-sign consistency with its
neighbors; every value computed from a loop containing one carries a flag
saying so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg, _poly
from ._poly import RootLocation
from .errors import PreconditionError
from .exactnum import SingularToKnownOrder
from .multiplicity import MatrixCurveJet, MultiplicityReport, multiplicity_det

__all__ = [
    "NotAdmissible",
    "NonTransversalCrossing",
    "PolynomialPath",
    "AnalyticSegment",
    "GlConnector",
    "LoopPath",
    "Crossing",
    "ParityValue",
    "RootLocation",
    "interval_parity",
    "crossing_parity",
    "multiplicity_sum_parity",
    "local_parity",
    "loop_parity",
]


class NotAdmissible(PreconditionError):
    """The path is singular at an endpoint."""


class NonTransversalCrossing(PreconditionError):
    """A determinant root of multiplicity > 1 lies inside the interval."""


@dataclass(frozen=True)
class PolynomialPath:
    """Matrix polynomial restricted to a rational interval [a, b].

    ``coefficients[j]`` multiplies the j-th power of the global parameter.
    Admissibility (invertibility at both endpoints) is checked on demand,
    not at construction.
    """

    dim: int
    a: Fraction
    b: Fraction
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a >= self.b:
            raise ValueError("the interval must satisfy a < b")
        mats = tuple(_linalg.freeze(m) for m in self.coefficients)
        if not mats:
            raise ValueError("a path needs at least one coefficient matrix")
        for m in mats:
            if _linalg.shape(m) != (self.dim, self.dim):
                raise ValueError("coefficient matrices must be dim x dim")
        object.__setattr__(self, "coefficients", mats)

    def evaluate(self, lam) -> _linalg.Matrix:
        lam = Fraction(lam)
        n = self.dim
        acc = [[Fraction(0)] * n for _ in range(n)]
        for mat in reversed(self.coefficients):
            for i in range(n):
                row = acc[i]
                src = mat[i]
                for j in range(n):
                    row[j] = row[j] * lam + src[j]
        return _linalg.freeze(acc)

    def determinant_polynomial(self):
        lift = [
            [
                _poly.poly(mat[i][j] for mat in self.coefficients)
                for j in range(self.dim)
            ]
            for i in range(self.dim)
        ]
        return _poly.mat_det_bareiss(lift)

    def is_admissible(self) -> bool:
        return (
            _linalg.det(self.evaluate(self.a)) != 0
            and _linalg.det(self.evaluate(self.b)) != 0
        )

    def ensure_admissible(self) -> None:
        if _linalg.det(self.evaluate(self.a)) == 0:
            raise NotAdmissible(f"path is singular at the left endpoint {self.a}")
        if _linalg.det(self.evaluate(self.b)) == 0:
            raise NotAdmissible(f"path is singular at the right endpoint {self.b}")

    def reversed(self) -> "PolynomialPath":
        """The same track traversed backwards, reparameterized on [a, b]."""
        n = self.dim
        s = self.a + self.b
        entries = [
            [
                _flip_poly(_poly.poly(mat[i][j] for mat in self.coefficients), s)
                for j in range(n)
            ]
            for i in range(n)
        ]
        deg = max((len(p) - 1 for row in entries for p in row if p), default=0)
        mats = [
            tuple(
                tuple(
                    entries[i][j][k] if k < len(entries[i][j]) else Fraction(0)
                    for j in range(n)
                )
                for i in range(n)
            )
            for k in range(deg + 1)
        ]
        return PolynomialPath(n, self.a, self.b, tuple(mats))


def _flip_poly(p, s):
    """Substitute x -> s - x."""
    acc = _poly.ZERO
    minus_x_plus_s = (Fraction(s), Fraction(-1))
    for coeff in reversed(p):
        acc = _poly.add(_poly.mul(acc, minus_x_plus_s), (Fraction(coeff),))
    return acc


@dataclass(frozen=True)
class AnalyticSegment:
    path: PolynomialPath


@dataclass(frozen=True)
class GlConnector:
    """Symbolic segment lying entirely in a contractible invertible group.

    Contributes no crossings.  Determinant-sign consistency across it is
    intentionally not enforced: the connector stands in for a path in an
    infinite-dimensional group where the sign carries no meaning.
    """


@dataclass(frozen=True)
class LoopPath:
    """Closed curve: a cyclic sequence of analytic segments and connectors.

    Every analytic segment must be admissible, and consecutive analytic
    segments must match exactly at the shared endpoint.  Admissibility of
    the segments guarantees the loop has an invertible point, which is
    what the closed-curve parity formula needs.
    """

    segments: tuple

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise ValueError("a loop needs at least one segment")
        for s in segs:
            if not isinstance(s, (AnalyticSegment, GlConnector)):
                raise TypeError("segments must be AnalyticSegment or GlConnector")
            if isinstance(s, AnalyticSegment):
                s.path.ensure_admissible()
        for i, s in enumerate(segs):
            t = segs[(i + 1) % len(segs)]
            if isinstance(s, AnalyticSegment) and isinstance(t, AnalyticSegment):
                if len(segs) == 1:
                    end, start = s.path.b, s.path.a
                    if s.path.evaluate(end) != s.path.evaluate(start):
                        raise ValueError(
                            "a single-segment loop must close up exactly"
                        )
                elif s.path.evaluate(s.path.b) != t.path.evaluate(t.path.a):
                    raise ValueError(
                        f"segments {i} and {(i + 1) % len(segs)} do not share "
                        "their endpoint matrix"
                    )
        object.__setattr__(self, "segments", segs)

    @property
    def has_connector(self) -> bool:
        return any(isinstance(s, GlConnector) for s in self.segments)


@dataclass(frozen=True)
class Crossing:
    """One generalized eigenvalue inside an interval with its local
    multiplicity."""

    location: RootLocation
    multiplicity: int


@dataclass(frozen=True)
class ParityValue:
    """A sign with its crossing breakdown.

    The crossing-resolving routes satisfy ``sign == (-1) **
    sum(multiplicities)`` by construction; the endpoint-sign route reports
    no crossing data.  ``from_connector_abstraction`` marks values computed
    through a symbolic GL connector.
    """

    sign: int
    crossings: tuple = field(default_factory=tuple)
    from_connector_abstraction: bool = False

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("parity sign must be +1 or -1")

    def __mul__(self, other: "ParityValue") -> "ParityValue":
        return ParityValue(
            sign=self.sign * other.sign,
            crossings=self.crossings + other.crossings,
            from_connector_abstraction=self.from_connector_abstraction
            or other.from_connector_abstraction,
        )


def interval_parity(path: PolynomialPath) -> ParityValue:
    """Product of the endpoint determinant signs.

    This is the parametrix formula specialized to finite dimension; it
    depends on nothing but the two endpoint matrices.
    """
    path.ensure_admissible()
    da = _linalg.det(path.evaluate(path.a))
    db = _linalg.det(path.evaluate(path.b))
    sign = (1 if da > 0 else -1) * (1 if db > 0 else -1)
    return ParityValue(sign=sign)


def crossing_parity(path: PolynomialPath) -> ParityValue:
    """Parity as (-1) to the number of transversal crossings.

    A crossing is counted transversal exactly when the determinant root is
    simple; a multiple root anywhere in the open interval raises
    NonTransversalCrossing and the caller should fall back to
    multiplicity_sum_parity.
    """
    path.ensure_admissible()
    det = path.determinant_polynomial()
    ddet = _poly.derivative(det)
    common = _poly.gcd(det, ddet)
    if _poly.degree(common) > 0 and _poly.count_roots_open(common, path.a, path.b) > 0:
        raise NonTransversalCrossing(
            "a determinant root of multiplicity > 1 lies in the interval"
        )
    squarefree = _poly.div_exact(det, common) if _poly.degree(common) > 0 else det
    roots = _poly.isolate_roots(_poly.monic(squarefree), path.a, path.b)
    crossings = tuple(Crossing(location=r, multiplicity=1) for r in roots)
    return ParityValue(sign=(-1) ** len(roots), crossings=crossings)


def multiplicity_sum_parity(path: PolynomialPath) -> ParityValue:
    """Parity as (-1) to the total multiplicity of interior eigenvalues.

    The local multiplicity at a root equals its multiplicity in the
    determinant polynomial, read off an exact square-free decomposition.
    """
    path.ensure_admissible()
    det = path.determinant_polynomial()
    _, factors = _poly.squarefree_decomposition(det)
    crossings = []
    total = 0
    for factor, mult in factors:
        for r in _poly.isolate_roots(factor, path.a, path.b):
            crossings.append(Crossing(location=r, multiplicity=mult))
            total += mult
    crossings.sort(key=lambda c: c.location.midpoint())
    return ParityValue(sign=(-1) ** total, crossings=tuple(crossings))


def local_parity(curve: MatrixCurveJet) -> ParityValue:
    """Sign of the multiplicity at the base point: (-1) ** multiplicity."""
    report: MultiplicityReport = multiplicity_det(curve)
    if not report.is_finite:
        raise SingularToKnownOrder(
            "local parity requires a finite multiplicity at the base point"
        )
    loc = RootLocation(lo=curve.base_point, hi=curve.base_point, exact=curve.base_point)
    crossings = (
        (Crossing(location=loc, multiplicity=report.value),)
        if report.value > 0
        else ()
    )
    return ParityValue(sign=(-1) ** report.value, crossings=crossings)


def loop_parity(loop: LoopPath) -> ParityValue:
    """Parity of a closed curve: the product over its analytic segments.

    GL connectors contribute +1 and no crossings; their presence is
    flagged on the returned value.
    """
    acc = ParityValue(sign=1, from_connector_abstraction=loop.has_connector)
    for seg in loop.segments:
        if isinstance(seg, AnalyticSegment):
            acc = acc * multiplicity_sum_parity(seg.path)
    return acc
