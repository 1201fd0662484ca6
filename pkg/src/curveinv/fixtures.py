"""Small reference objects used by the test suite and the documentation.

The twisted loop pairs one transversal crossing segment with a symbolic GL
connector closing it up; its parity is -1, which is the nontrivial
line-bundle class over the circle.  The constant loop stays inside the
invertibles and has parity +1.
"""

from __future__ import annotations

from fractions import Fraction

from ._linalg import identity
from .multiplicity import MatrixCurveJet
from .parity import AnalyticSegment, GlConnector, LoopPath, PolynomialPath


def normalization_curve(dim: int = 2, base_point=0) -> MatrixCurveJet:
    """(lam - base) * P + (I - P) for the projection P onto the first axis.

    The canonical multiplicity-one curve: singular only at the base point,
    with a one-dimensional kernel crossed transversally.
    """
    proj = tuple(
        tuple(Fraction(1) if i == j == 0 else Fraction(0) for j in range(dim))
        for i in range(dim)
    )
    complement = tuple(
        tuple(
            Fraction(1) if (i == j and i > 0) else Fraction(0) for j in range(dim)
        )
        for i in range(dim)
    )
    return MatrixCurveJet(dim, Fraction(base_point), (complement, proj))


def nilpotent_shift_curve(base_point=0) -> MatrixCurveJet:
    """lam*I - N for the 2x2 nilpotent Jordan block; multiplicity 2 at 0."""
    n = ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(0)))
    const = tuple(
        tuple(Fraction(base_point) * (i == j) - n[i][j] for j in range(2))
        for i in range(2)
    )
    return MatrixCurveJet(2, Fraction(base_point), (const, identity(2)))


def zero_curve(dim: int = 2) -> MatrixCurveJet:
    """The identically zero curve; its determinant is the zero polynomial."""
    z = tuple(tuple(Fraction(0) for _ in range(dim)) for _ in range(dim))
    return MatrixCurveJet(dim, Fraction(0), (z, z))


def crossing_path(a=-1, b=1) -> PolynomialPath:
    """diag(lam, 1) on [a, b]: one simple determinant root at 0."""
    c0 = ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(1)))
    c1 = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0)))
    return PolynomialPath(2, Fraction(a), Fraction(b), (c0, c1))


def constant_invertible_path(a=-1, b=1) -> PolynomialPath:
    return PolynomialPath(2, Fraction(a), Fraction(b), (identity(2),))


def twisted_loop() -> LoopPath:
    """Crossing segment closed by a GL connector; loop parity -1."""
    return LoopPath((AnalyticSegment(crossing_path()), GlConnector()))


def constant_loop() -> LoopPath:
    """Constant invertible segment closed by a GL connector; parity +1."""
    return LoopPath((AnalyticSegment(constant_invertible_path()), GlConnector()))


def forward_backward_loop() -> LoopPath:
    """The crossing segment traversed out and back; genuinely closed, two
    crossings, parity +1."""
    path = crossing_path()
    return LoopPath((AnalyticSegment(path), AnalyticSegment(path.reversed())))
