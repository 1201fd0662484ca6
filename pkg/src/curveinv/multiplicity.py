"""Generalized algebraic multiplicity of matrix curves.

A curve is stored by its Taylor coefficient matrices at a rational base
point; "analytic" means "polynomial of finite degree" here, so every
quantity below is computed exactly.  The multiplicity of the curve at its
base point is offered through four independent routes:

* ``multiplicity_det``      -- order of vanishing of the determinant;
* ``multiplicity_schur``    -- order of the local (Schur-block) determinant;
* ``multiplicity_laurent``  -- order of the determinant of the inverse of
  the kernel/cokernel compression of the inverse curve;
* ``multiplicity_transversal`` -- weighted dimension count over nested
  kernels, available when the base point is a transversal eigenvalue.

The four routes agree on every curve; the test suite leans on that hard.
All functions are pure and all values immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg, _poly
from .errors import InternalConsistencyError, PreconditionError
from .exactnum import (
    InsufficientJetOrder,
    Jet,
    JetMatrix,
    LaurentJet,
    LaurentMatrix,
    SingularToKnownOrder,
    jet_det,
    jet_inverse,
    vanishing_order,
)


class InvalidProjectionPair(PreconditionError):
    """The supplied projections do not fit the curve's constant term."""


class NotTransversal(PreconditionError):
    """No admissible transversality order exists for the stored derivatives."""


class PhiNotNormalized(PreconditionError):
    """A transversalizing curve must equal the identity at the base point."""


@dataclass(frozen=True)
class MatrixCurveJet:
    """Polynomial matrix curve centered at a rational base point.

    ``coefficients[j]`` is the j-th Taylor coefficient matrix, i.e. the
    j-th derivative at the base point divided by j factorial.  At least one
    coefficient beyond the constant term is required.
    """

    dim: int
    base_point: Fraction
    coefficients: tuple  # tuple of dim x dim rational matrices

    def __post_init__(self):
        object.__setattr__(self, "base_point", Fraction(self.base_point))
        mats = tuple(_linalg.freeze(m) for m in self.coefficients)
        if len(mats) < 2:
            raise ValueError("a curve needs at least one derivative coefficient")
        for m in mats:
            if _linalg.shape(m) != (self.dim, self.dim):
                raise ValueError("coefficient matrices must be dim x dim")
        object.__setattr__(self, "coefficients", mats)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def constant_term(self) -> _linalg.Matrix:
        return self.coefficients[0]

    def evaluate(self, lam) -> _linalg.Matrix:
        mu = Fraction(lam) - self.base_point
        n = self.dim
        acc = [[Fraction(0)] * n for _ in range(n)]
        for mat in reversed(self.coefficients):
            for i in range(n):
                row = acc[i]
                src = mat[i]
                for j in range(n):
                    row[j] = row[j] * mu + src[j]
        return _linalg.freeze(acc)

    def jet_matrix(self, order: int | None = None) -> JetMatrix:
        """The curve as a jet matrix in the local variable, padded with
        exact zero coefficients beyond its polynomial degree."""
        if order is None:
            order = self.degree
        mats = list(self.coefficients[: order + 1])
        zero = _linalg.zeros(self.dim, self.dim)
        while len(mats) < order + 1:
            mats.append(zero)
        return JetMatrix(self.dim, tuple(mats))

    def polynomial_lift(self):
        return self.jet_matrix().polynomial_lift()

    def order_bound(self) -> int:
        """Degree bound for the determinant: if it does not vanish through
        this order, it is the zero polynomial."""
        return max(self.dim * self.degree, 1)


def pointwise_product(a: MatrixCurveJet, b: MatrixCurveJet) -> MatrixCurveJet:
    """The curve of operator products, coefficientwise a convolution."""
    if a.dim != b.dim or a.base_point != b.base_point:
        raise ValueError("curves must share dimension and base point")
    out = []
    for k in range(a.degree + b.degree + 1):
        acc = _linalg.zeros(a.dim, a.dim)
        for i in range(max(0, k - b.degree), min(k, a.degree) + 1):
            acc = _linalg.madd(
                acc, _linalg.matmul(a.coefficients[i], b.coefficients[k - i])
            )
        out.append(acc)
    return MatrixCurveJet(a.dim, a.base_point, tuple(out))


def shifted_eigen_curve(k: _linalg.Matrix, mu) -> MatrixCurveJet:
    """The curve lam -> lam*I - K, centered at mu."""
    k = _linalg.freeze(k)
    n = len(k)
    const = _linalg.msub(_linalg.mscale(_linalg.identity(n), Fraction(mu)), k)
    return MatrixCurveJet(n, Fraction(mu), (const, _linalg.identity(n)))


# ---------------------------------------------------------------------------
# Projection pairs


@dataclass(frozen=True)
class ProjectionPair:
    """Projections onto the kernel and the range of a singular matrix.

    ``p`` projects onto Ker[T] along a complement spanned by standard
    vectors at the pivot columns; ``q`` projects onto R[T] along a
    complement completed from the standard basis.  The four stored bases
    are the block decomposition the Schur operator lives in.
    """

    p: _linalg.Matrix
    q: _linalg.Matrix
    kernel_basis: tuple            # columns spanning Ker[T]
    kernel_complement: tuple       # columns spanning a complement of Ker[T]
    range_basis: tuple             # columns spanning R[T]
    range_complement: tuple        # columns spanning a complement of R[T]

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_basis)


def projection_pair(t: _linalg.Matrix, flavor: str = "leftmost") -> ProjectionPair:
    """Deterministic projection pair for a square rational matrix.

    ``flavor`` chooses the direction in which standard basis vectors are
    scanned when completing bases ("leftmost" is the documented default;
    "rightmost" exists so independence of the choice can be exercised).
    """
    if flavor not in ("leftmost", "rightmost"):
        raise ValueError("flavor must be 'leftmost' or 'rightmost'")
    reverse = flavor == "rightmost"
    t = _linalg.freeze(t)
    n = len(t)
    kernel = _linalg.kernel_basis(t)
    if reverse:
        kernel = list(reversed(kernel))
    pivots = _linalg.column_space_pivots(t)
    cols = _linalg.columns(t)
    range_b = [cols[j] for j in pivots]
    kernel_complement = [
        tuple(Fraction(1) if i == j else Fraction(0) for i in range(n)) for j in pivots
    ]
    if reverse:
        kernel_complement = list(reversed(kernel_complement))
        range_b = list(reversed(range_b))
    range_complement = _linalg.extend_to_basis(range_b, n, reverse=reverse)

    p = _projection_onto(kernel, kernel_complement, n)
    q = _projection_onto(range_b, range_complement, n)
    return ProjectionPair(
        p=p,
        q=q,
        kernel_basis=tuple(kernel),
        kernel_complement=tuple(kernel_complement),
        range_basis=tuple(range_b),
        range_complement=tuple(range_complement),
    )


def _projection_onto(target_cols, complement_cols, n) -> _linalg.Matrix:
    """Projection with range span(target) and kernel span(complement)."""
    basis = _linalg.hstack(list(complement_cols) + list(target_cols), n)
    inv = _linalg.inverse(basis)
    k = len(target_cols)
    m = n - k
    sel = tuple(
        tuple(Fraction(1) if (i == j and i >= m) else Fraction(0) for j in range(n))
        for i in range(n)
    )
    return _linalg.matmul(basis, _linalg.matmul(sel, inv))


def validate_projection_pair(t: _linalg.Matrix, pair: ProjectionPair) -> None:
    """Raise InvalidProjectionPair unless the pair fits T exactly."""
    t = _linalg.freeze(t)
    n = len(t)
    p, q = pair.p, pair.q
    if _linalg.matmul(p, p) != p or _linalg.matmul(q, q) != q:
        raise InvalidProjectionPair("P and Q must be idempotent")
    if not _linalg.is_zero_matrix(_linalg.matmul(t, p)):
        raise InvalidProjectionPair("range of P must lie in Ker[T]")
    if _linalg.matmul(q, t) != t:
        raise InvalidProjectionPair("Q must restrict to the identity on R[T]")
    r = _linalg.rank(t)
    if _linalg.rank(p) != n - r or _linalg.rank(q) != r:
        raise InvalidProjectionPair("projection ranks do not match T")
    dom = _linalg.hstack(
        list(pair.kernel_complement) + list(pair.kernel_basis), n
    )
    cod = _linalg.hstack(list(pair.range_basis) + list(pair.range_complement), n)
    if _linalg.rank(dom) != n or _linalg.rank(cod) != n:
        raise InvalidProjectionPair("stored bases do not span the space")


# ---------------------------------------------------------------------------
# Multiplicity reports


@dataclass(frozen=True)
class MultiplicityReport:
    """Result of one multiplicity route.

    ``kind`` is "finite", "infinite" (the determinant is the zero
    polynomial) or "undetermined" (an explicitly capped computation ran
    out of coefficients at ``order_bound``).
    """

    kind: str
    value: int | None
    method: str
    witness: object = None
    order_bound: int | None = None

    @classmethod
    def finite(cls, value: int, method: str, witness=None) -> "MultiplicityReport":
        return cls(kind="finite", value=value, method=method, witness=witness)

    @classmethod
    def infinite(cls, method: str, witness=None) -> "MultiplicityReport":
        return cls(kind="infinite", value=None, method=method, witness=witness)

    @classmethod
    def undetermined(cls, order: int, method: str, witness=None) -> "MultiplicityReport":
        return cls(
            kind="undetermined",
            value=None,
            method=method,
            witness=witness,
            order_bound=order,
        )

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self) -> str:
        if self.is_finite:
            return f"{self.value} (via {self.method})"
        if self.kind == "infinite":
            return f"infinite (via {self.method})"
        return f"undetermined at order {self.order_bound} (via {self.method})"


@dataclass(frozen=True)
class AlgebraicOrderReport:
    """Blow-up rate of the inverse curve; ``kappa is None`` means the base
    point is a regular point (not algebraic at all)."""

    kappa: int | None
    determinant_order: int

    @property
    def is_algebraic(self) -> bool:
        return self.kappa is not None


@dataclass(frozen=True)
class ClassicalMultiplicityReport:
    ascent: int
    multiplicity: int


@dataclass(frozen=True)
class TransversalityCertificate:
    """Witness data for a transversality check at a given order."""

    holds: bool
    kappa: int
    image_dims: tuple
    assembled_matrix: _linalg.Matrix
    assembled_rank: int
    last_image_nonzero: bool


# ---------------------------------------------------------------------------
# Route 1: order of the determinant


def multiplicity_det(
    curve: MatrixCurveJet, order: int | None = None
) -> MultiplicityReport:
    """Order of vanishing of det at the base point.

    With the default order (the determinant degree bound) the answer is
    exact: a determinant vanishing through the bound is the zero
    polynomial and the report is "infinite".
    """
    capped = order is not None
    bound = curve.order_bound() if order is None else order
    # escalation only pays off for the truncated cofactor strategy; the
    # Bareiss lift used from dimension 6 up is order-insensitive
    work = bound if (capped or curve.dim > 5) else min(max(curve.degree + 2, 4), bound)
    while True:
        d = jet_det(curve.jet_matrix(work))
        o = vanishing_order(d)
        if o.is_finite:
            return MultiplicityReport.finite(o.value, "ord-det", witness=d)
        if work >= bound:
            if capped:
                return MultiplicityReport.undetermined(bound, "ord-det", witness=d)
            return MultiplicityReport.infinite("ord-det", witness=d)
        work = min(work * 2, bound)


# ---------------------------------------------------------------------------
# Route 2: Schur block and local determinant


def _schur_frame(curve: MatrixCurveJet, pair: ProjectionPair | None):
    t = curve.constant_term()
    if pair is None:
        pair = projection_pair(t)
    else:
        validate_projection_pair(t, pair)
    n = curve.dim
    dom = _linalg.hstack(
        list(pair.kernel_complement) + list(pair.kernel_basis), n
    )
    cod = _linalg.hstack(list(pair.range_basis) + list(pair.range_complement), n)
    cod_inv = _linalg.inverse(cod)
    coeffs = tuple(
        _linalg.matmul(cod_inv, _linalg.matmul(c, dom)) for c in curve.coefficients
    )
    return pair, coeffs


def _block(mat, rows, cols):
    return tuple(tuple(mat[i][j] for j in cols) for i in rows)


def _jet_matrix_inverse_unit(m: JetMatrix) -> JetMatrix:
    """Inverse of a jet matrix with invertible constant term, same order."""
    a0_inv = _linalg.inverse(m.coeffs[0])
    order = m.known_order
    out = [a0_inv]
    for k in range(1, order + 1):
        acc = _linalg.zeros(m.dim, m.dim)
        for j in range(1, k + 1):
            acc = _linalg.madd(acc, _linalg.matmul(m.coeffs[j], out[k - j]))
        out.append(_linalg.mscale(_linalg.matmul(a0_inv, acc), -1))
    return JetMatrix(m.dim, tuple(out))


def schur_operator(
    curve: MatrixCurveJet,
    pair: ProjectionPair | None = None,
    order: int | None = None,
) -> JetMatrix:
    """The kernel-block Schur complement of the curve as a jet matrix.

    Expressed in the pair's kernel basis (domain) and range-complement
    basis (codomain); the block is empty when the constant term is
    invertible.
    """
    if order is None:
        order = curve.order_bound()
    pair, coeffs = _schur_frame(curve, pair)
    n = curve.dim
    k = pair.kernel_dim
    m = n - k
    top = list(range(m))
    bottom = list(range(m, n))

    def block_jets(rows, cols):
        mats = [_block(c, rows, cols) for c in coeffs]
        zero = tuple(tuple(Fraction(0) for _ in cols) for _ in rows)
        while len(mats) < order + 1:
            mats.append(zero)
        return mats[: order + 1]

    if k == 0:
        return JetMatrix(0, tuple(() for _ in range(order + 1)))
    b22 = block_jets(bottom, bottom)
    if m == 0:
        return JetMatrix(k, tuple(b22))
    b11 = JetMatrix(m, tuple(block_jets(top, top)))
    inv11 = _jet_matrix_inverse_unit(b11)
    b12 = block_jets(top, bottom)
    b21 = block_jets(bottom, top)
    # L22 - L21 * L11^{-1} * L12, convolved to the requested order
    mid = _rect_convolve(b21, inv11.coeffs, order, k, m, m)
    corr = _rect_convolve(mid, b12, order, k, m, k)
    out = []
    for t in range(order + 1):
        out.append(_linalg.msub(b22[t], corr[t]))
    return JetMatrix(k, tuple(out))


def _rect_convolve(a_mats, b_mats, order, n_rows, inner, n_cols):
    """Truncated product of two rectangular matrix series."""
    zero = tuple(tuple(Fraction(0) for _ in range(n_cols)) for _ in range(n_rows))
    out = []
    for t in range(order + 1):
        acc = zero
        for i in range(t + 1):
            if i >= len(a_mats) or (t - i) >= len(b_mats):
                continue
            prod = tuple(
                tuple(
                    sum(
                        (a_mats[i][r][s] * b_mats[t - i][s][c] for s in range(inner)),
                        Fraction(0),
                    )
                    for c in range(n_cols)
                )
                for r in range(n_rows)
            )
            acc = _linalg.madd(acc, prod)
        out.append(acc)
    return out


def local_determinant(
    curve: MatrixCurveJet,
    pair: ProjectionPair | None = None,
    order: int | None = None,
) -> Jet:
    """Determinant of the Schur block; the empty block gives the one-jet.

    Nonvanishing at a parameter value is equivalent to invertibility of
    the curve there, which is what makes this a local determinant.
    """
    if order is None:
        order = curve.order_bound()
    s = schur_operator(curve, pair, order)
    if s.dim == 0:
        return Jet.one(order)
    return jet_det(s)


def multiplicity_schur(
    curve: MatrixCurveJet,
    pair: ProjectionPair | None = None,
    order: int | None = None,
) -> MultiplicityReport:
    """Order of the local determinant at the base point."""
    capped = order is not None
    bound = curve.order_bound() if order is None else order
    # escalate the working order; the answer is bounded by the determinant
    # degree, so vanishing through the bound settles the infinite case
    work = min(max(curve.degree + 2, 4), bound)
    while True:
        d = local_determinant(curve, pair, work)
        o = vanishing_order(d)
        if o.is_finite:
            return MultiplicityReport.finite(o.value, "schur", witness=d)
        if work >= bound:
            if capped:
                return MultiplicityReport.undetermined(bound, "schur", witness=d)
            return MultiplicityReport.infinite("schur", witness=d)
        work = min(work * 2, bound)


# ---------------------------------------------------------------------------
# Route 3: Laurent inverse compression


def multiplicity_laurent(
    curve: MatrixCurveJet, pair: ProjectionPair | None = None
) -> MultiplicityReport:
    """Multiplicity through the inverse curve.

    Builds the Laurent expansion of the inverse, compresses it to the
    kernel coordinates (rows) and the range-complement basis (columns),
    and returns the order of the determinant of that block's inverse.
    """
    t = curve.constant_term()
    if pair is None:
        pair = projection_pair(t)
    else:
        validate_projection_pair(t, pair)
    k_dim = pair.kernel_dim
    if k_dim == 0:
        return MultiplicityReport.finite(0, "laurent", witness=Jet.one(1))

    lift = curve.polynomial_lift()
    n = curve.dim
    full = curve.order_bound() + 1

    # compression frame: kernel coordinates of P on the left, the range
    # complement on the right
    dom = _linalg.hstack(
        list(pair.kernel_complement) + list(pair.kernel_basis), n
    )
    dom_inv = _linalg.inverse(dom)
    a_rows = dom_inv[n - k_dim :]
    b_cols = _linalg.hstack(list(pair.range_complement), n)

    work = min(max(2 * curve.degree + 6, 8), full)
    det_ord = None
    cap = None
    while True:
        adj_w, det_w = _poly.mat_adjugate_det(lift, mod_order=work)
        if det_ord is None:
            det_ord = _poly.low_order(det_w)
            if det_ord is None:
                if work >= full:
                    raise SingularToKnownOrder(
                        "determinant is the zero polynomial; the base point "
                        "is not isolated"
                    )
                work = min(work * 2, full)
                det_ord = None
                continue
            # enough stored coefficients for the block determinant to reach
            # its leading exponent even across worst-case pole cancellations
            cap = (k_dim + 1) * det_ord + full + 4
        slack = work - 1 - det_ord
        if slack >= 1:
            compressed = _compress_poly(a_rows, adj_w, b_cols)
            u_inv = jet_inverse(Jet.from_polynomial(det_w[det_ord:], slack))
            grid = []
            for i in range(k_dim):
                row = []
                for j in range(k_dim):
                    w = Jet.from_polynomial(compressed[i][j], slack)
                    row.append(LaurentJet(det_ord, w * u_inv))
                grid.append(tuple(row))
            d = LaurentMatrix(k_dim, tuple(grid)).det()
            lead = d.leading_exponent()
            if lead.is_finite:
                witness = d.inverse()  # determinant of the inverse block
                return MultiplicityReport.finite(
                    -lead.value, "laurent", witness=witness
                )
        if work >= cap:
            raise InsufficientJetOrder(
                "compressed determinant vanished through every admissible window"
            )
        work = min(work * 2, cap)


def _adjugate_until_nonzero(lift, curve, full):
    """Truncated adjugate/determinant, escalating until the determinant
    shows a nonzero coefficient; raises when it is the zero polynomial."""
    work = min(max(2 * curve.degree + 4, 6), full)
    while True:
        adj, det_poly = _poly.mat_adjugate_det(lift, mod_order=work)
        det_ord = _poly.low_order(det_poly)
        if det_ord is not None:
            return adj, det_poly, det_ord
        if work >= full:
            raise SingularToKnownOrder(
                "determinant is the zero polynomial; the base point is not isolated"
            )
        work = min(work * 2, full)


def _compress_poly(a_rows, mid, b_cols):
    """a (k x n, rational) * mid (n x n, polynomial) * b (n x k, rational)."""
    n = len(mid)
    k = len(a_rows)
    kc = len(b_cols[0]) if b_cols else 0
    am = [
        [
            _poly_lin_comb(a_rows[i], [mid[r][j] for r in range(n)])
            for j in range(n)
        ]
        for i in range(k)
    ]
    out = [
        [
            _poly_lin_comb([b_cols[r][j] for r in range(n)], [am[i][r] for r in range(n)])
            for j in range(kc)
        ]
        for i in range(k)
    ]
    return out


def _poly_lin_comb(scalars, polys):
    acc = _poly.ZERO
    for c, p in zip(scalars, polys):
        if c != 0 and not _poly.is_zero(p):
            acc = _poly.add(acc, _poly.scale(p, c))
    return acc


# ---------------------------------------------------------------------------
# Route 4: transversal eigenvalues


def nested_kernels(curve: MatrixCurveJet, upto: int):
    """Bases of the nested kernel intersections K_1 .. K_upto.

    ``K_j`` is the common kernel of the first j coefficient matrices,
    computed exactly; the sequence is weakly decreasing.  Depth j uses
    coefficients 0..j-1, so degree + 1 is the deepest admissible level.
    """
    if upto > curve.degree + 1:
        raise ValueError("requested depth exceeds the stored derivatives")
    out = []
    stacked: list = []
    for j in range(1, upto + 1):
        stacked.extend(curve.coefficients[j - 1])
        out.append(tuple(_linalg.kernel_basis(_linalg.freeze(stacked))))
    return out


def is_kappa_transversal(curve: MatrixCurveJet, kappa: int) -> TransversalityCertificate:
    """Exact rank certificate for transversality at the given order."""
    if kappa < 1 or kappa > curve.degree:
        raise ValueError("transversality order must lie in 1..degree")
    n = curve.dim
    kernels = nested_kernels(curve, kappa)
    image_cols = []
    image_dims = []
    for j in range(1, kappa + 1):
        basis = kernels[j - 1]
        mapped = [
            _matvec(curve.coefficients[j], v) for v in basis
        ]
        mapped_mat = _linalg.hstack(mapped, n) if mapped else _linalg.zeros(n, 0)
        pivots = _linalg.column_space_pivots(mapped_mat) if mapped else []
        cols = _linalg.columns(mapped_mat)
        chosen = [cols[p] for p in pivots]
        image_dims.append(len(chosen))
        image_cols.extend(chosen)
    last_nonzero = image_dims[-1] > 0 if image_dims else False
    range_pivots = _linalg.column_space_pivots(curve.coefficients[0])
    range_cols = [_linalg.columns(curve.coefficients[0])[p] for p in range_pivots]
    assembled = _linalg.hstack(image_cols + range_cols, n)
    r = _linalg.rank(assembled) if image_cols or range_cols else 0
    total = len(image_cols) + len(range_cols)
    holds = last_nonzero and r == total == n
    return TransversalityCertificate(
        holds=holds,
        kappa=kappa,
        image_dims=tuple(image_dims),
        assembled_matrix=assembled,
        assembled_rank=r,
        last_image_nonzero=last_nonzero,
    )


def _matvec(m, v):
    return tuple(
        sum((m[i][j] * v[j] for j in range(len(v))), Fraction(0))
        for i in range(len(m))
    )


def multiplicity_transversal(curve: MatrixCurveJet) -> MultiplicityReport:
    """Weighted kernel-image dimension sum at the minimal transversality
    order; raises NotTransversal when no stored order works."""
    if _linalg.rank(curve.constant_term()) == curve.dim:
        return MultiplicityReport.finite(0, "transversal")
    for kappa in range(1, curve.degree + 1):
        cert = is_kappa_transversal(curve, kappa)
        if cert.holds:
            value = sum(j * d for j, d in enumerate(cert.image_dims, start=1))
            return MultiplicityReport.finite(value, "transversal")
    raise NotTransversal(
        "the base point is not a transversal eigenvalue at any stored order; "
        "compose with a transversalizing curve or use another route"
    )


def verify_transversalization(
    curve: MatrixCurveJet, phi: MatrixCurveJet
) -> MultiplicityReport:
    """Multiplicity of the composed curve, checked against the direct route.

    ``phi`` must be polynomial with phi(base) = I, so composing cannot
    change the multiplicity; a mismatch with the determinant route is a
    library bug and raises InternalConsistencyError.
    """
    if phi.dim != curve.dim or phi.base_point != curve.base_point:
        raise PhiNotNormalized("phi must share the curve's dimension and base point")
    if phi.constant_term() != _linalg.identity(curve.dim):
        raise PhiNotNormalized("phi must equal the identity at the base point")
    composed = pointwise_product(curve, phi)
    report = multiplicity_transversal(composed)
    direct = multiplicity_det(curve)
    if report.kind != direct.kind or report.value != direct.value:
        raise InternalConsistencyError(
            f"transversalized multiplicity {report} disagrees with "
            f"determinant order {direct}"
        )
    return MultiplicityReport(
        kind=report.kind,
        value=report.value,
        method="transversalization",
        witness=report.witness,
    )


# ---------------------------------------------------------------------------
# Blow-up order and the classical compact-operator multiplicity


def algebraic_order(curve: MatrixCurveJet) -> AlgebraicOrderReport:
    """Minimal kappa with |inverse| < C / |lam - base|^kappa near the base.

    Equals the determinant order minus the minimal order among the
    adjugate entries.  A regular base point reports kappa None.
    """
    lift = curve.polynomial_lift()
    adj, det_poly, det_ord = _adjugate_until_nonzero(
        lift, curve, curve.order_bound() + 1
    )
    if det_ord == 0:
        return AlgebraicOrderReport(kappa=None, determinant_order=0)
    # the minimal adjugate order is at most det_ord, so entries vanishing
    # through the (larger) working order cannot attain it
    adj_min = min(
        _poly.low_order(adj[i][j])
        for i in range(curve.dim)
        for j in range(curve.dim)
        if not _poly.is_zero(adj[i][j])
    )
    return AlgebraicOrderReport(kappa=det_ord - adj_min, determinant_order=det_ord)


def classical_multiplicity(k: _linalg.Matrix, mu) -> ClassicalMultiplicityReport:
    """Ascent and algebraic multiplicity of an eigenvalue of a matrix.

    Iterates kernels of powers of (mu*I - K) until they stabilize; the
    multiplicity is the dimension at stabilization.  Agrees with the
    determinant-order route applied to lam -> lam*I - K.
    """
    k = _linalg.freeze(k)
    n = len(k)
    a = _linalg.msub(_linalg.mscale(_linalg.identity(n), Fraction(mu)), k)
    power = a
    prev_dim = n - _linalg.rank(power)
    nu = 1
    while True:
        power = _linalg.matmul(power, a)
        dim = n - _linalg.rank(power)
        if dim == prev_dim:
            return ClassicalMultiplicityReport(ascent=nu, multiplicity=prev_dim)
        prev_dim = dim
        nu += 1
        if nu > n + 1:
            raise InternalConsistencyError("kernel chain failed to stabilize")
