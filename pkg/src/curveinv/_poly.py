"""Exact univariate polynomial arithmetic over the rationals.

Internal plumbing shared by the jet ring, the multiplicity routes and the
root isolation code.  A polynomial is a tuple of ``Fraction`` coefficients
indexed by power, with trailing zeros stripped; the zero polynomial is the
empty tuple.  All operations are exact, no floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Poly = tuple  # tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)
X: Poly = (Fraction(0), Fraction(1))


def poly(coeffs: Iterable) -> Poly:
    """Build a normalized polynomial from ascending-power coefficients."""
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(p: Poly) -> int:
    """Degree, with the convention deg 0 = -1."""
    return len(p) - 1


def is_zero(p: Poly) -> bool:
    return not p


def low_order(p: Poly):
    """Index of the first nonzero coefficient, or None for the zero polynomial."""
    for i, c in enumerate(p):
        if c != 0:
            return i
    return None


def add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return poly(out)


def neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def scale(a: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(x * c for x in a)


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly(out)


def mul_truncated(a: Sequence, b: Sequence, order: int) -> list:
    """Coefficients 0..order of a*b; inputs need not be normalized."""
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if i > order or x == 0:
            continue
        top = min(len(b) - 1, order - i)
        for j in range(top + 1):
            out[i + j] += x * b[j]
    return out


def eval_at(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return poly(c * i for i, c in enumerate(p) if i > 0)


def divmod_poly(a: Poly, b: Poly):
    """Euclidean division over the rationals; returns (quotient, remainder)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    inv_lc = 1 / b[-1]
    while len(r) >= len(b) and any(c != 0 for c in r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(b):
            break
        k = len(r) - len(b)
        f = r[-1] * inv_lc
        q[k] = f
        for i, c in enumerate(b):
            r[k + i] -= f * c
        r.pop()
    return poly(q), poly(r)


def div_exact(a: Poly, b: Poly) -> Poly:
    q, r = divmod_poly(a, b)
    if not is_zero(r):
        raise ArithmeticError("polynomial division was expected to be exact")
    return q


def monic(p: Poly) -> Poly:
    if not p:
        return p
    return scale(p, 1 / p[-1])


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    while not is_zero(b):
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def shift(p: Poly, c) -> Poly:
    """Compose with a translation: returns the polynomial x -> p(x + c)."""
    c = Fraction(c)
    acc: Poly = ZERO
    for coeff in reversed(p):
        # acc <- acc*(x+c) + coeff
        shifted = [Fraction(0)] + list(acc)
        for i, v in enumerate(acc):
            shifted[i] += v * c
        shifted[0] += coeff
        acc = poly(shifted)
    return acc


def squarefree_decomposition(p: Poly):
    """Yun decomposition of a nonzero polynomial.

    Returns ``(lc, [(g, m), ...])`` with ``p = lc * prod g^m``, the ``g``
    monic, square-free, pairwise coprime and nonconstant, ``m`` ascending.
    """
    if is_zero(p):
        raise ZeroDivisionError("square-free decomposition of zero")
    lc = p[-1]
    p = monic(p)
    if degree(p) == 0:
        return lc, []
    dp = derivative(p)
    g = gcd(p, dp)
    factors = []
    if degree(g) == 0:
        return lc, [(p, 1)]
    w = div_exact(p, g)
    y = div_exact(dp, g)
    z = sub(y, derivative(w))
    i = 1
    while degree(w) > 0:
        a = gcd(w, z)
        if degree(a) > 0:
            factors.append((a, i))
        w = div_exact(w, a)
        y = div_exact(z, a)
        z = sub(y, derivative(w))
        i += 1
    return lc, factors


# ---------------------------------------------------------------------------
# Sturm chains and exact root isolation


def sturm_chain(p: Poly):
    chain = [p, derivative(p)]
    while not is_zero(chain[-1]) and degree(chain[-1]) > 0:
        rem = divmod_poly(chain[-2], chain[-1])[1]
        if is_zero(rem):
            break
        # positive rescaling keeps the sign sequence intact and coefficients small
        chain.append(scale(neg(rem), 1 / abs(rem[-1])))
    return [c for c in chain if not is_zero(c)]


def _variations(chain, x) -> int:
    signs = []
    for q in chain:
        v = eval_at(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots_open(p: Poly, a, b) -> int:
    """Number of distinct real roots of p in (a, b); requires p(a), p(b) != 0."""
    a, b = Fraction(a), Fraction(b)
    if eval_at(p, a) == 0 or eval_at(p, b) == 0:
        raise ValueError("Sturm endpoints must not be roots")
    chain = sturm_chain(p)
    return _variations(chain, a) - _variations(chain, b)


@dataclass(frozen=True)
class RootLocation:
    """A real root reported either exactly or by an isolating interval.

    ``exact`` is set when the root is a known rational; otherwise the root
    lies strictly inside (lo, hi) and is the only root of its polynomial
    there.
    """

    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None

    def midpoint(self) -> Fraction:
        if self.exact is not None:
            return self.exact
        return (self.lo + self.hi) / 2

    def as_float(self) -> float:
        return float(self.midpoint())

    def __str__(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        return f"({self.lo}, {self.hi})"


def _isolate_squarefree(p: Poly, a: Fraction, b: Fraction, refine_steps: int):
    """One isolation pass; returns ('hit', root) on an exact rational hit."""
    chain = sturm_chain(p)

    def var(x):
        return _variations(chain, x)

    intervals = []
    stack = [(a, b, var(a), var(b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        count = vlo - vhi
        if count == 0:
            continue
        mid = (lo + hi) / 2
        if eval_at(p, mid) == 0:
            return "hit", mid
        if count == 1:
            # refine for readability; exact hits are still possible here
            for _ in range(refine_steps):
                vmid = var(mid)
                if vlo - vmid == 1:
                    hi, vhi = mid, vmid
                else:
                    lo, vlo = mid, vmid
                mid = (lo + hi) / 2
                if eval_at(p, mid) == 0:
                    return "hit", mid
            intervals.append(RootLocation(lo=lo, hi=hi))
            continue
        vmid = var(mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    return "done", intervals


def isolate_roots(p: Poly, a, b, refine_steps: int = 16):
    """Locations of the distinct real roots of a square-free p in (a, b).

    Rational roots found along the way are reported exactly (the polynomial
    is deflated and isolation restarts); the rest come back as isolating
    intervals, sorted by position.
    """
    a, b = Fraction(a), Fraction(b)
    if eval_at(p, a) == 0 or eval_at(p, b) == 0:
        raise ValueError("isolation endpoints must not be roots")
    exact: list[RootLocation] = []
    current = p
    while True:
        status, payload = _isolate_squarefree(current, a, b, refine_steps)
        if status == "hit":
            exact.append(RootLocation(lo=payload, hi=payload, exact=payload))
            current = div_exact(current, (-payload, Fraction(1)))
            continue
        roots = exact + payload
        roots.sort(key=lambda r: r.midpoint())
        return roots


# ---------------------------------------------------------------------------
# Matrices of polynomials

PolyMatrix = list  # list[list[Poly]]


def mat_identity(n: int) -> PolyMatrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if is_zero(a[i][t]):
                continue
            for j in range(m):
                if not is_zero(b[t][j]):
                    out[i][j] = add(out[i][j], mul(a[i][t], b[t][j]))
    return out


def mat_det_bareiss(m: PolyMatrix) -> Poly:
    """Determinant by fraction-free Bareiss elimination.

    Exact in Q[x]; denominators are cleared first so the elimination runs
    on integer coefficients, where the Bareiss divisions are exact.
    """
    n = len(m)
    if n == 0:
        return ONE
    d = _common_denominator(m)
    a = _to_int_polys(m, d)
    sign = 1
    prev = (1,)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _int_add(
                    _int_mul(a[i][j], a[k][k], None),
                    tuple(-x for x in _int_mul(a[i][k], a[k][j], None)),
                )
                a[i][j] = _int_div_exact(num, prev)
            a[i][k] = ()
        prev = a[k][k]
    out = a[n - 1][n - 1]
    return poly(Fraction(sign * x, d**n) for x in out)


def _common_denominator(m: PolyMatrix) -> int:
    d = 1
    for row in m:
        for p in row:
            for c in p:
                d = math.lcm(d, c.denominator)
    return d


def _to_int_polys(m: PolyMatrix, d: int):
    return [
        [tuple(c.numerator * (d // c.denominator) for c in p) for p in row]
        for row in m
    ]


def _int_trim(p):
    k = len(p)
    while k and p[k - 1] == 0:
        k -= 1
    return tuple(p[:k])


def _int_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _int_trim(out)


def _int_div_exact(a, b):
    """Exact division in Z[x]; the caller guarantees divisibility."""
    if not a:
        return ()
    r = list(a)
    q = [0] * (len(a) - len(b) + 1)
    blc = b[-1]
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(b):
            break
        k = len(r) - len(b)
        f = r[-1] // blc
        q[k] = f
        for i, c in enumerate(b):
            r[k + i] -= f * c
        r.pop()
    if any(c != 0 for c in r):
        raise ArithmeticError("integer polynomial division was not exact")
    return _int_trim(q)


def _int_mul(a, b, cap):
    """Integer-coefficient product, keeping at most ``cap`` coefficients."""
    if not a or not b:
        return ()
    top = len(a) + len(b) - 1
    if cap is not None:
        top = min(top, cap)
    out = [0] * top
    for i, x in enumerate(a):
        if x == 0 or i >= top:
            continue
        jmax = min(len(b), top - i)
        for j in range(jmax):
            y = b[j]
            if y:
                out[i + j] += x * y
    return _int_trim(out)


def mat_adjugate_det(m: PolyMatrix, mod_order: int | None = None):
    """Adjugate and determinant via the Faddeev-LeVerrier recursion.

    Returns ``(adj, det)`` with ``m @ adj == det * I``, exact over Q[x].
    Internally the matrix is scaled to integer coefficients: the recursion
    only ever divides traces by integers 1..n, and those divisions are
    exact over Z, so the whole pass runs on plain ints (much faster than
    Fractions) and is rescaled at the boundary.  ``mod_order`` truncates
    all products modulo x^mod_order, which is sound because truncation is
    a ring homomorphism and no polynomial division occurs.
    """
    n = len(m)
    if n == 0:
        return [], ONE
    d = _common_denominator(m)
    im = _to_int_polys(m, d)
    ident = [[(1,) if i == j else () for j in range(n)] for i in range(n)]

    def matmul(a, b):
        out = [[()] * n for _ in range(n)]
        for i in range(n):
            for t in range(n):
                left = a[i][t]
                if not left:
                    continue
                for j in range(n):
                    if b[t][j]:
                        out[i][j] = _int_add(out[i][j], _int_mul(left, b[t][j], mod_order))
        return out

    acc = ident  # M_1 = I
    c = (1,)
    for k in range(1, n + 1):
        am = matmul(im, acc)
        tr = ()
        for i in range(n):
            tr = _int_add(tr, am[i][i])
        # trace coefficients are divisible by k: they are (up to sign) the
        # characteristic polynomial coefficients of an integer matrix
        c = tuple(-x // k for x in tr)
        if k < n:
            acc = [
                [_int_add(am[i][j], c) if i == j else am[i][j] for j in range(n)]
                for i in range(n)
            ]
    det_sign = -1 if n % 2 else 1
    adj_sign = 1 if n % 2 else -1
    det = poly(Fraction(det_sign * x, d**n) for x in c)
    adj = [
        [poly(Fraction(adj_sign * x, d ** (n - 1)) for x in acc[i][j]) for j in range(n)]
        for i in range(n)
    ]
    return adj, det
