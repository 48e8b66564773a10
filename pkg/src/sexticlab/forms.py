"""Binary forms: homogeneous bivariate polynomials of declared degree.

Coefficient convention: coefficients[k] multiplies x^(d-k) y^k.  Provides the
homogeneous decomposition of a BivarPoly, form gcds via x-dehomogenization,
Yun square-free profiles, real root-direction isolation, and exact
definiteness classification.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import BivarPoly
from . import unipoly as up
from .unipoly import IsolatingInterval


class BinaryForm:
    """Homogeneous form of fixed degree with exact rational coefficients."""

    __slots__ = ("degree", "coefficients")

    def __init__(self, degree: int, coefficients):
        coefficients = [Fraction(c) for c in coefficients]
        if len(coefficients) != degree + 1:
            raise ValueError("need degree+1 coefficients")
        self.degree = degree
        self.coefficients = coefficients

    @staticmethod
    def from_poly(p: BivarPoly) -> "BinaryForm":
        if not p.is_homogeneous():
            raise ValueError("not homogeneous")
        d = max(p.degree(), 0)
        coeffs = [p.coeff(d - k, k) for k in range(d + 1)]
        return BinaryForm(d, coeffs)

    def to_poly(self) -> BivarPoly:
        d = self.degree
        return BivarPoly({(d - k, k): c for k, c in enumerate(self.coefficients) if c})

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def coeff(self, k: int) -> Fraction:
        return self.coefficients[k]

    def eval(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        d = self.degree
        return sum(
            (c * x ** (d - k) * y**k for k, c in enumerate(self.coefficients) if c),
            Fraction(0),
        )

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.degree == other.degree
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        return f"BinaryForm({self.degree}, {self.to_poly().format()})"

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return BinaryForm.from_poly(self.to_poly() * other.to_poly())
        return BinaryForm(self.degree, [c * Fraction(other) for c in self.coefficients])

    # -- dehomogenization --------------------------------------------------

    def dehom_x(self) -> tuple[list, int]:
        """Returns (p(t) = A(t, 1) as a coeff list in t, m) where y^m || A.

        A(x, y) = y^(deg - m - deg p) * ... ; precisely
        A(x, y) = y^m * x-part with p(t) = A(t,1)/1 after removing nothing:
        here p[i] = coefficient of t^i, so p(t) = sum coeff[d-i] t^i and m is
        the y-content (min k with coefficients[k] != 0).
        """
        d = self.degree
        if self.is_zero():
            return [], 0
        m = min(k for k, c in enumerate(self.coefficients) if c)
        # A(t,1) = sum_k c_k t^(d-k); lowest t-power is d - kmax
        p = [Fraction(0)] * (d + 1)
        for k, c in enumerate(self.coefficients):
            p[d - k] = c
        return up.trim(p), m

    @staticmethod
    def from_univariate(p: list, degree: int) -> "BinaryForm":
        """Homogenize the t-polynomial p to the given form degree.

        Form coefficient of x^(degree-k) y^k is p[degree-k] when present,
        i.e. t^i y-homogenized with y^(degree-i).
        """
        coeffs = [Fraction(0)] * (degree + 1)
        for i, c in enumerate(p):
            if i > degree:
                raise ValueError("univariate degree exceeds form degree")
            coeffs[degree - i] = c
        return BinaryForm(degree, coeffs)


def decompose(F: BivarPoly, bound: int = 6) -> list[BinaryForm]:
    """Homogeneous parts F_0..F_bound; errors if deg F exceeds the bound."""
    if F.degree() > bound:
        raise ValueError(f"degree {F.degree()} exceeds bound {bound}")
    out = []
    for d in range(bound + 1):
        part = F.homogeneous_part(d)
        coeffs = [part.coeff(d - k, k) for k in range(d + 1)]
        out.append(BinaryForm(d, coeffs))
    return out


def form_gcd(A: BinaryForm, B: BinaryForm) -> BinaryForm:
    """Primitive-integer gcd with positive leading coefficient.

    Computed on x-dehomogenizations with the y-power content tracked
    separately: gcd(y^m1 * a(x,y), y^m2 * b(x,y)) = y^min(m1,m2) * gcd(a, b).
    """
    if A.is_zero() and B.is_zero():
        raise ValueError("gcd of two zero forms")
    if A.is_zero():
        return _canonical(B)
    if B.is_zero():
        return _canonical(A)
    pa, ma = A.dehom_x()
    pb, mb = B.dehom_x()
    g = up.pgcd(pa, pb)
    m = min(ma, mb)
    d = up.pdeg(g) + m
    form = BinaryForm.from_univariate([c for c in g], up.pdeg(g))
    # shift by y^m: coefficients move, degree grows
    coeffs = [Fraction(0)] * (d + 1)
    for k, c in enumerate(form.coefficients):
        coeffs[k + m] = c
    out = BinaryForm(d, coeffs)
    return _canonical(out)


def _canonical(A: BinaryForm) -> BinaryForm:
    """Primitive integer coefficients, first nonzero coefficient positive."""
    if A.is_zero():
        return A
    p = up.primitive(list(A.coefficients))
    lead = next(c for c in p if c)
    if lead < 0:
        p = [-c for c in p]
    return BinaryForm(A.degree, p)


def form_divides(A: BinaryForm, B: BinaryForm) -> bool:
    """Does A divide B exactly (as forms over Q)?"""
    q = form_div(A, B)
    return q is not None


def form_div(A: BinaryForm, B: BinaryForm):
    """Exact quotient B / A as a BinaryForm, or None if not divisible."""
    if A.is_zero():
        raise ZeroDivisionError("division by zero form")
    if B.is_zero():
        return BinaryForm(0, [Fraction(0)]) if A.degree == 0 else BinaryForm(
            max(B.degree - A.degree, 0), [Fraction(0)] * (max(B.degree - A.degree, 0) + 1)
        )
    if B.degree < A.degree:
        return None
    pa, ma = A.dehom_x()
    pb, mb = B.dehom_x()
    if mb < ma:
        return None
    q, r = up.pdivmod(pb, pa)
    if r:
        return None
    dq = B.degree - A.degree
    if up.pdeg(q) + (mb - ma) > dq:
        return None
    coeffs = [Fraction(0)] * (dq + 1)
    for i, c in enumerate(q):
        # q contributes t^i, homogenized with y^(dq - i - (mb-ma)) and y-content
        k = dq - i
        coeffs[k] = c
    out = BinaryForm(dq, coeffs)
    # verify (cheap, exact) since the y-content bookkeeping is fiddly
    if (out.to_poly() * A.to_poly()) != B.to_poly():
        return None
    return out


def squarefree_profile(A: BinaryForm) -> list[tuple[int, int]]:
    """Multiset {(multiplicity, degree of factor product)} of the form.

    Yun decomposition of the dehomogenization plus explicit handling of the
    y^m content (y joins the multiplicity-m factor product).  Multiplicities
    computed over Q are valid over the algebraic closure in characteristic 0.
    Returned sorted by multiplicity.
    """
    if A.is_zero():
        raise ValueError("zero form")
    p, m = A.dehom_x()
    parts: dict[int, int] = {}
    if up.pdeg(p) >= 1:
        for i, b in enumerate(up.yun_decomposition(p), start=1):
            db = up.pdeg(b)
            if db >= 1:
                parts[i] = parts.get(i, 0) + db
    if m:
        parts[m] = parts.get(m, 0) + 1
    out = sorted(parts.items())
    assert sum(i * d for i, d in out) == A.degree or A.degree == 0
    return out


def squarefree_factors(A: BinaryForm) -> list[tuple[int, BinaryForm]]:
    """[(multiplicity, B_i)] with A = lc * prod B_i^i, B_i primitive forms.

    The y factor (when y^m || A) is merged into the multiplicity-m factor.
    """
    if A.is_zero():
        raise ValueError("zero form")
    p, m = A.dehom_x()
    by_mult: dict[int, BinaryForm] = {}
    if up.pdeg(p) >= 1:
        for i, b in enumerate(up.yun_decomposition(p), start=1):
            db = up.pdeg(b)
            if db >= 1:
                by_mult[i] = BinaryForm.from_univariate(b, db)
    if m:
        yform = BinaryForm(1, [Fraction(0), Fraction(1)])
        if m in by_mult:
            by_mult[m] = BinaryForm.from_poly(by_mult[m].to_poly() * yform.to_poly())
        else:
            by_mult[m] = yform
    return sorted((i, _canonical(b)) for i, b in by_mult.items())


def real_roots(A: BinaryForm) -> tuple[list[IsolatingInterval], bool]:
    """Isolating intervals for real slopes t = x/y of A(t, 1), plus a flag
    for the projective root (1:0) (i.e. y | A)."""
    if A.is_zero():
        raise ValueError("zero form")
    p, m = A.dehom_x()
    ivs = up.isolate_real_roots(p) if up.pdeg(p) >= 1 else []
    return ivs, m > 0


def definiteness(A: BinaryForm) -> str:
    """One of positive-definite, negative-definite, positive-semi,
    negative-semi, indefinite, zero.  Decided exactly.

    Odd total degree is always indefinite (sign flips under (x,y) -> (-x,-y)).
    Otherwise: a real root of odd multiplicity forces a sign change; only
    even multiplicities means semi-definite with the sign of a nonzero
    sample; no real roots at all means definite.
    """
    if A.is_zero():
        return "zero"
    if A.degree % 2 == 1:
        return "indefinite"
    p, m = A.dehom_x()
    has_real_root = m > 0
    odd_mult_real_root = m % 2 == 1 and m > 0
    if up.pdeg(p) >= 1:
        for i, b in enumerate(up.yun_decomposition(p), start=1):
            if up.pdeg(b) >= 1 and up.isolate_real_roots(b):
                has_real_root = True
                if i % 2 == 1:
                    odd_mult_real_root = True
    if odd_mult_real_root:
        return "indefinite"
    # sample a nonzero value: A(1,0) or A(0,1) or A(1,n) for small n
    for x, y in [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2)]:
        v = A.eval(x, y)
        if v:
            sign = v > 0
            break
    else:  # pragma: no cover - a nonzero degree<=6 form can't vanish at all 7
        raise ArithmeticError("could not sample a nonzero value")
    if has_real_root:
        return "positive-semi" if sign else "negative-semi"
    return "positive-definite" if sign else "negative-definite"
