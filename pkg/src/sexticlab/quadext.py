"""Exact arithmetic in real quadratic fields Q(sqrt(k)).

Elements are a + b*sqrt(k) with rational a, b and a fixed square-free k > 1.
Supports the field operations, conjugation, norm, and sign decisions (exact,
via rational comparisons against k*b^2).
"""

from __future__ import annotations

from fractions import Fraction


def is_squarefree(k: int) -> bool:
    if k < 1:
        return False
    d = 2
    while d * d <= k:
        if k % (d * d) == 0:
            return False
        d += 1
    return True


class QuadExt:
    """a + b*sqrt(k) with exact Fraction components."""

    __slots__ = ("k", "a", "b")

    def __init__(self, k: int, a, b=0):
        if k <= 1 or not is_squarefree(k):
            raise ValueError(f"k must be a square-free integer > 1, got {k}")
        self.k = k
        self.a = Fraction(a)
        self.b = Fraction(b)

    def _check(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.k != self.k:
                raise ValueError("mixed fields")
            return other
        return QuadExt(self.k, other)

    def __add__(self, other):
        o = self._check(other)
        return QuadExt(self.k, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(self.k, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        return QuadExt(
            self.k,
            self.a * o.a + self.k * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadExt":
        return QuadExt(self.k, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.k * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("zero element")
        return QuadExt(self.k, self.a / n, -self.b / n)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.a == other and not self.b
        if isinstance(other, QuadExt):
            return self.k == other.k and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.k, self.a, self.b))

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_rational(self) -> bool:
        return not self.b

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(k) as a real number."""
        if not self.b:
            return 0 if not self.a else (1 if self.a > 0 else -1)
        if not self.a:
            return 1 if self.b > 0 else -1
        # compare a against -b*sqrt(k): same signs are easy, otherwise
        # compare a^2 vs k b^2 with the correct orientation
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        lhs = self.a * self.a
        rhs = self.k * self.b * self.b
        if self.a > 0:  # b < 0: sign is sign(a^2 - k b^2)
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def __gt__(self, other):
        return (self - self._check(other)).sign() > 0

    def __lt__(self, other):
        return (self - self._check(other)).sign() < 0

    def sqrt_if_square(self):
        """Return t with t*t == self if such t exists in Q(sqrt(k)), else None."""
        # (p + q sqrt k)^2 = p^2 + k q^2 + 2pq sqrt(k)
        from math import isqrt

        if self.sign() < 0:
            return None
        if not self.b:
            # either rational sqrt, or sqrt(a) = q*sqrt(k) with a = k q^2
            r = _rat_sqrt(self.a)
            if r is not None:
                return QuadExt(self.k, r)
            r = _rat_sqrt(self.a / self.k)
            if r is not None:
                return QuadExt(self.k, 0, r)
            return None
        # solve p^2 + k q^2 = a, 2pq = b: p^2 is a root of
        # t^2 - a t + k b^2/4 = 0
        disc = self.a * self.a - self.k * self.b * self.b
        sd = _rat_sqrt(disc)
        if sd is None:
            return None
        for p2 in ((self.a + sd) / 2, (self.a - sd) / 2):
            if p2 < 0:
                continue
            p = _rat_sqrt(p2)
            if p is None or not p:
                continue
            q = self.b / (2 * p)
            cand = QuadExt(self.k, p, q)
            if cand * cand == self:
                return cand
        return None

    def __float__(self):
        import math

        return float(self.a) + float(self.b) * math.sqrt(self.k)

    def __repr__(self):
        if not self.b:
            return f"QuadExt({self.k}, {self.a})"
        return f"QuadExt({self.k}, {self.a} + {self.b}*sqrt({self.k}))"

    def __str__(self):
        if not self.b:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.k})"


def _rat_sqrt(r: Fraction):
    """Exact rational square root, or None."""
    from math import isqrt

    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


def quad_poly_eval(coeffs: list, z: QuadExt) -> QuadExt:
    """Evaluate a polynomial with QuadExt (or rational) coefficients at z.

    coeffs lowest-degree-first.
    """
    acc = QuadExt(z.k, 0)
    for c in reversed(coeffs):
        acc = acc * z + (c if isinstance(c, QuadExt) else QuadExt(z.k, c))
    return acc
