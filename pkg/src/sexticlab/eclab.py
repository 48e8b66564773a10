"""Elliptic-curve machinery over Q: group law, the parametric 3P family on
y^2 = x^3 + b1 x + r^2 b1^2, Pell solvers, the Lucas/Fibonacci small-gap
family for b1 = 0, and a brute-force near-cube scanner for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .poly import BivarPoly


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = x^3 + A x + B over Q, nonsingular."""

    A: Fraction
    B: Fraction

    def __post_init__(self):
        object.__setattr__(self, "A", Fraction(self.A))
        object.__setattr__(self, "B", Fraction(self.B))
        if not self.discriminant():
            raise CurveError("singular curve (discriminant 0)")

    def discriminant(self) -> Fraction:
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    def contains(self, P) -> bool:
        if P is INFINITY:
            return True
        x, y = P.x, P.y
        return y * y == x**3 + self.A * x + self.B


class CurvePoint:
    """Affine point or the point at infinity."""

    __slots__ = ("x", "y", "infinite")

    def __init__(self, x=None, y=None, infinite=False):
        self.infinite = infinite
        if infinite:
            self.x = self.y = None
        else:
            self.x = Fraction(x)
            self.y = Fraction(y)

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.infinite or other.infinite:
            return self.infinite and other.infinite
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y, self.infinite))

    def __repr__(self):
        if self.infinite:
            return "CurvePoint(infinity)"
        return f"CurvePoint({self.x}, {self.y})"


INFINITY = CurvePoint(infinite=True)


def ec_add(E: EllipticCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Chord-tangent addition; inputs are checked to lie on E."""
    for pt in (P, Q):
        if not E.contains(pt):
            raise CurveError(f"point {pt} is not on the curve")
    if P is INFINITY or P.infinite:
        return Q
    if Q is INFINITY or Q.infinite:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return INFINITY
        # tangent (P == Q with y != 0)
        lam = (3 * P.x * P.x + E.A) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    R = CurvePoint(x3, y3)
    assert E.contains(R)
    return R


def ec_neg(P: CurvePoint) -> CurvePoint:
    if P.infinite:
        return P
    return CurvePoint(P.x, -P.y)


def ec_mul(E: EllipticCurve, P: CurvePoint, n: int) -> CurvePoint:
    if n < 0:
        return ec_mul(E, ec_neg(P), -n)
    acc = INFINITY
    base = P
    while n:
        if n & 1:
            acc = ec_add(E, acc, base)
        base = ec_add(E, base, base)
        n >>= 1
    return acc


# -- the 3P family ------------------------------------------------------------


def rouse_point(b1: int, r: int) -> tuple[int, int]:
    """Closed form for 3P on y^2 = x^3 + b1 x + r^2 b1^2 with P = (0, r b1)."""
    x_r = 64 * b1 * b1 * r**6 + 8 * b1 * r * r
    y_r = 512 * b1**3 * r**9 + 96 * b1 * b1 * r**5 + 3 * b1 * r
    return x_r, y_r


def rouse_family(b1: int, b0: int, r_values) -> list[tuple[int, int, int, int]]:
    """(r, x_r, y_r, gap) for each r, where gap = y_r^2 - x_r^3 - b1 x_r - b0
    = b1^2 r^2 - b0.  The closed form is asserted against generic group-law
    triplication (anti-drift), and the gap identity is asserted exactly."""
    if b1 == 0:
        raise CurveError("b1 = 0: the 3P x-coordinate stays 0; use danilov_family")
    out = []
    for r in r_values:
        if r == 0:
            continue
        x_r, y_r = rouse_point(b1, r)
        E = EllipticCurve(Fraction(b1), Fraction(r * r * b1 * b1))
        P = CurvePoint(0, r * b1)
        T = ec_mul(E, P, 3)
        assert not T.infinite and T.x == x_r and T.y == y_r, (b1, r)
        gap = y_r * y_r - x_r**3 - b1 * x_r - b0
        assert gap == b1 * b1 * r * r - b0
        out.append((r, x_r, y_r, gap))
    return out


def rouse_gap_identity() -> bool:
    """y_r^2 - x_r^3 - b1 x_r - r^2 b1^2 = 0 as a polynomial identity in
    (b1, r), checked by exact symbolic expansion."""
    b = BivarPoly.x()  # stands for b1
    r = BivarPoly.y()
    x_r = b * b * r**6 * 64 + b * r * r * 8
    y_r = b**3 * r**9 * 512 + b * b * r**5 * 96 + b * r * 3
    expr = y_r * y_r - x_r**3 - b * x_r - r * r * b * b
    return expr.is_zero()


# -- Pell solver --------------------------------------------------------------


@dataclass
class PellSolution:
    d: int
    c: int
    solutions: list  # [(u, v)] ordered by u


def _sqrt_cf_fundamental(d: int) -> tuple[tuple[int, int], int]:
    """((u, v) with u^2 - d v^2 = +-1 from the continued fraction of sqrt(d),
    sign).  The returned solution is the first convergent hit, so it has
    sign -1 exactly when the period is odd."""
    a0 = isqrt(d)
    m, den, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while True:
        val = p * p - d * q * q
        if val in (1, -1):
            return (p, q), val
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev


def _half_unit(d: int) -> tuple[int, int]:
    """Minimal (a, b) with a > 0, b > 0, a^2 - d b^2 = 4."""
    (u1, v1), sgn = _sqrt_cf_fundamental(d)
    if sgn == -1:
        u1, v1 = u1 * u1 + d * v1 * v1, 2 * u1 * v1
    # (2 u1, 2 v1) always works, so the scan below terminates
    for b in range(1, 2 * v1 + 1):
        a2 = d * b * b + 4
        a = isqrt(a2)
        if a * a == a2:
            return a, b
    return 2 * u1, 2 * v1


def pell_solve(d: int, c: int, count: int) -> PellSolution:
    """Solutions of u^2 - d v^2 = c for c in {1, -1, 4, -4}.

    Fundamental solution from the continued fraction of sqrt(d) (c = +-1) or
    a bounded scan (c = +-4).  For c = +-4 the family is generated by the
    half-unit recurrence (u, v) -> ((a u + d b v)/2, (a v + b u)/2) with
    a^2 - d b^2 = 4, which stays integral because u, v and a, b share parity
    when d is odd.  For c = +-1 that parity argument fails (e.g. d = 5,
    c = -1 starts at (2, 1)), so the step is the full norm-1 unit instead."""
    if d <= 0 or isqrt(d) ** 2 == d:
        raise ValueError("d must be a positive nonsquare")
    if c not in (1, -1, 4, -4):
        raise ValueError("supported targets: c in {1, -1, 4, -4}")
    if count < 1:
        raise ValueError("count must be >= 1")
    (u1, v1), sgn = _sqrt_cf_fundamental(d)
    base = None
    if c == 1:
        if sgn == 1:
            base = (u1, v1)
        else:
            base = (u1 * u1 + d * v1 * v1, 2 * u1 * v1)
    elif c == -1:
        if sgn == -1:
            base = (u1, v1)
        else:
            raise ValueError(f"u^2 - {d} v^2 = -1 has no integer solutions")
    else:
        # bounded scan for the fundamental +-4 solution
        for v in range(1, 2 * v1 + 3):
            u2 = d * v * v + c
            if u2 <= 0:
                continue
            u = isqrt(u2)
            if u * u == u2:
                base = (u, v)
                break
        if base is None:
            raise ValueError(f"u^2 - {d} v^2 = {c} has no integer solutions")
    if c in (4, -4):
        a, b = _half_unit(d)
        step = lambda u, v: ((a * u + d * b * v) // 2, (a * v + b * u) // 2)
    else:
        if sgn == 1:
            x1, y1 = u1, v1
        else:
            x1, y1 = u1 * u1 + d * v1 * v1, 2 * u1 * v1
        step = lambda u, v: (x1 * u + d * y1 * v, x1 * v + y1 * u)
    sols = []
    u, v = base
    for _ in range(count):
        assert u * u - d * v * v == c
        sols.append((u, v))
        u, v = step(u, v)
    return PellSolution(d=d, c=c, solutions=sols)


# -- small-gap family for b1 = 0 ----------------------------------------------


def _fib_pair(n: int) -> tuple[int, int]:
    """(F_n, F_{n+1}) by fast doubling."""
    if n == 0:
        return 0, 1
    fa, fb = _fib_pair(n >> 1)
    c = fa * (2 * fb - fa)
    t = fa * fa + fb * fb
    if n & 1:
        return t, c + t
    return c, t


def fibonacci(n: int) -> int:
    return _fib_pair(n)[0]


def lucas(n: int) -> int:
    fa, fb = _fib_pair(n)
    return 2 * fb - fa


def danilov_member(m: int) -> tuple[int, int, int]:
    """(x, y, gap) from the Pell-driven identity at odd Lucas index m.

    With L = L_m (m odd) the identity
        y^2 - x^3 = 27 (L + 11) / 125,
        x = (L^2 + 12 L + 16) / 20,
        y = (F_{3m} + 18 F_{2m} + 75 F_m) / 40
    holds exactly over Q; all three values are integers precisely when
    m = 15 mod 60.  (L_m, F_m) runs over solutions of u^2 - 5 v^2 = -4.
    """
    if m % 2 == 0:
        raise ValueError("m must be odd")
    L = lucas(m)
    x = Fraction(L * L + 12 * L + 16, 20)
    y = Fraction(fibonacci(3 * m) + 18 * fibonacci(2 * m) + 75 * fibonacci(m), 40)
    gap = y * y - x**3
    assert gap == Fraction(27 * (L + 11), 125)
    if x.denominator != 1 or y.denominator != 1 or gap.denominator != 1:
        raise ValueError(f"member at m={m} is not integral")
    return int(x), int(y), int(gap)


def danilov_family(count: int) -> list[tuple[int, int, int, float]]:
    """First `count` integral members (x, y, gap, ratio), ratio = |gap|/sqrt(x).

    Members sit at m = 15, 75, 135, ... (step 60); every member satisfies
    0 < |gap| and gap^2 < x exactly.  The ratio tends to 54 * 5^(-5/2); it is
    a float for reporting only.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    m = 15
    while len(out) < count:
        x, y, gap = danilov_member(m)
        assert gap != 0 and gap * gap < x
        ratio = abs(gap) / _float_sqrt_big(x)
        out.append((x, y, gap, ratio))
        m += 60
    return out


def _float_sqrt_big(x: int) -> float:
    """sqrt of a possibly huge integer as a float (report use only)."""
    if x.bit_length() <= 1000:
        return x**0.5
    shift = (x.bit_length() - 900) // 2 * 2
    return (x >> shift) ** 0.5 * 2.0 ** (shift / 2)


def hall_scan(Xmax: int, threshold) -> list[tuple[int, int, int, float]]:
    """Brute-force near-cube scan: for 2 <= x <= Xmax, y = nearest integer to
    x^(3/2); emit (x, y, gap, ratio) when 0 < |gap| and gap^2 <= threshold^2 x
    (exact rational comparison)."""
    if Xmax < 2:
        raise ValueError("Xmax must be >= 2")
    threshold = Fraction(threshold)
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    t2 = threshold * threshold
    out = []
    for x in range(2, Xmax + 1):
        cube = x**3
        y0 = isqrt(cube)
        # nearest of y0, y0 + 1 by exact comparison
        if (y0 + 1) ** 2 - cube < cube - y0 * y0:
            y = y0 + 1
        else:
            y = y0
        gap = y * y - cube
        if gap and Fraction(gap * gap) <= t2 * x:
            out.append((x, y, gap, abs(gap) / x**0.5))
    return out


def format_family_csv(rows, with_r=False) -> str:
    """CSV lines r,x,y,gap,ratio (or x,y,gap,ratio) with ratio to 12 digits."""
    lines = []
    if with_r:
        lines.append("r,x,y,gap,ratio")
        for r, x, y, gap in rows:
            ratio = abs(gap) / _float_sqrt_big(x) if x > 0 else float("nan")
            lines.append(f"{r},{x},{y},{gap},{ratio:.12g}")
    else:
        lines.append("x,y,gap,ratio")
        for x, y, gap, ratio in rows:
            lines.append(f"{x},{y},{gap},{ratio:.12g}")
    return "\n".join(lines) + "\n"
