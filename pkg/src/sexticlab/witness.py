"""Search engines producing verified integer-point certificates.

Every engine takes explicit budgets and returns a Witness; exhausted budgets
yield kind "inconclusive" instead of looping.  Recorded values are exact and
re-verified against the polynomial at construction time.  Floating point
never decides a predicate here; it only appears in reported ratios.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .poly import BivarPoly
from .forms import decompose, definiteness, real_roots
from .classify import (
    ClassificationReport,
    ECRecord,
    classify,
    f40_layers,
    gcd_condition,
)
from . import unipoly as up
from . import _seeds
from .eclab import danilov_family, rouse_point


@dataclass
class SearchBudgets:
    convergents: int = 64
    Tmax: int = 10**12
    Xmax: int = 10**9
    box: int = 200
    rmax: int = 25
    Nmax: int = 10**9


@dataclass
class Witness:
    kind: str  # negative-value | small-core-sequence | dearth-diagnostic | inconclusive
    lemma: str
    points: list  # [(x: int, y: int, value: Fraction)]
    note: str = ""
    extra: dict = field(default_factory=dict)

    def verify(self, F: BivarPoly) -> bool:
        for x, y, v in self.points:
            if F.eval(x, y) != v:
                return False
        if self.kind == "negative-value":
            return any(v < 0 for _, _, v in self.points)
        return True

    def min_value(self):
        return min((v for _, _, v in self.points), default=None)

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "lemma": self.lemma,
            "points": [[int(x), int(y), str(v)] for x, y, v in self.points],
            "note": self.note,
            "extra": {k: str(v) for k, v in self.extra.items()},
        }


def _checked(F: BivarPoly, kind: str, lemma: str, points, note="", extra=None) -> Witness:
    pts = [(int(x), int(y), F.eval(x, y)) for x, y, _ in points] if points and len(points[0]) == 3 else [
        (int(x), int(y), F.eval(x, y)) for x, y in points
    ]
    w = Witness(kind=kind, lemma=lemma, points=pts, note=note, extra=extra or {})
    assert w.verify(F)
    return w


# -- Dirichlet convergent walk ------------------------------------------------


def dirichlet_witness(F: BivarPoly, max_convergents: int = 64) -> Witness:
    """Walks continued-fraction convergents of the real root directions of F6
    and evaluates F at +-(u, v).  Along each direction the quintic part
    dominates for good approximations, so one of the two signs goes negative.

    Requires F6 positive semi-definite (not definite) with gcd(F6, F5) = 1.
    Collects every negative value found within the budget; the growth ratio
    |F(u,v)| / (u^2+v^2)^(5/2 - 1/10) is recorded for reporting only.
    """
    parts = decompose(F)
    F6, F5 = parts[6], parts[5]
    d = definiteness(F6)
    if d != "positive-semi":
        raise ValueError(f"F6 must be positive semi-definite, got {d}")
    ok, g = gcd_condition(F6, F5)
    if not ok:
        raise ValueError(f"gcd(F6, F5) = {g.to_poly().format()} is not constant")

    negatives = []
    tried = 0
    best_ratio = None
    ivs, at_infinity = real_roots(F6)
    directions = []
    # rational root directions walk as scaled primitive vectors
    ratroots = [r for r in up.rational_roots(ivs[0].poly)] if ivs else []
    for iv in ivs:
        rr = [r for r in ratroots if iv.contains_rational(r)]
        if rr:
            directions.append(("rational", rr[0]))
        else:
            directions.append(("irrational", iv))
    if at_infinity:
        directions.append(("rational", None))  # the (1, 0) direction

    for tag, data in directions:
        if tag == "rational":
            if data is None:
                base = (1, 0)
            else:
                base = (data.numerator, data.denominator)
            n = 1
            for _ in range(max_convergents):
                u, v = base[0] * n, base[1] * n
                _eval_pm(F, u, v, negatives)
                n *= 2
        else:
            pairs = up.convergents_of_root(data, max_convergents)
            for u, v in pairs:
                val = _eval_pm(F, u, v, negatives)
                r2 = u * u + v * v
                expo = 2.5 - _seeds.get("growth_epsilon")
                ratio = abs(float(val)) / (float(r2) ** expo or 1.0)
                if best_ratio is None or ratio < best_ratio:
                    best_ratio = ratio
        tried += 1

    extra = {}
    if best_ratio is not None:
        extra["growth_ratio_min"] = f"{best_ratio:.6g}"
    if negatives:
        return _checked(
            F,
            "negative-value",
            "dirichlet-approximation",
            negatives,
            note="negative values along leading-form root directions",
            extra=extra,
        )
    return Witness(
        kind="inconclusive",
        lemma="dirichlet-approximation",
        points=[],
        note=f"no negative value within {max_convergents} convergents "
        f"over {tried} directions",
        extra=extra,
    )


def _eval_pm(F, u, v, negatives):
    va = F.eval(u, v)
    vb = F.eval(-u, -v)
    if va < 0:
        negatives.append((u, v, va))
    if vb < 0:
        negatives.append((-u, -v, vb))
    return va if abs(va) >= abs(vb) else vb


# -- anisotropic schedule -----------------------------------------------------


def _iroot(n: int, k: int) -> int:
    """Floor k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1) or k == 1:
        return n
    hi = 1 << ((n.bit_length() + k - 1) // k + 1)
    lo = 0
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def anisotropic_witness(F: BivarPoly, theta: Fraction, Tmax: int = 10**12) -> Witness:
    """Scans x within a factor 2 of T^theta and y = +-T on a doubling T
    schedule; returns the first negative value with the per-degree dominant
    term decomposition recorded at the witness point."""
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError("theta must be in (0, 1)")
    parts = decompose(F)
    T = 2
    while T <= Tmax:
        r = _iroot(T**theta.numerator, theta.denominator)
        if r >= 1:
            xlo, xhi = max(1, r - r // 2), 2 * r
            span = xhi - xlo + 1
            stride = max(1, span // 64)
            for ax in range(xlo, xhi + 1, stride):
                for x in (ax, -ax):
                    for y in (T, -T):
                        v = F.eval(x, y)
                        if v < 0:
                            decomp = {
                                f"|F{j}|": str(abs(parts[j].eval(x, y)))
                                for j in range(1, 7)
                            }
                            return _checked(
                                F,
                                "negative-value",
                                "anisotropic-schedule",
                                [(x, y, v)],
                                note=f"theta={theta}, T={T}",
                                extra=decomp,
                            )
        T *= 2
    return Witness(
        kind="inconclusive",
        lemma="anisotropic-schedule",
        points=[],
        note=f"no negative value on the theta={theta} schedule up to T={Tmax}",
    )


# -- weighted cubic sign search ----------------------------------------------


def weighted_cubic_sign_search(F: BivarPoly, Nmax: int = 10**9) -> Witness:
    """For the x^4 | F5, x^2 | F4 shape: finds small (c1, c2) with the
    weighted lead form G(c1^2, c2) < 0, then scales along (N c1, N^2 c2)
    until F itself is negative.  The scaling identity (the N^6 coefficient of
    F(c1 N, c2 N^2) equals G(c1^2, c2)) is checked symbolically."""
    lay = f40_layers(F)
    if not any(lay.u):
        return Witness(
            kind="inconclusive",
            lemma="weighted-cubic",
            points=[],
            note="weighted lead form is identically zero; degenerate, routed onward",
        )
    found = None
    for c1 in range(1, 9):
        for c2 in sorted(range(-16, 17), key=lambda t: (abs(t), -t)):
            if lay.lead_eval(c1 * c1, c2) < 0:
                found = (c1, c2)
                break
        if found:
            break
    if not found:
        return Witness(
            kind="inconclusive",
            lemma="weighted-cubic",
            points=[],
            note="weighted lead form nonnegative on the scanned box; "
            "degenerate, routed onward",
        )
    c1, c2 = found
    gval = lay.lead_eval(c1 * c1, c2)
    # symbolic scaling identity: substitute (x, y) -> (c1 N, c2 N^2); the
    # result is univariate in N and its N^6 coefficient must be G(c1^2, c2)
    N = BivarPoly.x()
    curve = F.subs(N * c1, N * N * c2)
    assert curve.coeff(6, 0) == gval
    assert curve.degree_in(1) == 0
    N_int = 1
    while N_int <= Nmax:
        x, y = c1 * N_int, c2 * N_int * N_int
        v = F.eval(x, y)
        if v < 0:
            return _checked(
                F,
                "negative-value",
                "weighted-cubic",
                [(x, y, v)],
                note=f"lead form at (c1,c2)=({c1},{c2}) is {gval}; scaled by N={N_int}",
                extra={"c1": c1, "c2": c2, "lead_value": gval},
            )
        N_int *= 2
    return Witness(
        kind="inconclusive",
        lemma="weighted-cubic",
        points=[],
        note=f"lead form negative at ({c1},{c2}) but budget Nmax={Nmax} exhausted",
    )


# -- branch following ---------------------------------------------------------


def branch_follow(F: BivarPoly, core: BivarPoly, Xmax: int = 10**9) -> Witness:
    """Follows the real branches y(x) of core(x, y) = 0 for x on a geometric
    schedule, evaluating F at the integers nearest each branch.  Points are
    emitted when the nearness certificate |core(x, y)| <= |d core/dy(x, y)|/2
    holds exactly; the minimum value seen is tracked either way."""
    dcore = core.deriv(1)
    schedule = []
    x = 2
    while x <= Xmax:
        schedule.append(x)
        x = x * 2 if x >= 64 else x + max(1, x // 4)
    points = []
    best = None
    any_branch = False
    for x in schedule:
        coeffs = core.eval_x(x)
        ivs = up.isolate_real_roots(coeffs)
        for iv in ivs:
            any_branch = True
            iv.refine_to(Fraction(1, 2))
            mid = iv.sample()
            floor_y = mid.numerator // mid.denominator
            for y in (floor_y, floor_y + 1):
                v = F.eval(x, y)
                if best is None or v < best[2]:
                    best = (x, y, v)
                cval = core.eval(x, y)
                dval = dcore.eval(x, y)
                if abs(cval) * 2 <= abs(dval):
                    points.append((x, y, v))
    if not any_branch:
        raise ValueError("core has no real branch on the schedule")
    kind = "small-core-sequence"
    note = "integers tracking the core curve"
    if best is not None and best[2] < 0:
        kind = "negative-value"
        if best not in points:
            points.append(best)
        note = f"negative value {best[2]} at x={best[0]}"
    if not points:
        return Witness(kind="inconclusive", lemma="branch-follow", points=[], note="no certified near-branch integer points")
    return _checked(F, kind, "branch-follow", points, note=note,
                    extra={"min_value": best[2]})


# -- growth diagnostic --------------------------------------------------------


def growth_diagnostic(F: BivarPoly, delta: Fraction, box: int = 200) -> Witness:
    """Empirical box scan of F(x,y) / max(|x|,|y|)^(1+delta).  Diagnostic
    only: ratios are floats and nothing is certified."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    expo = 1 + float(delta)
    best = None
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            if not x and not y:
                continue
            v = F.eval(x, y)
            ratio = _seeds.get("diagnostic_scale") * float(v) / (max(abs(x), abs(y)) ** expo)
            if best is None or ratio < best[0]:
                best = (ratio, x, y, v)
    ratio, x, y, v = best
    return _checked(
        F,
        "dearth-diagnostic",
        "growth-bound",
        [(x, y, v)],
        note=f"min ratio {ratio:.6g} at ({x},{y}); empirical, not a proof",
        extra={"delta": delta, "min_ratio": f"{ratio:.6g}", "box": box},
    )


# -- elliptic-curve point families against the completed square ---------------


def rouse_witness(F: BivarPoly, rec: ECRecord, rmax: int = 25) -> Witness:
    """Evaluates F at the integer images of the 3P family points of
    y^2 = x^3 + b1 x + r^2 b1^2 under the recorded change of coordinates.
    Exact integrality of the mapped points is required; the minimum value
    over the sweep is tracked and all negatives are collected."""
    b1 = rec.b1
    if not b1:
        raise ValueError("b1 = 0: use danilov_witness")
    negatives = []
    evaluated = []
    for r in range(1, rmax + 1):
        if b1.denominator == 1:
            X, Y = rouse_point(int(b1), r)
            X, Y = Fraction(X), Fraction(Y)
        else:
            X = 64 * b1 * b1 * Fraction(r) ** 6 + 8 * b1 * r * r
            Y = 512 * b1**3 * Fraction(r) ** 9 + 96 * b1 * b1 * Fraction(r) ** 5 + 3 * b1 * r
        for Ys in (Y, -Y):
            x, y = rec.map_point(X, Ys)
            if x.denominator != 1 or y.denominator != 1:
                continue
            v = F.eval(x, y)
            evaluated.append((int(x), int(y), v))
            if v < 0:
                negatives.append((int(x), int(y), v))
    if negatives:
        return _checked(
            F,
            "negative-value",
            "rouse-3p",
            negatives,
            note=f"3P family on y^2 = x^3 + ({b1}) x + r^2 ({b1})^2, r <= {rmax}",
            extra={"b1": b1, "b0": rec.b0, "a": rec.a},
        )
    if evaluated:
        mn = min(evaluated, key=lambda t: t[2])
        return _checked(
            F,
            "small-core-sequence",
            "rouse-3p",
            [mn],
            note=f"no negative value on the 3P family with r <= {rmax}; "
            f"minimum {mn[2]} at ({mn[0]},{mn[1]})",
        )
    return Witness(
        kind="inconclusive",
        lemma="rouse-3p",
        points=[],
        note="no family point maps to integers under the recorded substitution",
    )


def danilov_witness(F: BivarPoly, rec: ECRecord, count: int = 12) -> Witness:
    """b1 = 0 analogue of rouse_witness using the Lucas/Fibonacci small-gap
    family y^2 - x^3 = O(sqrt(x))."""
    if rec.b1:
        raise ValueError("b1 != 0: use rouse_witness")
    negatives = []
    evaluated = []
    for X, Y, gap, _ratio in danilov_family(count):
        for Ys in (Y, -Y):
            x, y = rec.map_point(Fraction(X), Fraction(Ys))
            if x.denominator != 1 or y.denominator != 1:
                continue
            v = F.eval(x, y)
            evaluated.append((int(x), int(y), v))
            if v < 0:
                negatives.append((int(x), int(y), v))
    if negatives:
        return _checked(
            F,
            "negative-value",
            "danilov-gap",
            negatives,
            note=f"small-gap family, first {count} members",
            extra={"b0": rec.b0, "a": rec.a},
        )
    if evaluated:
        mn = min(evaluated, key=lambda t: t[2])
        return _checked(
            F,
            "small-core-sequence",
            "danilov-gap",
            [mn],
            note=f"no negative value among {len(evaluated)} mapped family points",
        )
    return Witness(
        kind="inconclusive",
        lemma="danilov-gap",
        points=[],
        note="no family point maps to integers under the recorded substitution",
    )


# -- indefinite leading form --------------------------------------------------


def ray_witness(F: BivarPoly, box: int = 24, scale_max: int = 10**12) -> Witness:
    """For F6 taking negative values: finds a small integer direction with
    F6 < 0 and scales along the ray until F itself is negative."""
    parts = decompose(F)
    F6 = parts[6]
    direction = None
    for u in range(-box, box + 1):
        for v in range(-box, box + 1):
            if not u and not v:
                continue
            if F6.eval(u, v) < 0:
                direction = (u, v)
                break
        if direction:
            break
    if direction is None:
        return Witness(
            kind="inconclusive",
            lemma="indefinite-leading",
            points=[],
            note=f"no negative leading-form direction in the |u|,|v| <= {box} box",
        )
    u, v = direction
    n = 1
    while n <= scale_max:
        val = F.eval(n * u, n * v)
        if val < 0:
            return _checked(
                F,
                "negative-value",
                "indefinite-leading",
                [(n * u, n * v, val)],
                note=f"ray ({u},{v}) scaled by {n}",
            )
        n *= 2
    return Witness(
        kind="inconclusive",
        lemma="indefinite-leading",
        points=[],
        note="scaling budget exhausted",
    )


# -- dispatch -----------------------------------------------------------------


def witness_for(
    F: BivarPoly,
    report: ClassificationReport | None = None,
    budgets: SearchBudgets | None = None,
) -> Witness:
    """Chooses and runs the engine matching the classification route."""
    budgets = budgets or SearchBudgets()
    if report is None:
        report = classify(F)
    route = report.route
    if route == "not-positive-leading":
        return ray_witness(F, box=min(report.degree * 4, budgets.box))
    if route == "not-a-sextic":
        return growth_diagnostic(F, Fraction(1), box=min(budgets.box, 60))

    cond = report.conditions

    def normalized():
        if report.shape and "matrix" in report.shape:
            return BivarPoly.from_json_obj(report.shape["normalized"]), report.shape["matrix"]
        return F, [[1, 0], [0, 1]]

    if route == "MP3":
        Fn, M = normalized()
        w = None
        if not cond.get("x^2|F5", True):
            w = anisotropic_witness(Fn, Fraction(1, 2), budgets.Tmax)
        elif not cond.get("x^3|F5", True):
            w = anisotropic_witness(Fn, Fraction(2, 3), budgets.Tmax)
        elif cond.get("x^4|F5") and cond.get("x|F4 exactly"):
            w = anisotropic_witness(Fn, Fraction(1, 6), budgets.Tmax)
        if w is not None:
            return _map_back(F, w, M)
        if cond.get("x^4|F5") and cond.get("x^2|F4"):
            w = weighted_cubic_sign_search(Fn, budgets.Nmax)
            if w.kind != "inconclusive":
                return _map_back(F, w, M)
        shape = report.shape or {}
        if "ecform" in shape:
            rec = _ecrecord_from_json(shape["ecform"])
            if rec.b1:
                w = rouse_witness(Fn, rec, budgets.rmax)
            else:
                w = danilov_witness(Fn, rec)
            return _map_back(F, w, M)
        # no completed square available: follow the weighted core directly
        from .classify import mp3_shape_extract, mp3_square_and_proportionality, ClassifyError

        try:
            core = mp3_square_and_proportionality(mp3_shape_extract(Fn))
            w = branch_follow(core.shape.F, core.core, budgets.Xmax)
            if core.x_flipped:
                # the core lives in x-negated coordinates
                M = [[-M[0][0], M[0][1]], [-M[1][0], M[1][1]]]
            return _map_back(F, w, M)
        except (ClassifyError, ValueError) as exc:
            return Witness(
                kind="inconclusive", lemma="mp3", points=[], note=str(exc)
            )

    if route == "MP2":
        Fn, M = normalized()
        if not cond.get("x^2|F5", True):
            return _map_back(F, anisotropic_witness(Fn, Fraction(7, 12), budgets.Tmax), M)
        sq = (report.shape or {}).get("square_check") or {}
        if not sq.get("ok", False):
            w = anisotropic_witness(Fn, Fraction(1, 2), budgets.Tmax)
            if w.kind != "inconclusive":
                return _map_back(F, w, M)
            return Witness(
                kind="inconclusive", lemma="mp2", points=[],
                note="square check failed but no negative found on the schedule",
            )
        return Witness(
            kind="inconclusive", lemma="mp2", points=[],
            note="completed-square shape; representable values are sparse "
            "(density probe recommended)",
        )

    # MP0, MP1-*, paper-gap: Dirichlet when applicable
    if report.definiteness == "positive-semi" and cond.get("gcd(F6,F5)=1"):
        try:
            return dirichlet_witness(F, budgets.convergents)
        except ValueError:
            pass
    return Witness(
        kind="inconclusive",
        lemma=route.lower(),
        points=[],
        note="no negativity engine applies; density probe recommended",
    )


def _map_back(F: BivarPoly, w: Witness, M) -> Witness:
    """Rewrites witness points found in normalized coordinates as points for
    the original polynomial via the unimodular matrix."""
    if M == [[1, 0], [0, 1]] or not w.points:
        return w
    pts = []
    for x, y, v in w.points:
        ox = M[0][0] * x + M[0][1] * y
        oy = M[1][0] * x + M[1][1] * y
        pts.append((ox, oy, v))
    out = Witness(kind=w.kind, lemma=w.lemma, points=pts, note=w.note, extra=w.extra)
    assert out.verify(F)
    return out


def _ecrecord_from_json(obj: dict) -> ECRecord:
    return ECRecord(
        a=Fraction(obj["a"]),
        b1=Fraction(obj["b1"]),
        b0=Fraction(obj["b0"]),
        G=BivarPoly.from_json_obj(obj["G"]),
        substitution={k: Fraction(v) for k, v in obj["substitution"].items()},
        heavy_monomials=[tuple(m) for m in obj.get("heavy_monomials", [])],
        x_flipped=obj.get("x_flipped", False),
    )
