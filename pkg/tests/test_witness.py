from fractions import Fraction

import pytest

from sexticlab.classify import classify, ecform_normalize
from sexticlab.parser import parse
from sexticlab.poly import BivarPoly
from sexticlab.witness import (
    SearchBudgets,
    Witness,
    _iroot,
    _map_back,
    anisotropic_witness,
    branch_follow,
    dirichlet_witness,
    danilov_witness,
    growth_diagnostic,
    ray_witness,
    rouse_witness,
    weighted_cubic_sign_search,
    witness_for,
)


# -- Witness container --------------------------------------------------------


def test_witness_verify_checks_values():
    F = parse("x^2 + y^2")
    good = Witness("small-core-sequence", "t", [(1, 2, Fraction(5))])
    assert good.verify(F)
    bad = Witness("small-core-sequence", "t", [(1, 2, Fraction(6))])
    assert not bad.verify(F)
    # negative-value kind additionally requires an actual negative
    nn = Witness("negative-value", "t", [(1, 2, Fraction(5))])
    assert not nn.verify(F)


def test_witness_json_shape():
    w = Witness("negative-value", "t", [(1, -2, Fraction(-3))], note="n", extra={"k": 7})
    obj = w.to_json_obj()
    assert obj["points"] == [[1, -2, "-3"]]
    assert obj["extra"] == {"k": "7"}
    assert w.min_value() == -3


def test_iroot():
    assert _iroot(0, 3) == 0
    assert _iroot(26, 3) == 2
    assert _iroot(27, 3) == 3
    assert _iroot(10**18, 6) == 1000
    assert _iroot(10**18 - 1, 6) == 999


# -- Dirichlet convergent walk ------------------------------------------------


@pytest.mark.parametrize("k", [2, 3, 5])
def test_dirichlet_quadratic_fixtures(k):
    F = parse(f"(x^2 - {k}*y^2)^2*(x^2 + y^2) + x^5")
    w = dirichlet_witness(F, 20)
    assert w.kind == "negative-value"
    assert w.verify(F)


def test_dirichlet_requires_semidefinite():
    with pytest.raises(ValueError):
        dirichlet_witness(parse("x^6 + y^6 + 1"), 8)  # definite, no root direction
    with pytest.raises(ValueError):
        dirichlet_witness(parse("x^6 - y^6"), 8)


def test_dirichlet_requires_coprime_f5():
    # F5 = x^5 shares the factor x^2 - 2y^2? no; build an actual violation
    F = parse("(x^2 - 2*y^2)^2*(x^2 + y^2) + (x^2 - 2*y^2)*x^3")
    with pytest.raises(ValueError):
        dirichlet_witness(F, 8)


def test_dirichlet_rational_direction():
    # F6 vanishes along y = 0 only; quintic term goes negative on one sign
    F = parse("x^4*y^2 + y^6 + x^5 + 1")
    # F6 = x^4 y^2 + y^6 is semi-definite with the rational root direction
    w = dirichlet_witness(F, 24)
    assert w.kind == "negative-value"
    assert all(F.eval(x, y) == v for x, y, v in w.points)


def test_dirichlet_inconclusive_on_tiny_budget():
    F = parse("(x^2 - 2*y^2)^2*(x^2 + y^2) + x^5")
    w = dirichlet_witness(F, 1)
    # either it already found one or reports the exhausted budget honestly
    if w.kind == "inconclusive":
        assert "convergents" in w.note


# -- anisotropic schedule -----------------------------------------------------


def test_anisotropic_finds_negative():
    F = parse("x^6 + x^4*y + x*y^4")
    w = anisotropic_witness(F, Fraction(1, 2), 10**9)
    assert w.kind == "negative-value"
    assert w.verify(F)
    x, y, v = w.points[0]
    assert v < 0
    assert "|F6|" in w.extra and "|F5|" in w.extra


def test_anisotropic_theta_validation():
    F = parse("x^6 + y^6")
    with pytest.raises(ValueError):
        anisotropic_witness(F, Fraction(0), 100)
    with pytest.raises(ValueError):
        anisotropic_witness(F, Fraction(3, 2), 100)


def test_anisotropic_budget_exhaustion_note():
    w = anisotropic_witness(parse("x^6 + y^6"), Fraction(1, 2), 2**10)
    assert w.kind == "inconclusive"
    assert "T=1024" in w.note


# -- weighted cubic -----------------------------------------------------------


def test_weighted_cubic_finds_negative():
    F = parse("x^6 - x^2*y^2")
    w = weighted_cubic_sign_search(F, 10**9)
    assert w.kind == "negative-value"
    assert w.verify(F)
    assert int(str(w.extra["lead_value"])) < 0


def test_weighted_cubic_nonnegative_lead_inconclusive():
    F = parse("x^6 + x^2*y^2 + y^4")
    w = weighted_cubic_sign_search(F, 10**6)
    assert w.kind == "inconclusive"
    assert "nonnegative" in w.note


def test_weighted_cubic_zero_lead_inconclusive():
    F = parse("x^5*y^40")  # not a sextic but the layers are all zero
    w = weighted_cubic_sign_search(parse("x*y"), 10**6)
    assert w.kind == "inconclusive"


# -- branch following ---------------------------------------------------------


def test_branch_follow_negative():
    # the core has the exact integer branch y = x^2, where F = 10 - y
    core = parse("y - x^2")
    F = core * core - parse("y") + BivarPoly.const(10)
    w = branch_follow(F, core, 10**6)
    assert w.kind == "negative-value"
    assert w.verify(F)


def test_branch_follow_small_core_sequence():
    core = parse("y^2 - x^3 - x")
    F = core * core + BivarPoly.const(1)
    w = branch_follow(F, core, 10**4)
    assert w.kind == "small-core-sequence"
    for x, y, v in w.points:
        assert v >= 1  # F = core^2 + 1 >= 1 always


def test_branch_follow_no_branch_raises():
    core = parse("x^2 + y^2 + 1")  # empty real locus
    with pytest.raises(ValueError):
        branch_follow(parse("x^6 + y^6"), core, 100)


# -- growth diagnostic --------------------------------------------------------


def test_growth_diagnostic_reports_ratio():
    F = parse("x^4 + y^4 + 1")
    w = growth_diagnostic(F, Fraction(1, 2), box=12)
    assert w.kind == "dearth-diagnostic"
    assert "min_ratio" in w.extra
    with pytest.raises(ValueError):
        growth_diagnostic(F, Fraction(-1), box=4)


# -- elliptic families --------------------------------------------------------


def test_rouse_witness_negative_family():
    F = parse("(y^2 - x^3 - x)^2 - y + 100")
    rec = ecform_normalize(F)
    w = rouse_witness(F, rec, 25)
    assert w.kind == "negative-value"
    assert w.verify(F)
    assert w.min_value() < -10**6


def test_rouse_requires_nonzero_b1():
    F = parse("(y^2 - x^3)^2 - y + 10")
    rec = ecform_normalize(F)
    with pytest.raises(ValueError):
        rouse_witness(F, rec, 5)
    w = danilov_witness(F, rec, 12)
    assert w.kind == "negative-value"
    assert w.verify(F)


def test_danilov_requires_zero_b1():
    F = parse("(y^2 - x^3 - x)^2 - y + 100")
    rec = ecform_normalize(F)
    with pytest.raises(ValueError):
        danilov_witness(F, rec, 5)


# -- indefinite leading form --------------------------------------------------


def test_ray_witness_negative():
    F = parse("x^6 - y^6 + x*y + 3")
    w = ray_witness(F)
    assert w.kind == "negative-value"
    assert w.verify(F)


def test_ray_witness_inconclusive_when_definite():
    w = ray_witness(parse("x^6 + y^6"), box=4)
    assert w.kind == "inconclusive"


# -- map back through a unimodular matrix -------------------------------------


def test_map_back_roundtrip():
    # witness in sheared coordinates (x, y) -> original via M
    F = parse("x^6 - y^6 + 1")
    M = [[1, 1], [0, 1]]
    # normalized polynomial G(x, y) = F(x + y, y)
    G = F.subs(BivarPoly.x() + BivarPoly.y(), BivarPoly.y())
    w = ray_witness(G)
    assert w.kind == "negative-value"
    back = _map_back(F, w, M)
    assert back.verify(F)


# -- dispatch -----------------------------------------------------------------


def test_dispatch_mp3_ec_family():
    F = parse("(y^2 - x^3 - x)^2 - y + 100")
    w = witness_for(F)
    assert w.kind == "negative-value"
    assert w.verify(F)


def test_dispatch_indefinite():
    w = witness_for(parse("x^6 - y^6 + x*y"))
    assert w.kind == "negative-value"


def test_dispatch_dirichlet_route():
    F = parse("(x^2 - 2*y^2)^2*(x^2 + y^2) + x^5")
    w = witness_for(F, budgets=SearchBudgets(convergents=24))
    assert w.kind == "negative-value"
    assert w.verify(F)


def test_dispatch_mp2_completed_square_inconclusive():
    core = parse("y*(x^2 - y) + x*(x^2 - 2*y)")
    F = core * core + BivarPoly.const(3)
    w = witness_for(F)
    assert w.kind == "inconclusive"
    assert "density probe" in w.note


def test_dispatch_not_a_sextic_diagnostic():
    w = witness_for(parse("x^4 + y^4"), budgets=SearchBudgets(box=10))
    assert w.kind == "dearth-diagnostic"


def test_dispatch_positive_definite_inconclusive():
    w = witness_for(parse("x^6 + y^6 + 1"))
    assert w.kind == "inconclusive"


def test_dispatch_respects_budgets():
    # tiny Tmax starves the anisotropic schedule on an MP3 shape with x^2 | F5
    # failing; the engine must come back inconclusive rather than loop
    F = parse("x^6 + x*y^4 + y^6")
    rep = classify(F)
    if rep.route.startswith("MP"):
        w = witness_for(F, rep, SearchBudgets(Tmax=4))
        assert isinstance(w, Witness)
