import math
from fractions import Fraction

import pytest

from sexticlab.density import (
    DensityError,
    DensityReport,
    certified_box,
    certified_form_floor,
    count_range,
    distinct_values_up_to,
    growth_exponent,
    landau_baseline,
    stanley_probe,
    two_squares_direct,
    _iroot_int,
    _lower_abs_sum,
)
from sexticlab.forms import BinaryForm
from sexticlab.parser import parse


def brute_count(F, N, M):
    vals = set()
    for x in range(-M, M + 1):
        for y in range(-M, M + 1):
            v = F.eval(x, y)
            if v.denominator == 1 and N <= v < 2 * N:
                vals.add(int(v))
    return len(vals)


# -- certified floor and box --------------------------------------------------


def test_certified_floor_is_valid_bound():
    F = parse("x^6 + y^6")
    form = BinaryForm.from_poly(F)
    c = certified_form_floor(form)
    assert c > 0
    for x in range(-7, 8):
        for y in range(-7, 8):
            if x or y:
                assert F.eval(x, y) >= c * max(abs(x), abs(y)) ** 6


def test_certified_floor_rejects_semidefinite():
    with pytest.raises(DensityError):
        certified_form_floor(BinaryForm.from_poly(parse("x^6")))
    with pytest.raises(DensityError):
        certified_form_floor(BinaryForm.from_poly(parse("x^6 - y^6")))


def test_certified_floor_cross_term_form():
    F = parse("x^2 + x*y + y^2")
    c = certified_form_floor(BinaryForm.from_poly(F))
    # exact minimum of the normalized form on the boundary is 3/4
    assert 0 < c <= Fraction(3, 4)


def test_certified_box_minimality():
    F = parse("x^6 + y^6 + x - 3")
    bound = 2 * 10**4
    M, c = certified_box(F, bound)
    d = 6
    S = _lower_abs_sum(F, d)

    def margin(m):
        return c * Fraction(m) ** d - S * Fraction(m) ** (d - 1)

    assert margin(M) > bound
    assert M == 1 or margin(M - 1) <= bound


def test_certified_box_covers_all_representations():
    F = parse("x^2 + y^2")
    N = 50
    M, _c = certified_box(F, 2 * N)
    # any representation of a value < 2N must satisfy |x|, |y| <= M
    for x in range(-3 * M, 3 * M + 1):
        for y in range(-3 * M, 3 * M + 1):
            if max(abs(x), abs(y)) > M:
                assert F.eval(x, y) >= 2 * N


# -- count_range --------------------------------------------------------------


def test_count_matches_brute_oracle_quadratic():
    F = parse("x^2 + y^2")
    for N in (10, 50, 333):
        rep = count_range(F, N)
        assert rep.certified
        assert rep.count == brute_count(F, N, rep.box)


def test_count_matches_brute_oracle_sextic():
    F = parse("x^6 + y^6")
    rep = count_range(F, 10**4)
    assert rep.count == brute_count(F, 10**4, rep.box)


def test_count_frozen_value_sextic():
    rep = count_range(parse("x^6 + y^6"), 10**6)
    assert rep.count == 19
    assert rep.certified and rep.mode == "bitmap"


def test_count_rejects_tiny_n_and_zero_poly():
    with pytest.raises(DensityError):
        count_range(parse("x^2 + y^2"), 1)
    rep = count_range(parse("0"), 100)
    assert rep.count == 0 and "zero polynomial" in rep.notes


def test_bitmap_and_dedup_agree():
    F = parse("x^2 + 2*y^2 + x")
    N = 400
    a = count_range(F, N, mem_bits=10**9)
    b = count_range(F, N, mem_bits=1)  # forces the sorted-dedup fallback
    assert a.mode == "bitmap" and b.mode == "dedup"
    assert a.count == b.count


def test_mem_env_var(monkeypatch):
    monkeypatch.setenv("SEXTIC_SIEVE_MEM", "1")
    rep = count_range(parse("x^2 + y^2"), 100)
    assert rep.mode == "dedup"
    monkeypatch.delenv("SEXTIC_SIEVE_MEM")
    rep = count_range(parse("x^2 + y^2"), 100)
    assert rep.mode == "bitmap"


def test_worker_determinism():
    F = parse("x^6 + y^6 + x*y")
    base = count_range(F, 2000, workers=1).to_json_obj()
    for w in (2, 5):
        assert count_range(F, 2000, workers=w).to_json_obj() == base


def test_uncertified_box_notes():
    rep = count_range(parse("x^6 + x^2*y^3"), 1000)
    assert not rep.certified
    assert any("not certified" in n for n in rep.notes)


def test_report_json_and_csv():
    rep = count_range(parse("x^2 + y^2"), 128)
    obj = rep.to_json_obj()
    assert obj["schema"] == "1"
    assert obj["range"] == [128, 256]
    assert obj["count"] == rep.count
    row = rep.csv_row().split(",")
    assert int(row[0]) == 128 and int(row[1]) == rep.count


# -- growth exponent ----------------------------------------------------------


def test_distinct_values_up_to_oracle():
    F = parse("x^2 + y^2")
    n = distinct_values_up_to(F, 100)
    # 0 plus the sums of two squares up to 100
    assert n == two_squares_direct(100) + 1


def test_growth_exponent_sextic_diagonal():
    F = parse("x^6 + y^6")
    out = growth_exponent(F, [10**4, 10**5, 10**6, 10**7])
    assert abs(out["slope"] - 1 / 3) < 0.08
    counts = [c for _N, c in out["counts"]]
    assert counts == sorted(counts)


def test_growth_exponent_validation():
    with pytest.raises(DensityError):
        growth_exponent(parse("x^6 + y^6"), [10, 100])
    with pytest.raises(DensityError):
        growth_exponent(parse("x^6 - y^6"), [10, 100, 1000])


# -- sums of two squares ------------------------------------------------------


def test_landau_sieve_matches_direct():
    count, ratio = landau_baseline(10**4)
    assert count == two_squares_direct(10**4)
    assert 0.5 < ratio < 1.2


def test_landau_ratio_near_constant():
    _count, ratio = landau_baseline(10**5)
    # Landau-Ramanujan constant is 0.76422; slow convergence from above
    assert abs(ratio - 0.76422) < 0.12


def test_landau_rejects_small():
    with pytest.raises(DensityError):
        landau_baseline(50)


def test_iroot_int():
    assert _iroot_int(63, 6) == 1
    assert _iroot_int(64, 6) == 2
    assert _iroot_int(10**12, 6) == 100


# -- normalized ladder --------------------------------------------------------


def test_stanley_probe_rows():
    F = parse("x^2 + y^2")
    out = stanley_probe(F, [100, 200, 400, 800])
    assert len(out["rows"]) == 4
    for N, count, norm in out["rows"]:
        assert abs(norm - count * math.sqrt(math.log(N)) / N) < 1e-12
    assert isinstance(out["bounded_looking"], bool)


def test_stanley_probe_sextic_values_sparse():
    out = stanley_probe(parse("x^6 + y^6"), [10**4, 10**5, 10**6])
    # sextic value sets thin out much faster than N / sqrt(log N)
    norms = [r[2] for r in out["rows"]]
    assert norms[-1] < norms[0]
    assert out["bounded_looking"]
