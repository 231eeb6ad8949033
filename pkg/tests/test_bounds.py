import decimal
import math
from fractions import Fraction

import pytest

from trilab.bounds import (
    BoundReport,
    RationalPower,
    asymptotic_rate,
    dim_bound_lin,
    f_lower_bound,
    fk_base,
    fk_bound,
    fk_exponent,
    korner_bound,
    lm_mb_crossover,
    m_lower_bound_lm,
    m_lower_bound_mb,
    m_lower_bound_mb_hull,
    packing_check,
    packing_lhs,
    tech_crossover_alpha,
    tech_gap_analysis,
)
from trilab.dualgeom import f_oracle, m_oracle, phi_map, projective_points, SymmetricSet
from trilab.errors import PreconditionError
from trilab.f3core import min_weight

M_TABLE = {
    2: {2: 2, 4: 2, 6: 2, 8: 2},
    3: {2: 2, 4: 4, 6: 4, 8: 4, 10: 6, 12: 6, 14: 6},
}


def test_korner():
    r = korner_bound(3, 4)
    assert r.rhs == Fraction(81, 8) and float(r.rhs) == 10.125
    assert korner_bound(3, 1).rhs == 3
    assert korner_bound(3, 4, size=10).verdict
    assert not korner_bound(3, 4, size=11).verdict
    with pytest.raises(PreconditionError):
        korner_bound(2, 4)


def test_fredman_komlos():
    assert fk_base(3) == pytest.approx(1.5874, abs=1e-4)
    assert fk_base(3) > 1.5
    assert fk_exponent(4) == Fraction(3, 8)
    r = fk_bound(4, 1)
    assert r.rhs == RationalPower(Fraction(2), Fraction(3, 8))
    assert float(r.rhs) == pytest.approx(2**0.375, rel=1e-15)
    # exact verdicts: 2^(2/3 * 3) = 4
    assert fk_bound(3, 3, size=4).verdict
    assert not fk_bound(3, 3, size=5).verdict


def test_rational_power():
    p = RationalPower(Fraction(2), Fraction(2, 3))
    assert str(p) == "(2)^(2/3)"
    assert p.exceeds(Fraction(3, 2)) and not p.exceeds(Fraction(16, 10))
    with pytest.raises(ValueError):
        RationalPower(Fraction(2), Fraction(-1)).exceeds(1)


def test_dim_bound_lin():
    assert dim_bound_lin(13) == 6
    assert dim_bound_lin(4) == Fraction(15, 4) and dim_bound_lin(4) >= 3


def test_f_lower_bound():
    assert [f_lower_bound(d) for d in (1, 2, 3)] == [-14, -6, 2]
    for d in (1, 2, 3):
        assert f_oracle(d).value >= f_lower_bound(d)


def test_m_lower_bound_lm():
    assert m_lower_bound_lm(6, 3) == 1
    with pytest.raises(PreconditionError):
        m_lower_bound_lm(4, 3)
    with pytest.raises(PreconditionError):
        m_lower_bound_lm(10, 2)
    # n = 8d - a: the n/d term contributes -8 + a/d
    for d in (3, 7, 50, 1000):
        for a in (0, 1, 5, 24):
            if 8 * d - a < 2 * d:
                continue
            assert m_lower_bound_lm(8 * d - a, d) == 4 * d - 11 - Fraction(a, 3) + Fraction(a, d)
    for n, v in M_TABLE[3].items():
        if n >= 6:
            assert v >= m_lower_bound_lm(n, 3)


def test_lin2_arithmetic():
    # m(n, d) >= n - 4d + 4 once 2a/3 - 15 >= 0, i.e. for a >= 45/2
    for d in (3, 10, 100):
        for a in range(0, min(60, 6 * d + 1)):
            gap = m_lower_bound_lm(8 * d - a, d) - (8 * d - a - 4 * d + 4)
            assert gap == Fraction(2 * a, 3) - 15 + Fraction(a, d)


def test_m_lower_bound_mb_against_oracle():
    for d, table in M_TABLE.items():
        for n2, v in table.items():
            if n2 // 2 >= d:
                assert v >= m_lower_bound_mb(n2, d)
                assert v >= m_lower_bound_mb_hull(n2, d)
    assert m_oracle(16, 3) >= m_lower_bound_mb(16, 3)


def test_m_lower_bound_mb_is_least():
    for d in (2, 3, 5, 40):
        for n2 in range(2 * d, 12 * d, 2):
            m = m_lower_bound_mb(n2, d)
            n = n2 // 2
            ok = lambda mm: packing_lhs(n, (2 * n - mm - 1) // 4) <= 3 ** (n - d)
            assert ok(m)
            assert m == 0 or not ok(m - 1)


def test_m_lower_bound_mb_raw_values_dip():
    # literal least-m values: the floor in k makes them non-monotone
    assert [m_lower_bound_mb(n2, 3) for n2 in range(6, 16, 2)] == [2, 4, 6, 4, 6]
    assert [m_lower_bound_mb(n2, 2) for n2 in (4, 6, 8)] == [0, 2, 0]


def test_m_lower_bound_mb_hull_monotone():
    for d in (2, 3, 4, 10):
        vals = [m_lower_bound_mb_hull(n2, d) for n2 in range(2 * d, 24 * d + 1, 2)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))
        assert all(h >= m_lower_bound_mb(n2, d) for n2, h in zip(range(2 * d, 24 * d + 1, 2), vals))


def test_m_lower_bound_mb_errors():
    with pytest.raises(PreconditionError):
        m_lower_bound_mb(7, 2)
    with pytest.raises(PreconditionError):
        m_lower_bound_mb(4, 3)


def test_crossover_small_d():
    c = lm_mb_crossover(30)
    assert c is not None and 2 <= c
    n = int(c * 30)
    assert m_lower_bound_lm(n, 30) > m_lower_bound_mb(n, 30)
    assert all(m_lower_bound_lm(k, 30) <= m_lower_bound_mb(k, 30) for k in range(60, n, 2))


def test_packing():
    r = packing_check(4, 2, 1)
    assert (r.lhs, r.rhs, r.verdict) == (8, 9, True)
    for n in range(1, 8):
        for d in range(0, n + 1):
            assert packing_check(n, d, 0).verdict
    assert not packing_check(4, 2, 2).verdict
    with pytest.raises(PreconditionError):
        packing_check(3, 4, 1)


def test_packing_property_on_phi_codes():
    X = SymmetricSet(2, projective_points(2))
    U = phi_map(X)
    w = min_weight(U)
    k = (w - 1) // 2
    assert packing_check(U.n, U.rank, k).verdict


def test_asymptotic_rate():
    assert asymptotic_rate(6000) == pytest.approx(3.10, abs=0.01)
    assert asymptotic_rate(3) == pytest.approx(12 ** (1 / 3), rel=1e-15)
    assert round(asymptotic_rate(3), 3) == 2.289
    assert abs(asymptotic_rate(6000) - asymptotic_rate(3000)) < 0.005
    diffs = []
    d = 375
    while d <= 6000:
        diffs.append(abs(asymptotic_rate(2 * d) - asymptotic_rate(d)))
        d *= 2
    assert all(a > b for a, b in zip(diffs, diffs[1:]))
    with pytest.raises(PreconditionError):
        asymptotic_rate(2)


def test_asymptotic_rate_limit():
    # binom(2d, d/3) 2^(d/3) ~ exp(d * (2 H(1/6) + log(2) / 3))
    h = -(1 / 6) * math.log(1 / 6) - (5 / 6) * math.log(5 / 6)
    limit = math.exp(2 * h + math.log(2) / 3)
    assert asymptotic_rate(60000) == pytest.approx(limit, abs=2e-3)


def test_tech_alpha_zero():
    r = tech_gap_analysis(0, 3000)
    assert r.gamma_window == (Fraction(-5, 3000), Fraction(3, 3000))
    assert r.lhs_exponent >= math.log(3.05)
    assert r.rhs_exponent <= math.log(3.04)
    assert r.contradiction and r.gap > 0
    for e in r.endpoints:
        assert e.lhs_exponent > e.rhs_exponent
        assert e.m == (4 + e.gamma) * 3000
        assert e.n_prime == (e.m - 1) / 2
        assert e.m_prime == (4 * e.m - 2 * 4 * 3000) / 3


def test_tech_window_general():
    for alpha in (Fraction(1, 10), Fraction(1, 3)):
        for d in (10, 200):
            r = tech_gap_analysis(alpha, d)
            assert r.gamma_window == (2 * alpha / 3 - Fraction(5, d), 8 * alpha + Fraction(3, d))
    assert tech_gap_analysis(0.25, 100).alpha == Fraction(1, 4)


def test_tech_crossover():
    a = tech_crossover_alpha(3000)
    assert a > 0
    assert tech_gap_analysis(a, 3000).contradiction
    assert not tech_gap_analysis(a + Fraction(1, 10**4), 3000).contradiction


def test_tech_errors():
    with pytest.raises(PreconditionError):
        tech_gap_analysis(0, 9)
    with pytest.raises(PreconditionError):
        tech_gap_analysis(2, 100)


def test_tech_records():
    rows = tech_gap_analysis(0, 300).to_records()
    assert len(rows) == 2
    assert {r["contradiction"] for r in rows} <= {"yes", "no"}


def test_report_float_view_and_record():
    r = korner_bound(3, 4, size=9)
    assert r.float_view == "9.0"
    rec = r.to_record()
    assert rec == {
        "name": "korner", "inputs": "k=3;n=4", "lhs_exact": "9", "lhs": "9.0",
        "rhs_exact": "81/8", "rhs": "10.125", "verdict": "holds",
    }
    big = BoundReport("x", {}, None, 3**2000)
    with decimal.localcontext() as ctx:
        ctx.prec = 17
        assert big.float_view.replace("e", "E") == str(+decimal.Decimal(3**2000))
    assert fk_bound(3).to_record()["verdict"] == "n/a"
    assert float(fk_bound(3).to_record()["rhs"]) == pytest.approx(2 ** (2 / 3), rel=1e-15)
