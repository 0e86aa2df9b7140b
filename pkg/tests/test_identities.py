import math

import numpy as np
import pytest

from zetarecip import (
    DomainError,
    build_moebius,
    check_corollary_gaussian,
    check_fourier_cosh,
    check_mellin_h,
    check_parseval,
    check_perron_mertens,
    check_pnt_integral,
    h2,
    integrate_decaying,
    mertens_selfconvolution,
)
from zetarecip.identities import _merge_breakpoints, _mertens_product_integral


def test_fourier_cosh_corrected_at_zero(table):
    r = check_fourier_cosh(table, 0.0, form="corrected")
    assert r.passed
    assert r.rel_diff <= 1e-4
    assert r.rhs == pytest.approx(h2(table, 1.0).value, rel=1e-12)


def test_fourier_cosh_stated_carries_pi(table):
    stated = check_fourier_cosh(table, 0.0)
    corrected = check_fourier_cosh(table, 0.0, form="corrected")
    assert stated.rhs == pytest.approx(math.pi * corrected.rhs, rel=1e-15)
    assert stated.lhs == corrected.lhs
    assert any("observed lhs/rhs" in n for n in stated.notes)


def test_fourier_cosh_even_in_x(table):
    a = check_fourier_cosh(table, 0.5, form="corrected")
    b = check_fourier_cosh(table, -0.5, form="corrected")
    assert a.lhs == b.lhs and a.rhs == b.rhs


def test_fourier_cosh_rejects_unknown_form(table):
    with pytest.raises(DomainError):
        check_fourier_cosh(table, 0.0, form="other")


def test_parseval_one(table):
    r = check_parseval(table, 1.0)
    assert r.passed
    assert r.abs_diff <= 1e-6


def test_parseval_scaling(table):
    a = check_parseval(table, 2.0)
    b = check_parseval(table, 0.5)
    assert a.passed and b.passed
    assert abs(a.lhs - b.lhs / 2) <= a.lhs_err + b.lhs_err / 2 + 1e-12


def test_parseval_decays(table):
    r = check_parseval(table, 200.0)
    assert r.passed
    assert abs(r.lhs) < 0.02 and abs(r.rhs) < 0.02


def test_mellin_at_one(table):
    r = check_mellin_h(table, 1.0)
    assert r.rhs == pytest.approx(6 / math.pi**2, rel=1e-14)
    assert r.abs_diff <= 1e-8
    r3 = check_mellin_h(table, 1.0, x=3.0)
    assert r3.rhs == pytest.approx(6 / (3 * math.pi**2), rel=1e-14)
    assert r3.passed


def test_mellin_three_quarters(table):
    assert check_mellin_h(table, 0.75).passed


def test_mellin_domain(table):
    with pytest.raises(DomainError):
        check_mellin_h(table, 0.5)
    with pytest.raises(DomainError):
        check_mellin_h(table, 1.2)


def test_gaussian_corrected_small_beta(table):
    r = check_corollary_gaussian(table, 0.25, form="corrected")
    assert r.passed
    assert r.rel_diff <= 1e-3


def test_gaussian_domain(table):
    with pytest.raises(DomainError):
        check_corollary_gaussian(table, 0.0)


def test_pnt_single_term_closed_form():
    # the n = m = 1 term of the integral
    r = integrate_decaying(lambda t: np.exp(-t / 2) / (np.exp(-t) + 1), 1e-12)
    assert abs(r.value - math.pi / 2) <= 1e-11


def test_pnt_integral_reports_sign(table):
    res = check_pnt_integral(table, 2000)
    assert res.report.passed
    assert res.Q == pytest.approx(res.twoS, abs=1e-12)
    assert any("+2S" in n for n in res.report.notes)


def test_selfconvolution_small_T(small_table):
    assert mertens_selfconvolution(small_table, 4.0).value == pytest.approx(0.75, abs=1e-15)
    assert mertens_selfconvolution(small_table, 9.0).value == pytest.approx(0.75, abs=1e-15)
    assert mertens_selfconvolution(small_table, 1e6).value >= mertens_selfconvolution(small_table, 1e4).value


def test_selfconvolution_zero_segments(small_table):
    # M(2) = 0, so [4, 9) adds nothing
    v, _ = _mertens_product_integral(small_table, 0.0, 4.0, 9.0)
    assert v == 0.0


def test_merge_breakpoints():
    pts = _merge_breakpoints([4.0, 1.0, 4.0 * (1 + 1e-14), 9.0, 1.0])
    assert pts.tolist() == [1.0, 4.0, 9.0]


def test_perron_at_zero_moderate_T(table):
    r = check_perron_mertens(table, 0.0, T=1e6)
    assert r.passed
    assert r.rel_diff <= 1e-2


def test_perron_sieve_requirement():
    t = build_moebius(500)
    with pytest.raises(DomainError):
        check_perron_mertens(t, 1.0, T=1e6)
