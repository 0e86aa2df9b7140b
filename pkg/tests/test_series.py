import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetarecip import (
    AccuracyError,
    DomainError,
    H2Params,
    h2,
    h2_iterated,
    h_theta,
    hardy_littlewood,
    pnt_partial_sums,
    riesz_variant,
    zero_sum_h2,
    zeta,
)
from zetarecip.errors import PrecisionError
from zetarecip.series import h_theta_array, zero_terms

# int_0^inf h(t)^2 dt by scipy.quad on a 20000-term direct h(t)
H2_ORACLE = {1.0: 0.28727942049669897, 2.0: 0.1710610039245394}
# mpmath, 40 digits
HL_ORACLE = {1.0: -0.4805338007960736, 10.0: -0.2676456086485979}


def test_h_theta_large_t(small_table):
    r = h_theta(small_table, 10.0)
    assert abs(r.value - math.exp(-10)) <= 1e-15


def test_h_theta_direct_sum(small_table):
    n = np.arange(1, 13)
    direct = sum(int(small_table.mu[k]) * math.exp(-k * k) for k in n)
    assert abs(h_theta(small_table, 1.0).value - direct) <= 2e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=1e-4, max_value=20.0))
def test_h_theta_tail_bound_is_rigorous(t):
    table = _table()
    loose = h_theta(table, t, eps=1e-6)
    tight = h_theta(table, t, eps=1e-18)
    assert abs(loose.value - tight.value) <= loose.tail_estimate + tight.tail_estimate + 1e-15 * tight.terms_used


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=1.0, max_value=40.0))
def test_h_theta_positive_beyond_one(t):
    assert h_theta(_table(), t).value > 0


def test_h_theta_array_matches_scalar(small_table):
    ts = np.array([1e-3, 0.01, 0.5, 1.0, 7.0])
    vals, tails = h_theta_array(small_table, ts)
    for t, v, e in zip(ts, vals, tails):
        r = h_theta(small_table, float(t))
        assert abs(v - r.value) <= 1e-14 * r.terms_used
        assert e == r.tail_estimate


def test_h_theta_domain(small_table):
    with pytest.raises(DomainError):
        h_theta(small_table, 0.0)
    with pytest.raises(DomainError):
        h_theta(small_table, 1e-12)  # cutoff beyond the sieve


def test_riesz_variant(small_table):
    r = riesz_variant(small_table, 0.0)
    assert abs(r.value - 6 / math.pi**2) <= r.tail_estimate
    assert riesz_variant(small_table, 3.0, n_max=1).value == math.exp(-3.0)
    big = [abs(riesz_variant(small_table, t, n_max=2000).value) for t in (1e2, 1e4, 1e6)]
    assert big[0] > big[1] > big[2]
    with pytest.raises(DomainError):
        riesz_variant(small_table, -1.0)


def test_h2_against_quadrature_oracle(table):
    for x, ref in H2_ORACLE.items():
        r = h2(table, x)
        assert abs(r.value - ref) <= r.tail_estimate + 1e-9
        assert r.heuristic


def test_h2_reflection_is_exact(table):
    assert h2(table, 2.0).value == h2(table, 0.5).value / 2
    assert h2(table, 0.5).diagnostics["reflected"]


def test_h2_functional_equation_independent_paths(table):
    y = 2.0
    a = h2_iterated(table, y)
    b = h2_iterated(table, 1 / y)
    assert abs(a.value - b.value / y) <= a.tail_estimate + b.tail_estimate / y


def test_h2_target_too_tight(table):
    with pytest.raises(AccuracyError) as info:
        h2(table, 1e-5, H2Params(1e-12))
    assert info.value.achieved > 1e-12


def test_h2_small_x_limit(table):
    r = h2(table, 1e-4, H2Params(1e-6))
    assert abs(r.value + 12 / math.pi**2) < 0.05


def test_h2_domain(table):
    with pytest.raises(DomainError):
        h2(table, 0.0)
    with pytest.raises(DomainError):
        H2Params(0.0)


def test_h2_threads_bit_identical(table):
    a = h2(table, 0.01, H2Params(1e-6), threads=1)
    b = h2(table, 0.01, H2Params(1e-6), threads=4)
    assert a.value == b.value and a.tail_estimate == b.tail_estimate


def test_hardy_littlewood(ev):
    assert hardy_littlewood(ev, 0.0).value == 0.0
    for x, ref in HL_ORACLE.items():
        r = hardy_littlewood(ev, x)
        assert abs(r.value - ref) <= max(1e-10, r.tail_estimate)
    x = 1e-3
    z3, z5 = zeta(ev, 3.0).real, zeta(ev, 5.0).real
    approx = -x / z3 + x * x / (2 * z5)
    assert abs(hardy_littlewood(ev, x).value - approx) < x**3


def test_hardy_littlewood_cancellation_guard(ev):
    with pytest.raises(PrecisionError):
        hardy_littlewood(ev, 30.0)


def test_pnt_single_term(small_table):
    p = pnt_partial_sums(small_table, 1)
    assert p.A == 1.0
    assert p.S == pytest.approx(math.pi / 4, abs=1e-16)
    assert p.Q == pytest.approx(math.pi / 2, abs=1e-15)


def test_pnt_small_A(small_table):
    assert abs(pnt_partial_sums(small_table, 2000).A) < 0.05


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=1500))
def test_pnt_pairing_identity(N):
    p = pnt_partial_sums(_table(), N)
    assert abs(p.S - math.pi / 4 * p.A**2) <= 1e-12


def test_zero_sum_constant_term(ev, zeros):
    r = zero_sum_h2(ev, zeros, 0.01, 0)
    assert r.value == -12 / math.pi**2


def test_zero_sum_terms_decay(ev, zeros):
    c = np.abs(zero_terms(ev, zeros, 30))
    g = zeros.gammas[:30]
    scaled = c / np.exp(-math.pi * g / 2)
    # the decay is e^{-pi g/2} up to factors polynomial in g
    assert np.all(scaled < 1e3) and np.all(scaled > 1e-3)
    assert np.all(np.diff(c[::5]) < 0)


def test_zero_sum_contract(ev, zeros):
    with pytest.raises(DomainError):
        zero_sum_h2(ev, zeros, 2.0, 5)
    with pytest.raises(DomainError):
        zero_sum_h2(ev, zeros, 0.1, len(zeros) + 1)


_cache = {}


def _table():
    from zetarecip import build_moebius

    if "t" not in _cache:
        _cache["t"] = build_moebius(10**5)
    return _cache["t"]
