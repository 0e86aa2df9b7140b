import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import gamma_lanczos, zeta_direct, zeta_prime_direct
from zetarecip import (
    DomainError,
    PoleError,
    ZerosFileError,
    ZetaEvaluator,
    gamma_product,
    inv_abs_zeta_sq_one_line,
    load_zeros,
    zeta,
    zeta_prime,
)
from zetarecip.errors import ZerosValidationError
from zetarecip.zetafn import EULER_GAMMA, parse_zeros, zeta_with_error

# frozen from mpmath at 30 digits
ZETA_REF = [
    (2, 1.6449340668482264),
    (3, 1.2020569031595942),
    (0.5, -1.4603545088095868),
    (0.5 + 14j, 0.02224114260999359 - 0.10325812326645006j),
    (0.75 + 5j, 0.7322122488042883 + 0.20379320276412619j),
    (1 + 2j, 0.5981655697623818 - 0.35185474521784527j),
    (2 + 50j, 0.7739509331566907 + 0.1259447158263342j),
    (0.6 + 99j, 0.3937221529796457 + 0.4477963984943649j),
    (0.5 + 300j, 0.47745567187848253 + 0.6079021332795531j),
    (1 + 0.002j, 0.5772156842822608 - 499.9998543683063j),
]

ZETA_PRIME_REF = [
    (2, -0.9375482543158438),
    (0.5, -3.9226461392091516),
    (0.75 + 5j, 0.11670148122240839 - 0.10508300742755877j),
    (0.5 + 14.134725141734693j, 0.7832965118670308 + 0.12469982974817166j),
]


@pytest.mark.parametrize("s, ref", ZETA_REF)
def test_zeta_reference_values(ev, s, ref):
    assert abs(zeta(ev, s) - ref) <= 1e-12 * max(1.0, abs(ref))


@pytest.mark.parametrize("s, ref", ZETA_PRIME_REF)
def test_zeta_prime_reference_values(ev, s, ref):
    assert abs(zeta_prime(ev, s) - ref) <= 1e-11 * max(1.0, abs(ref))


def test_against_dirichlet_series(ev):
    for s in (2.0, 3.0, 2 + 3j, 1.5 - 7j):
        assert abs(zeta(ev, s) - zeta_direct(s)) < 1e-10
    assert abs(zeta_prime(ev, 2.0) - zeta_prime_direct(2.0)) < 1e-10


def test_zeta_prime_finite_difference(ev):
    s, h = 0.75 + 5j, 1e-5
    fd = (zeta(ev, s + h) - zeta(ev, s - h)) / (2 * h)
    assert abs(zeta_prime(ev, s) - fd) <= 1e-6
    s = 0.5
    fd = (zeta(ev, s + h) - zeta(ev, s - h)) / (2 * h)
    assert zeta_prime(ev, s).real < 0
    assert abs(zeta_prime(ev, s) - fd) <= 1e-6


def test_residue_at_pole(ev):
    for e in (1e-2, 1e-4, 1e-6):
        assert abs(e * zeta(ev, 1 + e) - 1) < 2 * e
    e = 2.0**-20  # exact offset, so 1/e carries no rounding
    assert abs(zeta(ev, 1 + e) - 1 / e - EULER_GAMMA) < 1e-6


def test_laurent_branch_is_continuous(ev):
    th = ev.pole_threshold
    lo = zeta(ev, 1 + th * (1 - 1e-9))
    hi = zeta(ev, 1 + th * (1 + 1e-9))
    assert abs((lo - hi) * th) < 1e-6


def test_domain_errors(ev):
    with pytest.raises(PoleError):
        zeta(ev, 1.0)
    with pytest.raises(DomainError):
        zeta(ev, -0.5 + 3j)
    with pytest.raises(DomainError):
        zeta(ev, complex("nan"))


def test_vectorised_call_matches_scalar(ev):
    s = np.array([2.0, 0.5 + 14j, 1 + 2j])
    vals = zeta(ev, s)
    assert vals.shape == (3,)
    for si, v in zip(s, vals):
        assert v == zeta(ev, complex(si))


def test_error_estimate_is_honest(ev):
    for s, ref in ZETA_REF:
        val, err = zeta_with_error(ev, s)
        assert abs(val - ref) <= err + 1e-14 * max(1.0, abs(ref))


@settings(max_examples=60, deadline=None)
@given(
    st.floats(min_value=0.05, max_value=5.0),
    st.floats(min_value=-200.0, max_value=200.0),
)
def test_conjugate_symmetry(sigma, t):
    ev = ZetaEvaluator()
    s = complex(sigma, t)
    if abs(s - 1) < 1e-3:
        return
    assert abs(zeta(ev, s.conjugate()) - zeta(ev, s).conjugate()) <= 1e-13 * max(1.0, abs(zeta(ev, s)))


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=0.2, max_value=3.0),
    st.floats(min_value=2.0, max_value=150.0),
)
def test_cutoff_and_order_robustness(sigma, t):
    s = complex(sigma, t)
    a = zeta(ZetaEvaluator(), s)
    b = zeta(ZetaEvaluator(cutoff=200, bernoulli_order=16), s)
    assert abs(a - b) <= 1e-11 * max(1.0, abs(a))


def test_inv_abs_zeta_sq(ev):
    assert inv_abs_zeta_sq_one_line(ev, 0.0) == 0.0
    assert abs(inv_abs_zeta_sq_one_line(ev, 1e-4) / 4e-8 - 1) < 1e-3
    z = zeta(ev, 1 + 2j)
    assert abs(inv_abs_zeta_sq_one_line(ev, 1.0) - 1 / abs(z) ** 2) < 1e-10
    assert abs(inv_abs_zeta_sq_one_line(ev, 1.0) - 2.0763955309918316) < 1e-10
    t = np.array([-3.0, 3.0])
    v = inv_abs_zeta_sq_one_line(ev, t)
    assert v[0] == pytest.approx(v[1], rel=1e-14)


def test_gamma_product():
    assert abs(gamma_product(0.0) - math.pi * math.sqrt(2)) < 1e-14
    g = 14.134725
    ref = gamma_lanczos(0.25 + 0.5j * g) * gamma_lanczos(0.75 - 0.5j * g)
    assert abs(gamma_product(g) - ref) <= 1e-8 * abs(ref)
    assert abs(gamma_product(g) - (1.0118650405378099e-09 - 1.0118650405378099e-09j)) < 1e-20
    big = gamma_product(50.0)
    assert abs(big - 3.4534726782097556e-34 * (1 - 1j)) < 1e-45
    for g in (20.0, 100.0, 400.0):
        mod = abs(gamma_product(g))
        assert mod == pytest.approx(2 * math.pi * math.exp(-math.pi * g / 2), rel=1e-12)
    assert gamma_product(-g) == gamma_product(g).conjugate()


def _write(tmp_path, text, name="z.txt"):
    p = tmp_path / name
    p.write_bytes(text.encode("ascii"))
    return p


def test_zeros_file_three_entries(tmp_path):
    zl = load_zeros(_write(tmp_path, "14.134725142\n21.022039639\n25.010857580"))
    assert len(zl) == 3


def test_zeros_file_comments_and_crlf(tmp_path):
    zl = load_zeros(_write(tmp_path, "# ordinates\r\n14.134725142\r\n\r\n21.022039639\r\n"))
    assert len(zl) == 2


def test_zeros_file_empty(tmp_path):
    assert len(load_zeros(_write(tmp_path, ""))) == 0


def test_zeros_file_descending(tmp_path):
    with pytest.raises(ZerosValidationError):
        load_zeros(_write(tmp_path, "14.134725142\n25.010857580\n21.022039639\n"))


def test_zeros_file_not_a_zero(tmp_path):
    with pytest.raises(ZerosValidationError):
        load_zeros(_write(tmp_path, "14.134725142\n22.5\n"))


def test_zeros_file_bad_line_reports_line_number():
    with pytest.raises(ZerosFileError) as info:
        parse_zeros("# header\n14.134725142\nabc\n")
    assert info.value.lineno == 3


def test_bundled_zeros(zeros):
    assert len(zeros) >= 100
    assert np.all(np.diff(zeros.gammas) > 0)
