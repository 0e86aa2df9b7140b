"""Riemann zeta on vertical lines by Euler-Maclaurin summation.

Everything here works on complex numpy arrays as well as scalars; scalar
input gives a scalar back.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import bernoulli

from .errors import DomainError, PoleError, ZerosFileError, ZerosValidationError

EULER_GAMMA = 0.57721566490153286061

# chunk size (in complex terms) for the direct-sum matrix
_CHUNK_TERMS = 1 << 20


def _bernoulli_coeffs(order: int) -> np.ndarray:
    """B_{2k} / (2k)! for k = 1..order."""
    b = bernoulli(2 * order)
    return np.array([b[2 * k] / math.factorial(2 * k) for k in range(1, order + 1)])


@dataclass(frozen=True)
class ZetaEvaluator:
    """Settings for the Euler-Maclaurin evaluator.

    The direct-sum length auto-scales to ``max(cutoff, 2*|Im s|)`` so the
    Bernoulli tail stays small at larger heights.
    """

    cutoff: int = 64
    bernoulli_order: int = 12
    pole_threshold: float = 1e-3
    stieltjes_gamma0: float = EULER_GAMMA
    _coeffs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.cutoff < 2:
            raise DomainError("cutoff must be at least 2")
        if self.bernoulli_order < 1:
            raise DomainError("bernoulli_order must be positive")
        if not self.pole_threshold > 0:
            raise DomainError("pole_threshold must be positive")
        object.__setattr__(self, "_coeffs", _bernoulli_coeffs(self.bernoulli_order))

    def terms_for(self, s) -> int:
        s = np.asarray(s)
        height = float(np.max(np.abs(s.imag))) if s.size else 0.0
        return max(self.cutoff, int(math.ceil(2.0 * height)))


DEFAULT_EVALUATOR = ZetaEvaluator()


def _check_domain(s: np.ndarray) -> None:
    if np.any(~(s.real > 0)):
        raise DomainError("zeta evaluator supports Re(s) > 0 only")
    if np.any(s == 1):
        raise PoleError("zeta has a pole at s = 1")


def _em_parts(ev: ZetaEvaluator, s: np.ndarray, derivative: bool):
    """Return (value, error_bound) of zeta or zeta' at the flat array ``s``."""
    N = ev.terms_for(s)
    logn = np.log(np.arange(1, N, dtype=float))
    direct = np.empty(s.shape, dtype=complex)
    rms = np.empty(s.shape)  # RMS rounding of the direct sum, phase error included
    step = max(1, _CHUNK_TERMS // max(N, 1))
    for i in range(0, s.size, step):
        blk = s[i : i + step, None]
        powers = np.exp(-blk * logn)
        w = np.exp(-2.0 * blk.real * logn) * (1.0 + (blk.imag * logn) ** 2)
        if derivative:
            w = w * logn**2
        rms[i : i + step] = np.sqrt(w.sum(axis=1))
        if derivative:
            direct[i : i + step] = -(powers * logn).sum(axis=1)
        else:
            direct[i : i + step] = powers.sum(axis=1)

    lnN = math.log(N)
    Ns = np.exp(-s * lnN)  # N^{-s}
    if derivative:
        head = (
            -lnN * N * Ns / (s - 1)
            - N * Ns / (s - 1) ** 2
            - 0.5 * lnN * Ns
        )
    else:
        head = N * Ns / (s - 1) + 0.5 * Ns

    # Bernoulli corrections: c_k * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    poly = s.copy()  # rising product for k = 1
    dpoly = np.ones_like(s)  # its derivative
    corr = np.zeros_like(s)
    Npow = Ns / N
    last = np.zeros(s.shape)
    for k, c in enumerate(ev._coeffs, start=1):
        if derivative:
            term = c * Npow * (dpoly - lnN * poly)
        else:
            term = c * poly * Npow
        corr += term
        last = np.abs(term)
        # advance to k+1: multiply by (s+2k-1)(s+2k)
        a, b = s + 2 * k - 1, s + 2 * k
        dpoly = dpoly * a * b + poly * (a + b)
        poly = poly * a * b
        Npow = Npow / (N * N)
    # the next omitted term bounds the remainder up to the usual |s+2K-1|/(sigma+2K-1) factor
    K = ev.bernoulli_order
    factor = np.abs(s + 2 * K - 1) / (s.real + 2 * K - 1)
    nxt = np.abs(poly * Npow) * abs(
        bernoulli(2 * K + 2)[2 * K + 2] / math.factorial(2 * K + 2)
    )
    if derivative:
        nxt = nxt * (lnN + np.abs(dpoly / poly))
    err = factor * nxt + 3.3e-16 * (3.0 * rms + np.abs(head) + last)
    return direct + head + corr, err


def _dispatch(ev, s, derivative):
    arr = np.asarray(s, dtype=complex)
    flat = arr.ravel()
    _check_domain(flat)
    val, err = _em_parts(ev, flat, derivative)
    if arr.ndim == 0:
        return complex(val[0]), float(err[0])
    return val.reshape(arr.shape), err.reshape(arr.shape)


def zeta(ev: ZetaEvaluator, s):
    """zeta(s) for Re(s) > 0, s != 1."""
    return _dispatch(ev, s, derivative=False)[0]


def zeta_with_error(ev: ZetaEvaluator, s):
    """zeta(s) together with an absolute error bound for the truncation."""
    return _dispatch(ev, s, derivative=False)


def zeta_prime(ev: ZetaEvaluator, s):
    """zeta'(s) from the term-by-term differentiated Euler-Maclaurin formula."""
    return _dispatch(ev, s, derivative=True)[0]


def inv_abs_zeta_sq_one_line(ev: ZetaEvaluator, t):
    """1 / |zeta(1 + 2it)|**2 for real t, with the removable value 0 at t = 0.

    Near the pole the Laurent form zeta(1+e) = 1/e + gamma0 is used,
    giving 4t^2 / (1 + 4 t^2 gamma0^2).
    """
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    out = np.empty(t.shape)
    eps = 2.0 * np.abs(t)
    near = eps < ev.pole_threshold
    tn = t[near]
    out[near] = 4.0 * tn * tn / (1.0 + 4.0 * tn * tn * ev.stieltjes_gamma0**2)
    if np.any(~near):
        z = zeta(ev, 1.0 + 2j * t[~near])
        out[~near] = 1.0 / (z.real**2 + z.imag**2)
    return float(out[0]) if scalar else out


def gamma_product(gamma):
    """Gamma(1/4 + i g/2) * Gamma(3/4 - i g/2) via the reflection formula.

    Evaluated as pi / sin(z) with z = pi(1/4 + i g/2), written in a form that
    does not overflow for large |g|.
    """
    g = np.asarray(gamma, dtype=float)
    a = np.pi / 4
    b = np.pi * np.abs(g) / 2
    # pi/sin(z) = -2 pi i e^{iz} / (1 - e^{2iz}) for Im z = b >= 0
    eiz = np.exp(1j * a - b)
    val = -2j * np.pi * eiz / (1.0 - eiz * eiz)
    val = np.where(g < 0, np.conj(val), val)
    return complex(val) if val.ndim == 0 else val


# ---------------------------------------------------------------- zeros file


@dataclass(frozen=True, eq=False)
class ZeroList:
    """Ordinates gamma of zeros 1/2 + i*gamma, strictly ascending."""

    gammas: np.ndarray

    def __post_init__(self):
        self.gammas.setflags(write=False)

    def __len__(self):
        return len(self.gammas)


ZEROS_ENV_VAR = "ZETARECIP_ZEROS"
FIRST_ZERO = 14.134725141734693
_FIRST_ZERO_TOL = 1e-4
_RESIDUAL_TOL = 1e-6


def bundled_zeros_path() -> Path:
    """Path of the ordinate table shipped with the package."""
    return Path(__file__).with_name("data") / "zeros.txt"


def default_zeros_path() -> Path | None:
    """Zeros path from ``$ZETARECIP_ZEROS``, or None when unset."""
    env = os.environ.get(ZEROS_ENV_VAR)
    return Path(env) if env else None


def parse_zeros(text: str) -> np.ndarray:
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            g = float(line)
        except ValueError:
            raise ZerosFileError(
                f"line {lineno}: cannot parse {line!r} as a decimal ordinate", lineno
            ) from None
        if not (math.isfinite(g) and g > 0):
            raise ZerosFileError(f"line {lineno}: ordinate must be positive", lineno)
        values.append(g)
    return np.array(values, dtype=float)


def load_zeros(path, ev: ZetaEvaluator = DEFAULT_EVALUATOR) -> ZeroList:
    """Read and validate a zeros file (one ordinate per line, '#' comments)."""
    with open(path, "r", encoding="ascii", newline=None) as fh:
        gammas = parse_zeros(fh.read())
    if gammas.size == 0:
        return ZeroList(gammas)
    bad = np.flatnonzero(np.diff(gammas) <= 0)
    if bad.size:
        i = int(bad[0]) + 1
        raise ZerosValidationError(
            f"ordinates must be strictly ascending: {gammas[i]} follows {gammas[i - 1]}"
        )
    if abs(gammas[0] - FIRST_ZERO) > _FIRST_ZERO_TOL:
        raise ZerosValidationError(
            f"first ordinate {gammas[0]} is not the first zero {FIRST_ZERO:.6f}"
        )
    resid = np.abs(zeta(ev, 0.5 + 1j * gammas))
    bad = np.flatnonzero(~(resid < _RESIDUAL_TOL))
    if bad.size:
        g = gammas[bad[0]]
        raise ZerosValidationError(
            f"|zeta(1/2 + i*{g})| = {resid[bad[0]]:.3g} is not below {_RESIDUAL_TOL}"
        )
    return ZeroList(gammas)
