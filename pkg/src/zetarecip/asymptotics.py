"""Envelope exponents and growth tables for the Moebius-series O-estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .arith import MoebiusTable
from .errors import AccuracyError, DegenerateError, DomainError
from .series import TWELVE_OVER_PI2, H2Params, h2, hardy_littlewood, pnt_partial_sums
from .zetafn import ZetaEvaluator


@dataclass(frozen=True)
class EnvelopeFit:
    slope: float
    intercept: float
    stderr: float
    n_points: int
    window: tuple


@dataclass(frozen=True)
class ScanTable:
    """Rows of a scan, with column names and summary values."""

    columns: tuple
    rows: list
    summary: dict = field(default_factory=dict)


def envelope_fit(samples) -> EnvelopeFit:
    """Least-squares slope of log max|y| against log x over dyadic windows.

    Windows are [x_min 2^j, x_min 2^(j+1)), anchored at the smallest
    abscissa so that rescaling x leaves the grouping unchanged. Each window
    contributes the point where |y| is largest; windows whose maximum is
    zero are dropped.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError("samples must be a sequence of (x, y) pairs")
    x, y = arr[:, 0], np.abs(arr[:, 1])
    if np.any(~(x > 0)):
        raise DomainError("abscissae must be positive")
    if not np.any(y > 0):
        raise DegenerateError("all samples are zero")
    lo, hi = float(x.min()), float(x.max())
    if hi < 100.0 * lo:
        raise DomainError(f"samples span {math.log10(hi / lo):.2f} decades, need at least 2")
    bins = np.floor(np.log2(x / lo)).astype(np.int64)
    px, py = [], []
    for b in np.unique(bins):
        idx = np.flatnonzero(bins == b)
        j = idx[np.argmax(y[idx])]
        if y[j] > 0:
            px.append(x[j])
            py.append(y[j])
    if len(px) < 3:
        raise DegenerateError(f"only {len(px)} nonzero dyadic windows, need 3")
    r = stats.linregress(np.log(px), np.log(py))
    return EnvelopeFit(float(r.slope), float(r.intercept), float(r.stderr), len(px), (lo, hi))


# ------------------------------------------------------------- h2 exponents

SCAN_REL_TARGET = 1e-7


def h2_samples(table: MoebiusTable, x_lo, x_hi, points, params: H2Params | None = None, threads=1):
    """h2 at log-spaced x; returns a list of (x, value, tail_estimate).

    The target is relative: params.target_abs_err (default 1e-7) times the
    scale 12/pi^2 min(1, 1/x) of h2. Where the zero-driven floor makes that
    unreachable the target is loosened tenfold, up to 1e-3 relative.
    """
    x_lo, x_hi, points = float(x_lo), float(x_hi), int(points)
    if not 0 < x_lo < x_hi:
        raise DomainError("need 0 < x_lo < x_hi")
    if points < 3:
        raise DomainError("need at least 3 points")
    rel = params.target_abs_err if params is not None else SCAN_REL_TARGET
    caps = params or H2Params()
    out = []
    for x in np.logspace(math.log10(x_lo), math.log10(x_hi), points):
        x = float(x)
        scale = TWELVE_OVER_PI2 * min(1.0, 1.0 / x)
        r_rel = rel
        while True:
            p = H2Params(r_rel * scale, caps.inner_cutoff_cap, caps.outer_cutoff_cap)
            try:
                v = h2(table, x, p, threads)
                break
            except AccuracyError:
                if r_rel >= 1e-3:
                    raise
                r_rel *= 10.0
        out.append((x, v.value, v.tail_estimate))
    return out


def h2_exponent_scan(
    table: MoebiusTable,
    params: H2Params | None = None,
    x_lo: float = 1e-5,
    x_hi: float = 1e-2,
    points: int = 40,
    threads: int = 1,
) -> ScanTable:
    """Envelope exponent of |h2| on [x_lo, x_hi]; the fit sits in ``summary['fit']``."""
    samples = h2_samples(table, x_lo, x_hi, points, params, threads)
    fit = envelope_fit([(x, v) for x, v, _ in samples])
    return ScanTable(("x", "h2", "tail_estimate"), samples, {"fit": fit})


# ------------------------------------------------------------- Mertens tables


def _need(table, n, what):
    if n > table.limit:
        raise DomainError(f"{what} needs a sieve limit of at least {n}, table has {table.limit}")


def mertens_growth_scan(table: MoebiusTable, X: float, epsilon: float = 0.05) -> ScanTable:
    """|M2(x)| / x^(1/4 + epsilon) at the jump points x = k^2 <= X."""
    X, epsilon = float(X), float(epsilon)
    if not X >= 1:
        raise DomainError("X must be >= 1")
    if not epsilon > 0:
        raise DomainError("epsilon must be positive")
    K = math.isqrt(int(math.floor(X)))
    _need(table, K, f"X={X:g}")
    k = np.arange(1, K + 1, dtype=np.int64)
    x = (k * k).astype(float)
    m = table.mertens[1 : K + 1].astype(float)
    m[0] = 0.5  # halved value at x = 1
    ratio = np.abs(m) / x ** (0.25 + epsilon)
    i = int(np.argmax(ratio))
    rows = list(zip(x.tolist(), ratio.tolist()))
    return ScanTable(
        ("x", "ratio"), rows, {"max_ratio": float(ratio[i]), "argmax_x": float(x[i])}
    )


def weak_mertens_integral(table: MoebiusTable, a: int, b: int) -> float:
    """Exact int_{a^2}^{b^2} M2(t)^2 / t dt for integers 1 <= a <= b.

    On [k^2, (k+1)^2) the integrand is M(k)^2 / t, giving M(k)^2 2 ln((k+1)/k).
    """
    a, b = int(a), int(b)
    if not 1 <= a <= b:
        raise DomainError("need 1 <= a <= b")
    _need(table, b, f"X={b}")
    k = np.arange(a, b, dtype=float)
    m = table.mertens[a:b].astype(float)
    return math.fsum(m * m * 2.0 * np.log1p(1.0 / k))


def mertens_square_integral(table: MoebiusTable, a: int, b: int) -> float:
    """Exact int_a^b (M(u)/u)^2 du for integers 1 <= a <= b."""
    a, b = int(a), int(b)
    if not 1 <= a <= b:
        raise DomainError("need 1 <= a <= b")
    _need(table, b, f"X={b}")
    k = np.arange(a, b, dtype=float)
    m = table.mertens[a:b].astype(float)
    return math.fsum(m * m / (k * (k + 1.0)))


def weak_mertens_scan(table: MoebiusTable, X: float, checkpoints: int = 25) -> ScanTable:
    """Weak-Mertens integrals at log-spaced X_i <= X, each divided by log X_i.

    ``integral`` is int_1^{X_i^2} (M2(t)/sqrt t)^2 dt, which equals
    2 int_1^{X_i} M(u)^2/u du. ``mertens_sq`` is int_1^{X_i} (M(u)/u)^2 du,
    the quantity in the usual weak Mertens conjecture.
    """
    X = int(X)
    if X < 2:
        raise DomainError("X must be >= 2")
    _need(table, X, f"X={X}")
    marks = np.unique(np.round(np.logspace(math.log10(2), math.log10(X), checkpoints)).astype(int))
    rows = []
    total = 0.0
    total2 = 0.0
    prev = 1
    for Xi in marks.tolist():
        total += weak_mertens_integral(table, prev, Xi)
        total2 += mertens_square_integral(table, prev, Xi)
        prev = Xi
        L = math.log(Xi)
        rows.append((float(Xi), total, total / L, total2, total2 / L))
    return ScanTable(("X", "integral", "ratio", "mertens_sq", "mertens_sq_ratio"), rows)


# ------------------------------------------------------------- other scans


def hardy_littlewood_scan(ev: ZetaEvaluator, x_lo: float, x_hi: float, points: int = 30) -> ScanTable:
    """|sum (-x)^n / (n! zeta(2n+1))| x^(1/4) at log-spaced x."""
    x_lo, x_hi = float(x_lo), float(x_hi)
    if not 0 < x_lo < x_hi:
        raise DomainError("need 0 < x_lo < x_hi")
    rows = []
    for x in np.logspace(math.log10(x_lo), math.log10(x_hi), int(points)):
        r = hardy_littlewood(ev, float(x))
        rows.append((float(x), r.value, abs(r.value) * float(x) ** 0.25))
    return ScanTable(("x", "value", "scaled"), rows)


def pnt_scan(table: MoebiusTable, n_max: int, step: int = 100) -> ScanTable:
    """Rows (N, A, S, Q, S - (pi/4) A^2) for N = step, 2 step, ..., n_max."""
    n_max, step = int(n_max), int(step)
    if step < 1 or n_max < step:
        raise DomainError("need 1 <= step <= n_max")
    rows = []
    for N in range(step, n_max + 1, step):
        p = pnt_partial_sums(table, N)
        rows.append((N, p.A, p.S, p.Q, p.S - 0.25 * math.pi * p.A * p.A))
    return ScanTable(("N", "A", "S", "Q", "S_minus_pi_A2_over_4"), rows)
