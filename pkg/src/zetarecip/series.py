"""Series built on the Moebius function: theta sums, the double series h2,
the Hardy-Littlewood series, arctan partial sums and the zero expansion."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import MoebiusTable
from .errors import AccuracyError, DomainError, PrecisionError
from .zetafn import ZetaEvaluator, ZeroList, gamma_product, zeta, zeta_prime

_EPS = 2.0**-53
INV_ZETA2 = 6.0 / math.pi**2
TWELVE_OVER_PI2 = 12.0 / math.pi**2


@dataclass(frozen=True)
class SeriesValue:
    value: float
    tail_estimate: float
    terms_used: int
    heuristic: bool = False
    diagnostics: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class H2Params:
    target_abs_err: float = 1e-8
    inner_cutoff_cap: int = 10**6
    outer_cutoff_cap: int = 10**5

    def __post_init__(self):
        if not self.target_abs_err > 0:
            raise DomainError("target_abs_err must be positive")
        if self.inner_cutoff_cap < 1 or self.outer_cutoff_cap < 1:
            raise DomainError("cutoff caps must be positive")


def _require_table(table: MoebiusTable, n: int, what: str) -> None:
    if n > table.limit:
        raise DomainError(f"{what} needs a sieve limit of at least {n}, table has {table.limit}")


# ------------------------------------------------------------------ h(t)


def _theta_cutoff(t: float, eps: float) -> int:
    return max(1, math.ceil(math.sqrt(math.log(1.0 / eps) / t)))


def _theta_tail(t: float, N: int) -> float:
    # sum_{n > N} e^{-n^2 t} <= e^{-(N+1)^2 t} / (1 - e^{-2(N+1) t})
    return math.exp(-((N + 1) ** 2) * t) / -math.expm1(-2.0 * (N + 1) * t)


def h_theta(table: MoebiusTable, t: float, eps: float = 1e-16) -> SeriesValue:
    """h(t) = sum mu(n) exp(-n^2 t) with a rigorous tail bound."""
    t = float(t)
    if not t > 0:
        raise DomainError(f"h(t) needs t > 0, got {t}")
    N = _theta_cutoff(t, eps)
    _require_table(table, N, f"h({t})")
    n = np.arange(1, N + 1, dtype=float)
    terms = table.mu[1 : N + 1] * np.exp(-n * n * t)
    value = math.fsum(terms)
    return SeriesValue(value, _theta_tail(t, N), N, heuristic=False)


def h_theta_array(table: MoebiusTable, t, eps: float = 1e-16):
    """Vectorised h(t); returns (values, tail_bounds) for an array of t > 0.

    Nodes are grouped by cutoff so a few tiny t do not make every node pay
    for the longest sum.
    """
    t = np.asarray(t, dtype=float)
    flat = t.ravel()
    if np.any(~(flat > 0)):
        raise DomainError("h(t) needs t > 0")
    out = np.empty(flat.shape)
    tails = np.empty(flat.shape)
    if flat.size == 0:
        return out.reshape(t.shape), tails.reshape(t.shape)
    L = math.log(1.0 / eps)
    cut = np.maximum(1, np.ceil(np.sqrt(L / flat))).astype(np.int64)
    _require_table(table, int(cut.max()), "h(t)")
    # bucket by the power of two above each cutoff
    bucket = np.ceil(np.log2(cut)).astype(np.int64)
    for b in np.unique(bucket):
        idx = np.flatnonzero(bucket == b)
        N = int(cut[idx].max())
        n = np.arange(1, N + 1, dtype=float)
        mu = table.mu[1 : N + 1].astype(float)
        step = max(1, (1 << 22) // N)
        for i in range(0, idx.size, step):
            sel = idx[i : i + step]
            e = np.exp(-np.outer(flat[sel], n * n))
            out[sel] = e @ mu
        tails[idx] = [_theta_tail(float(flat[i]), N) for i in idx]
    return out.reshape(t.shape), tails.reshape(t.shape)


def riesz_variant(table: MoebiusTable, t: float, n_max: int | None = None) -> SeriesValue:
    """sum mu(n) n^-2 exp(-t/n^2) truncated at n_max, tail bounded by 1/n_max."""
    t = float(t)
    if not t >= 0:
        raise DomainError(f"t must be >= 0, got {t}")
    N = min(table.limit, 10**5) if n_max is None else int(n_max)
    if N < 1:
        raise DomainError("n_max must be positive")
    _require_table(table, N, "riesz_variant")
    n = np.arange(1, N + 1, dtype=float)
    value = math.fsum(table.mu[1 : N + 1] / (n * n) * np.exp(-t / (n * n)))
    return SeriesValue(value, 1.0 / N, N, heuristic=False)


# ------------------------------------------------------------------ h2(x)

# (zeta'(-2k), zeta''(-2k)) for k = 1..5
_ZD = (
    (-0.03044845705839327, -0.0657635161874252),
    (0.007983811450268625, 0.005737415846103786),
    (-0.005899759143515937, 0.0003412858464718521),
    (0.008316161985602248, -0.0050121719096517725),
    (-0.018929926338140373, 0.019442195543391477),
)
_ASYM_START = 1e4  # inner argument from which the outer terms use the expansion
_INNER_RATIO = 8.0  # inner cutoff L = ratio * sqrt(a), so a / L^2 <= 1/64
_INNER_MIN = 64
_INNER_ORDERS = 7  # powers m^-4 .. m^-16 in the inner tail expansion
_ZERO_COEFF = 2e-9  # size of the first-zero contribution to g(a), times a^(3/4)


@lru_cache(maxsize=4)
def _inner_tables(table: MoebiusTable, top: int):
    """Forward cumsum of mu(m)/m^2 and reverse cumsums of mu(m)/m^p, p = 4, 6, ..."""
    m = np.arange(1, top + 1, dtype=float)
    mu = table.mu[1 : top + 1].astype(float)
    p2 = np.concatenate([[0.0], np.cumsum(mu / (m * m))])
    rev = []
    inv2 = 1.0 / (m * m)
    w = mu * inv2
    for _ in range(_INNER_ORDERS):
        w = w * inv2
        # R[L] = sum_{L < m <= top} w[m]
        r = np.concatenate([np.cumsum(w[::-1])[::-1], [0.0]])
        rev.append(r)
    return mu, p2, np.array(rev)


def _beyond(top: int, p: int) -> float:
    # |sum_{m > top} mu(m) m^-p| assuming |M(x)| <= sqrt(x) past the sieve
    return (1.0 + p / (p - 0.5)) * top ** (0.5 - p)


def _asym_terms(a: np.ndarray):
    """Terms k = 2..5 of the large-a expansion of sum_m mu(m)/(m^2 + a)."""
    la = np.log(a)
    out = np.zeros_like(a)
    last = None
    for k, (d1, d2) in enumerate(_ZD[:4], start=2):
        term = (-1) ** k * a ** (-k) * (d2 / d1 - la) / (2.0 * d1)
        out += term
        last = term
    return out, np.abs(last)


def _inner_exact(mu, p2, rev, top, a: float, L: int):
    """g(a) = sum_m mu(m)/(m^2+a) with the tail past L expanded in powers of a/m^2."""
    m = np.arange(1, L + 1, dtype=float)
    terms = mu[:L] / (m * m + a)
    direct = float(np.sum(terms))
    coef = np.array([(-a) ** j for j in range(1, _INNER_ORDERS + 1)])
    tail = (INV_ZETA2 - p2[L]) + float(coef @ rev[:, L])
    J = _INNER_ORDERS
    rem = a ** (J + 1) / ((2 * J + 3) * float(L) ** (2 * J + 3))
    rem += sum(abs(coef[j]) * _beyond(top, 2 * j + 4) for j in range(J))
    rnd = _EPS * (float(np.sum(np.abs(terms))) + 2.0 * L * _EPS + abs(tail) + 1.0)
    return direct + tail, rem, rnd


def _zero_tail(N, y):
    # sum_{n > N} C (n^2 y)^(-3/4), with zeta(3/2) for the full sum
    if N == 0:
        return 2.6124 * _ZERO_COEFF * y**-0.75
    return 2.0 * _ZERO_COEFF * y**-0.75 / math.sqrt(N)


def _far_remainder(N_far, y):
    # sum_{n > N_far} of the k = 2 term magnitude, by an integral comparison
    a = N_far * N_far * y
    return (math.log(a) + 3.0) / (2.0 * abs(_ZD[0][0])) / (3.0 * N_far**3 * y * y)


def _far_cutoff(N, y, eps, limit):
    n = max(4 * N, N + 1000)
    while _far_remainder(n, y) > 0.01 * eps and n < limit:
        n = min(limit, 2 * n)
    return n


def h2_iterated(
    table: MoebiusTable, y: float, params: H2Params = H2Params(), threads: int = 1
) -> SeriesValue:
    """The double series at y by direct iterated summation (m inner, n outer).

    Works for any y > 0 but is only cheap for y of order one or larger;
    ``h2`` routes small arguments through the functional equation. The outer
    terms past the exact range use the large-argument expansion of the inner
    sum; its leading piece -2/(n^2 y) sums in closed form. The remaining
    estimate for omitted zero-driven oscillations is heuristic.
    """
    y = float(y)
    if not y > 0:
        raise DomainError(f"h2 needs x > 0, got {y}")
    return _h2_core(table, y, params.target_abs_err, params, threads)


def _h2_core(table, y, eps, params, threads):
    # outer exact range: asymptotic regime reached and zero-term budget met
    n_asym = math.ceil(math.sqrt(_ASYM_START / y))
    n_zero = math.ceil((8.0 * _ZERO_COEFF * y**-0.75 / eps) ** 2)
    N = max(1, n_asym, n_zero)
    if y >= _ASYM_START and _zero_tail(0, y) <= 0.25 * eps:
        N = 0  # expansion already valid at n = 1
    if N > params.outer_cutoff_cap:
        achieved = 2.0 * _ZERO_COEFF * y**-0.75 / math.sqrt(params.outer_cutoff_cap)
        raise AccuracyError(
            f"outer cutoff {N} exceeds cap {params.outer_cutoff_cap}", achieved=achieved
        )
    L_max = max(_INNER_MIN, math.ceil(_INNER_RATIO * N * math.sqrt(y)))
    if L_max > params.inner_cutoff_cap:
        raise AccuracyError(
            f"inner cutoff {L_max} exceeds cap {params.inner_cutoff_cap}",
            achieved=2.0 * _ZERO_COEFF * y**-0.75 / math.sqrt(max(1, n_asym)),
        )
    N_far = _far_cutoff(N, y, eps, table.limit)
    top = max(1 << 18, 1 << math.ceil(math.log2(16 * L_max)))
    top = min(top, table.limit)
    _require_table(table, max(L_max, N_far), f"h2 at {y}")
    mu, p2, rev = _inner_tables(table, top)

    ns = [n for n in range(1, N + 1) if table.mu[n] != 0]

    def work(n):
        a = n * n * y
        L = max(_INNER_MIN, math.ceil(_INNER_RATIO * math.sqrt(a)))
        g, rem, rnd = _inner_exact(mu, p2, rev, top, a, L)
        return int(table.mu[n]) * g, rem, rnd, L

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(work, ns))
    else:
        rows = [work(n) for n in ns]
    # reduction in ascending n regardless of thread count
    parts = [r[0] for r in rows]
    inner_rem = math.fsum(r[1] for r in rows)
    rounding = math.fsum(r[2] for r in rows)
    inner_terms = sum(r[3] for r in rows)

    # outer tail: leading piece in closed form, k >= 2 terms summed to N_far
    lead = -(2.0 / y) * (INV_ZETA2 - p2[N]) if N <= top else None
    if lead is None:
        lead = -(2.0 / y) * (INV_ZETA2 - math.fsum(table.mu[1 : N + 1] / np.arange(1, N + 1.0) ** 2))
    n_far = np.arange(N + 1, N_far + 1, dtype=float)
    mu_far = table.mu[N + 1 : N_far + 1].astype(float)
    t_far, t_last = _asym_terms(n_far * n_far * y)
    mid = math.fsum(mu_far * t_far)
    asym_trunc = float(np.sum(t_last))
    far_rem = _far_remainder(N_far, y)
    zero_tail = _zero_tail(N, y)
    lead_err = 2.0 / y * max(N, 1) * _EPS

    value = math.fsum(parts + [lead, mid])
    tail = inner_rem + rounding + asym_trunc + far_rem + zero_tail + lead_err
    diag = {
        "outer_exact": N,
        "outer_far": N_far,
        "max_inner_cutoff": L_max,
        "inner_terms": inner_terms,
        "zero_tail": zero_tail,
        "inner_remainder": inner_rem,
        "rounding": rounding,
    }
    return SeriesValue(value, tail, N, heuristic=True, diagnostics=diag)


def h2(table: MoebiusTable, x: float, params: H2Params = H2Params(), threads: int = 1) -> SeriesValue:
    """h2(x) = sum over n, m of mu(n) mu(m) / (n^2 x + m^2), iterated.

    For x >= 1 this is :func:`h2_iterated`; for x < 1 it is computed as
    h2(1/x) / x, which keeps the outer sums short.
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"h2 needs x > 0, got {x}")
    if x >= 1:
        r = _h2_core(table, x, params.target_abs_err, params, threads)
        scale = 1.0
    else:
        try:
            r = _h2_core(table, 1.0 / x, params.target_abs_err * x, params, threads)
        except AccuracyError as exc:
            raise AccuracyError(str(exc), achieved=exc.achieved / x) from None
        scale = 1.0 / x
    value = r.value * scale
    tail = r.tail_estimate * scale
    if tail > params.target_abs_err:
        raise AccuracyError(
            f"h2({x}) reached {tail:.3g}, target {params.target_abs_err:.3g}", achieved=tail
        )
    diag = dict(r.diagnostics, reflected=x < 1)
    return SeriesValue(value, tail, r.terms_used, heuristic=True, diagnostics=diag)


# ------------------------------------------------------- Hardy-Littlewood

CANCELLATION_BUDGET = 1e12


def hardy_littlewood(ev: ZetaEvaluator, x: float, eps: float = 1e-17) -> SeriesValue:
    """sum_{n>=1} (-x)^n / (n! zeta(2n+1)).

    Terms alternate and decrease once n > x, so the first omitted term bounds
    the tail. Raises PrecisionError when max|partial| / |result| exceeds the
    cancellation budget.
    """
    x = float(x)
    if not x >= 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if x == 0:
        return SeriesValue(0.0, 0.0, 0, heuristic=False, diagnostics={"cancellation": 1.0})
    n_max = int(x + 40 + 10 * math.sqrt(x)) + 40
    z = zeta(ev, np.arange(3, 2 * n_max + 2, 2, dtype=complex)).real
    terms = []
    partial_max = 0.0
    coef = 1.0
    n = 0
    while True:
        n += 1
        if n > n_max:
            raise PrecisionError(f"series at x={x} did not settle in {n_max} terms")
        coef *= -x / n
        term = coef / z[n - 1]
        terms.append(term)
        partial = math.fsum(terms)
        partial_max = max(partial_max, abs(partial))
        if n > x and abs(term) < eps * abs(partial):
            break
    value = math.fsum(terms)
    nxt = abs(coef * x / (n + 1))  # zeta(2n+3) > 1
    ratio = partial_max / abs(value) if value != 0 else math.inf
    if ratio > CANCELLATION_BUDGET:
        raise PrecisionError(
            f"cancellation ratio {ratio:.3g} at x={x} exceeds {CANCELLATION_BUDGET:g}; use a smaller x"
        )
    rounding = _EPS * math.fsum(abs(t) for t in terms)
    return SeriesValue(
        value, nxt + rounding, n, heuristic=False, diagnostics={"cancellation": ratio}
    )


# ------------------------------------------------------------ arctan sums


@dataclass(frozen=True)
class PNTSums:
    N: int
    A: float
    S: float
    Q: float


def pnt_partial_sums(table: MoebiusTable, N: int) -> PNTSums:
    """A = sum mu(n)/n, S = sum mu(n)mu(m) arctan(n/m)/(nm) over n, m <= N, Q = pi A^2 - 2S.

    S is summed over the full square, not through the arctan(u) + arctan(1/u)
    pairing, so S = (pi/4) A^2 stays a genuine check.
    """
    N = int(N)
    if not 1 <= N <= table.limit:
        raise DomainError(f"N={N} outside [1, {table.limit}]")
    idx = np.flatnonzero(table.mu[1 : N + 1]) + 1
    n = idx.astype(float)
    w = table.mu[idx].astype(float) / n
    A = math.fsum(w)
    rows = []
    step = max(1, (1 << 22) // idx.size)
    for i in range(0, idx.size, step):
        blk = np.arctan(n[i : i + step, None] / n[None, :])
        rows.extend((blk @ w) * w[i : i + step])
    S = math.fsum(rows)
    return PNTSums(N=N, A=A, S=S, Q=math.pi * A * A - 2.0 * S)


# ------------------------------------------------------------ zero sum


def zero_terms(ev: ZetaEvaluator, zeros: ZeroList, K: int) -> np.ndarray:
    """Complex coefficients gamma_product(g) / (zeta'(1/2+ig) zeta(3/2-ig)) for the first K zeros."""
    g = np.asarray(zeros.gammas[:K], dtype=float)
    if g.size == 0:
        return np.zeros(0, dtype=complex)
    return gamma_product(g) / (zeta_prime(ev, 0.5 + 1j * g) * zeta(ev, 1.5 - 1j * g))


def zero_sum_h2(ev: ZetaEvaluator, zeros: ZeroList, x: float, K: int) -> SeriesValue:
    """Leading residue sum over the first K zeros plus the constant -12/pi^2.

    Conjugate zeros are paired, giving twice the real part over positive
    ordinates. Higher-order residues (x^N, x^N log x) are not included.
    """
    x = float(x)
    K = int(K)
    if not 0 < x < 1:
        raise DomainError(f"zero sum needs 0 < x < 1, got {x}")
    if K < 0 or K > len(zeros):
        raise DomainError(f"K={K} but only {len(zeros)} zeros are available")
    c = zero_terms(ev, zeros, K)
    g = np.asarray(zeros.gammas[:K], dtype=float)
    per = x**-0.25 * (np.exp(-0.5j * g * math.log(x)) * c).real
    value = math.fsum(per) - TWELVE_OVER_PI2
    mags = x**-0.25 * np.abs(c)
    tail = float(mags[-1]) if K else x**-0.25 * 2e-9
    return SeriesValue(
        value, tail, K, heuristic=True, diagnostics={"term_magnitudes": mags.tolist()}
    )
