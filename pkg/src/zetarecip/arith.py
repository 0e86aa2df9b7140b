"""Moebius sieve, Mertens prefix sums and the halved step function M2."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

DEFAULT_SIEVE_LIMIT = 10**7


@dataclass(frozen=True, eq=False)
class MoebiusTable:
    """Moebius values and Mertens prefix sums for ``1 <= n <= limit``.

    Both arrays carry a dummy slot at index 0 (``mu[0] = 0``, ``mertens[0] = 0``)
    so that ``mu[n]`` and ``mertens[k]`` index naturally. The arrays are
    read-only; a built table is safe to share between threads.
    """

    limit: int
    mu: np.ndarray
    mertens: np.ndarray

    def __post_init__(self):
        self.mu.setflags(write=False)
        self.mertens.setflags(write=False)

    def __repr__(self):
        return f"MoebiusTable(limit={self.limit})"


def _small_primes(n: int) -> np.ndarray:
    """Primes ``<= n`` by the sieve of Eratosthenes."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p)


def build_moebius(N: int) -> MoebiusTable:
    """Sieve mu(n) for ``n <= N`` and store the Mertens prefix sums.

    Only primes up to sqrt(N) are sieved explicitly. Each n <= N has at most
    one prime factor above sqrt(N); it is detected by comparing n against the
    product of its small prime factors, which flips the sign once more.
    Cost is O(N log log N) with numpy slice operations.
    """
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)):
        raise DomainError(f"sieve limit must be an integer, got {N!r}")
    N = int(N)
    if N < 1:
        raise DomainError(f"sieve limit must be >= 1, got {N}")
    try:
        mu = np.ones(N + 1, dtype=np.int8)
        prod = np.ones(N + 1, dtype=np.int64)
    except MemoryError as exc:  # pragma: no cover - depends on the host
        raise MemoryError(f"cannot allocate a Moebius table of size {N}") from exc
    mu[0] = 0
    for p in _small_primes(math.isqrt(N)):
        p = int(p)
        mu[p::p] *= -1
        prod[p::p] *= p
        mu[p * p :: p * p] = 0
    idx = np.arange(N + 1, dtype=np.int64)
    large = (prod != idx) & (mu != 0)
    large[0] = False
    mu[large] *= -1
    mertens = np.cumsum(mu, dtype=np.int64)
    return MoebiusTable(limit=N, mu=mu, mertens=mertens)


def mertens(table: MoebiusTable, k: int) -> int:
    """M(k) = sum of mu(n) for n <= k."""
    k = int(k)
    if not 1 <= k <= table.limit:
        raise DomainError(f"k={k} outside the sieved range [1, {table.limit}]")
    return int(table.mertens[k])


def required_limit(x: float) -> int:
    """Smallest sieve limit for which ``m2(table, x)`` is defined."""
    if x <= 1:
        return 1
    return math.isqrt(math.floor(x))


def m2(table: MoebiusTable, x: float) -> float:
    """M2(x) = sum of mu(n) over n**2 <= x, halved at x = 1.

    Returns 0 on [0, 1), exactly 0.5 at x = 1 and M(floor(sqrt(x))) for
    x > 1.
    """
    x = float(x)
    if not x >= 0:
        raise DomainError(f"M2 is defined for x >= 0, got {x}")
    if x < 1:
        return 0.0
    if x == 1:
        return 0.5
    k = required_limit(x)
    if k > table.limit:
        raise DomainError(
            f"M2({x}) needs a sieve limit of at least {k}, table has {table.limit}"
        )
    return float(table.mertens[k])


def m2_array(table: MoebiusTable, x) -> np.ndarray:
    """Vectorised :func:`m2` for an array of abscissae."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x >= 0)):
        raise DomainError("M2 is defined for x >= 0")
    k = np.floor(np.sqrt(np.floor(x))).astype(np.int64)
    # sqrt rounding can be off by one next to perfect squares
    k -= (k * k > np.floor(x)).astype(np.int64)
    k += ((k + 1) * (k + 1) <= np.floor(x)).astype(np.int64)
    if k.size and int(k.max()) > table.limit:
        raise DomainError(
            f"M2 needs a sieve limit of at least {int(k.max())}, table has {table.limit}"
        )
    out = table.mertens[k].astype(float)
    out[x < 1] = 0.0
    out[x == 1] = 0.5
    return out
