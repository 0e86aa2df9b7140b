"""Reference implementations used only by the tests.

Each one takes a different route from the package code it checks.
"""

import cmath
import math

import numpy as np


def mu_trial_division(n: int) -> int:
    if n == 1:
        return 1
    sign = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    if n > 1:
        sign = -sign
    return sign


def mu_linear_sieve(N: int) -> np.ndarray:
    """Linear (Euler) sieve; index 0 unused."""
    mu = np.zeros(N + 1, dtype=np.int64)
    mu[1] = 1
    is_comp = bytearray(N + 1)
    primes = []
    for i in range(2, N + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > N:
                break
            is_comp[ip] = 1
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_lanczos(z: complex) -> complex:
    """Lanczos approximation (g = 7, n = 9), about 15 digits for Re z > 0."""
    z = complex(z)
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma_lanczos(1 - z))
    z -= 1
    x = _LANCZOS[0]
    for i in range(1, _LANCZOS_G + 2):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


def zeta_direct(s: complex, N: int = 200000) -> complex:
    """Dirichlet series with the integral tail N^{1-s}/(s-1) and the N^{-s}/2 midpoint term; Re s > 1."""
    n = np.arange(1, N, dtype=float)
    return complex(np.sum(n ** (-s))) + N ** (1 - s) / (s - 1) + 0.5 * N ** (-s)


def zeta_prime_direct(s: float, N: int = 200000) -> float:
    n = np.arange(1, N, dtype=float)
    head = -float(np.sum(np.log(n) * n ** (-s)))
    lnN = math.log(N)
    tail = -(lnN * N ** (1 - s) / (s - 1) + N ** (1 - s) / (s - 1) ** 2) - 0.5 * lnN * N ** (-s)
    return head + tail
