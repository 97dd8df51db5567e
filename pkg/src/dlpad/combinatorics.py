"""Exact combinatorial coefficients and trigonometric mode sums.

Everything here is either exact integer/rational arithmetic (Stirling numbers,
generalized binomials, the coefficient table for derivatives of sqrt(quadratic))
or a compensated floating-point sum with a controlled truncation error (the
Phi_m mode sums and odd zeta values).  No hard-coded constants: zeta values are
computed from the defining series with an Euler-Maclaurin tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

_STIRLING_MAX = 30  # documented contract bound, keeps tables small


@lru_cache(maxsize=None)
def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind S(n, m), exact.

    Counts partitions of an n-set into m nonempty blocks; computed by the
    recurrence S(n, m) = m S(n-1, m) + S(n-1, m-1).
    """
    if not (0 <= m <= n <= _STIRLING_MAX):
        raise ValueError(f"need 0 <= m <= n <= {_STIRLING_MAX}, got n={n}, m={m}")
    if n == m:
        return 1
    if m == 0:
        return 0
    return m * stirling2(n - 1, m) + stirling2(n - 1, m - 1)


def half_binomial(a, n: int) -> Fraction:
    """Generalized binomial coefficient C(a, n) as an exact Fraction.

    a must be exactly representable (Fraction, int, or a dyadic float such as
    1/2 or -1/2).  n = -1 is allowed and gives 0, matching the convention used
    in the odd-coefficient combinations.
    """
    if n == -1:
        return Fraction(0)
    if n < -1:
        raise ValueError(f"n must be >= -1, got {n}")
    a = Fraction(a)
    num = Fraction(1)
    for i in range(n):
        num *= a - i
    return num / math.factorial(n)


@dataclass(frozen=True)
class SqrtDerivTerm:
    """One term of d^n/dy^n sqrt(f): coeff * f'^dfp * f''^d2fp / f^(fhp/2)."""

    k: int
    coeff: Fraction
    df_power: int
    d2f_power: int
    f_half_power: int  # exponent of f is f_half_power / 2


@lru_cache(maxsize=None)
def sqrt_deriv_terms(n: int) -> tuple[SqrtDerivTerm, ...]:
    """Exact expansion of the n-th derivative of sqrt(f) for quadratic f.

    For f with f''' = 0,

        d^n/dy^n sqrt(f) = sum_k coeff_k f'^(2k-n) f''^(n-k) / f^(k-1/2),

    k running from ceil(n/2) to n with

        coeff_k = (-1)^(k+1) n! (2k-2)! / (2^(n+k-1) (2k-n)! (n-k)! (k-1)!).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    terms = []
    for k in range((n + 1) // 2, n + 1):
        coeff = Fraction(
            (-1) ** (k + 1) * math.factorial(n) * math.factorial(2 * k - 2),
            2 ** (n + k - 1)
            * math.factorial(2 * k - n)
            * math.factorial(n - k)
            * math.factorial(k - 1),
        )
        terms.append(
            SqrtDerivTerm(
                k=k,
                coeff=coeff,
                df_power=2 * k - n,
                d2f_power=n - k,
                f_half_power=2 * k - 1,
            )
        )
    return tuple(terms)


def sqrt_deriv(n: int, f: float, df: float, d2f: float) -> float:
    """Evaluate d^n/dy^n sqrt(f) from the values (f, f', f'') of a quadratic f > 0."""
    if f <= 0.0:
        raise ValueError(f"need f > 0, got {f}")
    return math.fsum(
        float(t.coeff) * df**t.df_power * d2f**t.d2f_power * f ** (-0.5 * t.f_half_power)
        for t in sqrt_deriv_terms(n)
    )


def exp_chain_deriv(n: int, g_derivs, x: float) -> float:
    """n-th derivative of g(e^x) from the derivatives of g at y = e^x.

    g_derivs[m-1] must hold g^(m)(e^x) for m = 1..n; the chain rule gives
    d^n/dx^n g(e^x) = sum_m S(n, m) e^(m x) g^(m)(e^x).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if len(g_derivs) < n:
        raise ValueError(f"need {n} derivatives of g, got {len(g_derivs)}")
    ex = math.exp(x)
    return math.fsum(stirling2(n, m) * ex**m * g_derivs[m - 1] for m in range(1, n + 1))


def phi_definition(m: int, N: int) -> float:
    """Defining sum Phi_m(N) = (2/N) sum_k sin(t_k) cos^(2m)(t_k), t_k = pi(2k+1)/(4N)."""
    _check_phi(m, N)
    return (2.0 / N) * math.fsum(
        math.sin(t) * math.cos(t) ** (2 * m)
        for t in (math.pi * (2 * k + 1) / (4 * N) for k in range(N))
    )


def phi_exact(m: int, N: int) -> float:
    """Closed form of Phi_m(N): (1/(N 4^m)) sum_j C(2m, j) / sin(pi(2m+1-2j)/(4N)).

    The sine argument runs over odd multiples of pi/(4N) and never vanishes.
    Agrees with `phi_definition` to full precision.
    """
    _check_phi(m, N)
    return (
        math.fsum(
            math.comb(2 * m, j) / math.sin(math.pi * (2 * m + 1 - 2 * j) / (4 * N))
            for j in range(2 * m + 1)
        )
        / (N * 4**m)
    )


def phi_asymptotic(m: int, N: int) -> float:
    """Large-N form 4/(pi(2m+1)) + pi/(24 N^2); the remainder is O(N^-4)."""
    _check_phi(m, N)
    return 4.0 / (math.pi * (2 * m + 1)) + math.pi / (24.0 * N * N)


def _check_phi(m: int, N: int) -> None:
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")


@lru_cache(maxsize=None)
def zeta_odd(n: int) -> float:
    """Riemann zeta at the odd integer 2n - 1 for n >= 2.

    Direct series up to j = 256 plus an Euler-Maclaurin tail; the first
    omitted correction is below 1e-16 already for the slowest case zeta(3).
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    s = 2 * n - 1
    M = 257
    head = math.fsum(j**-s for j in range(1, M))
    tail = (
        M ** (1 - s) / (s - 1)
        + M**-s / 2.0
        + s * M ** (-s - 1) / 12.0
        - s * (s + 1) * (s + 2) * M ** (-s - 3) / 720.0
    )
    return head + tail


def odd_power_tail(p: int, r_last: int) -> float:
    """Tail sum_{r > r_last} (2r+1)^(-p) by Euler-Maclaurin, for p >= 2.

    Accurate once 2 r_last + 3 is moderately large (first omitted term is
    O(m^(-p-5)) at m = 2 r_last + 3); used to close slowly convergent mode sums.
    """
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    if r_last < 0:
        raise ValueError(f"r_last must be >= 0, got {r_last}")
    m = 2 * r_last + 3
    return (
        m ** (1 - p) / (2.0 * (p - 1))
        + m**-p / 2.0
        + p * m ** (-p - 1) / 6.0
        - p * (p + 1) * (p + 2) * m ** (-p - 3) / 90.0
    )
