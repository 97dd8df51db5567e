"""Exact finite-size cumulant generating function of the activity.

The scaled CGF on L sites splits over momentum modes,

    K^+/-_L(s) = -(w + mu) + (2/L) sum_r Lambda^+/-_{L,r}(s),

with the even (+) sector summing modes r = 0..L/2-1 at momenta pi(2r+1)/L and
the odd (-) sector using momenta 2 pi r / L including the J_s zero mode.  All
mode sums are accumulated with exactly rounded compensated summation, so K is
correct to a few ulp even at L = 2^16.

At the critical tilt s_c = log(nu) the n-th derivative of a mode energy has the
closed form (normalization w = 1/2)

    lambda^(n)_{L,r} = sum_{m=0}^{n-1} nu^(n-m)/2^(2n-2m-1) S(n, n-m)
        sum_k (-1)^(k-m+1) (n-m)! (2k-2m-2)!
              / ((2k-n-m)! (n-k)! (k-m-1)!)
        * s^(2k+1-2n) (1-2 nu c^2)^(2k-n-m) (1-2c^2)^(2n-2k)
        / (1-nu^2 c^2)^(k-m-1/2),

with c, s the half-angle cosine/sine of mode r.  The rational coefficients are
tabulated exactly; the double-precision evaluation path is reliable through
n = 10, beyond which alternating coefficients of order (2n)! force the
extended-precision path (mpmath, 50 significant digits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .combinatorics import stirling2
from .model import (
    ModelParams,
    Sector,
    critical_dispersion,
    critical_point,
    trig_pair,
)

_FLOAT_ORDER_MAX = 10  # beyond this the coefficient cancellation exceeds double precision


def cgf(p: ModelParams, s: float, L: int, sector: Sector = Sector.EVEN) -> float:
    """Scaled cumulant generating function K_L(s) of the activity, exact at finite L.

    K_L(0) = 0 in both parity sectors (probability conservation).
    """
    _check_size(L)
    es = math.exp(s)
    J = p.w * es + p.mu
    b2 = (2.0 * p.w * es + p.mu) * p.mu
    if sector is Sector.EVEN:
        q = np.pi * (2.0 * np.arange(L // 2) + 1.0) / L
        total = math.fsum(np.sqrt((p.w - J * np.cos(q)) ** 2 + b2 * np.sin(q) ** 2))
    else:
        q = 2.0 * np.pi * np.arange(1, L // 2) / L
        total = J + math.fsum(np.sqrt((p.w - J * np.cos(q)) ** 2 + b2 * np.sin(q) ** 2))
    return -(p.w + p.mu) + (2.0 / L) * total


def mean_activity(p: ModelParams, s: float, L: int) -> float:
    """Mean activity A_L(s) = dK^+_L/ds per site and unit time (even sector).

    Mode-wise derivative of `cgf`.  At s = 0 this converges to 2 w rho (rho the
    stationary density) exponentially fast in L; at small L the even-sector
    parity constraint shifts it (L = 2 gives w mu / (w + mu) exactly).
    """
    _check_size(L)
    es = math.exp(s)
    J = p.w * es + p.mu
    b2 = (2.0 * p.w * es + p.mu) * p.mu
    q = np.pi * (2.0 * np.arange(L // 2) + 1.0) / L
    cos_q = np.cos(q)
    sin2 = np.sin(q) ** 2
    lam = np.sqrt((p.w - J * cos_q) ** 2 + b2 * sin2)
    dlam = p.w * es * (p.mu * sin2 - cos_q * (p.w - J * cos_q)) / lam
    return (2.0 / L) * math.fsum(dlam)


@lru_cache(maxsize=None)
def _deriv_terms(n: int) -> tuple[tuple[int, int, Fraction], ...]:
    # (m, k, exact coefficient incl. Stirling factor); exponents follow from (m, k)
    if n < 1:
        raise ValueError(f"derivative order must be >= 1, got {n}")
    terms = []
    for m in range(n):
        stirling = stirling2(n, n - m)
        for k in range((n + m + 1) // 2, n + 1):
            coeff = Fraction(
                (-1) ** (k - m + 1)
                * math.factorial(n - m)
                * math.factorial(2 * k - 2 * m - 2),
                2 ** (2 * n - 2 * m - 1)
                * math.factorial(2 * k - n - m)
                * math.factorial(n - k)
                * math.factorial(k - m - 1),
            )
            terms.append((m, k, stirling * coeff))
    return tuple(terms)


def lambda_derivative(nu: float, L: int, r: int, n: int, extended: bool | None = None) -> float:
    """n-th tilt derivative of the even-sector mode energy at s_c, closed form.

    `extended` forces (True) or forbids (False) the extended-precision path;
    by default orders above 10 use it.
    """
    _check_nu(nu)
    if extended is None:
        extended = n > _FLOAT_ORDER_MAX
    if extended:
        return _lambda_derivative_mp(nu, L, r, n)
    t = trig_pair(L, r)
    c2 = t.c * t.c
    A = 1.0 - 2.0 * nu * c2
    B = 1.0 - 2.0 * c2
    D = 1.0 - nu * nu * c2
    return math.fsum(
        float(coeff)
        * nu ** (n - m)
        * t.s ** (2 * k + 1 - 2 * n)
        * A ** (2 * k - n - m)
        * B ** (2 * n - 2 * k)
        * D ** (m - k + 0.5)
        for m, k, coeff in _deriv_terms(n)
    )


def _lambda_derivative_mp(nu: float, L: int, r: int, n: int) -> float:
    from mpmath import mp

    with mp.workdps(50):
        return float(_lambda_derivative_mp_raw(nu, L, r, n))


def critical_cumulant(nu: float, L: int, n: int) -> float:
    """Exact activity cumulant kappa^c_n(L) = (2/L) sum_r lambda^(n)_{L,r} at s = s_c."""
    _check_nu(nu)
    _check_size(L)
    if n < 1:
        raise ValueError(f"cumulant order must be >= 1, got {n}")
    if n > _FLOAT_ORDER_MAX:
        from mpmath import mp, mpf

        with mp.workdps(50):
            total = mpf(0)
            for r in range(L // 2):
                total += _lambda_derivative_mp_raw(nu, L, r, n)
            return float(2 * total / L)
    theta = np.pi * (2.0 * np.arange(L // 2) + 1.0) / (2.0 * L)
    c2 = np.cos(theta) ** 2
    sn = np.sin(theta)
    A = 1.0 - 2.0 * nu * c2
    B = 1.0 - 2.0 * c2
    D = 1.0 - nu * nu * c2
    blocks = [
        float(coeff)
        * nu ** (n - m)
        * sn ** (2 * k + 1 - 2 * n)
        * A ** (2 * k - n - m)
        * B ** (2 * n - 2 * k)
        * D ** (m - k + 0.5)
        for m, k, coeff in _deriv_terms(n)
    ]
    return (2.0 / L) * math.fsum(np.concatenate(blocks))


def _lambda_derivative_mp_raw(nu, L, r, n):
    # caller manages mp precision
    from mpmath import mp, mpf

    theta = mp.pi * (2 * r + 1) / (2 * L)
    c2 = mp.cos(theta) ** 2
    sn = mp.sin(theta)
    nu_ = mpf(nu)
    A = 1 - 2 * nu_ * c2
    B = 1 - 2 * c2
    D = 1 - nu_ * nu_ * c2
    total = mpf(0)
    for m, k, coeff in _deriv_terms(n):
        total += (
            mpf(coeff.numerator)
            / coeff.denominator
            * nu_ ** (n - m)
            * sn ** (2 * k + 1 - 2 * n)
            * A ** (2 * k - n - m)
            * B ** (2 * n - 2 * k)
            * D ** (mpf(2 * (m - k) + 1) / 2)
        )
    return total


def critical_cgf_expansion(nu: float, L: int, x: float, n_max: int) -> float:
    """Truncated cumulant series sum_{n<=n_max} kappa^c_n(L) x^n / n!.

    Converges for |x| within the distance to the nearest zero of the mode
    quadratic, roughly |x| L < pi; with x L <~ 1 the remainder is of the order
    of the first omitted term kappa^c_{n_max+1}(L) x^(n_max+1)/(n_max+1)!.
    """
    return math.fsum(
        critical_cumulant(nu, L, n) * x**n / math.factorial(n) for n in range(1, n_max + 1)
    )


@dataclass(frozen=True)
class DispersionPoint:
    """Critical mode energy and its tilt derivatives at one momentum."""

    nu: float
    L: int
    r: int
    lambda0: float
    derivs: tuple[float, ...]  # derivs[n-1] = lambda^(n)


def dispersion_point(nu: float, L: int, r: int, n_max: int) -> DispersionPoint:
    return DispersionPoint(
        nu=nu,
        L=L,
        r=r,
        lambda0=critical_dispersion(nu, L, r),
        derivs=tuple(lambda_derivative(nu, L, r, n) for n in range(1, n_max + 1)),
    )


@dataclass(frozen=True)
class CumulantReport:
    """One cumulant compared against its asymptotic growth constant.

    ratio is kappa_c itself for n = 1, kappa_c / log L for n in {2, 3} and
    kappa_c / L^(n-2) for n >= 4; it converges to kappa_star (to 0 for odd
    n >= 5).
    """

    nu: float
    L: int
    order: int
    sector: Sector
    kappa_c: float
    kappa_star: float
    ratio: float


def _check_size(L: int) -> None:
    if L < 2 or L % 2 != 0:
        raise ValueError(f"L must be even and >= 2, got {L}")


def _check_nu(nu: float) -> None:
    if not (0.0 <= nu < 1.0):
        raise ValueError(f"nu must be in [0, 1), got {nu}")


def critical_cgf(nu: float, L: int, sector: Sector = Sector.EVEN) -> float:
    """K_L(s_c) via the critical mode energies (w = 1/2 normalization)."""
    _check_nu(nu)
    _check_size(L)
    if nu == 0.0:
        raise ValueError("nu = 0 has no finite critical point")
    if sector is Sector.EVEN:
        return nu / 2.0 - 1.0 + (2.0 / L) * math.fsum(
            critical_dispersion(nu, L, r) for r in range(L // 2)
        )
    half = np.pi * np.arange(1, L // 2) / L  # half-angles of momenta 2 pi r / L
    total = 0.5 + math.fsum(np.sin(half) * np.sqrt(1.0 - (nu * np.cos(half)) ** 2))
    return nu / 2.0 - 1.0 + (2.0 / L) * total
