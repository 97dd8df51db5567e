"""Independent ground truths for the spectral formulas.

Two oracles, deliberately sharing no code with the closed forms they check:

* dense diagonalization of the symmetrized tilted chain on the full 2^L space
  or one parity block (bond flips conserve particle-number parity), giving
  K_L(s) = -E_min / L;
* finite-difference differentiation: Richardson-extrapolated central
  differences in double precision for cumulants of the CGF, and plain central
  differences in 60-digit arithmetic for the per-mode energy derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cgf import cgf
from .model import ModelParams, Sector, tilted_params

_ED_MAX_SITES = 12  # dense matrices; 2^(L-1) = 2048 per block is the practical ceiling


@dataclass(frozen=True)
class DenseSpectrumProblem:
    """Dense symmetric matrix of the tilted chain, with its configuration basis."""

    L: int
    s: float
    sector: Sector | None  # None: full 2^L space
    basis: np.ndarray  # bit-encoded occupation configurations
    matrix: np.ndarray


def build_hamiltonian(
    p: ModelParams, s: float, L: int, sector: Sector | None = None
) -> DenseSpectrumProblem:
    """Symmetrized tilted generator as a dense real symmetric matrix.

    Basis states are occupation bitstrings.  The diagonal is the total exit
    rate L mu + 2 w N(config) (unchanged by the similarity transform); flipping
    the two sites of a bond couples with amplitude -(w e^s + mu) when the bond
    is singly occupied (hop) and -sqrt(mu (2 w e^s + mu)) when empty or doubly
    occupied (pair creation/annihilation, symmetrized).  On L = 2 both bonds
    connect the same pair of sites, so amplitudes add.
    """
    if L < 2 or L % 2 != 0:
        raise ValueError(f"L must be even and >= 2, got {L}")
    if L > _ED_MAX_SITES:
        raise ValueError(f"dense diagonalization limited to L <= {_ED_MAX_SITES}, got {L}")
    tp = tilted_params(p, s)
    hop = -tp.J
    pair = -tp.J * tp.gamma
    if sector is None:
        basis = np.arange(1 << L, dtype=np.int64)
        index = basis
    else:
        want = 0 if sector is Sector.EVEN else 1
        basis = np.array(
            [b for b in range(1 << L) if bin(b).count("1") % 2 == want], dtype=np.int64
        )
        index = np.full(1 << L, -1, dtype=np.int64)
        index[basis] = np.arange(len(basis))
    dim = len(basis)
    H = np.zeros((dim, dim))
    for i, b in enumerate(basis):
        b = int(b)
        H[i, i] = L * p.mu + 2.0 * p.w * bin(b).count("1")
        for k in range(L):
            mask = (1 << k) | (1 << ((k + 1) % L))
            flipped = b ^ mask
            j = int(index[flipped])
            occ_k = (b >> k) & 1
            occ_k1 = (b >> ((k + 1) % L)) & 1
            H[i, j] += hop if occ_k != occ_k1 else pair
    return DenseSpectrumProblem(L=L, s=s, sector=sector, basis=basis, matrix=H)


def cgf_from_ed(p: ModelParams, s: float, L: int, sector: Sector = Sector.EVEN) -> float:
    """K_L(s) = -E_min/L from the dense spectrum of the requested parity block."""
    problem = build_hamiltonian(p, s, L, sector)
    return -float(np.linalg.eigvalsh(problem.matrix)[0]) / L


def richardson_derivative(
    f, x: float, n: int, h0: float | None = None, levels: int = 4, noise_scale: float = 0.0
):
    """n-th derivative of f at x: central differences + Richardson extrapolation.

    Returns (value, error_estimate).  The default step ladder ends at the
    single-shot optimum eps^(1/(n+2)) * max(1, |x|), with `levels` doublings
    above it feeding the extrapolation table.  The roundoff part of the error
    estimate assumes per-sample noise eps * max(|f|, noise_scale); pass
    noise_scale when f is a small difference of larger intermediates.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if levels < 2:
        raise ValueError(f"levels must be >= 2, got {levels}")
    eps = 2.2e-16
    if h0 is None:
        h0 = eps ** (1.0 / (n + 2)) * max(1.0, abs(x)) * 2.0 ** (levels - 1)
    coeffs = [(-1.0) ** j * math.comb(n, j) for j in range(n + 1)]
    offsets = [n / 2.0 - j for j in range(n + 1)]
    fmax = 0.0

    def central(h: float) -> float:
        nonlocal fmax
        samples = [f(x + o * h) for o in offsets]
        fmax = max(fmax, max(abs(v) for v in samples))
        return math.fsum(c * v for c, v in zip(coeffs, samples)) / h**n

    table = [central(h0 / 2**i) for i in range(levels)]
    err = math.inf
    value = table[-1]
    for k in range(1, levels):
        factor = 4.0**k
        table = [
            (factor * table[i + 1] - table[i]) / (factor - 1.0)
            for i in range(len(table) - 1)
        ]
        err = abs(table[-1] - value)
        value = table[-1]
    # The last correction tracks the still-unremoved truncation order but can
    # undershoot the residual when the table has not yet settled; pad it.  The
    # roundoff floor covers the smallest stencil, whose n-th difference divides
    # sum(|coeffs|) = 2^n samples each rounded at eps*fmax by h^n.
    h_min = h0 / 2 ** (levels - 1)
    err = max(8.0 * err, eps * max(fmax, noise_scale) * 2.0**n / h_min**n)
    return value, err


@dataclass(frozen=True)
class FDEstimate:
    value: float
    error: float


def fd_cumulants(
    p: ModelParams,
    L: int,
    s0: float,
    n: int,
    sector: Sector = Sector.EVEN,
    h0: float | None = None,
) -> FDEstimate:
    """Finite-difference cumulant d^n K_L/ds^n at s0, with an error estimate.

    Independent numerical route to the closed-form cumulants; orders above 6
    sit below the double-precision noise floor and are rejected.
    """
    if not 1 <= n <= 6:
        raise ValueError(f"finite differences support 1 <= n <= 6, got {n}")
    # K is a small difference of mode-energy sums of scale 2(w + mu), so its
    # evaluation noise follows that scale rather than |K| itself
    value, err = richardson_derivative(
        lambda s: cgf(p, s, L, sector), s0, n, h0=h0, noise_scale=2.0 * (p.w + p.mu)
    )
    return FDEstimate(value=value, error=err)


def fd_dispersion_derivative(nu: float, L: int, r: int, n: int, dps: int = 60) -> float:
    """Extended-precision FD oracle for the critical mode-energy derivatives.

    Evaluates the even-sector mode energy (w = 1/2 normalization) in `dps`-digit
    arithmetic, applies n-th central differences at steps h and h/2 with
    h = 1e-6, and removes the leading h^2 truncation by one Richardson step,
    so truncation (~h^4) and roundoff (~10^-dps h^-n) are both far below
    double precision.  Shares nothing with the closed-form coefficient tables.
    """
    from mpmath import mp, mpf

    if not (0.0 < nu < 1.0):
        raise ValueError(f"nu must be in (0, 1), got {nu}")
    with mp.workdps(dps):
        w = mpf(1) / 2
        mu = (1 - mpf(nu)) / 2
        q = mp.pi * (2 * r + 1) / L
        cos_q = mp.cos(q)
        sin2_q = mp.sin(q) ** 2
        sc = mp.log(mpf(nu))

        def lam(s):
            es = mp.exp(s)
            J = w * es + mu
            return mp.sqrt((w - J * cos_q) ** 2 + (2 * w * es + mu) * mu * sin2_q)

        def central(h):
            total = mp.fsum(
                (-1) ** j * math.comb(n, j) * lam(sc + (mpf(n) / 2 - j) * h)
                for j in range(n + 1)
            )
            return total / h**n

        h = mpf(10) ** -6
        coarse, fine = central(h), central(h / 2)
        return float((4 * fine - coarse) / 3)
