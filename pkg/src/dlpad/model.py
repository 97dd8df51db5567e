"""Model parameters and single-mode dispersion for the tilted ring dynamics.

The process lives on a ring of L sites (L even).  Bond k = (k, k+1) fires at
rate ``mu + w * (n_k + n_{k+1})``; both sites flip.  The mu channel deposits a
particle pair (annihilating on contact), the w channel moves or annihilates
particles and counts one unit of activity.  Tilting the activity by exp(s A)
maps the generator onto a quantum XY chain in a transverse field; each momentum
mode contributes an excitation energy Lambda_{L,r}(s) and the cumulant
generating function of the activity is a sum over modes (see `dlpad.cgf`).

Everything downstream is parameterized either by the pair (w, mu) or by the
single number nu = 1 - mu/w, which fixes the critical tilt s_c = log(nu).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Sector(enum.Enum):
    """Parity sector of the particle number (conserved by the dynamics)."""

    EVEN = "even"
    ODD = "odd"

    @classmethod
    def parse(cls, text: str) -> "Sector":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown sector {text!r}; expected 'even' or 'odd'") from None


@dataclass(frozen=True)
class ModelParams:
    """Rates of the ring dynamics.

    w : rate contribution per occupied site of a bond (hop / annihilate)
    mu : spontaneous pair-deposition rate per bond
    nu : 1 - mu/w, the single parameter governing critical behavior;
         derived from (w, mu) unless supplied at construction.
    """

    w: float
    mu: float
    nu: float = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not (self.w > 0.0) or not (self.mu > 0.0):
            raise ValueError(f"rates must be positive, got w={self.w}, mu={self.mu}")
        if self.nu is None:
            object.__setattr__(self, "nu", 1.0 - self.mu / self.w)
        elif abs(1.0 - self.mu / self.w - self.nu) > 1e-12:
            raise ValueError("inconsistent (w, mu, nu)")

    @classmethod
    def from_nu(cls, nu: float) -> "ModelParams":
        """Normalized rates w = 1/2, mu = (1 - nu)/2 for nu in [0, 1)."""
        if not (0.0 <= nu < 1.0):
            raise ValueError(f"nu must be in [0, 1), got {nu}")
        return cls(w=0.5, mu=(1.0 - nu) / 2.0, nu=nu)


@dataclass(frozen=True)
class TiltedParams:
    """Couplings of the tilted quantum chain at tilt s.

    J = w e^s + mu sets the energy scale, gamma the pairing anisotropy,
    h the transverse field (h = 1 exactly at s = s_c), and z the similarity
    factor that symmetrizes the tilted generator (z^2 = mu / (2 w e^s + mu)).
    """

    s: float
    J: float
    gamma: float
    h: float
    z: float


@dataclass(frozen=True)
class TrigPair:
    """cos and sin of the half-momentum angle pi (2r+1) / (2L)."""

    c: float
    s: float


def trig_pair(L: int, r: int) -> TrigPair:
    _check_mode(L, r)
    theta = math.pi * (2 * r + 1) / (2 * L)
    return TrigPair(c=math.cos(theta), s=math.sin(theta))


def stationary_density(p: ModelParams) -> float:
    """Density of the stationary product measure, 1 / (1 + sqrt(1 + 2 w / mu)).

    Always in (0, 1/2): deposition plus pairwise annihilation cannot sustain
    a majority-occupied ring.
    """
    return 1.0 / (1.0 + math.sqrt(1.0 + 2.0 * p.w / p.mu))


def critical_point(p: ModelParams) -> float:
    """Critical tilt s_c = log(nu) = log(1 - mu/w); requires mu < w."""
    if p.mu >= p.w:
        raise ValueError(f"no critical point for mu >= w (nu = {p.nu} <= 0)")
    return math.log(p.nu)


def tilted_params(p: ModelParams, s: float) -> TiltedParams:
    es = math.exp(s)
    J = p.w * es + p.mu
    pairing = p.mu * (2.0 * p.w * es + p.mu)
    return TiltedParams(
        s=s,
        J=J,
        gamma=math.sqrt(pairing) / J,
        h=p.w / J,
        z=math.sqrt(p.mu / (2.0 * p.w * es + p.mu)),
    )


def _check_mode(L: int, r: int) -> None:
    if L < 2 or L % 2 != 0:
        raise ValueError(f"L must be even and >= 2, got {L}")
    if not 0 <= r < L:
        raise ValueError(f"mode index r must satisfy 0 <= r < L, got r={r}")


def dispersion(p: ModelParams, s: float, L: int, r: int, sector: Sector = Sector.EVEN) -> float:
    """Single-mode excitation energy Lambda_{L,r}(s).

    Even sector: momentum q = pi (2r+1) / L.  Odd sector: q = 2 pi r / L, with
    the r = 0 zero mode contributing J_s (the occupied q = 0 level that fixes
    the parity constraint, valid on both sides of h = 1).

    The even-sector values are symmetric under r <-> L-1-r, the odd ones under
    r <-> (L - r) mod L.
    """
    _check_mode(L, r)
    es = math.exp(s)
    J = p.w * es + p.mu
    if sector is Sector.ODD:
        if r == 0:
            return J
        q = 2.0 * math.pi * r / L
    else:
        q = math.pi * (2 * r + 1) / L
    # (w - J cos q)^2 + (2 w e^s + mu) mu sin^2 q, all addends nonnegative
    a = p.w - J * math.cos(q)
    b2 = (2.0 * p.w * es + p.mu) * p.mu
    return math.sqrt(a * a + b2 * math.sin(q) ** 2)


def critical_dispersion(nu: float, L: int, r: int) -> float:
    """Even-sector mode energy at the critical tilt, s_{L,r} sqrt(1 - nu^2 c_{L,r}^2).

    Closed form of `dispersion` at s = s_c with w = 1/2; regular on nu in [0, 1].
    """
    if not (0.0 <= nu <= 1.0):
        raise ValueError(f"nu must be in [0, 1], got {nu}")
    t = trig_pair(L, r)
    return t.s * math.sqrt(1.0 - (nu * t.c) ** 2)
