"""Plasma-model mirror response and light-cone sector classification.

The mirrors are described by the lossless free-electron (plasma) dielectric
function.  All cavity quantities are expressed in scaled units: frequencies
and wavevectors are multiplied by the mirror separation L (and divided by c),
so a cavity is fully characterised by the single number
``Omega_P = omega_p * L / c = 2*pi*L/lambda_p``.

Energy quadrature never touches the real frequency axis: reflection is only
provided on the imaginary axis, where the relevant integrands are smooth and
sign-definite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, unique
from typing import Optional, Union

from scipy.constants import c as SPEED_OF_LIGHT

from .errors import DomainError

__all__ = [
    "Polarization",
    "Sector",
    "PlasmaMirror",
    "ScaledCavity",
    "classify",
    "permittivity",
    "permittivity_imag_axis",
    "reflection_sq_imag_axis",
    "LIGHTCONE_TOLERANCE",
]

#: Absolute tolerance on Omega - K below which a point counts as on the cone.
LIGHTCONE_TOLERANCE = 1e-12


@unique
class Polarization(Enum):
    """Field polarization relative to the plane of incidence."""

    TE = "TE"
    TM = "TM"


@unique
class Sector(Enum):
    """Position of a (K, Omega) point relative to the vacuum light cone."""

    PROPAGATIVE = "propagative"
    EVANESCENT = "evanescent"
    LIGHTCONE = "lightcone"


def _coerce_polarization(pol: Union[Polarization, str]) -> Polarization:
    if isinstance(pol, Polarization):
        return pol
    try:
        return Polarization(str(pol).upper())
    except ValueError:
        raise DomainError(f"unknown polarization {pol!r}; expected TE or TM") from None


@dataclass(frozen=True)
class PlasmaMirror:
    """A semi-infinite plasma-model mirror.

    ``omega_p`` is the plasma angular frequency in rad/s and ``lambda_p`` the
    plasma wavelength in meters; they are tied by
    ``lambda_p = 2*pi*c/omega_p``, so construct through one of the
    classmethods and the other field is derived.
    """

    omega_p: float
    lambda_p: float

    def __post_init__(self) -> None:
        if not (self.omega_p > 0.0) or not math.isfinite(self.omega_p):
            raise DomainError("omega_p must be positive and finite")
        if not (self.lambda_p > 0.0) or not math.isfinite(self.lambda_p):
            raise DomainError("lambda_p must be positive and finite")
        derived = 2.0 * math.pi * SPEED_OF_LIGHT / self.omega_p
        if abs(self.lambda_p - derived) > 4.0 * math.ulp(derived):
            raise DomainError(
                "inconsistent mirror: lambda_p must equal 2*pi*c/omega_p "
                f"(got {self.lambda_p!r}, expected {derived!r})"
            )

    @classmethod
    def from_plasma_frequency(cls, omega_p: float) -> "PlasmaMirror":
        if not (omega_p > 0.0) or not math.isfinite(omega_p):
            raise DomainError("omega_p must be positive and finite")
        return cls(omega_p=omega_p, lambda_p=2.0 * math.pi * SPEED_OF_LIGHT / omega_p)

    @classmethod
    def from_plasma_wavelength(cls, lambda_p: float) -> "PlasmaMirror":
        if not (lambda_p > 0.0) or not math.isfinite(lambda_p):
            raise DomainError("lambda_p must be positive and finite")
        omega_p = 2.0 * math.pi * SPEED_OF_LIGHT / lambda_p
        return cls(omega_p=omega_p, lambda_p=2.0 * math.pi * SPEED_OF_LIGHT / omega_p)


@dataclass(frozen=True)
class ScaledCavity:
    """Dimensionless description of a two-mirror cavity.

    ``Omega_P = omega_p * L / c = 2*pi*L/lambda_p`` is the only parameter the
    scaled theory needs; ``L`` is carried along optionally for unit
    restoration.
    """

    Omega_P: float
    L: Optional[float] = None

    def __post_init__(self) -> None:
        if not (self.Omega_P > 0.0) or not math.isfinite(self.Omega_P):
            raise DomainError("Omega_P must be positive and finite")
        if self.L is not None and not (self.L > 0.0):
            raise DomainError("L must be positive when provided")

    @classmethod
    def from_dimensionless(cls, Omega_P: float) -> "ScaledCavity":
        return cls(Omega_P=Omega_P)

    @classmethod
    def from_physical(cls, mirror: PlasmaMirror, L: float) -> "ScaledCavity":
        if not (L > 0.0) or not math.isfinite(L):
            raise DomainError("L must be positive and finite")
        return cls(Omega_P=2.0 * math.pi * L / mirror.lambda_p, L=L)

    @property
    def l_over_lambda_p(self) -> float:
        """Mirror separation in units of the plasma wavelength."""
        return self.Omega_P / (2.0 * math.pi)


def classify(K: float, Omega: float) -> Sector:
    """Classify a scaled (wavevector, frequency) point against the light cone.

    Points with ``|Omega - K| <= LIGHTCONE_TOLERANCE`` count as on the cone;
    otherwise ``Omega > K`` is propagative and ``Omega < K`` evanescent.
    """
    if not (K >= 0.0) or not (Omega >= 0.0):
        raise DomainError("classify expects K >= 0 and Omega >= 0")
    if abs(Omega - K) <= LIGHTCONE_TOLERANCE:
        return Sector.LIGHTCONE
    return Sector.PROPAGATIVE if Omega > K else Sector.EVANESCENT


def permittivity(Omega: float, Omega_P: float) -> float:
    """Plasma-model relative permittivity at real scaled frequency ``Omega``."""
    if not (Omega_P > 0.0):
        raise DomainError("Omega_P must be positive")
    if not (Omega > 0.0):
        raise DomainError("permittivity needs Omega > 0")
    ratio = Omega_P / Omega
    return 1.0 - ratio * ratio


def permittivity_imag_axis(Xi: float, Omega_P: float) -> float:
    """Plasma-model permittivity at imaginary scaled frequency ``i*Xi``.

    Always real and greater than 1 for ``Xi > 0``.
    """
    if not (Omega_P > 0.0):
        raise DomainError("Omega_P must be positive")
    if not (Xi > 0.0):
        raise DomainError("permittivity_imag_axis needs Xi > 0")
    ratio = Omega_P / Xi
    return 1.0 + ratio * ratio


def reflection_sq_imag_axis(
    pol: Union[Polarization, str], K: float, Xi: float, Omega_P: float
) -> float:
    """Squared single-interface reflection amplitude on the imaginary axis.

    ``K`` is the scaled transverse wavevector, ``Xi`` the scaled imaginary
    frequency.  With ``kappa = sqrt(Xi^2 + K^2)`` the vacuum-side decay
    constant and ``kappa_t = sqrt(kappa^2 + Omega_P^2)`` the medium-side one,
    the amplitudes are ``(kappa - kappa_t)/(kappa + kappa_t)`` for TE and the
    permittivity-weighted analogue for TM; the TM form is evaluated as
    ``(kappa - kappa_t/eps)/(kappa + kappa_t/eps)`` which stays finite for
    arbitrarily small ``Xi``.  The result lies in [0, 1].
    """
    pol = _coerce_polarization(pol)
    if not (Omega_P > 0.0):
        raise DomainError("Omega_P must be positive")
    if not (K >= 0.0):
        raise DomainError("K must be non-negative")
    if not (Xi > 0.0):
        raise DomainError("Xi must be positive")
    kappa = math.hypot(K, Xi)
    kappa_t = math.hypot(kappa, Omega_P)
    if pol is Polarization.TE:
        amplitude = (kappa - kappa_t) / (kappa + kappa_t)
    else:
        # kappa_t / eps(i Xi) written so that neither factor can overflow.
        ratio = Omega_P / Xi
        reduced = kappa_t / (1.0 + ratio * ratio)
        amplitude = (kappa - reduced) / (kappa + reduced)
    return amplitude * amplitude
