"""Dispersion-relation machinery for the cavity modes of two plasma mirrors.

A cavity bounded by two identical plasma-model mirrors supports, in TM
polarization, two coupled surface-mode branches (labelled ``plus`` and
``minus`` after the sign of the coupling term) that merge, for large mirror
separation, into the doubly degenerate single-interface surface mode (the
``zero`` reference branch).  On top of those there is a ladder of
propagative cavity resonances indexed by an integer ``m``.

Everything is expressed in scaled units (wavevector ``K = |k| L``, frequency
``Omega = omega L / c``, plasma parameter ``Omega_P = omega_p L / c``) and in
the variable ``z = K**2 - Omega**2`` that measures the squared distance from
the light cone: ``z > 0`` is evanescent, ``z < 0`` propagative.

Each coupled branch has a characteristic function ``f(z) = z + g(z)**2``
which is strictly increasing, so the branch frequency at a given wavevector
follows from inverting ``f(z*) = K**2`` and setting
``Omega = sqrt(K**2 - z*)``.  For the ``plus`` branch the inversion can land
at ``z < 0`` (the branch crosses the light cone); there ``g**2`` is continued
in real arithmetic through trigonometric forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, unique
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    BracketNotFound,
    ContinuationError,
    ConvergenceFailure,
    DomainError,
    InvalidBracket,
    NoSolution,
)
from .numerics import DEFAULT_ROOT, RootSpec, find_root_bracketed
from .optics import Polarization, Sector, classify

__all__ = [
    "CoupledBranch",
    "BranchKind",
    "BranchId",
    "DispersionPoint",
    "BranchConstants",
    "omega0",
    "f_branch",
    "g_branch",
    "g_branch_combination",
    "branch_constants",
    "invert_branch",
    "photonic_mode",
    "sample_dispersion",
    "default_dispersion_grid",
]

# The real-arithmetic continuation below the light cone routes its tangent
# evaluations through this module attribute so the self-check battery can
# inject a fault and prove the continuation-consistency check has teeth.
_tan = math.tan


@unique
class CoupledBranch(Enum):
    """Selector for the three coupled-surface-mode characteristic functions."""

    PLUS = "plus"
    MINUS = "minus"
    ZERO = "zero"


@unique
class BranchKind(Enum):
    """Identity of a dispersion branch as exported in tables."""

    PLASMONIC_PLUS = "plasmonic_plus"
    PLASMONIC_MINUS = "plasmonic_minus"
    INTERFACE_REFERENCE = "interface_reference"
    PHOTONIC = "photonic"


def _coerce_branch(kind: Union[CoupledBranch, str]) -> CoupledBranch:
    if isinstance(kind, CoupledBranch):
        return kind
    try:
        return CoupledBranch(str(kind).lower())
    except ValueError:
        raise DomainError(
            f"unknown branch {kind!r}; expected one of plus, minus, zero"
        ) from None


@dataclass(frozen=True)
class BranchId:
    """Identity of one exported dispersion branch.

    The coupled surface branches and their single-interface reference exist
    only in TM polarization; the propagative cavity ladder carries a positive
    mode index ``m`` and exists for both polarizations.
    """

    kind: BranchKind
    pol: Polarization
    m: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is BranchKind.PHOTONIC:
            if self.m is None or int(self.m) != self.m or self.m < 0:
                raise DomainError("photonic branches need a non-negative integer m")
        else:
            if self.m is not None:
                raise DomainError("m is only meaningful for photonic branches")
            if self.pol is not Polarization.TM:
                raise DomainError(
                    "surface-mode branches exist only in TM polarization"
                )


@dataclass(frozen=True)
class DispersionPoint:
    """One sampled point of a dispersion branch, with its sector tag."""

    K: float
    Omega: float
    sector: Sector

    def __post_init__(self) -> None:
        if not (self.K >= 0.0) or not (self.Omega >= 0.0):
            raise DomainError("K and Omega must be non-negative")
        if classify(self.K, self.Omega) is not self.sector:
            raise DomainError("sector tag inconsistent with (K, Omega)")


@dataclass(frozen=True)
class BranchConstants:
    """Derived scalars of the coupled branches at a given ``Omega_P``.

    ``k_P``: wavevector where the ``plus`` branch crosses the light cone
    (closed form ``Omega_P / sqrt(1 + Omega_P/2)``).
    ``y_plus``: frequency of the ``plus`` branch at ``K = 0``.
    ``z_plus0 = y_plus**2``: magnitude of the branch's endpoint in ``z``
    (``f_plus(-z_plus0) = 0``).
    ``z_0P``: value of ``z`` on the reference branch at ``K = k_P``; it is
    non-positive by the convention ``-z_0P = k_P**2 - omega0(k_P)**2 >= 0``.
    """

    Omega_P: float
    k_P: float
    y_plus: float
    z_plus0: float
    z_0P: float


def omega0(K: float, Omega_P: float) -> float:
    """Frequency of the surface mode bound to a single mirror interface.

    Closed form ``sqrt((Omega_P^2 + 2K^2 - sqrt(Omega_P^4 + 4K^4))/2)``,
    evaluated through its rationalised equivalent so no cancellation occurs.
    Always ``<= K`` (the mode is evanescent), rising from 0 at ``K = 0``
    towards the asymptote ``Omega_P/sqrt(2)``.
    """
    if not (Omega_P > 0.0):
        raise DomainError("Omega_P must be positive")
    if not (K >= 0.0):
        raise DomainError("K must be non-negative")
    if K == 0.0:
        return 0.0
    wp2 = Omega_P * Omega_P
    k2 = K * K
    discriminant = math.hypot(wp2, 2.0 * k2)
    return math.sqrt(2.0 * k2 * wp2 / (wp2 + 2.0 * k2 + discriminant))


def _g_squared(branch: CoupledBranch, z: float, Omega_P: float) -> float:
    """Squared mode function g(z)^2 of one coupled branch (no domain gate).

    For ``z > 0`` the three branches share the structure
    ``Omega_P^2 * sqrt(z) / (sqrt(z) + sqrt(z + Omega_P^2) * h)`` with the
    coupling factor ``h`` equal to ``tanh(sqrt(z)/2)`` (plus),
    ``coth(sqrt(z)/2)`` (minus) or 1 (zero reference).  For ``z < 0`` only the
    plus branch continues, via ``u = sqrt(-z)`` and the tangent analogue of
    the hyperbolic form; the window ``u < min(Omega_P, pi)`` keeps that
    continuation single-valued.
    """
    if z < 0.0:
        if branch is not CoupledBranch.PLUS:
            raise DomainError(
                "only the plus branch continues below the light cone (z < 0)"
            )
        u = math.sqrt(-z)
        if u >= min(Omega_P, math.pi):
            raise ContinuationError(
                f"continuation parameter u={u:.6g} outside the principal "
                f"window [0, min(Omega_P, pi)) for Omega_P={Omega_P:.6g}"
            )
        span = math.sqrt((Omega_P - u) * (Omega_P + u))
        return Omega_P * Omega_P * u / (u + span * _tan(0.5 * u))
    if z == 0.0:
        if branch is CoupledBranch.PLUS:
            return Omega_P * Omega_P / (1.0 + 0.5 * Omega_P)
        return 0.0
    root_z = math.sqrt(z)
    root_sum = math.hypot(root_z, Omega_P)
    decay = math.exp(-root_z)
    one_minus_decay = -math.expm1(-root_z)
    if branch is CoupledBranch.ZERO:
        coupling = 1.0
    elif branch is CoupledBranch.PLUS:
        coupling = one_minus_decay / (1.0 + decay)
    else:
        coupling = (1.0 + decay) / one_minus_decay
    return Omega_P * Omega_P * root_z / (root_z + root_sum * coupling)


def _check_branch_domain(branch: CoupledBranch, z: float, Omega_P: float) -> None:
    if not (Omega_P > 0.0):
        raise DomainError("Omega_P must be positive")
    if not math.isfinite(z):
        raise DomainError("z must be finite")
    if z >= 0.0:
        return
    if branch is not CoupledBranch.PLUS:
        raise DomainError(
            "z < 0 is outside the domain of the minus/zero branches; only the "
            "plus branch continues below the light cone"
        )
    u = math.sqrt(-z)
    if u >= min(Omega_P, math.pi):
        raise ContinuationError(
            f"continuation parameter u={u:.6g} outside the principal window "
            f"[0, min(Omega_P, pi)) for Omega_P={Omega_P:.6g}"
        )
    z_plus0 = branch_constants(Omega_P).z_plus0
    if z < -z_plus0 * (1.0 + 1e-12):
        raise DomainError(
            f"z={z!r} lies below the plus-branch endpoint -z_plus0="
            f"{-z_plus0!r} for Omega_P={Omega_P:.6g}"
        )


def f_branch(kind: Union[CoupledBranch, str], z: float, Omega_P: float) -> float:
    """Characteristic function ``f(z) = z + g(z)**2`` of a coupled branch.

    Strictly increasing in ``z`` on its domain; the branch frequency at
    wavevector ``K`` solves ``f(z) = K**2``.  The minus and zero branches are
    defined for ``z >= 0``; the plus branch extends down to ``-z_plus0``.
    """
    branch = _coerce_branch(kind)
    _check_branch_domain(branch, z, Omega_P)
    return z + _g_squared(branch, z, Omega_P)


def g_branch(kind: Union[CoupledBranch, str], z: float, Omega_P: float) -> float:
    """Mode function ``g(z) = sqrt(f(z) - z)``; non-negative on its domain."""
    branch = _coerce_branch(kind)
    _check_branch_domain(branch, z, Omega_P)
    return math.sqrt(_g_squared(branch, z, Omega_P))


def g_branch_combination(z: float, Omega_P: float) -> float:
    """The combination ``g_plus + g_minus - 2*g_zero`` without cancellation.

    All three mode functions share the plateau ``Omega_P/sqrt(2)`` at large
    ``z``, so the naive sum loses all significance once the differences fall
    below machine precision; this evaluation reorganises the sum so the
    plateau cancels algebraically and the exp(-sqrt(z)) decay of the
    remainder is computed directly.  Defined for ``z >= 0``.
    """
    if not (Omega_P > 0.0):
        raise DomainError("Omega_P must be positive")
    if z < 0.0:
        raise DomainError("the branch combination is defined for z >= 0")
    if z == 0.0:
        # g_minus and g_zero vanish at z = 0; only the plus branch survives.
        return math.sqrt(_g_squared(CoupledBranch.PLUS, 0.0, Omega_P))
    root_z = math.sqrt(z)
    root_sum = math.hypot(root_z, Omega_P)
    total = root_z + root_sum
    decay = math.exp(-root_z)
    one_minus_decay = -math.expm1(-root_z)
    ratio = decay * Omega_P * Omega_P / (total * total)
    one_minus_ratio = (
        2.0 * root_z * total + Omega_P * Omega_P * one_minus_decay
    ) / (total * total)
    g_zero = Omega_P * math.sqrt(root_z / total)
    plus_factor = math.sqrt((1.0 + decay) / one_minus_ratio)
    minus_factor = math.sqrt(one_minus_decay / (1.0 + ratio))
    one_minus_ratio_sq = one_minus_ratio * (1.0 + ratio)
    numerator = ratio * (minus_factor + plus_factor + 2.0) - 2.0 * (
        decay + ratio
    ) / (one_minus_ratio_sq * (minus_factor + plus_factor))
    return (
        g_zero
        * (decay + ratio)
        * numerator
        / (one_minus_ratio_sq * (plus_factor + 1.0) * (minus_factor + 1.0))
    )


@lru_cache(maxsize=512)
def _branch_constants_cached(Omega_P: float) -> BranchConstants:
    k_p = Omega_P / math.sqrt(1.0 + 0.5 * Omega_P)
    u_max = min(Omega_P, math.pi)

    # The endpoint of the plus branch solves f_plus(-u^2) = 0, which after
    # clearing denominators becomes u*tan(u/2) = sqrt(Omega_P^2 - u^2): a
    # strictly monotone crossing on (0, u_max) with no spurious endpoint zero.
    def endpoint_equation(u: float) -> float:
        return u * math.tan(0.5 * u) - math.sqrt(
            max((Omega_P - u) * (Omega_P + u), 0.0)
        )

    y_plus = find_root_bracketed(
        endpoint_equation,
        u_max * 1e-15,
        u_max * (1.0 - 1e-15),
        RootSpec(x_tol=1e-14, max_iterations=300),
    )
    z_plus0 = y_plus * y_plus
    crossing_frequency = omega0(k_p, Omega_P)
    evanescent_depth = k_p * k_p - crossing_frequency * crossing_frequency
    if evanescent_depth < 0.0:
        raise ConvergenceFailure(
            "reference branch unexpectedly above the light cone at K = k_P"
        )
    return BranchConstants(
        Omega_P=Omega_P,
        k_P=k_p,
        y_plus=y_plus,
        z_plus0=z_plus0,
        z_0P=-evanescent_depth,
    )


def branch_constants(Omega_P: float) -> BranchConstants:
    """Derived branch scalars (light-cone crossing, endpoints) for ``Omega_P``."""
    if not isinstance(Omega_P, (int, float)) or isinstance(Omega_P, bool):
        raise DomainError("Omega_P must be a real number")
    Omega_P = float(Omega_P)
    if not (Omega_P > 0.0) or not math.isfinite(Omega_P):
        raise DomainError("Omega_P must be positive and finite")
    return _branch_constants_cached(Omega_P)


def _rescan_bracket(
    g, lo: float, hi: float, spec: RootSpec, label: str
) -> float:
    """Fallback monotonicity scan when the analytic bracket shows no sign change."""
    grid = np.linspace(lo, hi, 129)
    values = [g(x) for x in grid]
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            return float(grid[i])
        if (values[i] < 0.0) != (values[i + 1] < 0.0):
            return find_root_bracketed(g, float(grid[i]), float(grid[i + 1]), spec)
    if values[-1] == 0.0:
        return float(grid[-1])
    raise BracketNotFound(
        f"monotonicity scan found no sign change for {label} on "
        f"[{lo:g}, {hi:g}]"
    )


def invert_branch(
    kind: Union[CoupledBranch, str],
    K: float,
    Omega_P: float,
    spec: RootSpec = DEFAULT_ROOT,
) -> float:
    """Branch frequency ``Omega[K]``: solves ``f(z*) = K**2``, returns ``sqrt(K**2 - z*)``.

    The root bracket follows from the monotonicity of ``f``: the minus and
    zero branches always have ``z* in [0, K**2]``; the plus branch has
    ``z* in [0, K**2]`` for ``K >= k_P`` and a negative root in
    ``[-z_plus0, 0]`` below the light-cone crossing.  A failed bracket is
    rescanned and, if still signless, raises :class:`BracketNotFound` rather
    than guessing.
    """
    branch = _coerce_branch(kind)
    if not (K >= 0.0):
        raise DomainError("K must be non-negative")
    if not (Omega_P > 0.0):
        raise DomainError("Omega_P must be positive")
    target = K * K
    if branch is CoupledBranch.PLUS:
        constants = branch_constants(Omega_P)
        f_at_zero = Omega_P * Omega_P / (1.0 + 0.5 * Omega_P)
        if target >= f_at_zero:
            lo, hi = 0.0, target
        else:
            lo, hi = -constants.z_plus0, 0.0
            if f_branch(branch, lo, Omega_P) - target >= 0.0:
                # K is so small that the root sits within the endpoint's own
                # root-finding residual; the endpoint is the answer.
                return math.sqrt(target + constants.z_plus0)
    else:
        if target == 0.0:
            return 0.0
        lo, hi = 0.0, target

    def objective(z: float) -> float:
        return f_branch(branch, z, Omega_P) - target

    try:
        z_star = find_root_bracketed(objective, lo, hi, spec)
    except InvalidBracket:
        z_star = _rescan_bracket(
            objective, lo, hi, spec, f"branch {branch.value} at K={K:g}"
        )
    remainder = target - z_star
    return math.sqrt(remainder) if remainder > 0.0 else 0.0


def photonic_mode(
    pol: Union[Polarization, str],
    m: int,
    K: float,
    Omega_P: float,
    spec: RootSpec = DEFAULT_ROOT,
) -> float:
    """Frequency of the ``m``-th propagative cavity resonance at wavevector ``K``.

    Solves the round-trip phase condition: with ``Q = sqrt(Omega^2 - K^2)``
    the longitudinal phase, ``Q`` plus the single-mirror reflection phase must
    equal ``pi * m``.  Solutions live in ``0 < Q < min(pi*m, Omega_P)`` and
    approach the ideal-cavity value ``sqrt(K^2 + (pi*m)^2)`` as
    ``Omega_P -> inf``.  Raises :class:`NoSolution` when the branch does not
    exist at this ``(K, m)``.
    """
    pol = Polarization(pol) if not isinstance(pol, Polarization) else pol
    if int(m) != m or m < 1:
        raise DomainError("mode index m must be an integer >= 1")
    if not (K >= 0.0):
        raise DomainError("K must be non-negative")
    if not (Omega_P > 0.0):
        raise DomainError("Omega_P must be positive")

    def phase_defect(Q: float) -> float:
        if pol is Polarization.TE:
            shift = 2.0 * math.asin(min(Q / Omega_P, 1.0))
        else:
            transverse_decay = math.sqrt(max((Omega_P - Q) * (Omega_P + Q), 0.0))
            omega_sq = K * K + Q * Q
            eps = 1.0 - Omega_P * Omega_P / omega_sq
            shift = 2.0 * math.atan2(transverse_decay, -eps * Q)
        return Q + shift - math.pi * m

    q_hi = min(math.pi * m, Omega_P) * (1.0 - 1e-12)
    grid = np.geomspace(q_hi * 1e-8, q_hi, 200)
    values = [phase_defect(q) for q in grid]
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            return math.hypot(K, float(grid[i]))
        if (values[i] < 0.0) != (values[i + 1] < 0.0):
            Q = find_root_bracketed(
                phase_defect, float(grid[i]), float(grid[i + 1]), spec
            )
            return math.hypot(K, Q)
    if values[-1] == 0.0:
        return math.hypot(K, float(grid[-1]))
    raise NoSolution(
        f"no propagative cavity mode for pol={pol.value}, m={m}, K={K:g}, "
        f"Omega_P={Omega_P:g}"
    )


def default_dispersion_grid(Omega_P: float, points: int = 400) -> np.ndarray:
    """Log-spaced wavevector grid covering the interesting branch structure."""
    if points < 2:
        raise DomainError("need at least two grid points")
    return np.geomspace(1e-3, 10.0 * max(1.0, Omega_P), points)


def _check_continuity(
    branch: BranchId, points: Sequence[DispersionPoint], Omega_P: float
) -> None:
    for left, right in zip(points, points[1:]):
        spacing = right.K - left.K
        jump = abs(right.Omega - left.Omega)
        allowance = 4.0 * spacing + 1e-9 * (1.0 + max(left.Omega, right.Omega))
        if jump > allowance:
            raise ConvergenceFailure(
                f"branch {branch.kind.value} is discontinuous between "
                f"K={left.K:g} and K={right.K:g} at Omega_P={Omega_P:g} "
                f"(jump {jump:.3e} exceeds {allowance:.3e})"
            )


def sample_dispersion(
    Omega_P: float,
    K_grid: Iterable[float],
    branches: Iterable[BranchId],
) -> List[Tuple[BranchId, Tuple[DispersionPoint, ...]]]:
    """Sample the requested branches over an ascending wavevector grid.

    Sector tags come from :func:`casimir_plasmons.optics.classify`, so the
    plus branch carries its propagative-to-evanescent transition at
    ``K = k_P``.  Wavevectors where a photonic branch has no solution are
    skipped.  Adjacent samples are checked for grid-commensurate continuity.
    """
    grid = [float(k) for k in K_grid]
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise DomainError("K_grid must be sorted in ascending order")
    if any(k < 0.0 for k in grid):
        raise DomainError("K_grid entries must be non-negative")
    result: List[Tuple[BranchId, Tuple[DispersionPoint, ...]]] = []
    for branch in branches:
        points: List[DispersionPoint] = []
        for K in grid:
            if branch.kind is BranchKind.PHOTONIC:
                try:
                    Omega = photonic_mode(branch.pol, branch.m, K, Omega_P)
                except NoSolution:
                    continue
            elif branch.kind is BranchKind.PLASMONIC_PLUS:
                Omega = invert_branch(CoupledBranch.PLUS, K, Omega_P)
            elif branch.kind is BranchKind.PLASMONIC_MINUS:
                Omega = invert_branch(CoupledBranch.MINUS, K, Omega_P)
            else:
                Omega = omega0(K, Omega_P)
            points.append(DispersionPoint(K=K, Omega=Omega, sector=classify(K, Omega)))
        _check_continuity(branch, points, Omega_P)
        result.append((branch, tuple(points)))
    return result
