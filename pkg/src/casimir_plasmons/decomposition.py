"""Splitting the Casimir energy into surface-mode and cavity-mode parts.

The total reduction factor ``eta_E`` (see :mod:`casimir_plasmons.lifshitz`)
is decomposed as ``eta_E = eta_pl + eta_ph``:

* ``eta_pl`` — the contribution of the two coupled surface-mode branches,
  followed adiabatically across the light cone.  Computed two independent
  ways: a closed form built from the branch mode functions ``g_i(z)``, and a
  regularized direct integral over the inverted branch frequencies, kept as
  a mutual cross-check.
* ``eta_ph`` — the remainder, carried by the propagative cavity resonances.
* ``eta_ev`` — a variant of the surface-mode contribution that keeps only
  the evanescent sector (it cuts the plus branch at its light-cone crossing
  and completes it with the single-interface reference); always positive.

The module also extracts the asymptotic constants: the short-distance
coefficient ``alpha`` (both ``eta_E`` and ``eta_pl`` behave as
``(3/2) * alpha * L/lambda_p``), the large-separation coefficients ``gamma``
(``eta_pl ~ -gamma * sqrt(Omega_P)``) and ``beta_ev``
(``eta_ev ~ beta_ev * sqrt(Omega_P)``), and the separation at which
``eta_pl`` changes sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .errors import ConvergenceFailure, DomainError, ExtrapolationUnstable
from .lifshitz import _eta_total_detailed, eta_total
from .modes import (
    CoupledBranch,
    branch_constants,
    g_branch,
    g_branch_combination,
    invert_branch,
    omega0,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    FitResult,
    QuadratureSpec,
    RootSpec,
    find_root_bracketed,
    fit_scaling_coefficient,
    integrate_finite,
    integrate_finite_with_estimate,
    integrate_semi_infinite_with_estimate,
)

__all__ = [
    "EtaBreakdown",
    "AsymptoticFit",
    "AsymptoticReport",
    "eta_plasmonic",
    "eta_plasmonic_direct",
    "eta_evanescent",
    "eta_photonic",
    "compute_eta_breakdown",
    "propagative_part_identity",
    "short_distance_alpha",
    "fit_gamma",
    "fit_beta_ev",
    "locate_sign_change",
    "asymptotic_report",
    "ASYMPTOTIC_FIT_WINDOW",
    "SIGN_CHANGE_BRACKET",
]

# Prefactor of the closed forms (surface-mode energy integrals in z).
_CLOSED_PREFACTOR = 180.0 / (2.0 * math.pi**3)
# Prefactor of the direct wavevector integrals over inverted branch frequencies.
_DIRECT_PREFACTOR = 180.0 / math.pi**3

# Plasma parameters used for the large-separation square-root fits: far enough
# out that sub-leading terms (relative order Omega_P**-0.5) are resolved by
# the fitted offset, close enough that quadrature stays cheap.
ASYMPTOTIC_FIT_WINDOW = (1e3, 1e4, 1e5)
# L/lambda_p interval known to bracket the unique sign change of eta_pl.
SIGN_CHANGE_BRACKET = (0.01, 0.5)


def _run_labelled(label: str, thunk):
    """Run a quadrature thunk, prefixing convergence failures with its name."""
    try:
        return thunk()
    except ConvergenceFailure as exc:
        raise ConvergenceFailure(f"{label}: {exc}") from exc


@dataclass(frozen=True)
class EtaBreakdown:
    """The four reduction factors at one plasma parameter.

    ``eta_ph`` is definitional: it is stored as exactly
    ``eta_total - eta_pl``.  ``eta_ev`` is positive for every ``Omega_P``
    (the evanescent-only contribution is always attractive).
    """

    Omega_P: float
    eta_total: float
    eta_pl: float
    eta_ph: float
    eta_ev: float
    error_estimates: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not (self.Omega_P > 0.0):
            raise DomainError("Omega_P must be positive")
        if self.eta_ph != self.eta_total - self.eta_pl:
            raise DomainError(
                "eta_ph must equal eta_total - eta_pl exactly as stored"
            )
        if not (self.eta_ev > 0.0):
            raise DomainError("eta_ev must be positive")


@dataclass(frozen=True)
class AsymptoticFit:
    """A fitted asymptotic coefficient together with its diagnostics."""

    value: float
    fit: FitResult
    samples: Tuple[Tuple[float, float], ...]


@dataclass(frozen=True)
class AsymptoticReport:
    """The headline asymptotic constants and the sign-change location."""

    alpha: float
    gamma: float
    beta_ev: float
    sign_change_L_over_lambdaP: float
    fit_residuals: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0 and self.gamma > 0.0 and self.beta_ev > 0.0):
            raise DomainError("alpha, gamma and beta_ev must all be positive")
        if not (0.0 < self.sign_change_L_over_lambdaP < 1.0):
            raise DomainError("sign change must lie in (0, 1) as L/lambda_p")


def _branch_sum_integral(
    Omega_P: float, spec: QuadratureSpec
) -> Tuple[float, float]:
    """``Int_0^inf (g_plus + g_minus - 2 g_zero) dz`` with error estimate.

    Evaluated in the variable ``s = sqrt(z)`` where the integrand is smooth
    at the origin; the plateau cancellation makes it decay like
    ``exp(-2 s)``, well inside the envelope required by the semi-infinite
    integrator.
    """

    def integrand(s: float) -> float:
        return 2.0 * s * g_branch_combination(s * s, Omega_P)

    return _run_labelled(
        f"surface-mode branch-sum integral at Omega_P={Omega_P:g}",
        lambda: integrate_semi_infinite_with_estimate(integrand, 0.0, spec),
    )


def _eta_plasmonic_detailed(
    Omega_P: float,
    spec: QuadratureSpec,
    branch_sum: Optional[Tuple[float, float]] = None,
) -> Tuple[float, float]:
    if not (Omega_P > 0.0) or not math.isfinite(Omega_P):
        raise DomainError("Omega_P must be positive and finite")
    constants = branch_constants(Omega_P)
    y_plus = constants.y_plus
    if branch_sum is None:
        branch_sum = _branch_sum_integral(Omega_P, spec)
    total, err = branch_sum

    def continuation_integrand(u: float) -> float:
        return 2.0 * u * g_branch(CoupledBranch.PLUS, -u * u, Omega_P)

    below_lightcone, below_err = _run_labelled(
        f"plus-branch continuation integral at Omega_P={Omega_P:g}",
        lambda: integrate_finite_with_estimate(
            continuation_integrand, 0.0, y_plus, spec
        ),
    )
    value = -_CLOSED_PREFACTOR * (
        total + below_lightcone - (2.0 / 3.0) * y_plus**3
    )
    return value, _CLOSED_PREFACTOR * (err + below_err)


def eta_plasmonic(
    Omega_P: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Surface-mode reduction factor ``eta_pl`` via the closed form.

    The coupled branches are followed adiabatically: the part of the plus
    branch that lies below the light cone enters through the real-arithmetic
    continuation of its mode function.  Positive at short distance, negative
    at large distance, crossing zero near ``L/lambda_p ~ 0.08``.
    """
    return _eta_plasmonic_detailed(Omega_P, spec)[0]


def _direct_integrand(
    K: float, Omega_P: float, reg_epsilon: float, regulator: str
) -> float:
    """Integrand ``K * (Omega_plus + Omega_minus - 2 Omega_zero) * w(eps K)``."""
    if K <= 0.0:
        return 0.0
    combination = (
        invert_branch(CoupledBranch.PLUS, K, Omega_P)
        + invert_branch(CoupledBranch.MINUS, K, Omega_P)
        - 2.0 * invert_branch(CoupledBranch.ZERO, K, Omega_P)
    )
    if regulator == "exponential":
        weight = math.exp(-reg_epsilon * K)
    else:
        weight = math.exp(-((reg_epsilon * K) ** 2))
    return K * combination * weight


def _eta_plasmonic_regulated(
    Omega_P: float, reg_epsilon: float, spec: QuadratureSpec, regulator: str
) -> float:
    # Beyond this wavevector the branch combination has decayed to ~1e-40;
    # extending further only adds round-off.
    cutoff = math.sqrt(1800.0 + 0.5 * Omega_P * Omega_P) + 5.0
    value = _run_labelled(
        f"regulated direct branch-frequency integral at Omega_P={Omega_P:g}",
        lambda: integrate_finite(
            lambda K: _direct_integrand(K, Omega_P, reg_epsilon, regulator),
            0.0,
            cutoff,
            spec,
        ),
    )
    return -_DIRECT_PREFACTOR * value


def eta_plasmonic_direct(
    Omega_P: float,
    reg_epsilon: float = 0.02,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    regulator: str = "exponential",
) -> float:
    """Surface-mode reduction factor by direct branch-frequency integration.

    Evaluates ``-(180/pi^3) Int_0^inf K (Omega_plus + Omega_minus
    - 2 Omega_zero) w(reg_epsilon * K) dK`` by inverting the three branch
    dispersion relations at every node, then removes the regulator by
    Richardson extrapolation over the ladder ``(eps, eps/2, eps/4)``.  The
    regulated values carry an ``eps`` (exponential regulator) or ``eps**2``
    (gaussian) leading transient; the extrapolated limit must be
    regulator-independent, which is exactly what makes this an oracle for
    :func:`eta_plasmonic`.

    Raises :class:`ExtrapolationUnstable` when the two extrapolation stages
    fail to shrink the residual.
    """
    if not (Omega_P > 0.0) or not math.isfinite(Omega_P):
        raise DomainError("Omega_P must be positive and finite")
    if not (reg_epsilon > 0.0):
        raise DomainError("reg_epsilon must be positive")
    if regulator not in ("exponential", "gaussian"):
        raise DomainError(
            f"unknown regulator {regulator!r}; "
            "expected 'exponential' or 'gaussian'"
        )
    inner_spec = QuadratureSpec(
        abs_tol=min(spec.abs_tol, 1e-11),
        rel_tol=min(spec.rel_tol, 1e-10),
        max_subdivisions=max(spec.max_subdivisions, 800),
        tail_threshold=spec.tail_threshold,
    )
    raw = [
        _eta_plasmonic_regulated(
            Omega_P, reg_epsilon / 2**j, inner_spec, regulator
        )
        for j in range(3)
    ]
    if regulator == "exponential":
        # Leading transients at orders eps, eps^2.
        stage = [2.0 * raw[1] - raw[0], 2.0 * raw[2] - raw[1]]
        result = (4.0 * stage[1] - stage[0]) / 3.0
    else:
        # Even regulator: transients at orders eps^2, eps^4.
        stage = [(4.0 * raw[1] - raw[0]) / 3.0, (4.0 * raw[2] - raw[1]) / 3.0]
        result = (16.0 * stage[1] - stage[0]) / 15.0
    residual = abs(stage[1] - stage[0])
    if residual > 0.5 * abs(raw[1] - raw[0]) + 1e-12 * (1.0 + abs(result)):
        raise ExtrapolationUnstable(
            f"regulator ladder did not converge at Omega_P={Omega_P:g} "
            f"({regulator}): stage residual {residual:.3e} vs raw step "
            f"{abs(raw[1] - raw[0]):.3e}"
        )
    return result


def _eta_evanescent_detailed(
    Omega_P: float,
    spec: QuadratureSpec,
    branch_sum: Optional[Tuple[float, float]] = None,
) -> Tuple[float, float]:
    if not (Omega_P > 0.0) or not math.isfinite(Omega_P):
        raise DomainError("Omega_P must be positive and finite")
    constants = branch_constants(Omega_P)
    k_p = constants.k_P
    crossing_frequency = omega0(k_p, Omega_P)
    # Depth of the reference branch below the light cone at K = k_P; the
    # correction integral runs from this positive abscissa DOWN to zero, so
    # its signed value is negative.
    depth = -constants.z_0P
    if branch_sum is None:
        branch_sum = _branch_sum_integral(Omega_P, spec)
    total, err = branch_sum

    def reference_integrand(s: float) -> float:
        return 2.0 * s * g_branch(CoupledBranch.ZERO, s * s, Omega_P)

    correction, correction_err = _run_labelled(
        f"evanescent reference-correction integral at Omega_P={Omega_P:g}",
        lambda: integrate_finite_with_estimate(
            reference_integrand, math.sqrt(depth), 0.0, spec
        ),
    )
    value = -_CLOSED_PREFACTOR * (
        total
        - correction
        - (2.0 / 3.0) * (k_p**3 - crossing_frequency**3)
    )
    return value, _CLOSED_PREFACTOR * (err + correction_err)


def eta_evanescent(
    Omega_P: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Evanescent-only surface-mode reduction factor ``eta_ev``.

    Keeps only the evanescent sector of the surface modes: the plus branch
    is cut at its light-cone crossing ``K = k_P`` and the removed piece is
    replaced by the single-interface reference.  Positive for every
    ``Omega_P`` and growing like ``beta_ev * sqrt(Omega_P)`` at large
    separation.
    """
    return _eta_evanescent_detailed(Omega_P, spec)[0]


def eta_photonic(
    Omega_P: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Cavity-resonance reduction factor: ``eta_total - eta_pl`` by definition."""
    return eta_total(Omega_P, spec) - eta_plasmonic(Omega_P, spec)


def compute_eta_breakdown(
    Omega_P: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> EtaBreakdown:
    """All four reduction factors at one ``Omega_P``, with error estimates."""
    branch_sum = _branch_sum_integral(Omega_P, spec)
    total, total_err = _eta_total_detailed(Omega_P, spec)
    plasmonic, plasmonic_err = _eta_plasmonic_detailed(Omega_P, spec, branch_sum)
    evanescent, evanescent_err = _eta_evanescent_detailed(Omega_P, spec, branch_sum)
    return EtaBreakdown(
        Omega_P=Omega_P,
        eta_total=total,
        eta_pl=plasmonic,
        eta_ph=total - plasmonic,
        eta_ev=evanescent,
        error_estimates={
            "eta_total": total_err,
            "eta_pl": plasmonic_err,
            "eta_ph": total_err + plasmonic_err,
            "eta_ev": evanescent_err,
        },
    )


def propagative_part_identity(
    Omega_P: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> Tuple[float, float]:
    """Two independent evaluations of the below-lightcone part of ``eta_pl``.

    Returns ``(lhs, rhs)`` where ``lhs = eta_pl - eta_ev`` (closed forms) and
    ``rhs = -(180/pi^3) Int_0^{k_P} K (Omega_plus - Omega_zero) dK`` by direct
    branch inversion.  The two must agree: this single check ties together
    the closed forms, the branch constants and the dispersion inversion.
    """
    branch_sum = _branch_sum_integral(Omega_P, spec)
    lhs = (
        _eta_plasmonic_detailed(Omega_P, spec, branch_sum)[0]
        - _eta_evanescent_detailed(Omega_P, spec, branch_sum)[0]
    )
    k_p = branch_constants(Omega_P).k_P
    inner_spec = QuadratureSpec(
        abs_tol=min(spec.abs_tol, 1e-13),
        rel_tol=min(spec.rel_tol, 1e-12),
        max_subdivisions=max(spec.max_subdivisions, 400),
        tail_threshold=spec.tail_threshold,
    )

    def integrand(K: float) -> float:
        if K <= 0.0:
            return 0.0
        return K * (
            invert_branch(CoupledBranch.PLUS, K, Omega_P)
            - invert_branch(CoupledBranch.ZERO, K, Omega_P)
        )

    rhs = -_DIRECT_PREFACTOR * _run_labelled(
        f"propagative-part cross-check integral at Omega_P={Omega_P:g}",
        lambda: integrate_finite(integrand, 0.0, k_p, inner_spec),
    )
    return lhs, rhs


def short_distance_alpha(spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Short-distance coefficient ``alpha``.

    In the limit ``Omega_P -> 0`` the surface-mode integrand collapses to a
    parameter-free shape, giving ``eta_pl -> (3/2) alpha (L/lambda_p)`` with

        alpha = -(60 sqrt(2) / pi^2) *
                Int_0^inf (sqrt(1+e^(-sqrt(z))) + sqrt(1-e^(-sqrt(z))) - 2) dz.

    The integrand starts at ``sqrt(2) - 2 < 0`` and decays like
    ``e^(-2 sqrt(z))``, so the integral is a small negative number and
    ``alpha`` comes out near 1.193.
    """

    def integrand(s: float) -> float:
        return 2.0 * s * (
            math.sqrt(1.0 + math.exp(-s))
            + math.sqrt(-math.expm1(-s))
            - 2.0
        )

    integral, _ = _run_labelled(
        "short-distance limit integral",
        lambda: integrate_semi_infinite_with_estimate(integrand, 0.0, spec),
    )
    return -(60.0 * math.sqrt(2.0) / math.pi**2) * integral


def _fit_sqrt_asymptote(values) -> AsymptoticFit:
    samples = tuple(values)
    # The offset term absorbs the O(1) correction to the sqrt growth; without
    # it the fit window would bias the leading coefficient by ~1%.
    fit = fit_scaling_coefficient(samples, power=0.5, include_offset=True)
    return AsymptoticFit(value=fit.coefficient, fit=fit, samples=samples)


def fit_gamma(spec: QuadratureSpec = DEFAULT_QUADRATURE) -> AsymptoticFit:
    """Large-separation coefficient of ``eta_pl ~ -gamma sqrt(Omega_P)``.

    Samples the closed form over ``ASYMPTOTIC_FIT_WINDOW`` and returns the
    magnitude of the fitted square-root coefficient (value near 29.75),
    together with the fit diagnostics.
    """
    samples = [(w, eta_plasmonic(w, spec)) for w in ASYMPTOTIC_FIT_WINDOW]
    fitted = _fit_sqrt_asymptote(samples)
    return AsymptoticFit(
        value=abs(fitted.value), fit=fitted.fit, samples=fitted.samples
    )


def fit_beta_ev(spec: QuadratureSpec = DEFAULT_QUADRATURE) -> AsymptoticFit:
    """Large-separation coefficient of ``eta_ev ~ beta_ev sqrt(Omega_P)``.

    Same fit window and model as :func:`fit_gamma`; the value lands near
    1.624.
    """
    samples = [(w, eta_evanescent(w, spec)) for w in ASYMPTOTIC_FIT_WINDOW]
    return _fit_sqrt_asymptote(samples)


def locate_sign_change(spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Separation ``L/lambda_p`` at which ``eta_pl`` crosses zero.

    Root-finds ``eta_pl`` as a function of ``L/lambda_p`` on
    ``SIGN_CHANGE_BRACKET``; the function is positive at the lower end and
    negative at the upper end, so a missing sign change (which would mean the
    decomposition is broken) raises :class:`InvalidBracket`.
    """

    def eta_at(l_over_lambda: float) -> float:
        return eta_plasmonic(2.0 * math.pi * l_over_lambda, spec)

    lo, hi = SIGN_CHANGE_BRACKET
    return find_root_bracketed(eta_at, lo, hi, RootSpec(x_tol=1e-10))


def asymptotic_report(spec: QuadratureSpec = DEFAULT_QUADRATURE) -> AsymptoticReport:
    """All asymptotic constants and the sign-change location in one object."""
    alpha = short_distance_alpha(spec)
    gamma = fit_gamma(spec)
    beta = fit_beta_ev(spec)
    crossing = locate_sign_change(spec)
    return AsymptoticReport(
        alpha=alpha,
        gamma=gamma.value,
        beta_ev=beta.value,
        sign_change_L_over_lambdaP=crossing,
        fit_residuals={
            "gamma": gamma.fit.relative_residual,
            "beta_ev": beta.fit.relative_residual,
        },
    )
