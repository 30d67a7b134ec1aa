"""Reusable numeric kernel: quadrature, root finding, asymptote fitting.

All physics modules funnel their numerical work through this layer so that
tolerance handling, failure modes and determinism live in one place.  The
integration routines are built on adaptive Gauss-Kronrod subdivision
(QUADPACK via scipy) and the root finder on Brent's bracketing hybrid; both
are deterministic for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import (
    ConvergenceFailure,
    DegenerateFit,
    DomainError,
    InvalidBracket,
    NonFiniteIntegrand,
    TailBoundViolated,
)

__all__ = [
    "QuadratureSpec",
    "RootSpec",
    "FitResult",
    "DEFAULT_QUADRATURE",
    "DEFAULT_ROOT",
    "integrate_finite",
    "integrate_finite_with_estimate",
    "integrate_semi_infinite",
    "integrate_semi_infinite_with_estimate",
    "find_root_bracketed",
    "fit_scaling_coefficient",
]

_EPS = float(np.finfo(float).eps)
# Smallest relative tolerance the QUADPACK wrapper accepts.
_MIN_EPSREL = 50.0 * _EPS * (1.0 + 1e-7)
# Brent's method refuses relative x-tolerances below 4 ulp.
_MIN_BRENT_RTOL = 4.0 * _EPS * (1.0 + 1e-7)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance contract for the integration routines.

    ``abs_tol``/``rel_tol``: the returned value carries an estimated error of
    at most ``max(abs_tol, rel_tol * |result|)``; at least one of the two must
    be strictly positive.  ``max_subdivisions`` bounds the adaptive refinement
    work.  ``tail_threshold`` is the abscissa beyond which the semi-infinite
    integrator trusts (and checks) the exp(-sqrt(x)) decay envelope of the
    integrand.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 500
    tail_threshold: float = 50.0

    def __post_init__(self) -> None:
        if not (self.abs_tol >= 0.0) or not (self.rel_tol >= 0.0):
            raise DomainError("tolerances must be non-negative numbers")
        if self.abs_tol == 0.0 and self.rel_tol == 0.0:
            raise DomainError("at least one of abs_tol, rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")
        if not (self.tail_threshold > 0.0):
            raise DomainError("tail_threshold must be positive")


@dataclass(frozen=True)
class RootSpec:
    """Tolerance contract for bracketed root finding."""

    x_tol: float = 1e-12
    f_tol: float = 0.0
    max_iterations: int = 200

    def __post_init__(self) -> None:
        if not (self.x_tol > 0.0):
            raise DomainError("x_tol must be positive")
        if not (self.f_tol >= 0.0):
            raise DomainError("f_tol must be non-negative")
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be at least 1")


@dataclass(frozen=True)
class FitResult:
    """Least-squares outcome of :func:`fit_scaling_coefficient`.

    ``coefficient`` multiplies ``x**power``; ``offset`` is the fitted constant
    term (0.0 when no offset was requested).  ``residual_norm`` is the
    Euclidean norm of the fit residuals and ``relative_residual`` that norm
    divided by the norm of the data.
    """

    coefficient: float
    offset: float
    residual_norm: float
    relative_residual: float


DEFAULT_QUADRATURE = QuadratureSpec()
DEFAULT_ROOT = RootSpec()


def _guarded(f: Callable[[float], float]) -> Callable[[float], float]:
    """Wrap an integrand so that non-finite values fail loudly."""

    def wrapper(x: float) -> float:
        value = f(x)
        if not math.isfinite(value):
            raise NonFiniteIntegrand(
                f"integrand returned {value!r} at x={x!r}"
            )
        return value

    return wrapper


def _quad_checked(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec,
    points: Sequence[float] | None = None,
) -> Tuple[float, float]:
    """Adaptive quadrature on [a, b] with an enforced error bound.

    Returns ``(value, error_estimate)``.  Raises :class:`ConvergenceFailure`
    when the subdivision budget runs out or when the achieved error estimate
    does not meet ``max(abs_tol, rel_tol * |value|)``.
    """
    epsrel = spec.rel_tol
    if 0.0 < epsrel < _MIN_EPSREL:
        # QUADPACK rejects smaller requests outright; run it at its floor and
        # let the a-posteriori error check below decide whether the original
        # request was actually met.
        epsrel = _MIN_EPSREL
    out = quad(
        f,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=epsrel,
        limit=spec.max_subdivisions,
        full_output=True,
        points=points,
    )
    value, abserr = float(out[0]), float(out[1])
    if len(out) > 3:
        raise ConvergenceFailure(
            f"quadrature on [{a:g}, {b:g}] did not converge: {out[3]}"
        )
    bound = max(spec.abs_tol, spec.rel_tol * abs(value))
    if abserr > bound:
        raise ConvergenceFailure(
            f"quadrature on [{a:g}, {b:g}] achieved error {abserr:.3e}, "
            f"above the requested bound {bound:.3e}"
        )
    return value, abserr


def integrate_finite(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    breakpoints: Iterable[float] | None = None,
) -> float:
    """Integrate ``f`` over ``[a, b]`` within the spec's tolerances.

    Bounds are signed: when ``a > b`` the result is the negative of the
    integral over ``[b, a]``.  ``breakpoints`` marks interior abscissae where
    the integrand changes character (they are forwarded to the subdivision).
    Integrable square-root endpoint singularities are handled by the adaptive
    rule's extrapolation.
    """
    return integrate_finite_with_estimate(f, a, b, spec, breakpoints)[0]


def integrate_finite_with_estimate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    breakpoints: Iterable[float] | None = None,
) -> Tuple[float, float]:
    """Like :func:`integrate_finite` but also returns the error estimate."""
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration bounds must be finite")
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, err = integrate_finite_with_estimate(f, b, a, spec, breakpoints)
        return -value, err
    pts = None
    if breakpoints is not None:
        pts = sorted(p for p in breakpoints if a < p < b)
        if not pts:
            pts = None
    return _quad_checked(_guarded(f), a, b, spec, points=pts)


def integrate_semi_infinite(
    f: Callable[[float], float],
    a: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Integrate ``f`` over ``[a, inf)`` for integrands with exp(-sqrt(x)) tails.

    The integrand must decay at least as fast as ``C * exp(-sqrt(x))`` beyond
    ``spec.tail_threshold``.  The truncation point is chosen adaptively by
    probing the integrand against that envelope; the neglected tail is
    certified below the requested tolerance.  Raises
    :class:`TailBoundViolated` when probe samples beyond the threshold fail to
    decrease.
    """
    return integrate_semi_infinite_with_estimate(f, a, spec)[0]


def integrate_semi_infinite_with_estimate(
    f: Callable[[float], float],
    a: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> Tuple[float, float]:
    """Like :func:`integrate_semi_infinite` with an error estimate."""
    if not math.isfinite(a):
        raise DomainError("lower bound must be finite")
    g = _guarded(f)

    # Probe the tail region against the exp(-sqrt(x)) envelope.
    t0 = max(a, spec.tail_threshold)
    step = max(1.0, 0.1 * abs(t0))
    probes = [t0 + step * (1.7**j - 1.0) for j in range(6)]
    magnitudes = [abs(g(t)) for t in probes]
    for earlier, later in zip(magnitudes, magnitudes[1:]):
        if later > earlier * (1.0 + 1e-12) + 1e-300:
            raise TailBoundViolated(
                "integrand magnitude grows beyond tail_threshold="
                f"{spec.tail_threshold:g} (|f| went {earlier:.3e} -> {later:.3e})"
            )

    # Envelope constant in log space: |f(x)| <= exp(log_c) * exp(-sqrt(x)).
    recent: list[Tuple[float, float]] = list(zip(probes, magnitudes))

    def log_envelope_constant() -> float:
        best = -math.inf
        for t, v in recent[-4:]:
            if v > 0.0:
                best = max(best, math.log(v) + math.sqrt(t))
        return best

    def tail_bound(upper: float) -> float:
        log_c = log_envelope_constant()
        if log_c == -math.inf:
            return 0.0
        s = math.sqrt(upper)
        exponent = log_c + math.log(2.0 * (s + 1.0)) - s
        return math.exp(min(700.0, exponent))

    truncation = probes[-1]
    body, err = _quad_checked(g, a, truncation, spec) if truncation > a else (0.0, 0.0)
    target = max(spec.abs_tol, spec.rel_tol * abs(body))
    extensions = 0
    while tail_bound(truncation) > target:
        extensions += 1
        if extensions > 120:
            raise ConvergenceFailure(
                "tail truncation for the semi-infinite integral could not be "
                f"certified below {target:.3e}"
            )
        new_truncation = truncation * 1.7 + step
        piece, piece_err = _quad_checked(g, truncation, new_truncation, spec)
        body += piece
        err += piece_err
        truncation = new_truncation
        recent.append((truncation, abs(g(truncation))))
        target = max(spec.abs_tol, spec.rel_tol * abs(body))
    return body, err + tail_bound(truncation)


def find_root_bracketed(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    spec: RootSpec = DEFAULT_ROOT,
) -> float:
    """Find a root of ``g`` on ``[lo, hi]`` by Brent's bracketing hybrid.

    Requires a sign change across the bracket (:class:`InvalidBracket`
    otherwise).  The result always lies within ``[lo, hi]``; convergence is to
    a bracket of width ``x_tol`` (up to a few ulp of relative slack), or to
    ``|g| <= f_tol`` when ``f_tol`` is positive.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError("bracket endpoints must be finite")
    if lo > hi:
        raise DomainError("bracket must satisfy lo <= hi")
    g_lo = g(lo)
    g_hi = g(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo < 0.0) == (g_hi < 0.0):
        raise InvalidBracket(
            f"no sign change on bracket: g({lo:g})={g_lo:.6g}, g({hi:g})={g_hi:.6g}"
        )
    root, info = brentq(
        g,
        lo,
        hi,
        xtol=spec.x_tol,
        rtol=_MIN_BRENT_RTOL,
        maxiter=spec.max_iterations,
        full_output=True,
        disp=False,
    )
    if not info.converged:
        if spec.f_tol > 0.0 and abs(g(root)) <= spec.f_tol:
            return float(root)
        raise ConvergenceFailure(
            f"root search on [{lo:g}, {hi:g}] did not converge within "
            f"{spec.max_iterations} iterations"
        )
    return float(root)


def fit_scaling_coefficient(
    samples: Iterable[Tuple[float, float]],
    power: float,
    include_offset: bool = False,
) -> FitResult:
    """Least-squares fit of ``y = c * x**power`` (optionally ``+ d``).

    ``samples`` is an iterable of ``(x, y)`` pairs with ``x > 0``; at least
    two are required.  Returns the fitted coefficient together with residual
    diagnostics so callers can gate on fit quality.  Raises
    :class:`DegenerateFit` when all abscissae coincide.
    """
    pts = [(float(x), float(y)) for x, y in samples]
    if len(pts) < 2:
        raise DomainError("need at least two samples to fit a scaling law")
    x = np.array([p[0] for p in pts], dtype=float)
    y = np.array([p[1] for p in pts], dtype=float)
    if np.any(x <= 0.0):
        raise DomainError("sample abscissae must be positive")
    if np.all(x == x[0]):
        raise DegenerateFit("all sample abscissae are identical")
    basis = x**power
    if include_offset:
        design = np.column_stack([basis, np.ones_like(basis)])
    else:
        design = basis[:, np.newaxis]
    solution, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < design.shape[1]:
        raise DegenerateFit("design matrix is rank deficient")
    prediction = design @ solution
    residual_norm = float(np.linalg.norm(y - prediction))
    data_norm = float(np.linalg.norm(y))
    if data_norm > 0.0:
        relative = residual_norm / data_norm
    else:
        relative = 0.0 if residual_norm == 0.0 else math.inf
    coefficient = float(solution[0])
    offset = float(solution[1]) if include_offset else 0.0
    return FitResult(coefficient, offset, residual_norm, relative)
