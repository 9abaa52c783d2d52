# *******************************************************************************
# Copyright (c) 2026 Contributors to the Eclipse Foundation
#
# See the NOTICE file(s) distributed with this work for additional
# information regarding copyright ownership.
#
# This program and the accompanying materials are made available under the
# terms of the Apache License Version 2.0 which is available at
# https://www.apache.org/licenses/LICENSE-2.0
#
# SPDX-License-Identifier: Apache-2.0
# *******************************************************************************
"""Pathway densities, Riemann-Liouville integrals, the pathway integral
operator and the convolution densities built on them."""

from __future__ import annotations

import functools
import logging
import math
from typing import Callable

import numpy as np
from scipy import special

from .errors import InvalidDomain, NonConvergence, NonNormalizable, TailTooHeavy
from .models.params import FractionalOrder, PathwayParams
from .numerics import (
    DEFAULT_ABS_TOL,
    DEFAULT_REL_TOL,
    IntegralResult,
    cumulative_integral,
    integrate_adaptive,
    integrate_power_weighted,
)

logger = logging.getLogger(__name__)

RealFunction = Callable[[float], float]

# Default distance past the lower limit at which right-sided integrals stop
# the body and switch to a tail estimate.
DEFAULT_TAIL_CUTOFF = 64.0
_BREAKPOINTS = 40


def _log_branch_factor(p: PathwayParams, y: np.ndarray) -> np.ndarray:
    """log of the branch factor as a function of y = x**theta."""
    match p.branch:
        case "h1":
            c = p.a * (1.0 - p.q)
            with np.errstate(divide="ignore"):
                return (p.eta / (1.0 - p.q)) * np.log1p(-np.minimum(c * y, 1.0))
        case "h2":
            c = p.a * (p.q - 1.0)
            return -(p.eta / (p.q - 1.0)) * np.log1p(c * y)
        case _:
            return -p.a * p.eta * y


@functools.lru_cache(maxsize=256)
def pathway_norm_constant(p: PathwayParams) -> float:
    """Normalizing constant k of the pathway density, by quadrature.

    With y = x**theta the normalizing integral becomes
    (1/theta) * integral of y**(gamma/theta - 1) times the branch factor.

    Raises:
            NonNormalizable: q > 1 and eta/(q-1) <= gamma/theta
    """
    shape = p.gamma / p.theta
    if p.branch == "h2" and p.eta / (p.q - 1.0) <= shape:
        raise NonNormalizable(
            f"Type-2 pathway tail is not integrable: eta/(q-1) = {p.eta / (p.q - 1.0)!r} <= gamma/theta = {shape!r}"
        )

    def factor(y: float) -> float:
        return float(np.exp(_log_branch_factor(p, np.float64(y))))

    upper = p.support_upper**p.theta if p.branch == "h1" else math.inf
    result = integrate_power_weighted(factor, shape - 1.0, upper, scale=(shape + 1.0) / (p.a * p.eta))
    logger.debug("pathway %s normalizer %r (+/- %r, %d evaluations)", p.branch, result.value, result.abs_error_estimate,
                 result.evaluations)
    return p.theta / result.value


def pathway_logpdf(p: PathwayParams, x: float | np.ndarray) -> float | np.ndarray:
    xs = np.asarray(x, dtype=float)
    out = np.full(xs.shape, -np.inf)
    inside = (xs >= 0.0) & (xs <= p.support_upper)
    if np.any(inside):
        xi = xs[inside]
        out[inside] = (
            math.log(pathway_norm_constant(p)) + special.xlogy(p.gamma - 1.0, xi) + _log_branch_factor(p, xi**p.theta)
        )
    return float(out) if out.ndim == 0 else out


def pathway_pdf(p: PathwayParams, x: float | np.ndarray) -> float | np.ndarray:
    """Pathway density k * x**(gamma-1) * branch factor; 0 outside the support.

    Args:
            p: Pathway parameters (q picks the type-1 beta, type-2 beta or
                    generalized gamma branch)
            x: Point(s) of evaluation

    Returns:
            Density value(s)
    """
    return np.exp(pathway_logpdf(p, x))


def pathway_cdf(p: PathwayParams, x: float | np.ndarray) -> float | np.ndarray:
    xs = np.asarray(x, dtype=float)
    clipped = np.clip(xs.ravel(), 0.0, p.support_upper)
    out = np.ones(clipped.shape)
    finite = np.isfinite(clipped)
    if np.any(finite):
        out[finite] = cumulative_integral(lambda s: float(pathway_pdf(p, s)), 0.0, clipped[finite])
    out = np.clip(out.reshape(xs.shape), 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def _gamma_fn(order: float) -> float:
    return float(special.gamma(order))


def rl_left(
    f: RealFunction,
    alpha: FractionalOrder | float,
    x: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> float:
    """Left-sided Riemann-Liouville integral (1/Gamma(alpha)) int_0^x (x-t)^(alpha-1) f(t) dt.

    For alpha < 1 the kernel is passed to the quadrature as an algebraic
    weight at t = x.
    """
    order = FractionalOrder.coerce(alpha).alpha
    if not x > 0.0:
        raise InvalidDomain(f"rl_left needs x > 0, got {x}")
    power = order - 1.0
    if power < 0.0:
        result = integrate_adaptive(f, 0.0, x, rel_tol, abs_tol, weight_exponents=(0.0, power))
    else:
        result = integrate_adaptive(lambda t: (x - t) ** power * f(t), 0.0, x, rel_tol, abs_tol)
    return result.value / _gamma_fn(order)


def _integral_with_tail(
    g: RealFunction,
    lower: float,
    cutoff: float,
    power: float,
    rel_tol: float,
    abs_tol: float,
) -> IntegralResult:
    """int_lower^inf (t-lower)^power g(t) dt as a body up to ``cutoff`` plus a checked tail."""
    if not cutoff > lower:
        raise InvalidDomain(f"Tail cutoff {cutoff} must exceed the lower limit {lower}")
    if power < 0.0:
        body = integrate_adaptive(g, lower, cutoff, rel_tol, abs_tol, weight_exponents=(power, 0.0))
    else:
        body = integrate_adaptive(lambda t: (t - lower) ** power * g(t), lower, cutoff, rel_tol, abs_tol)

    try:
        tail = integrate_adaptive(lambda t: (t - lower) ** power * g(t), cutoff, math.inf, rel_tol, abs_tol,
                                  scale=cutoff - lower)
    except NonConvergence as e:
        raise TailTooHeavy(f"Tail beyond {cutoff} could not be integrated: {e}") from e
    if not math.isfinite(tail.value) or abs(tail.value) > max(abs_tol, rel_tol * abs(body.value)):
        raise TailTooHeavy(
            f"Tail beyond {cutoff} contributes {tail.value!r} against a body of {body.value!r}; raise the cutoff"
        )
    return body + tail


def rl_right(
    f: RealFunction,
    alpha: FractionalOrder | float,
    x: float,
    cutoff: float | None = None,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> float:
    """Right-sided Riemann-Liouville integral (1/Gamma(alpha)) int_x^inf (t-x)^(alpha-1) f(t) dt.

    Args:
            f: Integrand, expected to decay at least exponentially
            alpha: Order alpha > 0
            x: Lower limit, >= 0
            cutoff: End of the body integral; the rest is a tail estimate that
                    must stay below the tolerance (default x + 64)
            rel_tol: Relative tolerance
            abs_tol: Absolute tolerance

    Returns:
            Value of the integral

    Raises:
            TailTooHeavy: the tail beyond ``cutoff`` is not negligible
    """
    order = FractionalOrder.coerce(alpha).alpha
    if not x >= 0.0:
        raise InvalidDomain(f"rl_right needs x >= 0, got {x}")
    cutoff = x + DEFAULT_TAIL_CUTOFF if cutoff is None else cutoff
    result = _integral_with_tail(f, x, cutoff, order - 1.0, rel_tol, abs_tol)
    return result.value / _gamma_fn(order)


def pathway_integral_result(
    f: RealFunction,
    eta: float,
    q: float,
    a: float,
    x: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> IntegralResult:
    """Pathway integral with the quadrature error estimate, see pathway_integral."""
    if not q < 1.0:
        raise InvalidDomain(f"Pathway integral needs q < 1, got {q}")
    if not (eta > 0.0 and a > 0.0 and x > 0.0):
        raise InvalidDomain(f"Pathway integral needs eta, a, x > 0, got eta={eta}, a={a}, x={x}")

    c = a * (1.0 - q) / x
    upper = 1.0 / c
    power = eta / (1.0 - q) - 1.0
    if power < 0.0:
        inner = integrate_adaptive(f, 0.0, upper, rel_tol, abs_tol, weight_exponents=(0.0, power))
        factor = c**power
    else:

        def kernel(t: float) -> float:
            if c * t >= 1.0:
                return 0.0
            return math.exp(power * math.log1p(-c * t)) * f(t)

        breakpoints = upper * np.logspace(-_BREAKPOINTS, -1, _BREAKPOINTS, base=2.0)
        inner = integrate_adaptive(kernel, 0.0, upper, rel_tol, abs_tol, points=breakpoints)
        factor = 1.0

    scale = x ** (eta - 1.0) * factor
    return IntegralResult(
        value=scale * inner.value,
        abs_error_estimate=abs(scale) * inner.abs_error_estimate,
        evaluations=inner.evaluations,
    )


def pathway_integral(
    f: RealFunction,
    eta: float,
    q: float,
    a: float,
    x: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> float:
    """x^(eta-1) int_0^(x/(a(1-q))) [1 - a(1-q) t/x]^(eta/(1-q) - 1) f(t) dt.

    At q = 0, a = 1 this is Gamma(eta) times rl_left(f, eta, x); as q -> 1
    it tends to x^(eta-1) times the Laplace transform of f at a*eta/x.
    """
    return pathway_integral_result(f, eta, q, a, x, rel_tol, abs_tol).value


def conv_sum_density(f1: RealFunction, f2: RealFunction, u: float) -> float:
    """Density of x + y for independent x ~ f1, y ~ f2 on (0, inf)."""
    if u <= 0.0:
        return 0.0
    return integrate_adaptive(lambda t: f1(u - t) * f2(t), 0.0, u).value


def conv_diff_density(f1: RealFunction, f2: RealFunction, u: float, cutoff: float | None = None) -> float:
    """Density of x - y at u >= 0, int_u^inf f1(t) f2(t-u) dt.

    Raises:
            TailTooHeavy: the tail beyond ``cutoff`` (default u + 64) is not negligible
    """
    if u < 0.0:
        raise InvalidDomain(f"conv_diff_density is evaluated for u >= 0, got {u}")
    cutoff = u + DEFAULT_TAIL_CUTOFF if cutoff is None else cutoff
    return _integral_with_tail(lambda t: f1(t) * f2(t - u), u, cutoff, 0.0, DEFAULT_REL_TOL, DEFAULT_ABS_TOL).value


def conv_pathway_density(f1: RealFunction, f2: RealFunction, a: float, q: float, u: float) -> float:
    """Density of u = x + a(1-q) y, int_0^(u/(a(1-q))) f1(u - a(1-q) t) f2(t) dt."""
    if not q < 1.0 or not a > 0.0:
        raise InvalidDomain(f"conv_pathway_density needs a > 0 and q < 1, got a={a}, q={q}")
    if u <= 0.0:
        return 0.0
    c = a * (1.0 - q)
    return integrate_adaptive(lambda t: f1(u - c * t) * f2(t), 0.0, u / c).value
