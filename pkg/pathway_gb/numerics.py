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
"""Quadrature, simplex minimization and the seeded uniform stream.

Everything above this module integrates, minimizes and draws through the
functions defined here, so tolerances and budgets are set in one place.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np
from scipy import integrate, optimize

from .errors import InvalidDomain, NonConvergence

logger = logging.getLogger(__name__)

DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12
DEFAULT_BUDGET = 1_000_000

# QUADPACK bisects a 21-point Gauss-Kronrod panel into two new panels.
_EVALUATIONS_PER_SPLIT = 2 * 21
_MAX_BREAKPOINTS = 48


@dataclass(frozen=True)
class IntegralResult:
    """Value of a definite integral with its error estimate.

    Attributes:
            value: Integral estimate
            abs_error_estimate: Absolute error estimate reported by the quadrature
            evaluations: Number of integrand evaluations spent
    """

    value: float
    abs_error_estimate: float
    evaluations: int

    def __add__(self, other: IntegralResult) -> IntegralResult:
        return IntegralResult(
            value=self.value + other.value,
            abs_error_estimate=self.abs_error_estimate + other.abs_error_estimate,
            evaluations=self.evaluations + other.evaluations,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "abs_error_estimate": self.abs_error_estimate,
            "evaluations": self.evaluations,
        }


def _map_semi_infinite(
    f: Callable[[float], float], lower: float, scale: float, power: Optional[float]
) -> Callable[[float], float]:
    """Pull [lower, inf) back onto [0, 1) with t = lower + scale * u / (1 - u).

    When ``power`` is given the factor (t - lower)**power is left out of the
    mapped integrand; the caller hands u**power to QUADPACK as a weight.
    """

    def mapped(u: float) -> float:
        if u >= 1.0:
            return 0.0
        t = lower + scale * u / (1.0 - u)
        value = float(f(t))
        if value == 0.0:
            return 0.0
        if power is None:
            return value * scale / (1.0 - u) ** 2
        return value * scale ** (power + 1.0) * (1.0 - u) ** (-power - 2.0)

    return mapped


def integrate_adaptive(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    *,
    budget: int = DEFAULT_BUDGET,
    scale: float = 1.0,
    points: Optional[Sequence[float]] = None,
    weight_exponents: Optional[tuple[float, float]] = None,
) -> IntegralResult:
    """Adaptive Gauss-Kronrod quadrature of f over [lower, upper].

    A semi-infinite range (``upper=math.inf``) is mapped onto [0, 1) with
    t = lower + scale * u / (1 - u) before integration.

    Args:
            f: Scalar integrand
            lower: Finite lower limit
            upper: Upper limit, may be ``math.inf``
            rel_tol: Requested relative accuracy
            abs_tol: Requested absolute accuracy
            budget: Maximum number of integrand evaluations
            scale: Length scale of the semi-infinite map
            points: Interior breakpoints (finite ranges only)
            weight_exponents: (alpha, beta) for the algebraic weight
                    (t - lower)**alpha * (upper - t)**beta; beta must be 0 on a
                    semi-infinite range

    Returns:
            IntegralResult with value, error estimate and evaluation count

    Raises:
            InvalidDomain: lower >= upper or an invalid weight/scale
            NonConvergence: the error estimate exceeds max(abs_tol, rel_tol * |value|)
    """
    if math.isnan(lower) or math.isnan(upper) or not math.isfinite(lower) or lower >= upper:
        raise InvalidDomain(f"Integration range [{lower}, {upper}] is empty or not bounded below")
    if scale <= 0.0:
        raise InvalidDomain(f"Map scale must be positive, got {scale}")
    if weight_exponents is not None and min(weight_exponents) <= -1.0:
        raise InvalidDomain(f"Weight exponents must exceed -1, got {weight_exponents}")

    options: Dict[str, Any] = {
        "epsabs": abs_tol,
        "epsrel": rel_tol,
        "limit": max(1, budget // _EVALUATIONS_PER_SPLIT),
        "full_output": 1,
    }

    if math.isinf(upper):
        if weight_exponents is not None and weight_exponents[1] != 0.0:
            raise InvalidDomain("An upper-end weight is not defined on a semi-infinite range")
        power = None if weight_exponents is None else weight_exponents[0]
        integrand = _map_semi_infinite(f, lower, scale, power)
        lo, hi = 0.0, 1.0
        if power is not None:
            options.update(weight="alg", wvar=(power, 0.0))
    else:
        integrand = f
        lo, hi = lower, upper
        if weight_exponents is not None:
            options.update(weight="alg", wvar=tuple(weight_exponents))
        elif points is not None:
            interior = sorted({float(p) for p in points if lower < p < upper})
            if interior:
                options["points"] = interior[:_MAX_BREAKPOINTS]

    out = integrate.quad(integrand, lo, hi, **options)
    value, abs_error, info = float(out[0]), float(out[1]), out[2]
    evaluations = int(info.get("neval", 0))

    message = out[3].splitlines()[0] if len(out) > 3 and out[3] else ""
    tolerance = max(abs_tol, rel_tol * abs(value))
    if not abs_error <= tolerance:
        reason = (
            f"spent its budget of {budget} evaluations"
            if info.get("last", 0) >= options["limit"]
            else f"missed its tolerance {tolerance!r} ({message or 'no diagnostic'})"
        )
        raise NonConvergence(
            f"Quadrature on [{lower}, {upper}] {reason}: estimate {value!r} +/- {abs_error!r}",
            value=value,
            abs_error=abs_error,
        )
    if message:
        logger.debug("quadrature on [%s, %s]: %s", lower, upper, message)

    return IntegralResult(value=value, abs_error_estimate=abs_error, evaluations=evaluations)


def integrate_power_weighted(
    f: Callable[[float], float],
    power: float,
    upper: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    *,
    scale: float = 1.0,
    budget: int = DEFAULT_BUDGET,
) -> IntegralResult:
    """Integral of t**power * f(t) over (0, upper].

    The range is split at ``scale``: the head carries the power as an
    algebraic weight when it is singular, the tail gets geometric breakpoints
    (finite upper) or the semi-infinite map.
    """
    if power <= -1.0:
        raise InvalidDomain(f"t**{power} is not integrable at 0")
    split = min(scale, upper / 2.0)

    def weighted(t: float) -> float:
        return t**power * float(f(t))

    if power < 0.0:
        head = integrate_adaptive(f, 0.0, split, rel_tol, abs_tol, budget=budget, weight_exponents=(power, 0.0))
    else:
        head = integrate_adaptive(weighted, 0.0, split, rel_tol, abs_tol, budget=budget)

    if math.isinf(upper):
        tail = integrate_adaptive(weighted, split, upper, rel_tol, abs_tol, budget=budget, scale=scale)
    else:
        breakpoints = split * np.logspace(1, _MAX_BREAKPOINTS, _MAX_BREAKPOINTS, base=2.0)
        tail = integrate_adaptive(weighted, split, upper, rel_tol, abs_tol, budget=budget, points=breakpoints)
    return head + tail


def cumulative_integral(
    f: Callable[[float], float],
    lower: float,
    points: Sequence[float] | np.ndarray,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> np.ndarray:
    """Running integrals of f from ``lower`` to each of ``points``.

    The abscissae are integrated panel by panel in sorted order; the result
    keeps the caller's order.
    """
    xs = np.asarray(points, dtype=float)
    if xs.size and np.nanmin(xs) < lower:
        raise InvalidDomain(f"Cumulative integral requested below its lower limit {lower}")
    order = np.argsort(xs, kind="stable")
    running = np.empty(xs.size)
    total = 0.0
    previous = lower
    for position in order:
        x = float(xs[position])
        if x > previous:
            total += integrate_adaptive(f, previous, x, rel_tol, abs_tol).value
            previous = x
        running[position] = total
    return running


@dataclass(frozen=True)
class MinResult:
    """Outcome of a simplex search.

    Attributes:
            argmin: Best vertex found
            objective_value: Objective at ``argmin``
            iterations: Simplex iterations over both passes
            converged: Final simplex diameter fell below the tolerance
            evaluations: Objective evaluations over both passes
    """

    argmin: np.ndarray
    objective_value: float
    iterations: int
    converged: bool
    evaluations: int = 0


def minimize_simplex(
    objective: Callable[[np.ndarray], float],
    start: Sequence[float] | np.ndarray,
    step: float | Sequence[float] = 0.1,
    tol: float = 1e-8,
    max_iter: int = 5000,
) -> MinResult:
    """Derivative-free minimization with Nelder-Mead and one restart.

    The first pass starts from the simplex ``start + step * e_i``; the second
    restarts from the best vertex with a fresh simplex of the same size.
    Non-finite objective values count as +inf.

    Args:
            objective: Function of a 1-D parameter vector
            start: Starting point
            step: Initial simplex edge, scalar or one per coordinate
            tol: Simplex diameter that counts as converged
            max_iter: Iteration limit per pass

    Returns:
            MinResult; ``converged`` is False when the limit was hit first
    """
    x0 = np.atleast_1d(np.asarray(start, dtype=float))
    if x0.ndim != 1 or x0.size == 0 or not np.all(np.isfinite(x0)):
        raise InvalidDomain(f"Simplex start must be a finite vector, got {start!r}")
    steps = np.broadcast_to(np.asarray(step, dtype=float), x0.shape)
    if np.any(steps == 0.0) or not np.all(np.isfinite(steps)):
        raise InvalidDomain(f"Simplex steps must be finite and non-zero, got {step!r}")

    def guarded(x: np.ndarray) -> float:
        value = float(objective(np.asarray(x, dtype=float)))
        return value if not math.isnan(value) else math.inf

    f_start = guarded(x0)
    if not math.isfinite(f_start):
        raise InvalidDomain(f"Objective is not finite at the starting point {x0.tolist()}")

    options = {
        "xatol": tol,
        "fatol": tol * max(1.0, abs(f_start)),
        "maxiter": max_iter,
        "maxfev": 4 * max_iter,
    }

    def search(origin: np.ndarray) -> optimize.OptimizeResult:
        simplex = np.vstack([origin, origin + np.diag(steps)])
        return optimize.minimize(
            guarded, origin, method="Nelder-Mead", options={**options, "initial_simplex": simplex}
        )

    first = search(x0)
    logger.debug("simplex restart from %s (f=%r)", first.x.tolist(), float(first.fun))
    second = search(np.asarray(first.x, dtype=float))

    candidates = [(f_start, x0), (float(first.fun), first.x), (float(second.fun), second.x)]
    best_value, best_x = min(candidates, key=lambda c: c[0])

    vertices = second.final_simplex[0]
    diameter = float(np.max(np.abs(vertices[1:] - vertices[0]))) if len(vertices) > 1 else 0.0
    converged = bool(second.status == 0 and diameter <= tol)
    iterations = int(first.nit) + int(second.nit)
    if not converged:
        logger.warning("simplex search stopped after %d iterations without converging (diameter %.3g)",
                       iterations, diameter)

    return MinResult(
        argmin=np.array(best_x, dtype=float),
        objective_value=best_value,
        iterations=iterations,
        converged=converged,
        evaluations=int(first.nfev) + int(second.nfev),
    )


class RandomStream:
    """Seeded uniform stream on numpy's counter-based Philox generator.

    Samplers draw from the stream only, so a seed reproduces a run exactly.
    """

    def __init__(self, seed: int, *, _bit_generator: Optional[np.random.Philox] = None) -> None:
        if not 0 <= int(seed) < 2**64:
            raise InvalidDomain(f"Seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)
        self._bit_generator = _bit_generator if _bit_generator is not None else np.random.Philox(self.seed)
        self._generator = np.random.Generator(self._bit_generator)
        self._splits = 0

    def uniform(self, size: int | None = None) -> float | np.ndarray:
        """Uniform draws on [0, 1)."""
        return self._generator.random(size)

    def poisson(self, lam: float | np.ndarray, size: int | None = None) -> np.ndarray:
        return self._generator.poisson(lam, size)

    def gamma(self, shape: float | np.ndarray, rate: float, size: int | None = None) -> np.ndarray:
        return self._generator.gamma(shape, 1.0 / rate, size)

    def split(self) -> RandomStream:
        """Independent child stream, 2**128 counter steps away per split."""
        self._splits += 1
        return RandomStream(self.seed, _bit_generator=self._bit_generator.jumped(self._splits))

    @property
    def state(self) -> Dict[str, Any]:
        return self._bit_generator.state


def uniform_stream(seed: int) -> RandomStream:
    return RandomStream(seed)
