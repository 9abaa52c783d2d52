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
"""Maximum-likelihood fitting, Kolmogorov-Smirnov distances, histograms and
model comparison.

Fits run the simplex search over an unconstrained reparameterization:
positive parameters on a log scale, delta as is (or squared where it must
stay non-negative), q < 1 as log(1 - q).
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from .distributions import gb_cdf, gb_logpdf, gb_validate, qgb_cdf, qgb_logpdf, superstat_cdf, superstat_logpdf
from .errors import (
    DegenerateData,
    InsufficientModels,
    InvalidCdf,
    InvalidParams,
    InvalidRange,
    PathwayError,
    UnknownModel,
    UsageError,
)
from .models.dataset import Dataset
from .models.params import GammaBesselParams, QGammaBesselParams, SuperstatParams
from .models.report import ComparisonEntry, ComparisonReport, FitReport, Histogram
from .numerics import minimize_simplex

logger = logging.getLogger(__name__)

RECOMMENDED_MIN_SIZE = 10
CDF_SLACK = 1e-12
DEFAULT_STEP = 0.1

# name -> (to unconstrained, from unconstrained)
_TRANSFORMS: Dict[str, Tuple[Callable[[float], float], Callable[[float], float]]] = {
    "log": (math.log, math.exp),
    "identity": (float, float),
    "square": (lambda v: math.sqrt(max(v, 0.0)), lambda u: u * u),
    "below_one": (lambda q: math.log(1.0 - q), lambda u: 1.0 - math.exp(u)),
}


@dataclass(frozen=True)
class Model:
    """Fittable model: parameter names, their transforms and density callables.

    Attributes:
            name: Registry name
            transforms: Parameter name -> transform name, in parameter order
            build: Parameter mapping -> parameter object
            logpdf: (params, values) -> log density values
            cdf: (params, values) -> CDF values
            start: Dataset -> starting parameters
    """

    name: str
    transforms: Mapping[str, str]
    build: Callable[[Mapping[str, float]], Any]
    logpdf: Callable[[Any, np.ndarray], np.ndarray]
    cdf: Callable[[Any, np.ndarray], np.ndarray]
    start: Callable[[Dataset], Dict[str, float]]

    @property
    def param_names(self) -> Tuple[str, ...]:
        return tuple(self.transforms)

    def to_free(self, name: str, value: float) -> float:
        try:
            return _TRANSFORMS[self.transforms[name]][0](value)
        except ValueError as e:
            raise InvalidParams(f"{self.name}: {name}={value!r} is outside the fitted range ({e})") from e

    def from_free(self, name: str, value: float) -> float:
        return _TRANSFORMS[self.transforms[name]][1](value)


def moment_start(data: Dataset) -> Dict[str, float]:
    """Method-of-moments gamma start: beta = mean^2/var, b = mean/var."""
    mean = float(np.mean(data.values))
    var = float(np.var(data.values))
    if not var > 0.0:
        raise DegenerateData(f"{data.source}: all {data.n} observations are equal")
    return {"beta": mean * mean / var, "b": mean / var}


def _gamma_mle_start(data: Dataset) -> Dict[str, float]:
    fit = fit_mle(data, "gamma")
    return dict(fit.params)


def _gamma_bessel_start(data: Dataset) -> Dict[str, float]:
    return {**_gamma_mle_start(data), "delta": 0.0}


def _qgb_start(data: Dataset) -> Dict[str, float]:
    start = _gamma_bessel_start(data)
    # Support ends ten times beyond the largest observation.
    start["q"] = 1.0 - 1.0 / (10.0 * start["b"] * float(data.values[-1]))
    return start


def _superstat_start(data: Dataset, eta: float = 10.0) -> Dict[str, float]:
    gamma = _gamma_mle_start(data)
    return {"gamma": gamma["beta"], "rho": 1.0, "delta": 0.0, "lambda": eta / gamma["b"], "eta": eta}


def _gb_logpdf_unchecked(p: GammaBesselParams, values: np.ndarray) -> np.ndarray:
    return gb_logpdf(p, values, checked=False)


MODELS: Dict[str, Model] = {
    "gamma": Model(
        name="gamma",
        transforms={"beta": "log", "b": "log"},
        build=lambda v: GammaBesselParams(beta=v["beta"], b=v["b"]),
        logpdf=gb_logpdf,
        cdf=gb_cdf,
        start=moment_start,
    ),
    "gamma_bessel": Model(
        name="gamma_bessel",
        transforms={"beta": "log", "b": "log", "delta": "identity"},
        build=GammaBesselParams.from_dict,
        logpdf=_gb_logpdf_unchecked,
        cdf=gb_cdf,
        start=_gamma_bessel_start,
    ),
    "qgb": Model(
        name="qgb",
        transforms={"beta": "log", "b": "log", "delta": "square", "q": "below_one"},
        build=QGammaBesselParams.from_dict,
        logpdf=qgb_logpdf,
        cdf=qgb_cdf,
        start=_qgb_start,
    ),
    "superstat": Model(
        name="superstat",
        transforms={"gamma": "log", "rho": "log", "delta": "square", "lambda": "log", "eta": "log"},
        build=SuperstatParams.from_dict,
        logpdf=superstat_logpdf,
        cdf=superstat_cdf,
        start=_superstat_start,
    ),
}


def get_model(name: str) -> Model:
    try:
        return MODELS[name]
    except KeyError:
        raise UnknownModel(f"Unknown model {name!r} (expected one of {', '.join(MODELS)})") from None


def log_likelihood(model: Model, params: Any, data: Dataset) -> float:
    return float(np.sum(model.logpdf(params, data.values)))


def ks_statistic(data: Dataset, cdf: Callable[[np.ndarray], np.ndarray]) -> float:
    """One-sample two-sided Kolmogorov-Smirnov distance.

    D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n) over the ascending
    order statistics x_(i).

    Args:
            data: Observations
            cdf: Vectorized distribution function

    Returns:
            D in [0, 1]

    Raises:
            InvalidCdf: some F(x_(i)) lies outside [0, 1] by more than 1e-12
    """
    values = np.asarray(cdf(data.values), dtype=float).reshape(data.values.shape)
    outside = ~((values >= -CDF_SLACK) & (values <= 1.0 + CDF_SLACK))
    if np.any(outside):
        bad = int(np.argmax(outside))
        raise InvalidCdf(f"CDF value {values[bad]!r} at x={data.values[bad]!r} is outside [0, 1]")
    values = np.clip(values, 0.0, 1.0)
    i = np.arange(1, data.n + 1)
    above = i / data.n - values
    below = values - (i - 1) / data.n
    return float(np.clip(max(above.max(), below.max()), 0.0, 1.0))


def ks_critical_value(n: int, alpha: float = 0.05) -> float:
    """Asymptotic two-sided critical value K_(1-alpha)/sqrt(n), 1.358/sqrt(n) at alpha = 0.05."""
    if n < 1 or not 0.0 < alpha < 1.0:
        raise InvalidRange(f"Critical value needs n >= 1 and 0 < alpha < 1, got n={n}, alpha={alpha}")
    return float(stats.kstwobign.isf(alpha)) / math.sqrt(n)


def histogram(
    data: Dataset,
    m: Optional[int] = None,
    range_: Optional[Tuple[float, float]] = None,
    *,
    density_scale: bool = False,
) -> Histogram:
    """Equal-width histogram; bins are right-open except the last.

    Args:
            data: Observations
            m: Number of bins, Sturges' rule when omitted
            range_: (lo, hi), the data range when omitted
            density_scale: Report counts / (n * width)

    Returns:
            Histogram
    """
    bins = int(math.ceil(math.log2(data.n))) + 1 if m is None else m
    if bins < 1:
        raise InvalidRange(f"Histogram needs at least one bin, got {bins}")
    if range_ is not None:
        lo, hi = (float(v) for v in range_)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise InvalidRange(f"Histogram range must satisfy lo < hi, got [{lo}, {hi}]")
        range_ = (lo, hi)
    counts, edges = np.histogram(data.values, bins=bins, range=range_)
    return Histogram(edges=edges, counts=counts, density_scale=density_scale)


def fit_mle(
    data: Dataset,
    model: str,
    init: Optional[Mapping[str, float]] = None,
    *,
    fixed: Optional[Mapping[str, float]] = None,
    tol: float = 1e-8,
    max_iter: int = 5000,
) -> FitReport:
    """Maximum-likelihood fit of ``model`` to ``data``.

    Args:
            data: Observations, all > 0
            model: Registry name (gamma, gamma_bessel, qgb, superstat)
            init: Starting parameters; the model's default start otherwise
            fixed: Parameters held at the given values
            tol: Simplex convergence tolerance
            max_iter: Iteration limit per simplex pass

    Returns:
            FitReport; ``converged`` is False when the iteration limit was hit

    Raises:
            InvalidRange: data has non-positive values
            DegenerateData: all observations are equal
    """
    definition = get_model(model)
    if data.n < RECOMMENDED_MIN_SIZE:
        logger.warning("%s: fitting %s to only %d observations", data.source, model, data.n)
    if data.values[0] <= 0.0:
        raise InvalidRange(f"{data.source}: {model} needs positive observations, smallest is {data.values[0]!r}")
    if not np.var(data.values) > 0.0:
        raise DegenerateData(f"{data.source}: all {data.n} observations are equal")

    fixed = dict(fixed or {})
    unknown = sorted(set(fixed) - set(definition.param_names))
    if unknown:
        raise UsageError(f"{model} has no parameter(s) {', '.join(unknown)}")
    start = {**dict(init or {}), **fixed}
    if any(name not in start for name in definition.param_names):
        start = {**definition.start(data), **start}

    logger.info("Fitting %s to %s (n=%d) from %s", model, data.source, data.n, start)
    report = _run_fit(definition, data, start, fixed, tol, max_iter)

    if model == "gamma_bessel" and report.params["delta"] < 0.0:
        candidate = GammaBesselParams.from_dict(report.params)
        if not gb_validate(candidate).valid:
            logger.info("%s fit left the valid region (delta=%r); refitting with delta >= 0", model, candidate.delta)
            restricted = Model(
                name=definition.name,
                transforms={**definition.transforms, "delta": "square"},
                build=definition.build,
                logpdf=definition.logpdf,
                cdf=definition.cdf,
                start=definition.start,
            )
            report = _run_fit(restricted, data, {**start, "delta": max(start.get("delta", 0.0), 0.0)}, fixed, tol,
                              max_iter)

    logger.info("%s fit: log-likelihood %.10g, D=%.5f after %d iterations", model, report.log_likelihood,
                report.ks_statistic, report.iterations)
    return report


def _run_fit(
    definition: Model,
    data: Dataset,
    start: Mapping[str, float],
    fixed: Mapping[str, float],
    tol: float,
    max_iter: int,
) -> FitReport:
    free = [name for name in definition.param_names if name not in fixed]

    def assemble(theta: Sequence[float]) -> Dict[str, float]:
        values = {name: definition.from_free(name, float(u)) for name, u in zip(free, theta)}
        return {name: values[name] if name in values else float(fixed[name]) for name in definition.param_names}

    def objective(theta: np.ndarray) -> float:
        try:
            return -log_likelihood(definition, definition.build(assemble(theta)), data)
        except (PathwayError, OverflowError, ValueError):
            return math.inf

    if free:
        theta0 = np.array([definition.to_free(name, float(start[name])) for name in free])
        result = minimize_simplex(objective, theta0, step=DEFAULT_STEP, tol=tol, max_iter=max_iter)
        best, iterations, converged = assemble(result.argmin), result.iterations, result.converged
    else:
        best, iterations, converged = {name: float(fixed[name]) for name in definition.param_names}, 0, True

    params = definition.build(best)
    return FitReport(
        model_name=definition.name,
        params=best,
        log_likelihood=log_likelihood(definition, params, data),
        ks_statistic=ks_statistic(data, lambda x: definition.cdf(params, x)),
        converged=converged,
        iterations=iterations,
        n=data.n,
        fixed=[name for name in definition.param_names if name in fixed],
    )


def _fit_entry(data: Dataset, model: str) -> ComparisonEntry:
    try:
        return ComparisonEntry(model_name=model, fit=fit_mle(data, model))
    except PathwayError as e:
        logger.warning("%s: fitting %s failed: %s", data.source, model, e)
        return ComparisonEntry(model_name=model, error=e.to_dict())


def compare_models(data: Dataset, models: Sequence[str], *, jobs: int = 1, alpha: float = 0.05) -> ComparisonReport:
    """Fit every model and rank them by Kolmogorov-Smirnov distance.

    A failing fit is recorded in its entry and does not stop the others.
    The ranking does not depend on ``jobs``.

    Raises:
            InsufficientModels: fewer than two models requested
            UnknownModel: a model name is not registered
    """
    names = list(dict.fromkeys(models))
    if len(names) < 2:
        raise InsufficientModels(f"Comparison needs at least two distinct models, got {names}")
    for name in names:
        get_model(name)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(lambda name: _fit_entry(data, name), names))
    else:
        entries = [_fit_entry(data, name) for name in names]

    order = sorted(range(len(entries)), key=lambda i: (entries[i].ks_statistic, i))
    ranked = [entries[i] for i in order]
    for position, entry in enumerate(ranked, start=1):
        if entry.fit is not None:
            logger.info("#%d %s: D=%.5f, log-likelihood %.10g", position, entry.model_name, entry.fit.ks_statistic,
                        entry.fit.log_likelihood)
    return ComparisonReport(
        source=data.source,
        n=data.n,
        entries=ranked,
        critical_value=ks_critical_value(data.n, alpha),
        alpha=alpha,
    )
