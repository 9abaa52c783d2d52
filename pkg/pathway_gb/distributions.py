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
"""Generalized gamma Bessel model, its q-analogues, the superstatistics
density and the generalized Laplacian difference model.

Densities are assembled in log space:
  log C + (beta - 1) log t - b t + log 0F1(; beta; delta t)
with C = b**beta / (Gamma(beta) exp(delta / b)). For delta >= 0 the model is a
Poisson(delta / b) mixture of Gamma(beta + k, b) laws, which gives the CDF and
the sampler. Parameter sets with delta < 0 are used as densities only after a
sign scan of the kernel (gb_validate).
"""

from __future__ import annotations

import functools
import logging
import math

import numpy as np
from scipy import special, stats

from .errors import InvalidDomain, InvalidParams, NonNormalizable, PoleProximity, SeriesDivergence
from .models.params import GammaBesselParams, GenLaplaceParams, QGammaBesselParams, SuperstatParams
from .models.report import ValidityReport
from .numerics import RandomStream, cumulative_integral, integrate_adaptive, integrate_power_weighted
from .specfun import DEFAULT_SERIES, SeriesControl, hyp0f1, hyp0f1_bessel, log_hyp0f1, log_kratzel_i11

logger = logging.getLogger(__name__)

POISSON_TAIL = 1e-14
KERNEL_NEGATIVE = -1e-12
ENVELOPE_FLOOR = 1e-16
SCAN_POINTS = 4096
POLE_DISTANCE = 1e-3

# Octave probe for q > 1: octave masses must drop this far below the peak
# octave (log of 1e-17) without any octave growing by more than a factor 2.
_PROBE_DROP = math.log(1e-17)
_PROBE_GROWTH = math.log(2.0)
_PROBE_OCTAVES = range(-40, 1020)
_PROBE_SAMPLES = 17


def _as_output(values: np.ndarray) -> float | np.ndarray:
    return float(values) if np.ndim(values) == 0 else values


# Generalized gamma Bessel


def _gb_log_envelope(p: GammaBesselParams, t: np.ndarray) -> np.ndarray:
    """log of C t^(beta-1) exp(-b t)."""
    log_c = p.beta * math.log(p.b) - special.gammaln(p.beta) - p.delta / p.b
    return log_c + (p.beta - 1.0) * np.log(t) - p.b * t


def _poisson_weights(mu: float) -> tuple[np.ndarray, np.ndarray]:
    """Poisson(mu) weights up to cumulative weight 1 - POISSON_TAIL."""
    if mu == 0.0:
        return np.zeros(1), np.ones(1)
    last = int(stats.poisson.isf(POISSON_TAIL, mu)) + 1
    k = np.arange(last + 1, dtype=float)
    return k, stats.poisson.pmf(k, mu)


def _require_density(p: GammaBesselParams) -> None:
    if p.delta < 0.0:
        report = gb_validate(p)
        if not report.valid:
            raise InvalidParams(
                f"gamma_bessel {p.to_dict()} is not a density: kernel turns negative at t={report.first_negative!r}"
            )


def gb_logpdf(p: GammaBesselParams, t: float | np.ndarray, *, checked: bool = True) -> float | np.ndarray:
    """log of gb_pdf; -inf for t <= 0 and where a delta < 0 kernel is not positive.

    ``checked=False`` skips the validity scan for delta < 0, which the
    optimizer relies on while it explores parameter space.
    """
    ts = np.asarray(t, dtype=float)
    out = np.full(ts.shape, -np.inf)
    pos = ts > 0.0
    if not np.any(pos):
        return _as_output(out)
    tp = ts[pos]
    if p.delta >= 0.0:
        out[pos] = _gb_log_envelope(p, tp) + log_hyp0f1(p.beta, p.delta * tp)
        return _as_output(out)

    if checked:
        _require_density(p)
    f = np.atleast_1d(hyp0f1_bessel(p.beta, p.delta * tp))
    with np.errstate(divide="ignore", invalid="ignore"):
        out[pos] = np.where(f > 0.0, _gb_log_envelope(p, tp) + np.log(np.where(f > 0.0, f, 1.0)), -np.inf)
    return _as_output(out)


def gb_pdf(p: GammaBesselParams, t: float | np.ndarray) -> float | np.ndarray:
    """Generalized gamma Bessel density C t^(beta-1) exp(-b t) 0F1(; beta; delta t).

    Args:
            p: Model parameters
            t: Point(s) of evaluation; the density is 0 for t <= 0

    Returns:
            Density value(s)

    Raises:
            InvalidParams: delta < 0 and the kernel turns negative
    """
    return _as_output(np.exp(gb_logpdf(p, t)))


def gb_mixture_pdf(p: GammaBesselParams, t: float | np.ndarray) -> float | np.ndarray:
    """The same density written as an explicit Poisson-weighted sum of gamma densities."""
    if p.delta < 0.0:
        raise InvalidParams("The Poisson mixture form needs delta >= 0")
    ts = np.asarray(t, dtype=float)
    k, w = _poisson_weights(p.delta / p.b)
    terms = stats.gamma.pdf(ts[..., None], p.beta + k, scale=1.0 / p.b)
    return _as_output(terms @ w)


def gb_cdf(p: GammaBesselParams, t: float | np.ndarray) -> float | np.ndarray:
    """Distribution function; Poisson mixture of regularized incomplete gammas
    for delta >= 0, quadrature of the density otherwise."""
    ts = np.asarray(t, dtype=float)
    if p.delta >= 0.0:
        k, w = _poisson_weights(p.delta / p.b)
        clipped = np.maximum(ts, 0.0)
        values = special.gammainc(p.beta + k, p.b * clipped[..., None]) @ w
        return _as_output(np.clip(values, 0.0, 1.0))

    _require_density(p)
    flat = ts.ravel()
    out = np.zeros(flat.shape)
    finite = np.isfinite(flat) & (flat > 0.0)
    out[np.isposinf(flat)] = 1.0
    if np.any(finite):
        out[finite] = cumulative_integral(lambda s: float(gb_pdf(p, s)), 0.0, flat[finite])
    return _as_output(np.clip(out.reshape(ts.shape), 0.0, 1.0))


def gb_sf(p: GammaBesselParams, t: float | np.ndarray) -> float | np.ndarray:
    """Survival function 1 - F(t), computed directly for tail accuracy."""
    ts = np.asarray(t, dtype=float)
    if p.delta >= 0.0:
        k, w = _poisson_weights(p.delta / p.b)
        clipped = np.maximum(ts, 0.0)
        return _as_output(np.clip(special.gammaincc(p.beta + k, p.b * clipped[..., None]) @ w, 0.0, 1.0))

    _require_density(p)
    scale = max(gb_mean(p), 1.0 / p.b)
    flat = ts.ravel()
    out = np.ones(flat.shape)
    for i, value in enumerate(flat):
        if np.isposinf(value):
            out[i] = 0.0
        elif value > 0.0:
            out[i] = integrate_adaptive(lambda s: float(gb_pdf(p, s)), float(value), math.inf, scale=scale).value
    return _as_output(np.clip(out.reshape(ts.shape), 0.0, 1.0))


def gb_sample(p: GammaBesselParams, n: int, rng: RandomStream) -> np.ndarray:
    """n draws as K ~ Poisson(delta/b), then Gamma(beta + K, rate b)."""
    if p.delta < 0.0:
        raise InvalidParams(f"Sampling needs delta >= 0, got {p.delta}")
    if n < 0:
        raise InvalidDomain(f"Sample size must be non-negative, got {n}")
    k = rng.poisson(p.delta / p.b, n)
    return rng.gamma(p.beta + k, p.b, n)


def gb_mgf(p: GammaBesselParams, t: float) -> float:
    """(b/(b-t))^beta exp(delta/(b-t) - delta/b) for t < b."""
    if not t < p.b:
        raise InvalidDomain(f"The moment generating function exists for t < b = {p.b}, got {t}")
    return math.exp(p.beta * math.log(p.b / (p.b - t)) + p.delta / (p.b - t) - p.delta / p.b)


def gb_mean(p: GammaBesselParams) -> float:
    return p.beta / p.b + p.delta / p.b**2


def gb_var(p: GammaBesselParams) -> float:
    return p.beta / p.b**2 + 2.0 * p.delta / p.b**3


def gb_mgf_moments(p: GammaBesselParams, h: float | None = None) -> tuple[float, float]:
    """Mean and variance from central differences of the MGF at 0."""
    h = 1e-4 * p.b if h is None else h
    upper, centre, lower = gb_mgf(p, h), gb_mgf(p, 0.0), gb_mgf(p, -h)
    first = (upper - lower) / (2.0 * h)
    second = (upper - 2.0 * centre + lower) / h**2
    return first, second - first**2


@functools.lru_cache(maxsize=256)
def gb_validate(p: GammaBesselParams) -> ValidityReport:
    """Scan the kernel of a delta < 0 parameter set for negative values.

    The scan runs on a geometric grid from 1e-6/b to the point where the
    gamma envelope C t^(beta-1) exp(-b t) has fallen below 1e-16.
    """
    if p.delta >= 0.0:
        return ValidityReport(params=p.to_dict(), valid=True)

    lower = 1e-6 / p.b
    upper = max(1.0, (p.beta - 1.0) / p.b) * 2.0
    while _gb_log_envelope(p, np.float64(upper)) >= math.log(ENVELOPE_FLOOR) and upper < 1e300:
        upper *= 2.0
    grid = np.geomspace(lower, upper, SCAN_POINTS)
    kernel = np.exp(_gb_log_envelope(p, grid)) * hyp0f1_bessel(p.beta, p.delta * grid)

    negative = kernel < KERNEL_NEGATIVE
    first = float(grid[np.argmax(negative)]) if np.any(negative) else None
    report = ValidityReport(
        params=p.to_dict(),
        valid=first is None,
        first_negative=first,
        scan_upper=float(upper),
        points=SCAN_POINTS,
        min_kernel=float(kernel.min()),
    )
    logger.info("gamma_bessel %s validity scan: %s", p.to_dict(), "valid" if report.valid else f"negative at {first}")
    return report


# q-analogues


def _qgb_log_abs_kernel(p: QGammaBesselParams, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """log |kernel| and its sign for t > 0 inside the support."""
    base = p.base
    if p.q < 1.0:
        c = base.b * (1.0 - p.q)
        with np.errstate(divide="ignore"):
            power = (1.0 / (1.0 - p.q)) * np.log1p(-np.minimum(c * t, 1.0))
    else:
        power = -(1.0 / (p.q - 1.0)) * np.log1p(base.b * (p.q - 1.0) * t)
    log_kernel = (base.beta - 1.0) * np.log(t) + power

    if base.delta >= 0.0:
        return log_kernel + log_hyp0f1(base.beta, base.delta * t), np.ones_like(t)
    f = np.atleast_1d(hyp0f1_bessel(base.beta, base.delta * t))
    with np.errstate(divide="ignore"):
        return log_kernel + np.log(np.abs(f)), np.sign(f)


def _octave_probe(p: QGammaBesselParams) -> float:
    """Upper horizon past which the q > 1 kernel is negligible.

    Raises:
            NonNormalizable: octave masses grow again after decreasing, or never
                    fall below the drop threshold
    """
    peak = -math.inf
    previous = -math.inf
    declining = False
    for j in _PROBE_OCTAVES:
        ts = np.exp2(j + np.linspace(0.0, 1.0, _PROBE_SAMPLES))
        log_abs, _ = _qgb_log_abs_kernel(p, ts)
        log_mass = float(special.logsumexp(log_abs)) + (j - math.log2(_PROBE_SAMPLES)) * math.log(2.0)
        if declining and log_mass > previous + _PROBE_GROWTH:
            raise NonNormalizable(f"qgb {p.to_dict()}: kernel mass grows again near t = 2**{j}")
        if log_mass < previous:
            declining = True
        peak = max(peak, log_mass)
        if declining and log_mass < peak + _PROBE_DROP:
            logger.debug("qgb %s octave probe horizon 2**%d", p.to_dict(), j + 1)
            return float(2.0 ** (j + 1))
        previous = log_mass
    raise NonNormalizable(f"qgb {p.to_dict()}: kernel mass does not decay")


def _scan_sign(p: QGammaBesselParams, upper: float) -> None:
    grid = np.geomspace(1e-6 / p.base.b, upper, SCAN_POINTS, endpoint=False)
    log_abs, sign = _qgb_log_abs_kernel(p, grid)
    kernel = sign * np.exp(log_abs)
    if np.any(kernel < KERNEL_NEGATIVE):
        first = float(grid[np.argmax(kernel < KERNEL_NEGATIVE)])
        raise InvalidParams(f"qgb {p.to_dict()} is not a density: kernel turns negative at t={first!r}")


def _qgb_series_inverse(p: QGammaBesselParams, ctrl: SeriesControl) -> float:
    """Term-wise beta integrals of the q < 1 kernel."""
    base = p.base
    c = base.b * (1.0 - p.q)
    m = 1.0 / (1.0 - p.q)
    head = special.gammaln(base.beta) + special.gammaln(m + 1.0)
    total = 0.0
    for k in range(ctrl.max_terms):
        log_term = head - special.gammaln(base.beta + k + m + 1.0) - (base.beta + k) * math.log(c)
        if k:
            log_term += k * math.log(abs(base.delta)) - special.gammaln(k + 1.0)
        term = math.copysign(math.exp(log_term), base.delta if k % 2 else 1.0)
        total += term
        if base.delta == 0.0 or (k > abs(base.delta) and abs(term) <= ctrl.rel_term_tol * abs(total)):
            return total
    raise SeriesDivergence(f"qgb {p.to_dict()} normalizing series not settled after {ctrl.max_terms} terms")


@functools.lru_cache(maxsize=256)
def qgb_norm_constant(p: QGammaBesselParams) -> float:
    """K (q < 1) or P (q > 1) normalizing the q-analogue kernel."""
    base = p.base
    if p.q < 1.0:
        if base.delta < 0.0:
            _scan_sign(p, p.support_upper)
        inverse = _qgb_series_inverse(p, DEFAULT_SERIES)
    elif base.delta == 0.0:
        m = 1.0 / (p.q - 1.0)
        if m <= base.beta:
            raise NonNormalizable(f"qgb {p.to_dict()}: 1/(q-1) = {m!r} must exceed beta = {base.beta!r}")
        c = base.b * (p.q - 1.0)
        inverse = math.exp(special.betaln(base.beta, m - base.beta) - base.beta * math.log(c))
    else:
        horizon = _octave_probe(p)
        if base.delta < 0.0:
            _scan_sign(p, horizon)

        def body(t: float) -> float:
            log_abs, sign = _qgb_log_abs_kernel(p, np.atleast_1d(t))
            return float(sign[0] * np.exp(log_abs[0] - (base.beta - 1.0) * math.log(t)))

        scale = max(gb_mean(base) if base.delta >= 0.0 else base.beta / base.b, 1e-3 * horizon)
        inverse = integrate_power_weighted(body, base.beta - 1.0, horizon, scale=min(scale, horizon / 4.0)).value

    if not inverse > 0.0:
        raise NonNormalizable(f"qgb {p.to_dict()}: kernel integral {inverse!r} is not positive")
    return 1.0 / inverse


def qgb_logpdf(p: QGammaBesselParams, t: float | np.ndarray) -> float | np.ndarray:
    ts = np.asarray(t, dtype=float)
    out = np.full(ts.shape, -np.inf)
    inside = (ts > 0.0) & (ts < p.support_upper)
    if np.any(inside):
        log_abs, sign = _qgb_log_abs_kernel(p, ts[inside])
        out[inside] = np.where(sign > 0.0, log_abs + math.log(qgb_norm_constant(p)), -np.inf)
    return _as_output(out)


def qgb_pdf(p: QGammaBesselParams, t: float | np.ndarray, *, normalized: bool = True) -> float | np.ndarray:
    """q-analogue density; ``normalized=False`` returns the signed kernel."""
    ts = np.asarray(t, dtype=float)
    out = np.zeros(ts.shape)
    inside = (ts > 0.0) & (ts < p.support_upper)
    if np.any(inside):
        log_abs, sign = _qgb_log_abs_kernel(p, ts[inside])
        values = sign * np.exp(log_abs)
        out[inside] = values * qgb_norm_constant(p) if normalized else values
    return _as_output(out)


def qgb_cdf(p: QGammaBesselParams, t: float | np.ndarray) -> float | np.ndarray:
    ts = np.asarray(t, dtype=float)
    clipped = np.clip(ts.ravel(), 0.0, p.support_upper)
    out = np.ones(clipped.shape)
    finite = np.isfinite(clipped)
    if np.any(finite):
        out[finite] = cumulative_integral(lambda s: float(qgb_pdf(p, s)), 0.0, clipped[finite])
    return _as_output(np.clip(out.reshape(ts.shape), 0.0, 1.0))


# Superstatistics


def _superstat_log_prefactor(p: SuperstatParams) -> float:
    shape = p.gamma / p.rho
    return math.log(p.rho) + p.eta * math.log(p.lambda_) - special.gammaln(shape) - special.gammaln(p.eta)


def superstat_logpdf(p: SuperstatParams, x: float | np.ndarray) -> float | np.ndarray:
    xs = np.asarray(x, dtype=float)
    out = np.full(xs.shape, -np.inf)
    inside = xs >= 0.0
    if np.any(inside):
        xi = xs[inside]
        power = xi**p.rho
        out[inside] = (
            _superstat_log_prefactor(p)
            + special.xlogy(p.gamma - 1.0, xi)
            + log_hyp0f1(p.gamma / p.rho, p.delta * power)
            + log_kratzel_i11(p.nu, p.lambda_ + power, p.delta)
        )
    return _as_output(out)


def superstat_pdf(p: SuperstatParams, x: float | np.ndarray) -> float | np.ndarray:
    """Superstatistics density through the Bessel-K form of G^{2,0}_{0,2}.

    f(x) = rho lambda^eta / (Gamma(gamma/rho) Gamma(eta)) x^(gamma-1)
           0F1(; gamma/rho; delta x^rho) I(nu, lambda + x^rho, delta)
    where I(nu, s, delta) = s^-nu G[delta s | 0, nu] and nu = gamma/rho + eta.
    """
    return _as_output(np.exp(superstat_logpdf(p, x)))


def superstat_pdf_series(p: SuperstatParams, x: float, ctrl: SeriesControl = DEFAULT_SERIES) -> float:
    """Superstatistics density with the G-factor replaced by its alternating
    series sum_k Gamma(nu - k) (-1)^k w^k / k! = Gamma(nu) 0F1(; 1 - nu; w),
    w = delta (lambda + x^rho). Only one Bessel-I branch of K_nu survives in
    this form, so it is a comparison representation, not the density.

    Raises:
            PoleProximity: nu is within 1e-3 of an integer
            SeriesDivergence: the 0F1 series did not settle
    """
    if p.delta == 0.0:
        return float(superstat_pdf(p, x))
    nu = p.nu
    if abs(nu - round(nu)) < POLE_DISTANCE:
        raise PoleProximity(f"gamma/rho + eta = {nu!r} is within {POLE_DISTANCE} of an integer")
    if x < 0.0:
        return 0.0
    power = x**p.rho
    s = p.lambda_ + power
    log_part = (
        _superstat_log_prefactor(p)
        + special.xlogy(p.gamma - 1.0, x)
        + log_hyp0f1(p.gamma / p.rho, p.delta * power)
        - nu * math.log(s)
    )
    return math.exp(log_part) * special.gamma(nu) * hyp0f1(1.0 - nu, p.delta * s, ctrl)


def superstat_prior_pdf(p: SuperstatParams, a: float | np.ndarray) -> float | np.ndarray:
    """Gamma(eta, rate lambda) prior on the conditional rate a."""
    return _as_output(stats.gamma.pdf(a, p.eta, scale=1.0 / p.lambda_))


def superstat_conditional_pdf(p: SuperstatParams, x: float | np.ndarray, a: float) -> float | np.ndarray:
    """Conditional density k1 x^(gamma-1) exp(-a x^rho) 0F1(; gamma/rho; delta x^rho),
    k1 = rho a^(gamma/rho) / (Gamma(gamma/rho) exp(delta/a))."""
    if not a > 0.0:
        raise InvalidDomain(f"Conditional rate must be positive, got {a}")
    shape = p.gamma / p.rho
    xs = np.asarray(x, dtype=float)
    out = np.zeros(xs.shape)
    inside = xs >= 0.0
    power = xs[inside] ** p.rho
    log_k1 = math.log(p.rho) + shape * math.log(a) - special.gammaln(shape) - p.delta / a
    out[inside] = np.exp(
        log_k1 + special.xlogy(p.gamma - 1.0, xs[inside]) - a * power + log_hyp0f1(shape, p.delta * power)
    )
    return _as_output(out)


def superstat_mixture_pdf(p: SuperstatParams, x: float) -> float:
    """Superstatistics density by integrating conditional times prior over a."""

    def integrand(a: float) -> float:
        return float(superstat_conditional_pdf(p, x, a)) * float(superstat_prior_pdf(p, a))

    return integrate_adaptive(integrand, 0.0, math.inf, scale=p.eta / p.lambda_).value


def superstat_cdf(p: SuperstatParams, x: float | np.ndarray) -> float | np.ndarray:
    xs = np.asarray(x, dtype=float)
    flat = np.maximum(xs.ravel(), 0.0)
    out = np.ones(flat.shape)
    finite = np.isfinite(flat)
    if np.any(finite):
        out[finite] = cumulative_integral(lambda s: float(superstat_pdf(p, s)), 0.0, flat[finite])
    return _as_output(np.clip(out.reshape(xs.shape), 0.0, 1.0))


# Generalized Laplacian


def _require_sampling_components(p: GenLaplaceParams) -> None:
    if p.left.delta < 0.0 or p.right.delta < 0.0:
        raise InvalidParams(f"glap components need delta >= 0, got {p.to_dict()}")


def glap_mgf(p: GenLaplaceParams, t: float) -> float:
    """gb_mgf(right, t) * gb_mgf(left, -t) for -b_left < t < b_right."""
    if not -p.left.b < t < p.right.b:
        raise InvalidDomain(f"glap MGF exists for {-p.left.b} < t < {p.right.b}, got {t}")
    return gb_mgf(p.right, t) * gb_mgf(p.left, -t)


def glap_mean(p: GenLaplaceParams) -> float:
    return gb_mean(p.right) - gb_mean(p.left)


def _glap_point(p: GenLaplaceParams, z: float, right_fn) -> float:
    lower = max(0.0, -z)
    scale = max(gb_mean(p.left), 1.0 / p.left.b)
    return integrate_adaptive(
        lambda y: float(right_fn(p.right, z + y)) * float(gb_pdf(p.left, y)), lower, math.inf, scale=scale
    ).value


def glap_pdf(p: GenLaplaceParams, z: float | np.ndarray) -> float | np.ndarray:
    """Density of x - y, int_0^inf gb_pdf(right, z + y) gb_pdf(left, y) dy."""
    _require_sampling_components(p)
    zs = np.asarray(z, dtype=float)
    values = np.array([_glap_point(p, float(v), gb_pdf) for v in zs.ravel()])
    return _as_output(values.reshape(zs.shape))


def glap_cdf(p: GenLaplaceParams, z: float | np.ndarray) -> float | np.ndarray:
    """P(x - y <= z) = int_0^inf gb_cdf(right, z + y) gb_pdf(left, y) dy."""
    _require_sampling_components(p)
    zs = np.asarray(z, dtype=float)
    values = np.array([_glap_point(p, float(v), gb_cdf) for v in zs.ravel()])
    return _as_output(np.clip(values.reshape(zs.shape), 0.0, 1.0))


def glap_sample(p: GenLaplaceParams, n: int, rng: RandomStream) -> np.ndarray:
    """n draws of x - y with x and y drawn by gb_sample from the same stream."""
    _require_sampling_components(p)
    return gb_sample(p.right, n, rng) - gb_sample(p.left, n, rng)
