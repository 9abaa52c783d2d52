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
"""Special functions used by the densities.

Gamma-type functions and Bessel functions come from scipy.special. The
confluent limit 0F1 is summed as a power series inside a fixed window of
arguments and switched to its Bessel I / Bessel J representation outside it.
Functions prefixed with ``log_`` work in log space and accept arrays.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import InvalidDomain, NumericOverflow, NumericUnderflow, SeriesDivergence

logger = logging.getLogger(__name__)

# Arguments of 0F1 summed directly; outside, the Bessel form is used.
SERIES_WINDOW = (-25.0, 100.0)
_SHORT_SERIES_TERMS = 40
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation rule for power series.

    Attributes:
            rel_term_tol: Stop once |term| <= rel_term_tol * |partial sum|
            max_terms: Give up with SeriesDivergence after this many terms
    """

    rel_term_tol: float = 1e-16
    max_terms: int = 500

    def __post_init__(self) -> None:
        if self.rel_term_tol <= 0.0 or self.max_terms < 1:
            raise InvalidDomain(f"Invalid series control {self}")


DEFAULT_SERIES = SeriesControl()


def _as_output(value: np.ndarray) -> float | np.ndarray:
    return float(value) if np.ndim(value) == 0 else value


def _is_nonpositive_integer(b: float) -> bool:
    return b <= 0.0 and float(b).is_integer()


def ln_gamma(x: float | np.ndarray) -> float | np.ndarray:
    """Natural log of the gamma function for x > 0."""
    values = np.asarray(x, dtype=float)
    if np.any(~(values > 0.0)):
        raise InvalidDomain(f"ln_gamma is defined for x > 0, got {x!r}")
    return _as_output(special.gammaln(values))


def reg_lower_inc_gamma(s: float, x: float | np.ndarray) -> float | np.ndarray:
    """Regularized lower incomplete gamma P(s, x); P(s, inf) = 1."""
    values = np.asarray(x, dtype=float)
    if s <= 0.0 or np.any(~(values >= 0.0)):
        raise InvalidDomain(f"reg_lower_inc_gamma needs s > 0 and x >= 0, got s={s!r}, x={x!r}")
    return _as_output(special.gammainc(s, values))


def pochhammer(b: float, k: int) -> float:
    """Rising factorial (b)_k = b (b+1) ... (b+k-1)."""
    if k < 0 or int(k) != k:
        raise InvalidDomain(f"Pochhammer index must be a non-negative integer, got {k!r}")
    return float(special.poch(b, k))


def _hyp0f1_short_series(b: float, z: np.ndarray) -> np.ndarray:
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(_SHORT_SERIES_TERMS):
        term = term * z / ((b + k) * (k + 1))
        total = total + term
    return total


def hyp0f1(b: float, z: float, ctrl: SeriesControl = DEFAULT_SERIES) -> float:
    """Confluent hypergeometric limit function 0F1(; b; z).

    Args:
            b: Denominator parameter, not a non-positive integer
            z: Argument
            ctrl: Truncation rule for the direct series

    Returns:
            0F1(; b; z)

    Raises:
            InvalidDomain: b is 0, -1, -2, ...
            SeriesDivergence: the series did not settle within ctrl.max_terms
    """
    if _is_nonpositive_integer(b):
        raise InvalidDomain(f"0F1 is undefined for b = {b}")
    lo, hi = SERIES_WINDOW
    if not lo <= z <= hi:
        return float(hyp0f1_bessel(b, z))

    term = 1.0
    total = 1.0
    k = 0
    while True:
        term *= z / ((b + k) * (k + 1))
        total += term
        k += 1
        if not math.isfinite(total):
            raise SeriesDivergence(f"0F1(;{b};{z}) series overflowed after {k} terms")
        if abs(term) <= ctrl.rel_term_tol * abs(total) and b + k > 0.0 and k * k >= abs(z):
            break
        if k >= ctrl.max_terms:
            raise SeriesDivergence(f"0F1(;{b};{z}) series not settled after {ctrl.max_terms} terms")
    logger.debug("0F1(;%s;%s) summed with %d terms", b, z, k)
    return total


def _series_length(y: np.ndarray) -> int:
    # Past k = 2 sqrt(y) the term ratio is below 1/4.
    return int(3.0 * math.sqrt(float(np.max(y)))) + 60


def _log_series_terms(b: float, y: np.ndarray) -> np.ndarray:
    """log |k-th term| of 0F1(; b; +-y) for b > 0, one row per k."""
    k = np.arange(_series_length(y) + 1, dtype=float)
    return (
        np.outer(k, np.log(y))
        - special.gammaln(k + 1.0)[:, None]
        - (special.gammaln(b + k) - special.gammaln(b))[:, None]
    )


def _log_abs_hyp0f1_large(b: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """log |0F1(; b; z)| and its sign for |z| > 1.

    Gamma(b) enters through gammaln so large b does not overflow. Where the
    Bessel factor underflows (order far above the argument) the series is
    summed instead: in log space for z > 0, where every term is positive,
    and directly for z < 0, where the terms stay moderate in that regime.
    """
    log_abs = np.empty_like(z)
    sign = np.empty_like(z)
    log_gamma_b = special.gammaln(b)
    sign_gamma_b = special.gammasgn(b)

    pos = z > 0.0
    if np.any(pos):
        y = z[pos]
        root = 2.0 * np.sqrt(y)
        bessel = special.ive(b - 1.0, root)
        with np.errstate(divide="ignore"):
            values = log_gamma_b + 0.5 * (1.0 - b) * np.log(y) + np.log(np.abs(bessel)) + root
        signs = sign_gamma_b * np.sign(bessel)
        lost = ~np.isfinite(values)
        if np.any(lost) and b > 0.0:
            values[lost] = special.logsumexp(_log_series_terms(b, y[lost]), axis=0)
            signs[lost] = 1.0
        log_abs[pos], sign[pos] = values, signs

    neg = ~pos
    if np.any(neg):
        y = -z[neg]
        bessel = special.jv(b - 1.0, 2.0 * np.sqrt(y))
        with np.errstate(divide="ignore"):
            values = log_gamma_b + 0.5 * (1.0 - b) * np.log(y) + np.log(np.abs(bessel))
        signs = sign_gamma_b * np.sign(bessel)
        lost = bessel == 0.0
        if np.any(lost) and b > 0.0:
            log_terms = _log_series_terms(b, y[lost])
            alternating = np.where(np.arange(log_terms.shape[0]) % 2 == 0, 1.0, -1.0)[:, None]
            total = np.sum(alternating * np.exp(log_terms), axis=0)
            with np.errstate(divide="ignore"):
                values[lost] = np.log(np.abs(total))
            signs[lost] = np.sign(total)
        log_abs[neg], sign[neg] = values, signs
    return log_abs, sign


def hyp0f1_bessel(b: float, z: float | np.ndarray) -> float | np.ndarray:
    """0F1(; b; z) for arrays through Bessel functions of order b - 1.

    Positive arguments use the exponentially scaled Bessel I, negative ones
    Bessel J, and |z| <= 1 a short direct series.
    """
    if _is_nonpositive_integer(b):
        raise InvalidDomain(f"0F1 is undefined for b = {b}")
    zs = np.asarray(z, dtype=float)
    out = np.empty_like(zs)

    small = np.abs(zs) <= 1.0
    out[small] = _hyp0f1_short_series(b, zs[small])
    big = ~small
    if np.any(big):
        log_abs, sign = _log_abs_hyp0f1_large(b, zs[big])
        with np.errstate(over="ignore"):
            out[big] = sign * np.exp(log_abs)
    return _as_output(out)


def log_hyp0f1(b: float, z: float | np.ndarray) -> float | np.ndarray:
    """log 0F1(; b; z) for b > 0 and z >= 0, safe against overflow."""
    zs = np.asarray(z, dtype=float)
    if b <= 0.0 or np.any(~(zs >= 0.0)):
        raise InvalidDomain(f"log_hyp0f1 needs b > 0 and z >= 0, got b={b!r}")
    out = np.empty_like(zs)
    small = zs <= 1.0
    out[small] = np.log(_hyp0f1_short_series(b, zs[small]))
    big = ~small
    if np.any(big):
        out[big] = _log_abs_hyp0f1_large(b, zs[big])[0]
    return _as_output(out)


def bessel_k(nu: float, x: float | np.ndarray) -> float | np.ndarray:
    """Modified Bessel function of the second kind K_nu(x), x > 0.

    Raises:
            NumericOverflow: K_nu(x) exceeds the double range (tiny x, large nu)
            NumericUnderflow: K_nu(x) underflows to zero (x beyond ~700)
    """
    xs = np.asarray(x, dtype=float)
    if np.any(~(xs > 0.0)):
        raise InvalidDomain(f"K_nu(x) needs x > 0, got {x!r}")
    values = special.kv(nu, xs)
    if np.any(np.isinf(values)):
        raise NumericOverflow(f"K_{nu}(x) overflows for x={x!r}; use log_bessel_k")
    if np.any(values == 0.0):
        raise NumericUnderflow(f"K_{nu}(x) underflows for x={x!r}; use log_bessel_k")
    return _as_output(values)


def log_bessel_k(nu: float, x: float | np.ndarray) -> float | np.ndarray:
    """log K_nu(x) from the exponentially scaled kve, with the small-x limit
    log(Gamma(|nu|)/2) + |nu| log(2/x) where kve overflows."""
    xs = np.asarray(x, dtype=float)
    if np.any(~(xs > 0.0)):
        raise InvalidDomain(f"K_nu(x) needs x > 0, got {x!r}")
    order = abs(nu)
    with np.errstate(divide="ignore"):
        out = np.log(special.kve(order, xs)) - xs
    blown = ~np.isfinite(out)
    if np.any(blown) and order > 0.0:
        out[blown] = special.gammaln(order) - _LN2 + order * (_LN2 - np.log(xs[blown]))
    return _as_output(out)


def meijer_g_2002(z: float | np.ndarray, nu: float) -> float | np.ndarray:
    """Meijer G^{2,0}_{0,2}[z | 0, nu] = 2 z^(nu/2) K_nu(2 sqrt(z)), z > 0."""
    zs = np.asarray(z, dtype=float)
    if np.any(~(zs > 0.0)):
        raise InvalidDomain(f"G^20_02 needs z > 0, got {z!r}")
    return _as_output(np.exp(_LN2 + 0.5 * nu * np.log(zs) + log_bessel_k(nu, 2.0 * np.sqrt(zs))))


def log_kratzel_i11(nu: float, s: float | np.ndarray, delta: float) -> float | np.ndarray:
    """log of the integral of a^(nu-1) exp(-s a - delta / a) over a > 0."""
    ss = np.asarray(s, dtype=float)
    if np.any(~(ss > 0.0)):
        raise InvalidDomain(f"Kratzel integral needs s > 0, got {s!r}")
    if delta < 0.0:
        raise InvalidDomain(f"Kratzel integral needs delta >= 0, got {delta}")
    if delta == 0.0:
        if nu <= 0.0:
            raise InvalidDomain(f"Kratzel integral with delta = 0 diverges for nu = {nu}")
        return _as_output(special.gammaln(nu) - nu * np.log(ss))
    return _as_output(
        _LN2 + 0.5 * nu * (math.log(delta) - np.log(ss)) + log_bessel_k(nu, 2.0 * np.sqrt(ss * delta))
    )


def kratzel_i11(nu: float, s: float | np.ndarray, delta: float) -> float | np.ndarray:
    """Kratzel integral 2 (delta/s)^(nu/2) K_nu(2 sqrt(s delta)); Gamma(nu)/s^nu at delta = 0."""
    return _as_output(np.exp(log_kratzel_i11(nu, s, delta)))
