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
"""Parameter dataclasses for the pathway and gamma Bessel families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Mapping

from ..errors import InvalidParams


def _read(data: Mapping[str, Any], required: Iterable[str], optional: Mapping[str, float], owner: str) -> Dict[str, float]:
    """Pull named reals out of ``data``, rejecting unknown and missing names.

    Args:
            data: Mapping of parameter name to value
            required: Names that must be present
            optional: Names that may be absent, with their defaults
            owner: Type name used in error messages

    Returns:
            Dictionary of parsed floats
    """
    required = list(required)
    known = set(required) | set(optional)
    unknown = sorted(set(data) - known)
    if unknown:
        raise InvalidParams(f"{owner}: unknown parameter(s) {', '.join(unknown)} (expected {', '.join(sorted(known))})")
    missing = [name for name in required if name not in data]
    if missing:
        raise InvalidParams(f"{owner}: missing parameter(s) {', '.join(missing)}")

    values = {name: data.get(name, default) for name, default in optional.items()}
    values.update({name: data[name] for name in required})
    try:
        return {name: float(value) for name, value in values.items()}
    except (TypeError, ValueError) as e:
        raise InvalidParams(f"{owner}: parameters must be real numbers ({e})") from e


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParams(message)


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class GammaBesselParams:
    """Generalized gamma Bessel parameters.

    Attributes:
            beta: Shape, > 0
            b: Rate, > 0
            delta: Bessel tilt; delta < 0 needs a passing validity scan before use
    """

    beta: float
    b: float
    delta: float = 0.0

    def __post_init__(self) -> None:
        _require(_finite(self.beta, self.b, self.delta), f"Non-finite gamma Bessel parameters {self}")
        _require(self.beta > 0.0 and self.b > 0.0, f"Gamma Bessel needs beta > 0 and b > 0, got {self}")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> GammaBesselParams:
        values = _read(data, ("beta", "b"), {"delta": 0.0}, "gamma_bessel")
        return cls(beta=values["beta"], b=values["b"], delta=values["delta"])

    def to_dict(self) -> Dict[str, float]:
        return {"beta": self.beta, "b": self.b, "delta": self.delta}

    def scaled(self, c: float) -> GammaBesselParams:
        """Parameters of c*t when t has these parameters."""
        _require(c > 0.0, f"Scale factor must be positive, got {c}")
        return GammaBesselParams(beta=self.beta, b=self.b / c, delta=self.delta / c)


@dataclass(frozen=True)
class QGammaBesselParams:
    """q-analogue of the gamma Bessel model; q < 1 has bounded support."""

    base: GammaBesselParams
    q: float

    def __post_init__(self) -> None:
        _require(math.isfinite(self.q) and self.q != 1.0, f"q-analogue needs a finite q != 1, got q={self.q}")

    @property
    def support_upper(self) -> float:
        if self.q < 1.0:
            return 1.0 / (self.base.b * (1.0 - self.q))
        return math.inf

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> QGammaBesselParams:
        values = _read(data, ("beta", "b", "q"), {"delta": 0.0}, "qgb")
        return cls(base=GammaBesselParams(values["beta"], values["b"], values["delta"]), q=values["q"])

    def to_dict(self) -> Dict[str, float]:
        return {**self.base.to_dict(), "q": self.q}


@dataclass(frozen=True)
class SuperstatParams:
    """Superstatistics mixing a gamma Bessel conditional over a gamma prior.

    Attributes:
            gamma: Power of x in the conditional, > 0
            rho: Power of x in the exponent, > 0
            delta: Bessel tilt, >= 0
            lambda_: Prior rate, > 0
            eta: Prior shape, > 0
    """

    gamma: float
    rho: float
    delta: float
    lambda_: float
    eta: float

    def __post_init__(self) -> None:
        _require(_finite(self.gamma, self.rho, self.delta, self.lambda_, self.eta), f"Non-finite parameters {self}")
        _require(
            self.gamma > 0.0 and self.rho > 0.0 and self.lambda_ > 0.0 and self.eta > 0.0,
            f"Superstatistics needs gamma, rho, lambda, eta > 0, got {self}",
        )
        _require(self.delta >= 0.0, f"Superstatistics needs delta >= 0, got {self.delta}")

    @property
    def nu(self) -> float:
        """Order gamma/rho + eta of the Bessel-K factor."""
        return self.gamma / self.rho + self.eta

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> SuperstatParams:
        values = _read(data, ("gamma", "rho", "lambda", "eta"), {"delta": 0.0}, "superstat")
        return cls(
            gamma=values["gamma"],
            rho=values["rho"],
            delta=values["delta"],
            lambda_=values["lambda"],
            eta=values["eta"],
        )

    def to_dict(self) -> Dict[str, float]:
        return {"gamma": self.gamma, "rho": self.rho, "delta": self.delta, "lambda": self.lambda_, "eta": self.eta}


@dataclass(frozen=True)
class GenLaplaceParams:
    """Difference x - y of independent gamma Bessel variables.

    ``right`` describes x (positive side), ``left`` describes y. In flat
    dictionaries they are suffixed 1 and 2 respectively.
    """

    left: GammaBesselParams
    right: GammaBesselParams

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> GenLaplaceParams:
        values = _read(data, ("beta1", "b1", "beta2", "b2"), {"delta1": 0.0, "delta2": 0.0}, "glap")
        return cls(
            left=GammaBesselParams(values["beta2"], values["b2"], values["delta2"]),
            right=GammaBesselParams(values["beta1"], values["b1"], values["delta1"]),
        )

    def to_dict(self) -> Dict[str, float]:
        return {
            "beta1": self.right.beta,
            "b1": self.right.b,
            "delta1": self.right.delta,
            "beta2": self.left.beta,
            "b2": self.left.b,
            "delta2": self.left.delta,
        }


@dataclass(frozen=True)
class PathwayParams:
    """Pathway density parameters; q selects the branch.

    q < 1 gives the type-1 beta form with bounded support, q > 1 the type-2
    beta form and q = 1 the generalized gamma limit.
    """

    gamma: float
    theta: float
    a: float
    eta: float
    q: float

    def __post_init__(self) -> None:
        _require(_finite(self.gamma, self.theta, self.a, self.eta, self.q), f"Non-finite pathway parameters {self}")
        _require(
            self.gamma > 0.0 and self.theta > 0.0 and self.a > 0.0 and self.eta > 0.0,
            f"Pathway density needs gamma, theta, a, eta > 0, got {self}",
        )

    @property
    def branch(self) -> str:
        if self.q < 1.0:
            return "h1"
        if self.q > 1.0:
            return "h2"
        return "h3"

    @property
    def support_upper(self) -> float:
        if self.q < 1.0:
            return (self.a * (1.0 - self.q)) ** (-1.0 / self.theta)
        return math.inf

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> PathwayParams:
        values = _read(data, ("gamma", "theta", "a", "eta", "q"), {}, "pathway")
        return cls(**values)

    def to_dict(self) -> Dict[str, float]:
        return {"gamma": self.gamma, "theta": self.theta, "a": self.a, "eta": self.eta, "q": self.q}


@dataclass(frozen=True)
class FractionalOrder:
    """Real order alpha > 0 of a Riemann-Liouville integral."""

    alpha: float

    def __post_init__(self) -> None:
        _require(math.isfinite(self.alpha) and self.alpha > 0.0, f"Fractional order must be > 0, got {self.alpha}")

    @classmethod
    def coerce(cls, alpha: FractionalOrder | float) -> FractionalOrder:
        return alpha if isinstance(alpha, FractionalOrder) else cls(float(alpha))
