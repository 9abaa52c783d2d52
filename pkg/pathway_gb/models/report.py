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
"""Report dataclasses emitted by the fitting, comparison and validation commands."""

from __future__ import annotations

import csv
import datetime as dt
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ..errors import InvalidRange

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
# Critical value quoted for the 1522-value solar dataset; it does not follow
# from the asymptotic Kolmogorov distribution and is carried for reference only.
PUBLISHED_CRITICAL_VALUE = 0.410


def utc_timestamp() -> str:
    return dt.datetime.now(dt.timezone.utc).replace(microsecond=0).isoformat()


def render_json(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=4, sort_keys=False) + "\n"


def write_text(text: str, output_path: Optional[Path]) -> None:
    """Write ``text`` to ``output_path`` or to stdout when no path is given."""
    if output_path is None:
        print(text, end="")
        return
    with open(output_path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info("Wrote %s", output_path)


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the sign scan of a gamma Bessel kernel.

    Attributes:
            params: Parameter set that was scanned
            valid: Kernel stayed above -1e-12 over the whole scan
            first_negative: First grid point where the kernel went negative
            scan_upper: Upper end of the scan grid
            points: Number of grid points
            min_kernel: Smallest kernel value seen
    """

    params: Dict[str, float]
    valid: bool
    first_negative: Optional[float] = None
    scan_upper: Optional[float] = None
    points: int = 0
    min_kernel: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "model": "gamma_bessel",
            "params": dict(self.params),
            "valid": self.valid,
            "first_negative": self.first_negative,
            "scan_upper": self.scan_upper,
            "points": self.points,
            "min_kernel": self.min_kernel,
        }


@dataclass
class FitReport:
    """Maximum-likelihood fit of one model to a dataset.

    Attributes:
            model_name: Registry name of the model
            params: Fitted parameters by name
            log_likelihood: Log-likelihood at the fitted parameters
            ks_statistic: Kolmogorov-Smirnov distance to the fitted CDF
            converged: Simplex search met its tolerance
            iterations: Simplex iterations spent
            n: Number of observations
            fixed: Names of parameters held at their starting value
    """

    model_name: str
    params: Dict[str, float]
    log_likelihood: float
    ks_statistic: float
    converged: bool
    iterations: int
    n: int
    fixed: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model_name,
            "params": dict(self.params),
            "log_likelihood": self.log_likelihood,
            "ks_statistic": self.ks_statistic,
            "converged": self.converged,
            "iterations": self.iterations,
            "n": self.n,
            "fixed": list(self.fixed),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> FitReport:
        return cls(
            model_name=data["model"],
            params={name: float(value) for name, value in data["params"].items()},
            log_likelihood=float(data["log_likelihood"]),
            ks_statistic=float(data["ks_statistic"]),
            converged=bool(data["converged"]),
            iterations=int(data["iterations"]),
            n=int(data["n"]),
            fixed=list(data.get("fixed", [])),
        )


@dataclass
class ComparisonEntry:
    """One model of a comparison: either its fit or the error that stopped it."""

    model_name: str
    fit: Optional[FitReport] = None
    error: Optional[Dict[str, Any]] = None

    @property
    def ks_statistic(self) -> float:
        return self.fit.ks_statistic if self.fit is not None else float("inf")

    def to_dict(self) -> Dict[str, Any]:
        if self.fit is not None:
            return self.fit.to_dict()
        return {"model": self.model_name, "error": self.error}


@dataclass
class ComparisonReport:
    """Models ranked by Kolmogorov-Smirnov distance, best first."""

    source: str
    n: int
    entries: List[ComparisonEntry]
    critical_value: float
    alpha: float = 0.05
    generated: str = ""

    @property
    def ranking(self) -> List[str]:
        return [entry.model_name for entry in self.entries if entry.fit is not None]

    def to_dict(self) -> Dict[str, Any]:
        document: Dict[str, Any] = {"schema_version": SCHEMA_VERSION}
        if self.generated:
            document["generated"] = self.generated
        document.update(
            {
                "source": self.source,
                "n": self.n,
                "ranking": self.ranking,
                "models": [entry.to_dict() for entry in self.entries],
                "ks_critical_value": {
                    "alpha": self.alpha,
                    "asymptotic": self.critical_value,
                    "published": PUBLISHED_CRITICAL_VALUE,
                    "published_reproduced": False,
                },
            }
        )
        return document

    def to_markdown(self) -> str:
        lines = [
            f"# Model comparison: {self.source} (n = {self.n})",
            "",
            "| rank | model | D | log-likelihood | converged | parameters |",
            "|---:|---|---:|---:|---|---|",
        ]
        rank = 0
        for entry in self.entries:
            if entry.fit is None:
                message = (entry.error or {}).get("message", "failed")
                lines.append(f"| - | {entry.model_name} | - | - | - | error: {message} |")
                continue
            rank += 1
            fit = entry.fit
            params = ", ".join(f"{name}={value:.6g}" for name, value in fit.params.items())
            lines.append(
                f"| {rank} | {fit.model_name} | {fit.ks_statistic:.5f} | {fit.log_likelihood:.6g} "
                f"| {'yes' if fit.converged else 'no'} | {params} |"
            )
        lines += [
            "",
            f"Asymptotic two-sided critical value at alpha = {self.alpha}: {self.critical_value:.5f}.",
            f"The published critical value {PUBLISHED_CRITICAL_VALUE} is not reproduced.",
        ]
        return "\n".join(lines) + "\n"

    def write(self, output_path: Optional[Path], *, fmt: str = "json", deterministic: bool = False) -> None:
        """Write the report as JSON or Markdown.

        Args:
                output_path: Destination file, stdout when None
                fmt: "json" or "md"
                deterministic: Leave out the generation timestamp
        """
        self.generated = "" if deterministic else utc_timestamp()
        text = self.to_markdown() if fmt == "md" else render_json(self.to_dict())
        write_text(text, output_path)


@dataclass
class Histogram:
    """Equal-width histogram; the last bin is closed on the right."""

    edges: np.ndarray
    counts: np.ndarray
    density_scale: bool = False

    def __post_init__(self) -> None:
        if len(self.edges) != len(self.counts) + 1 or np.any(np.diff(self.edges) <= 0.0):
            raise InvalidRange("Histogram edges must be strictly ascending with one more entry than counts")

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def centres(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    def heights(self) -> np.ndarray:
        """Counts, or counts / (n * width) when density scaled."""
        if not self.density_scale:
            return self.counts.astype(float)
        return self.counts / (self.counts.sum() * self.widths)

    def density_at(self, x: np.ndarray) -> np.ndarray:
        """Density-scaled height of the bin holding each x, 0 outside the range."""
        xs = np.asarray(x, dtype=float)
        index = np.searchsorted(self.edges, xs, side="right") - 1
        index = np.where(xs == self.edges[-1], len(self.counts) - 1, index)
        inside = (index >= 0) & (index < len(self.counts))
        density = self.counts / (self.counts.sum() * self.widths)
        return np.where(inside, density[np.clip(index, 0, len(self.counts) - 1)], 0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "edges": self.edges.tolist(),
            "counts": self.counts.tolist(),
            "density_scale": self.density_scale,
        }


@dataclass
class CurveTable:
    """Columns of curve values over a common ascending abscissa."""

    abscissa: np.ndarray
    ordinates: Dict[str, np.ndarray] = field(default_factory=dict)
    abscissa_name: str = "x"

    def __post_init__(self) -> None:
        self.abscissa = np.asarray(self.abscissa, dtype=float)
        if np.any(np.diff(self.abscissa) < 0.0):
            raise InvalidRange("Curve abscissa must be ascending")
        for name, values in list(self.ordinates.items()):
            self.add(name, values)

    def add(self, name: str, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float)
        if values.shape != self.abscissa.shape:
            raise InvalidRange(f"Column {name!r} has {values.size} values for {self.abscissa.size} abscissae")
        self.ordinates[name] = values

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([self.abscissa_name, *self.ordinates])
        columns = [self.abscissa, *self.ordinates.values()]
        for row in zip(*columns):
            writer.writerow([f"{value:.17g}" for value in row])
        return buffer.getvalue()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            self.abscissa_name: self.abscissa.tolist(),
            **{name: values.tolist() for name, values in self.ordinates.items()},
        }
