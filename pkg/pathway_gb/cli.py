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
"""Command line front end: fit and compare models on CSV data, tabulate
densities, draw samples, evaluate the pathway operator and validate
parameter sets.

Usage:
  pathway-gb compare --input solar.csv --column irradiance --models gamma,gamma_bessel
  pathway-gb pdf --model gamma_bessel --params beta=2,b=1,delta=0 --grid 0:10:101
  pathway-gb sample --model gamma_bessel --params beta=2,b=1,delta=1 --n 1000 --seed 7
  pathway-gb pathway-int --f const --eta 2 --q 0 --a 1 --x 1

Errors are written to stderr as a single JSON object.

Exit codes:
  0 success
  1 usage error
  2 data error
  3 numeric error
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, NoReturn, Optional, Sequence

import numpy as np

from .distributions import (
    gb_cdf,
    gb_pdf,
    gb_sample,
    gb_validate,
    glap_cdf,
    glap_pdf,
    glap_sample,
    qgb_cdf,
    qgb_pdf,
    superstat_cdf,
    superstat_pdf,
)
from .errors import (
    DataError,
    DataFileNotFound,
    EmptyDataset,
    InvalidParams,
    ParseError,
    PathwayError,
    UnknownModel,
    UsageError,
)
from .inference import compare_models, fit_mle, histogram, ks_critical_value, ks_statistic
from .models.dataset import Dataset, RejectedRow, load_params_file
from .models.params import GammaBesselParams, GenLaplaceParams, PathwayParams, QGammaBesselParams, SuperstatParams
from .models.report import SCHEMA_VERSION, CurveTable, render_json, utc_timestamp, write_text
from .numerics import RandomStream
from .pathway import pathway_cdf, pathway_integral_result, pathway_pdf

logger = logging.getLogger(__name__)

# Allowed output formats per command, default first.
FORMATS: Dict[str, tuple[str, ...]] = {
    "fit": ("json",),
    "compare": ("json", "md"),
    "ks": ("json",),
    "pdf": ("csv", "json"),
    "cdf": ("csv", "json"),
    "sample": ("csv",),
    "pathway-int": ("json",),
    "validate": ("json",),
}
INTEGRANDS: Dict[str, Callable[[float], Callable[[float], float]]] = {
    "const": lambda c: lambda t: c,
    "power": lambda c: lambda t: t**c,
    "exp": lambda c: lambda t: math.exp(-c * t),
}


def _build_gamma(data: Dict[str, Any]) -> GammaBesselParams:
    if "delta" in data:
        raise InvalidParams("gamma takes beta and b only; use gamma_bessel for delta")
    return GammaBesselParams.from_dict(data)


@dataclass(frozen=True)
class CurveModel:
    """Parameter builder and density/CDF callables of a tabulated model."""

    build: Callable[[Dict[str, Any]], Any]
    pdf: Callable[..., Any]
    cdf: Callable[[Any, np.ndarray], Any]


CURVE_MODELS: Dict[str, CurveModel] = {
    "gamma": CurveModel(_build_gamma, gb_pdf, gb_cdf),
    "gamma_bessel": CurveModel(GammaBesselParams.from_dict, gb_pdf, gb_cdf),
    "qgb": CurveModel(QGammaBesselParams.from_dict, qgb_pdf, qgb_cdf),
    "superstat": CurveModel(SuperstatParams.from_dict, superstat_pdf, superstat_cdf),
    "glap": CurveModel(GenLaplaceParams.from_dict, glap_pdf, glap_cdf),
    "pathway": CurveModel(PathwayParams.from_dict, pathway_pdf, pathway_cdf),
}
SAMPLERS: Dict[str, Callable[[Dict[str, Any]], Any]] = {
    "gamma_bessel": GammaBesselParams.from_dict,
    "glap": GenLaplaceParams.from_dict,
}


class JsonArgumentParser(argparse.ArgumentParser):
    """ArgumentParser reporting bad usage as UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class Grid:
    lo: float
    hi: float
    points: int

    @classmethod
    def parse(cls, text: str) -> Grid:
        """Parse ``lo:hi:points``."""
        parts = text.split(":")
        try:
            if len(parts) != 3:
                raise ValueError("expected lo:hi:points")
            grid = cls(lo=float(parts[0]), hi=float(parts[1]), points=int(parts[2]))
        except ValueError as e:
            raise UsageError(f"Invalid --grid {text!r}: {e}") from None
        if grid.points < 2 or not (math.isfinite(grid.lo) and math.isfinite(grid.hi) and grid.lo < grid.hi):
            raise UsageError(f"Invalid --grid {text!r}: need lo < hi and at least 2 points")
        return grid

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)


def parse_params(text: Optional[str]) -> Dict[str, float]:
    """Parse ``name=value,name=value`` into a dictionary."""
    params: Dict[str, float] = {}
    if not text:
        return params
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise UsageError(f"Invalid parameter {item!r} (expected name=value)")
        try:
            params[name] = float(value)
        except ValueError:
            raise UsageError(f"Invalid value for parameter {name!r}: {value!r}") from None
    return params


@dataclass(frozen=True)
class CliConfig:
    """Validated command line configuration."""

    command: str
    input_path: Optional[Path] = None
    column: str = "1"
    skip_header: bool = True
    strict: bool = False
    model: Optional[str] = None
    models: List[str] = field(default_factory=list)
    params: Dict[str, float] = field(default_factory=dict)
    fixed: Dict[str, float] = field(default_factory=dict)
    seed: int = 0
    n: int = 1000
    output_format: str = "json"
    output_path: Optional[Path] = None
    grid: Optional[Grid] = None
    bins: Optional[int] = None
    kernel: bool = False
    deterministic: bool = False
    jobs: int = 1
    integrand: str = "const"
    c: float = 1.0
    eta: float = 1.0
    q: float = 0.0
    a: float = 1.0
    x: float = 1.0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> CliConfig:
        command = args.command
        params = load_params_file(args.params_file) if getattr(args, "params_file", None) else {}
        params.update(parse_params(getattr(args, "params", None)))

        allowed = FORMATS[command]
        output_format = args.format or allowed[0]
        if output_format not in allowed:
            raise UsageError(f"{command} does not support --format {output_format} (choose {', '.join(allowed)})")

        config = cls(
            command=command,
            input_path=getattr(args, "input", None),
            column=getattr(args, "column", "1"),
            skip_header=not getattr(args, "no_header", False),
            strict=getattr(args, "strict", False),
            model=getattr(args, "model", None),
            models=[m.strip() for m in (getattr(args, "models", None) or "").split(",") if m.strip()],
            params=params,
            fixed=parse_params(getattr(args, "fixed", None)),
            seed=args.seed,
            n=getattr(args, "n", 1000),
            output_format=output_format,
            output_path=args.output,
            grid=Grid.parse(args.grid) if getattr(args, "grid", None) else None,
            bins=getattr(args, "bins", None),
            kernel=getattr(args, "kernel", False),
            deterministic=args.deterministic,
            jobs=getattr(args, "jobs", 1),
            integrand=getattr(args, "f", "const"),
            c=getattr(args, "c", 1.0),
            eta=getattr(args, "eta", 1.0),
            q=getattr(args, "q", 0.0),
            a=getattr(args, "a", 1.0),
            x=getattr(args, "x", 1.0),
        )
        config.check()
        return config

    def check(self) -> None:
        """Reject configurations missing command-specific fields."""
        if self.command in ("fit", "compare", "ks") and self.input_path is None:
            raise UsageError(f"{self.command} needs --input")
        if self.command in ("pdf", "cdf") and self.grid is None:
            raise UsageError(f"{self.command} needs --grid lo:hi:points")
        if self.command in ("fit", "ks", "pdf", "cdf", "sample") and not self.model:
            raise UsageError(f"{self.command} needs --model")
        if self.command in ("ks", "pdf", "cdf", "sample", "validate") and not self.params:
            raise UsageError(f"{self.command} needs --params or --params-file")
        if self.kernel and not (self.command == "pdf" and self.model == "qgb"):
            raise UsageError("--kernel applies to pdf --model qgb only")
        if not 0 <= self.seed < 2**64:
            raise UsageError(f"--seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.n < 0 or self.jobs < 1:
            raise UsageError("--n must be >= 0 and --jobs >= 1")


def _column_index(header: Optional[List[str]], column: str) -> int:
    if header is not None:
        names = [name.strip() for name in header]
        if column in names:
            return names.index(column)
    try:
        index = int(column)
    except ValueError:
        raise UsageError(f"Column {column!r} is neither a header name nor a 0-based index") from None
    if index < 0:
        raise UsageError(f"Column index must be >= 0, got {index}")
    return index


def ingest_csv(path: Path, column: str | int, *, skip_header: bool = True, strict: bool = False) -> Dataset:
    """Read one numeric column of a comma-separated file into a Dataset.

    Lines starting with ``#`` are comments. Blank rows and rows whose
    selected cell is not a finite number are rejected and logged with their
    line number.

    Args:
            path: CSV file, UTF-8
            column: Header name or 0-based index; a header name wins
            skip_header: First non-comment row is a header
            strict: Raise ParseError on the first non-numeric row

    Returns:
            Dataset with the sorted values and the rejected rows
    """
    column = str(column)
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            text = f.read()
    except FileNotFoundError as e:
        raise DataFileNotFound(f"Input file not found: {path}") from e

    numbered = [(number, line) for number, line in enumerate(text.splitlines(), start=1)
                if not line.lstrip().startswith("#")]
    values: List[float] = []
    rejected: List[RejectedRow] = []
    index: Optional[int] = None
    for (row_number, _), row in zip(numbered, csv.reader(line for _, line in numbered)):
        if index is None:
            if skip_header:
                index = _column_index(row, column)
                continue
            index = _column_index(None, column)
        if not row or all(not cell.strip() for cell in row):
            rejected.append(RejectedRow(row_number, ",".join(row), "blank row"))
            continue
        if index >= len(row):
            rejected.append(RejectedRow(row_number, ",".join(row), f"no column {index}"))
            continue
        cell = row[index].strip()
        try:
            value = float(cell)
        except ValueError:
            value = math.nan
        if not math.isfinite(value):
            if strict:
                raise ParseError(row_number, cell)
            rejected.append(RejectedRow(row_number, cell, "not a finite number"))
            continue
        values.append(value)

    for row in rejected:
        logger.warning("%s: row %d rejected (%s): %r", path, row.row, row.reason, row.content)
    source = f"{path}:{column}"
    if not values:
        raise EmptyDataset(f"No numeric values in column {column!r} of {path}")
    logger.info("%s: %d values read, %d rows rejected", source, len(values), len(rejected))
    return Dataset(values=np.asarray(values), source=source, rejected=rejected)


def _build(registry: Dict[str, Any], config: CliConfig) -> Any:
    if config.model not in registry:
        raise UnknownModel(f"{config.command} does not support model {config.model!r} (expected {', '.join(registry)})")
    entry = registry[config.model]
    builder = entry.build if isinstance(entry, CurveModel) else entry
    return builder(dict(config.params))


def _document(config: CliConfig, body: Dict[str, Any]) -> Dict[str, Any]:
    document: Dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    if not config.deterministic:
        document["generated"] = utc_timestamp()
    document.update(body)
    return document


def _run_fit(config: CliConfig) -> None:
    data = ingest_csv(config.input_path, config.column, skip_header=config.skip_header, strict=config.strict)
    report = fit_mle(data, config.model, config.params or None, fixed=config.fixed)
    document = _document(config, {"dataset": data.to_dict(), "fit": report.to_dict()})
    write_text(render_json(document), config.output_path)


def _run_compare(config: CliConfig) -> None:
    data = ingest_csv(config.input_path, config.column, skip_header=config.skip_header, strict=config.strict)
    report = compare_models(data, config.models, jobs=config.jobs)
    report.write(config.output_path, fmt=config.output_format, deterministic=config.deterministic)


def _run_ks(config: CliConfig) -> None:
    data = ingest_csv(config.input_path, config.column, skip_header=config.skip_header, strict=config.strict)
    params = _build(CURVE_MODELS, config)
    cdf = CURVE_MODELS[config.model].cdf
    body = {
        "source": data.source,
        "n": data.n,
        "model": config.model,
        "params": params.to_dict(),
        "ks_statistic": ks_statistic(data, lambda x: cdf(params, x)),
        "ks_critical_value": ks_critical_value(data.n),
    }
    write_text(render_json(_document(config, body)), config.output_path)


def _run_curve(config: CliConfig) -> None:
    params = _build(CURVE_MODELS, config)
    model = CURVE_MODELS[config.model]
    x = config.grid.values()
    table = CurveTable(abscissa=x)
    if config.command == "pdf":
        values = model.pdf(params, x, normalized=False) if config.kernel else model.pdf(params, x)
    else:
        values = model.cdf(params, x)
    table.add(config.model, values)

    if config.input_path is not None:
        data = ingest_csv(config.input_path, config.column, skip_header=config.skip_header, strict=config.strict)
        if config.command == "pdf":
            table.add("histogram", histogram(data, config.bins, density_scale=True).density_at(x))
        else:
            table.add("empirical", np.searchsorted(data.values, x, side="right") / data.n)

    text = table.to_csv() if config.output_format == "csv" else render_json(table.to_dict())
    write_text(text, config.output_path)


def _run_sample(config: CliConfig) -> None:
    params = _build(SAMPLERS, config)
    rng = RandomStream(config.seed)
    draws = gb_sample(params, config.n, rng) if config.model == "gamma_bessel" else glap_sample(params, config.n, rng)
    header = f"# seed={config.seed} model={config.model} params={json.dumps(params.to_dict())}\n"
    write_text(header + "".join(f"{value:.17g}\n" for value in draws), config.output_path)


def _run_pathway_int(config: CliConfig) -> None:
    f = INTEGRANDS[config.integrand](config.c)
    result = pathway_integral_result(f, config.eta, config.q, config.a, config.x)
    body = {
        "integrand": config.integrand,
        "c": config.c,
        "eta": config.eta,
        "q": config.q,
        "a": config.a,
        "x": config.x,
        **result.to_dict(),
    }
    write_text(render_json(_document(config, body)), config.output_path)


def _run_validate(config: CliConfig) -> None:
    report = gb_validate(GammaBesselParams.from_dict(config.params))
    write_text(render_json(report.to_dict()), config.output_path)


def run(config: CliConfig) -> int:
    """Execute one command.

    Returns:
            Process exit status (0 on success; errors are raised)
    """
    match config.command:
        case "fit":
            _run_fit(config)
        case "compare":
            _run_compare(config)
        case "ks":
            _run_ks(config)
        case "pdf" | "cdf":
            _run_curve(config)
        case "sample":
            _run_sample(config)
        case "pathway-int":
            _run_pathway_int(config)
        case "validate":
            _run_validate(config)
        case _:
            raise UsageError(f"Unknown command {config.command!r}")
    return 0


def build_parser() -> JsonArgumentParser:
    common = JsonArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Enable verbose logging")
    common.add_argument("--debug", action="store_true", help="Enable debug logging")
    common.add_argument("--output", type=Path, default=None, help="Output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv", "md"), default=None, help="Output format")
    common.add_argument("--seed", type=int, default=0, help="Seed of the random stream (default: %(default)s)")
    common.add_argument(
        "--deterministic", action="store_true", help="Leave out timestamps so identical runs give identical files"
    )

    data = JsonArgumentParser(add_help=False)
    data.add_argument("--input", type=Path, help="CSV file with the observations")
    data.add_argument("--column", default="1", help="Header name or 0-based index (default: %(default)s)")
    data.add_argument("--no-header", action="store_true", help="The file has no header row")
    data.add_argument("--strict", action="store_true", help="Fail on non-numeric rows instead of skipping them")

    params = JsonArgumentParser(add_help=False)
    params.add_argument("--model", help="Model name")
    params.add_argument("--params", help="Parameters as name=value,name=value")
    params.add_argument("--params-file", type=Path, help="JSON object of parameters")

    parser = JsonArgumentParser(
        prog="pathway-gb",
        description="Pathway and gamma Bessel densities: fitting, comparison, tables and sampling",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Rank gamma and gamma Bessel fits of the irradiance column
  pathway-gb compare --input solar.csv --column irradiance --models gamma,gamma_bessel

  # Tabulate a density on 101 points of [0, 10]
  pathway-gb pdf --model gamma_bessel --params beta=2,b=1,delta=0 --grid 0:10:101

  # Draw, then fit the draws
  pathway-gb sample --model gamma_bessel --params beta=2,b=1,delta=1 --n 5000 --seed 7 --output draws.csv
  pathway-gb fit --input draws.csv --column 0 --no-header --model gamma_bessel
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=JsonArgumentParser)

    fit = sub.add_parser("fit", parents=[common, data, params], help="Maximum-likelihood fit of one model")
    fit.add_argument("--fixed", help="Parameters held fixed, as name=value,...")

    compare = sub.add_parser("compare", parents=[common, data], help="Fit and rank several models")
    compare.add_argument("--models", required=True, help="Comma-separated model names")
    compare.add_argument("--jobs", type=int, default=1, help="Models fitted in parallel (default: %(default)s)")

    sub.add_parser("ks", parents=[common, data, params], help="Kolmogorov-Smirnov distance to a given model")

    for name in ("pdf", "cdf"):
        curve = sub.add_parser(name, parents=[common, data, params], help=f"Tabulate the {name} over a grid")
        curve.add_argument("--grid", help="lo:hi:points")
        curve.add_argument("--bins", type=int, default=None, help="Histogram bins for --input (default: Sturges)")
        if name == "pdf":
            curve.add_argument("--kernel", action="store_true", help="qgb only: unnormalized kernel")

    sample = sub.add_parser("sample", parents=[common, params], help="Draw from gamma_bessel or glap")
    sample.add_argument("--n", type=int, default=1000, help="Number of draws (default: %(default)s)")

    pathway = sub.add_parser("pathway-int", parents=[common], help="Pathway integral of a built-in integrand")
    pathway.add_argument(
        "--f", choices=tuple(INTEGRANDS), default="const", help="Integrand: c, t^c or exp(-c t) (default: %(default)s)"
    )
    pathway.add_argument("--c", type=float, default=1.0, help="Integrand constant (default: %(default)s)")
    pathway.add_argument("--eta", type=float, required=True)
    pathway.add_argument("--q", type=float, required=True)
    pathway.add_argument("--a", type=float, required=True)
    pathway.add_argument("--x", type=float, required=True)

    validate = sub.add_parser("validate", parents=[common], help="Sign scan of a gamma Bessel parameter set")
    validate.add_argument("--params", help="beta=...,b=...,delta=...")
    validate.add_argument("--params-file", type=Path, help="JSON object of parameters")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        if args.debug:
            logging.getLogger().setLevel(logging.DEBUG)
        elif args.verbose:
            logging.getLogger().setLevel(logging.INFO)
        return run(CliConfig.from_args(args))
    except PathwayError as e:
        sys.stderr.write(render_json(e.to_dict()))
        return e.exit_code
    except OSError as e:
        error = DataError(str(e))
        sys.stderr.write(render_json(error.to_dict()))
        return error.exit_code


if __name__ == "__main__":
    sys.exit(main())
