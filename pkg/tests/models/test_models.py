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
import json
import math
from pathlib import Path

import numpy as np
import pytest
from test_properties import add_test_properties

from pathway_gb.errors import (
    DataError,
    DataFileNotFound,
    EmptyDataset,
    InvalidParams,
    InvalidRange,
    NonConvergence,
    ParseError,
    UsageError,
)
from pathway_gb.models import (
    ComparisonEntry,
    ComparisonReport,
    CurveTable,
    Dataset,
    FitReport,
    FractionalOrder,
    GammaBesselParams,
    PathwayParams,
    QGammaBesselParams,
    SuperstatParams,
    load_params_file,
)


def fit(model: str, d: float) -> FitReport:
    return FitReport(
        model_name=model,
        params={"beta": 2.0, "b": 1.0},
        log_likelihood=-123.456,
        ks_statistic=d,
        converged=True,
        iterations=42,
        n=50,
    )


def report() -> ComparisonReport:
    entries = [
        ComparisonEntry("gamma_bessel", fit("gamma_bessel", 0.05)),
        ComparisonEntry("gamma", fit("gamma", 0.07)),
        ComparisonEntry("superstat", error=NonConvergence("no luck", value=1.0, abs_error=0.5).to_dict()),
    ]
    return ComparisonReport(source="sample.csv:irradiance", n=50, entries=entries, critical_value=0.192)


@add_test_properties(verifies=["GammaBesselParams", "QGammaBesselParams", "SuperstatParams", "PathwayParams"])
class TestParams:
    """
    Parameter records validate their ranges and keep their dictionary names.
    """

    def test_gamma_bessel_defaults(self):
        p = GammaBesselParams.from_dict({"beta": 2, "b": "0.5"})
        assert p == GammaBesselParams(2.0, 0.5, 0.0)
        assert p.to_dict() == {"beta": 2.0, "b": 0.5, "delta": 0.0}

    def test_scaled(self):
        assert GammaBesselParams(2.0, 1.0, 0.5).scaled(2.0) == GammaBesselParams(2.0, 0.5, 0.25)

    @pytest.mark.parametrize(
        "data", [{"beta": 2.0}, {"beta": 2.0, "b": 1.0, "rate": 1.0}, {"beta": 0.0, "b": 1.0}, {"beta": "x", "b": 1.0}]
    )
    def test_gamma_bessel_invalid(self, data):
        with pytest.raises(InvalidParams):
            GammaBesselParams.from_dict(data)

    def test_non_finite(self):
        with pytest.raises(InvalidParams):
            GammaBesselParams(2.0, 1.0, math.nan)

    def test_qgb_support(self):
        p = QGammaBesselParams.from_dict({"beta": 2.0, "b": 2.0, "q": 0.5})
        assert p.support_upper == 1.0
        assert QGammaBesselParams(p.base, 1.5).support_upper == math.inf
        assert p.to_dict() == {"beta": 2.0, "b": 2.0, "delta": 0.0, "q": 0.5}

    def test_qgb_rejects_q_one(self):
        with pytest.raises(InvalidParams):
            QGammaBesselParams(GammaBesselParams(2.0, 1.0), 1.0)

    def test_superstat_lambda_name(self):
        p = SuperstatParams.from_dict({"gamma": 1.0, "rho": 2.0, "lambda": 1.5, "eta": 0.75})
        assert p.lambda_ == 1.5
        assert p.nu == 1.25
        assert p.to_dict()["lambda"] == 1.5

    def test_superstat_negative_delta(self):
        with pytest.raises(InvalidParams):
            SuperstatParams(1.0, 1.0, -0.1, 1.0, 1.0)

    @pytest.mark.parametrize(("q", "branch"), [(0.5, "h1"), (1.0, "h3"), (1.5, "h2")])
    def test_pathway_branch(self, q: float, branch: str):
        p = PathwayParams(gamma=2.0, theta=1.0, a=1.0, eta=1.0, q=q)
        assert p.branch == branch
        assert math.isfinite(p.support_upper) == (q < 1.0)

    def test_pathway_support(self):
        assert PathwayParams(gamma=1.0, theta=2.0, a=1.0, eta=1.0, q=0.75).support_upper == pytest.approx(2.0)

    def test_fractional_order(self):
        assert FractionalOrder.coerce(0.5) == FractionalOrder(0.5)
        with pytest.raises(InvalidParams):
            FractionalOrder.coerce(0.0)


@add_test_properties(verifies=["Dataset"])
class TestDataset:
    """
    Observations are sorted, finite and compared by value.
    """

    def test_sorted_and_frozen(self):
        data = Dataset.from_values([3.0, 1.0, 2.0])
        np.testing.assert_array_equal(data.values, [1.0, 2.0, 3.0])
        assert not data.values.flags.writeable

    def test_equality(self):
        assert Dataset.from_values([2.0, 1.0], "a") == Dataset.from_values([1.0, 2.0], "a")
        assert Dataset.from_values([1.0], "a") != Dataset.from_values([1.0], "b")

    def test_empty(self):
        with pytest.raises(EmptyDataset):
            Dataset.from_values([])

    def test_non_finite(self):
        with pytest.raises(DataError):
            Dataset.from_values([1.0, math.inf])


@add_test_properties(verifies=["FitReport", "ComparisonReport"])
class TestReports:
    """
    JSON and Markdown renderings of fit and comparison reports.
    """

    def test_fit_report_dictionary(self):
        original = fit("gamma", 0.07)
        assert FitReport.from_dict(json.loads(json.dumps(original.to_dict()))) == original

    def test_ranking_skips_failures(self):
        assert report().ranking == ["gamma_bessel", "gamma"]

    def test_comparison_document(self):
        document = report().to_dict()
        assert "generated" not in document
        assert document["models"][2] == {
            "model": "superstat",
            "error": {
                "error": "NonConvergence",
                "message": "no luck",
                "exit_code": 3,
                "value": 1.0,
                "abs_error_estimate": 0.5,
            },
        }
        assert document["ks_critical_value"]["asymptotic"] == 0.192

    def test_markdown(self):
        text = report().to_markdown()
        assert "| 1 | gamma_bessel | 0.05000 |" in text
        assert "| 2 | gamma | 0.07000 |" in text
        assert "| - | superstat | - | - | - | error: no luck |" in text

    def test_deterministic_write(self, tmp_path: Path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        report().write(first, deterministic=True)
        report().write(second, deterministic=True)
        assert first.read_bytes() == second.read_bytes()
        assert first.read_text(encoding="utf-8").endswith("}\n")

    def test_timestamped_write(self, tmp_path: Path):
        path = tmp_path / "report.json"
        report().write(path)
        assert "generated" in json.loads(path.read_text(encoding="utf-8"))


@add_test_properties(verifies=["CurveTable"])
class TestCurveTable:
    """
    Curve columns share one ascending abscissa.
    """

    def test_csv_digits(self):
        table = CurveTable(np.array([0.0, 1.0]), {"f": np.array([1.0 / 3.0, 0.1])})
        lines = table.to_csv().splitlines()
        assert lines == ["x,f", "0,0.33333333333333331", "1,0.10000000000000001"]

    def test_dictionary(self):
        table = CurveTable(np.array([0.0, 1.0]), {"f": np.array([2.0, 3.0])})
        assert table.to_dict() == {"schema_version": 1, "x": [0.0, 1.0], "f": [2.0, 3.0]}

    def test_length_mismatch(self):
        table = CurveTable(np.array([0.0, 1.0]))
        with pytest.raises(InvalidRange):
            table.add("f", np.array([1.0]))

    def test_descending_abscissa(self):
        with pytest.raises(InvalidRange):
            CurveTable(np.array([1.0, 0.0]))


@add_test_properties(verifies=["load_params_file"])
class TestParamsFile:
    """
    Parameter files are JSON objects.
    """

    def test_load(self, tmp_path: Path):
        path = tmp_path / "params.json"
        path.write_text('{"beta": 2.0, "b": 1.0}', encoding="utf-8")
        assert GammaBesselParams.from_dict(load_params_file(path)) == GammaBesselParams(2.0, 1.0)

    def test_missing(self, tmp_path: Path):
        with pytest.raises(DataFileNotFound):
            load_params_file(tmp_path / "absent.json")

    def test_syntax_error_points_at_column(self, tmp_path: Path):
        path = tmp_path / "params.json"
        path.write_text('{"beta": 2.0,}', encoding="utf-8")
        with pytest.raises(UsageError) as info:
            load_params_file(path)
        assert "line 1, column 14" in str(info.value)
        assert "\n" + " " * 13 + "^\n" in str(info.value)

    def test_not_an_object(self, tmp_path: Path):
        path = tmp_path / "params.json"
        path.write_text("[2.0, 1.0]", encoding="utf-8")
        with pytest.raises(UsageError):
            load_params_file(path)


class TestErrors:
    """
    Error objects carry exit codes and details.
    """

    @pytest.mark.parametrize(
        ("error", "code"), [(UsageError("u"), 1), (DataFileNotFound("d"), 2), (InvalidParams("p"), 3)]
    )
    def test_exit_codes(self, error, code: int):
        assert error.exit_code == code
        assert error.to_dict()["exit_code"] == code

    def test_parse_error_details(self):
        document = ParseError(7, "abc").to_dict()
        assert document["error"] == "ParseError"
        assert (document["row"], document["content"]) == (7, "abc")
