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
import logging
from pathlib import Path

import numpy as np
import pytest
from test_properties import add_test_properties

from pathway_gb.cli import Grid, ingest_csv, parse_params
from pathway_gb.errors import DataFileNotFound, EmptyDataset, ParseError, UsageError

ROWS = "wavelength,irradiance\n0.3,820.4\n0.4,1700.2\n0.5,1782.7\n0.6,1650.0\n0.7,1410.9\n"


def write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "data.csv"
    path.write_text(text, encoding="utf-8")
    return path


@add_test_properties(verifies=["ingest_csv"])
class TestIngestCsv:
    """
    One numeric column of a CSV file becomes a sorted Dataset.
    """

    def test_named_column(self, tmp_path: Path):
        data = ingest_csv(write(tmp_path, ROWS), "irradiance")
        assert data.n == 5
        np.testing.assert_array_equal(data.values, [820.4, 1410.9, 1650.0, 1700.2, 1782.7])
        assert data.source.endswith("data.csv:irradiance")
        assert data.rejected == []

    def test_index_column(self, tmp_path: Path):
        data = ingest_csv(write(tmp_path, ROWS), 0)
        np.testing.assert_array_equal(data.values, [0.3, 0.4, 0.5, 0.6, 0.7])

    def test_header_name_wins_over_index(self, tmp_path: Path):
        data = ingest_csv(write(tmp_path, "0,1\n5,7\n6,8\n"), "1")
        np.testing.assert_array_equal(data.values, [7.0, 8.0])

    def test_no_header(self, tmp_path: Path):
        data = ingest_csv(write(tmp_path, "1.5\n2.5\n"), 0, skip_header=False)
        assert data.n == 2

    def test_blank_row_rejected_with_line_number(self, tmp_path: Path, caplog):
        with caplog.at_level(logging.WARNING, logger="pathway_gb.cli"):
            data = ingest_csv(write(tmp_path, "v\n1.0\n\n2.0\n"), "v")
        assert data.n == 2
        assert [(row.row, row.reason) for row in data.rejected] == [(3, "blank row")]
        assert "row 3 rejected" in caplog.text

    def test_non_numeric_cell_rejected(self, tmp_path: Path):
        data = ingest_csv(write(tmp_path, "v\n1.0\nn/a\n2.0\ninf\n"), "v")
        assert data.n == 2
        assert [(row.row, row.content) for row in data.rejected] == [(3, "n/a"), (5, "inf")]

    def test_strict_mode(self, tmp_path: Path):
        with pytest.raises(ParseError) as info:
            ingest_csv(write(tmp_path, "v\n1.0\nn/a\n"), "v", strict=True)
        assert info.value.to_dict()["row"] == 3
        assert info.value.exit_code == 2

    def test_comment_lines_skipped(self, tmp_path: Path):
        data = ingest_csv(write(tmp_path, "# exported spectrum\nv\n# unit W/m^2/um\n1.0\n2.0\n"), "v")
        assert data.n == 2
        assert data.rejected == []

    def test_short_row(self, tmp_path: Path):
        data = ingest_csv(write(tmp_path, "a,b\n1,2\n3\n"), "b")
        assert data.n == 1
        assert data.rejected[0].reason == "no column 1"

    def test_missing_file(self, tmp_path: Path):
        with pytest.raises(DataFileNotFound):
            ingest_csv(tmp_path / "absent.csv", 0)

    def test_no_numeric_values(self, tmp_path: Path):
        with pytest.raises(EmptyDataset):
            ingest_csv(write(tmp_path, "v\nx\ny\n"), "v")

    def test_unknown_column_name(self, tmp_path: Path):
        with pytest.raises(UsageError):
            ingest_csv(write(tmp_path, ROWS), "flux")

    def test_fixture(self, solar_sample: Path):
        data = ingest_csv(solar_sample, "irradiance")
        assert data.n == 50
        assert np.all(data.values > 0.0)
        assert len(np.unique(data.values)) == 50


class TestArgumentParsing:
    """
    Grid and parameter strings.
    """

    def test_grid(self):
        grid = Grid.parse("0:10:11")
        np.testing.assert_allclose(grid.values(), np.arange(11.0))

    @pytest.mark.parametrize("text", ["0:10", "0:10:1", "5:1:10", "a:b:c", "0:inf:3"])
    def test_bad_grid(self, text: str):
        with pytest.raises(UsageError):
            Grid.parse(text)

    def test_params(self):
        assert parse_params("beta=2, b=0.5,delta=-1e-2") == {"beta": 2.0, "b": 0.5, "delta": -0.01}
        assert parse_params(None) == {}

    @pytest.mark.parametrize("text", ["beta", "=2", "beta=two"])
    def test_bad_params(self, text: str):
        with pytest.raises(UsageError):
            parse_params(text)
