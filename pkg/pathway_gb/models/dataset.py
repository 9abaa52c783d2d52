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
"""Dataset dataclass and the parameter-file loader."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence

import numpy as np

from ..errors import DataError, DataFileNotFound, EmptyDataset, UsageError


@dataclass(frozen=True)
class RejectedRow:
    """Input row left out of a dataset, with the reason."""

    row: int
    content: str
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return {"row": self.row, "content": self.content, "reason": self.reason}


@dataclass(frozen=True, eq=False)
class Dataset:
    """Observations sorted ascending, with their provenance.

    Attributes:
            values: Finite observations in ascending order
            source: Where the values came from (path and column, or a label)
            rejected: Rows dropped while reading the source
    """

    values: np.ndarray
    source: str = ""
    rejected: List[RejectedRow] = field(default_factory=list)

    def __post_init__(self) -> None:
        values = np.sort(np.asarray(self.values, dtype=float).ravel(), kind="stable")
        if values.size == 0:
            raise EmptyDataset(f"No observations in {self.source or 'dataset'}")
        if not np.all(np.isfinite(values)):
            raise DataError(f"Dataset {self.source} contains non-finite values")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.size)

    @classmethod
    def from_values(cls, values: Sequence[float] | np.ndarray, source: str = "values") -> Dataset:
        return cls(values=np.asarray(values, dtype=float), source=source)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.source == other.source and np.array_equal(self.values, other.values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source,
            "n": self.n,
            "rejected": [row.to_dict() for row in self.rejected],
        }


def load_params_file(path: Path) -> Dict[str, Any]:
    """Load a JSON object of model parameters.

    Args:
            path: Path to the JSON file

    Returns:
            Mapping of parameter name to value
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except FileNotFoundError as e:
        raise DataFileNotFound(f"Parameter file not found: {path}") from e

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        lines = text.splitlines()
        line = lines[e.lineno - 1] if 0 <= e.lineno - 1 < len(lines) else ""
        pointer = " " * (e.colno - 1) + "^"

        hint = ""
        if "Expecting value" in e.msg:
            hint = "Possible causes: trailing comma, missing value, or extra comma."

        raise UsageError(
            f"Invalid JSON in {path} at line {e.lineno}, column {e.colno}\n{line}\n{pointer}\n{e.msg}. {hint}"
        ) from None

    if not isinstance(data, dict):
        raise UsageError(f"Invalid parameter file {path} (expected a JSON object of name: value)")
    return data
