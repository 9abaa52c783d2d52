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
"""Exception hierarchy shared by the library and the command line front end.

Every error carries the process exit code the CLI reports for it:
  1 usage error
  2 data error
  3 numeric error
"""

from __future__ import annotations

from typing import Any, Dict


class PathwayError(Exception):
    """Root of all errors raised by pathway_gb."""

    exit_code = 3

    def details(self) -> Dict[str, Any]:
        """Extra machine-readable fields for the JSON error object."""
        return {}

    def to_dict(self) -> Dict[str, Any]:
        """Convert the error to the JSON object written on stderr.

        Returns:
                Dictionary with error name, message, exit code and details
        """
        return {
            "error": type(self).__name__,
            "message": str(self),
            "exit_code": self.exit_code,
            **self.details(),
        }


class UsageError(PathwayError):
    exit_code = 1


class DataError(PathwayError):
    exit_code = 2


class NumericError(PathwayError):
    exit_code = 3


# Usage


class InsufficientModels(UsageError):
    pass


class UnknownModel(UsageError):
    pass


# Data


class DataFileNotFound(DataError):
    pass


class ParseError(DataError):
    def __init__(self, row: int, content: str, reason: str = "not a finite number") -> None:
        super().__init__(f"row {row}: {reason}: {content!r}")
        self.row = row
        self.content = content

    def details(self) -> Dict[str, Any]:
        return {"row": self.row, "content": self.content}


class EmptyDataset(DataError):
    pass


class DegenerateData(DataError):
    pass


class InvalidRange(DataError, ValueError):
    pass


# Numeric


class InvalidDomain(NumericError, ValueError):
    pass


class NonConvergence(NumericError):
    def __init__(self, message: str, value: float = float("nan"), abs_error: float = float("nan")) -> None:
        super().__init__(message)
        self.value = value
        self.abs_error = abs_error

    def details(self) -> Dict[str, Any]:
        return {"value": self.value, "abs_error_estimate": self.abs_error}


class SeriesDivergence(NumericError):
    pass


class NumericOverflow(NumericError):
    pass


class NumericUnderflow(NumericError):
    pass


class NonNormalizable(NumericError):
    pass


class TailTooHeavy(NumericError):
    pass


class InvalidParams(NumericError, ValueError):
    pass


class PoleProximity(NumericError):
    pass


class InvalidCdf(NumericError):
    pass
