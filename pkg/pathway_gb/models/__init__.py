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
"""Parameter, dataset and report models for pathway_gb."""

from .dataset import Dataset, RejectedRow, load_params_file
from .params import (
    FractionalOrder,
    GammaBesselParams,
    GenLaplaceParams,
    PathwayParams,
    QGammaBesselParams,
    SuperstatParams,
)
from .report import ComparisonEntry, ComparisonReport, CurveTable, FitReport, Histogram, ValidityReport

__all__ = [
    "ComparisonEntry",
    "ComparisonReport",
    "CurveTable",
    "Dataset",
    "FitReport",
    "FractionalOrder",
    "GammaBesselParams",
    "GenLaplaceParams",
    "Histogram",
    "PathwayParams",
    "QGammaBesselParams",
    "RejectedRow",
    "SuperstatParams",
    "ValidityReport",
    "load_params_file",
]
