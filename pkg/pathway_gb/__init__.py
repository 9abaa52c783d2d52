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
"""Pathway densities, the generalized gamma Bessel model and its relatives,
with fitting and Kolmogorov-Smirnov model comparison."""

from .errors import PathwayError
from .models import (
    Dataset,
    FitReport,
    GammaBesselParams,
    GenLaplaceParams,
    PathwayParams,
    QGammaBesselParams,
    SuperstatParams,
)

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "FitReport",
    "GammaBesselParams",
    "GenLaplaceParams",
    "PathwayError",
    "PathwayParams",
    "QGammaBesselParams",
    "SuperstatParams",
    "__version__",
]
