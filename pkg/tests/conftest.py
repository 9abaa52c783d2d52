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
from typing import Any, Callable

import pytest

TESTS_DIR = Path(__file__).parent
FIXTURES_DIR = TESTS_DIR / "fixtures"
GOLDEN_DIR = TESTS_DIR / "golden"
GOLDEN_REL_TOL = 1e-9


# Cmdline options
def pytest_addoption(parser):
    parser.addoption(
        "--solar-dataset",
        type=Path,
        default=None,
        help="CSV export of the ASTM E-490 derived irradiance data (1522 values). "
        "Tests marked 'dataset' are skipped without it.",
    )
    parser.addoption(
        "--solar-column",
        type=str,
        default="irradiance",
        help="Column of --solar-dataset holding the irradiance values. Default: %(default)s",
    )
    parser.addoption(
        "--update-golden",
        action="store_true",
        help="Rewrite the golden files under tests/golden instead of comparing against them.",
    )
    parser.addoption(
        "--skip-slow",
        action="store_true",
        help="Skip the simulation studies marked 'slow'.",
    )
    parser.addoption(
        "--default-execution-timeout",
        type=float,
        default=300.0,
        help="Default CLI execution timeout in seconds. Default: %(default)s",
    )


# Hooks
@pytest.hookimpl(tryfirst=True)
def pytest_sessionstart(session):
    try:
        dataset = session.config.getoption("--solar-dataset")
        if dataset is not None and not dataset.is_file():
            raise FileNotFoundError(f"--solar-dataset {dataset} does not exist")
        GOLDEN_DIR.mkdir(exist_ok=True)

    except Exception as e:
        pytest.exit(str(e), returncode=1)


def pytest_collection_modifyitems(config, items):
    skip_slow = pytest.mark.skip(reason="--skip-slow given")
    skip_dataset = pytest.mark.skip(reason="needs --solar-dataset")
    for item in items:
        if config.getoption("--skip-slow") and "slow" in item.keywords:
            item.add_marker(skip_slow)
        if config.getoption("--solar-dataset") is None and "dataset" in item.keywords:
            item.add_marker(skip_dataset)


# Fixtures
@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture(scope="session")
def solar_sample(fixtures_dir: Path) -> Path:
    """50-row two-column sample in the layout of the ASTM E-490 export."""
    return fixtures_dir / "solar_sample.csv"


@pytest.fixture(scope="session")
def solar_dataset(request: pytest.FixtureRequest) -> tuple[Path, str]:
    return request.config.getoption("--solar-dataset"), request.config.getoption("--solar-column")


def _assert_close(actual: Any, expected: Any, where: str, rel_tol: float = GOLDEN_REL_TOL) -> None:
    if isinstance(expected, dict):
        assert isinstance(actual, dict) and actual.keys() == expected.keys(), f"{where}: keys differ"
        for key in expected:
            _assert_close(actual[key], expected[key], f"{where}.{key}", rel_tol)
    elif isinstance(expected, list):
        assert isinstance(actual, list) and len(actual) == len(expected), f"{where}: lengths differ"
        for i, (a, e) in enumerate(zip(actual, expected)):
            _assert_close(a, e, f"{where}[{i}]", rel_tol)
    elif isinstance(expected, float) and not isinstance(actual, bool):
        assert math.isclose(actual, expected, rel_tol=rel_tol, abs_tol=1e-300), f"{where}: {actual} != {expected}"
    else:
        assert actual == expected, f"{where}: {actual!r} != {expected!r}"


@pytest.fixture
def golden(request: pytest.FixtureRequest) -> Callable[..., None]:
    """Compare a JSON document against tests/golden/<name>.json.

    A missing file fails the test; --update-golden rewrites the files instead of comparing.
    Floats are compared with ``rel_tol``.
    """
    update = request.config.getoption("--update-golden")

    def check(name: str, document: dict, rel_tol: float = GOLDEN_REL_TOL) -> None:
        path = GOLDEN_DIR / f"{name}.json"
        rendered = json.loads(json.dumps(document))
        if update:
            path.write_text(json.dumps(rendered, indent=4) + "\n", encoding="utf-8")
            return
        if not path.exists():
            pytest.fail(f"Golden file {path} is missing; run pytest --update-golden to create it")
        _assert_close(rendered, json.loads(path.read_text(encoding="utf-8")), name, rel_tol)

    return check
