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
import os
import shutil
import subprocess
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Generator

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent


class ResultCode:
    """
    CLI exit codes.
    """

    SUCCESS = 0
    USAGE_ERROR = 1
    DATA_ERROR = 2
    NUMERIC_ERROR = 3


@dataclass
class CommandResult:
    return_code: int
    stdout: str
    stderr: str

    def json(self) -> Any:
        return json.loads(self.stdout)

    def error(self) -> dict[str, Any]:
        """
        The JSON error object written after any log lines on stderr.
        """
        lines = self.stderr.splitlines()
        start = lines.index("{")
        return json.loads("\n".join(lines[start:]))


def run_cli(command: list[str], timeout: float) -> CommandResult:
    """
    Run ``python -m pathway_gb`` with the repository on the import path.
    """
    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join(filter(None, [str(REPO_ROOT), env.get("PYTHONPATH")]))
    completed = subprocess.run(
        [sys.executable, "-m", "pathway_gb", *command],
        capture_output=True,
        text=True,
        timeout=timeout,
        cwd=REPO_ROOT,
        env=env,
        check=False,
    )
    return CommandResult(completed.returncode, completed.stdout, completed.stderr)


def temp_dir_common(
    tmp_path_factory: pytest.TempPathFactory, base_name: str, *args: str
) -> Generator[Path, None, None]:
    """
    Create temporary directory and remove it after test.
    Common implementation to be reused by fixtures.

    Returns generator providing numbered path to temporary directory.
    E.g., '<TMP_PATH>/<BASE_NAME>-<ARG1>-<ARG2><NUMBER>/'.

    Parameters
    ----------
    tmp_path_factory : pytest.TempPathFactory
        Factory for temporary directories.
    base_name : str
        Base directory name.
        'self.__class__.__name__' use is recommended.
    *args : Any
        Other parameters to be included in directory name.
    """
    parts = [base_name, *args]
    dir_name = "-".join(parts)
    dir_path = tmp_path_factory.mktemp(dir_name, numbered=True)
    yield dir_path
    shutil.rmtree(dir_path)


class CliScenario:
    """
    One CLI invocation shared by the tests of a class.
    """

    @pytest.fixture(scope="class")
    def command(self) -> list[str]:
        raise NotImplementedError("Scenario classes provide the command line")

    @pytest.fixture(scope="class")
    def execution_timeout(self, request: pytest.FixtureRequest) -> float:
        return request.config.getoption("--default-execution-timeout")

    def expect_command_failure(self, *args, **kwargs) -> bool:
        """
        Expect command failure (non-zero exit code).
        """
        return False

    @pytest.fixture(scope="class")
    def results(self, command: list[str], execution_timeout: float) -> CommandResult:
        result = run_cli(command, execution_timeout)
        success = result.return_code == ResultCode.SUCCESS
        if self.expect_command_failure() and success:
            raise RuntimeError(f"Command execution succeeded unexpectedly: {result=}")
        if not self.expect_command_failure() and not success:
            raise RuntimeError(f"Command execution failed unexpectedly: {result=}")
        return result
