from __future__ import annotations

import numpy as np
import pytest

# verdict lines recorded by test_acceptance and replayed after the run,
# outside pytest's output capture
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260826)


def pytest_terminal_summary(terminalreporter) -> None:
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
