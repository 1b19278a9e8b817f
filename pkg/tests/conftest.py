import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXED_TIMESTAMP = "2024-01-01T00:00:00Z"


@pytest.fixture(scope="session")
def full_report():
    from sombor_audit.audit import run_full_audit
    from sombor_audit.families import load_registry

    return run_full_audit(load_registry(use_env=False), timestamp=FIXED_TIMESTAMP)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
