from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from grestrict.census import ingest  # noqa: E402
from grestrict.group import PermutationGroup  # noqa: E402


@pytest.fixture(scope="session")
def catalog():
    return ingest()


@pytest.fixture(scope="session")
def by_label(catalog):
    return {r.label: r for r in catalog}


def group(text: str, degree: int | None = None) -> PermutationGroup:
    return PermutationGroup.from_text(text, degree)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
