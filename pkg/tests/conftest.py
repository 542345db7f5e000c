import os
import re
from pathlib import Path

import pytest
from hypothesis import settings

from acceptance_log import RESULTS

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))

DEFAULT_DATASET = Path(__file__).resolve().parent.parent / "data" / "indonesian_terrorists.tsv"


@pytest.fixture(scope="session")
def dataset_path():
    """Path of the 13-layer terrorist multiplex edge list, or None when absent."""
    path = Path(os.environ.get("SIMRATE_DATASET", DEFAULT_DATASET))
    return path if path.is_file() else None


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    def order(row):
        num, rest = re.match(r"(\d+)(.*)", row[0]).groups()
        return int(num), rest

    for criterion, status, detail in sorted(RESULTS, key=order):
        terminalreporter.write_line(f"{criterion:>4}  {status:<4}  {detail}")
