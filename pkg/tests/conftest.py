"""Shared fixtures.

The reproduction suite takes a few seconds (it re-runs every tuning), so
it executes once per session and the per-criterion tests read from the
cached results.
"""

from __future__ import annotations

import pytest

from positronium import acceptance


@pytest.fixture(scope="session")
def acceptance_results():
    results = acceptance.run_all()
    return {c.number: c for c in results}
