from __future__ import annotations

import pytest

from tourlab.enumeration import enumerate_tournaments


@pytest.fixture(scope="session")
def catalogs():
    """Catalogs for the small range shared across the suite."""
    return {h: enumerate_tournaments(h) for h in range(1, 8)}


@pytest.fixture(scope="session")
def catalog8():
    return enumerate_tournaments(8)
