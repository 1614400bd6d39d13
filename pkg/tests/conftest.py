from __future__ import annotations

import pytest

from dsieve import oracle


@pytest.fixture(scope="session")
def table_10k() -> oracle.PrimeTable:
    return oracle.build(10_000, with_spf=True)


@pytest.fixture(scope="session")
def table_1m() -> oracle.PrimeTable:
    return oracle.build(1_000_000)
