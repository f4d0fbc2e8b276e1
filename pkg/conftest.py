import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))


@pytest.fixture(scope="session")
def solved():
    """Cached single-mode minimizers keyed by (order, truncation)."""
    from Code.Agents.hoepr.hoepr.agents.spectral import minimizer

    cache = {}

    def get(order: int, truncation: int = 400):
        key = (order, truncation)
        if key not in cache:
            cache[key] = minimizer(order, truncation)
        return cache[key]

    return get


@pytest.fixture
def no_env(monkeypatch):
    for name in ("HOEPR_THREADS", "HOEPR_DENSE_CAP", "HOEPR_BIPARTITE_CAP", "HOEPR_TOL"):
        monkeypatch.delenv(name, raising=False)
