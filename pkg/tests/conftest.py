from __future__ import annotations

import os
from pathlib import Path

import pytest

from cascade_duel.graphs import Graph

# The worked 10-node example network: two hubs (2 and 7) bridged through
# nodes 3, 4 and 10, with pendant nodes 1, 6, 8, 9.
SAMPLE_EDGES = [(1, 2), (2, 3), (2, 4), (3, 4), (3, 7), (4, 10), (7, 10),
                (5, 7), (5, 6), (7, 8), (7, 9)]


@pytest.fixture(scope="session")
def sample_graph() -> Graph:
    return Graph.from_edges(SAMPLE_EDGES)


@pytest.fixture(scope="session")
def oid(sample_graph):
    """Map internal ids back to the 1..10 labels used in discussions."""
    return sample_graph.original_id


@pytest.fixture(scope="session")
def iid(sample_graph):
    """Map 1..10 labels to internal ids."""
    return sample_graph.internal_id


def facebook_path() -> Path | None:
    """Locate the SNAP ego-Facebook combined edge list, if present."""
    env = os.environ.get("CASCADE_DUEL_FACEBOOK")
    candidates = [Path(env)] if env else []
    here = Path(__file__).resolve().parent.parent
    candidates += [here / "data" / "facebook_combined.txt",
                   Path("data/facebook_combined.txt")]
    for c in candidates:
        if c.is_file():
            return c
    return None


def require_facebook() -> Path:
    path = facebook_path()
    if path is None:
        pytest.skip(
            "facebook_combined.txt not found (set CASCADE_DUEL_FACEBOOK or "
            "run scripts/fetch_facebook.py in an environment with network "
            "access); this criterion needs the real dataset")
    return path
