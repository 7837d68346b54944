"""Shared fixtures: small named graphs and a default configuration."""
import pytest
from hypothesis import settings

from src.config import default_config
from src.graph import complete, cycle, empty, from_edges, path, star
from src.invariants import EvalCache

settings.register_profile("phi", deadline=None)
settings.load_profile("phi")


@pytest.fixture
def config():
    return default_config()


@pytest.fixture
def guards(config):
    return config.guards


@pytest.fixture
def cache():
    return EvalCache()


@pytest.fixture
def named_graphs():
    return {
        "N0": empty(0),
        "N1": empty(1),
        "N2": empty(2),
        "K2": complete(2),
        "P3": path(3),
        "K3": complete(3),
        "C4": cycle(4),
        "K4": complete(4),
        "star3": star(3),
        "paw": from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]),
    }
