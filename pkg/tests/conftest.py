"""
共通フィクスチャと slow マーカーの制御
"""
import random

import pytest

from src.graph_derham.generators import cycle_graph, lollipop_graph, theta_graph
from src.graph_derham.graph_core import build_graph, disjoint_union


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="網羅的な検証も実行する")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="--runslow を指定すると実行されます")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return random.Random(20240501)


@pytest.fixture
def lollipop():
    return lollipop_graph(3, 2)


@pytest.fixture
def theta():
    return theta_graph(1, 1, 1)


@pytest.fixture
def theta_with_pendants():
    """シータグラフの次数 2 の頂点 2 に葉を 2 枚付けたもの"""
    base = theta_graph(1, 1, 1)
    n = base.vertex_count
    return build_graph(n + 2, list(base.edges) + [(2, n), (2, n + 1)])


@pytest.fixture
def three_squares():
    c4 = cycle_graph(4)
    return disjoint_union(c4, c4, c4)
