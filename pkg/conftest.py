import pytest
from click.testing import CliRunner

from sidcodes import create_cli
from sidcodes.config import Config
from sidcodes.graph import build_product_graph
from sidcodes.models import Topology


class TestingConfig(Config):
    THREADS = 2
    MAX_NODES = 10**7
    MAX_SECONDS = 120


@pytest.fixture
def cli():
    return create_cli(TestingConfig)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def path_graph():
    def make(m, n):
        return build_product_graph(m, n, Topology.PATH)
    return make


@pytest.fixture
def cycle_graph():
    def make(m, n):
        return build_product_graph(m, n, Topology.CYCLE)
    return make
