import math

import networkx as nx
import pytest

from foam_invariants.capacity import independence_number, strong_product
from foam_invariants.theta import lovasz_theta
from gauss_diagram.classes import ResourceLimitError


class TestLovaszTheta:
    def test_pentagon(self):
        assert lovasz_theta(nx.cycle_graph(5)) == pytest.approx(math.sqrt(5), abs=1e-6)

    @pytest.mark.parametrize("n", [1, 3, 6])
    def test_edgeless(self, n):
        assert lovasz_theta(nx.empty_graph(n)) == pytest.approx(n, abs=1e-6)

    @pytest.mark.parametrize("n", [2, 4, 7])
    def test_complete(self, n):
        assert lovasz_theta(nx.complete_graph(n)) == pytest.approx(1, abs=1e-6)

    def test_empty_graph(self):
        assert lovasz_theta(nx.Graph()) == 0.0

    def test_sandwiched(self):
        graph = nx.petersen_graph()
        assert independence_number(graph) - 1e-4 <= lovasz_theta(graph) <= 10

    @pytest.mark.slow
    def test_strong_product_of_pentagons(self):
        product = strong_product(nx.cycle_graph(5), nx.cycle_graph(5))
        assert lovasz_theta(product) == pytest.approx(5, abs=1e-3)

    def test_limits(self):
        with pytest.raises(ResourceLimitError):
            lovasz_theta(nx.empty_graph(33))
        with pytest.raises(ValueError):
            lovasz_theta(nx.cycle_graph(5), tol=1e-12)
