import pytest

from approxpls.generators import (FAMILIES, GenerationError, bipartite_graph, generate, metric_graph,
                                  odd_girth_graph, ring)
from approxpls.graph import check_metric, is_bipartite, odd_girth, serialize_graph


def test_ring():
    g = ring(7)
    assert (g.n, g.m) == (7, 7)
    with pytest.raises(GenerationError):
        ring(2)


def test_metric():
    g = metric_graph(6, seed=4)
    assert g.is_complete() and check_metric(g) and g.W <= 10


def test_bipartite_reproducible():
    a, b = bipartite_graph(8, 0.5, seed=1), bipartite_graph(8, 0.5, seed=1)
    assert serialize_graph(a) == serialize_graph(b)
    assert is_bipartite(a)[0]


@pytest.mark.parametrize("kappa", [1, 2, 3])
def test_odd_girth_filter(kappa):
    g = odd_girth_graph(8, kappa, seed=kappa)
    assert odd_girth(g) >= 2 * kappa + 1


def test_generate_dispatch():
    for fam in FAMILIES:
        g = generate(fam, 6, seed=2, terminals=2 if fam == "metric" else 0)
        assert g.n == 6
    with pytest.raises(GenerationError):
        generate("nope", 4)
    with pytest.raises(GenerationError):
        metric_graph(3, terminals=4)
