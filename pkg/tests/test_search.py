import json

import pytest

from hwdesign import assets, verifier
from hwdesign.core import C7, DesignError, Edge, Vertex
from hwdesign.search import (
    NODES_PER_SECOND,
    SearchConfig,
    _factor_search,
    open21_search,
    resolvable_sts_search,
    starter_c7_search,
    tripartite_even_probe,
)
from hwdesign.tripartite import c7_uniform_tripartite, starter_to_json


def test_budget_conversion():
    assert SearchConfig(budget_seconds=2).cap() == 2 * NODES_PER_SECOND
    assert SearchConfig(node_cap=7, budget_seconds=100).cap() == 7
    assert SearchConfig().cap() == 10 * NODES_PER_SECOND


def test_determinism_same_seed_same_trace():
    a = open21_search(4, SearchConfig(seed=5, node_cap=3000))
    b = open21_search(4, SearchConfig(seed=5, node_cap=3000))
    assert a.sidecar() == b.sidecar()
    assert a.nodes_expanded == 3000 and a.outcome == "inconclusive"
    c = open21_search(4, SearchConfig(seed=6, node_cap=3000))
    assert c.trace_hash != a.trace_hash


def test_node_count_never_exceeds_cap():
    for cap in (1, 10, 500):
        res = tripartite_even_probe(2, SearchConfig(seed=0, node_cap=cap))
        assert res.nodes_expanded <= cap and not res.found


def test_guards():
    with pytest.raises(DesignError):
        open21_search(3, SearchConfig())
    with pytest.raises(DesignError):
        tripartite_even_probe(0, SearchConfig())


def test_engine_solves_k7():
    vs = [Vertex(j, 0) for j in range(7)]
    edges = [Edge.of(a, b) for x, a in enumerate(vs) for b in vs[x + 1 :]]
    res = _factor_search("k7", SearchConfig(seed=1, node_cap=100_000), vs, edges, [C7] * 3, lambda f: True, 7, 1000)
    assert res.found
    pts = {(j, 0) for j in range(7)}
    host = {(min(a, b), max(a, b)) for a in pts for b in pts if a != b}
    assert verifier.verify_decomposition(res.value, pts, host, 0, 3).accepted


def test_search_never_returns_rejected_certificate():
    vs = [Vertex(j, 0) for j in range(7)]
    edges = [Edge.of(a, b) for x, a in enumerate(vs) for b in vs[x + 1 :]]
    res = _factor_search("k7", SearchConfig(seed=1, node_cap=100_000), vs, edges, [C7] * 3, lambda f: False, 7, 1000)
    assert not res.found and res.value is None


def test_starter_search_reproduces_bundled_asset():
    res = starter_c7_search(SearchConfig(seed=2, node_cap=5_000_000))
    assert res.found
    assert starter_to_json(res.value) == (assets.asset_dir() / "starter_c7.json").read_text()
    assert verifier.verify_tripartite(c7_uniform_tripartite(res.value), 0, 7).accepted


@pytest.mark.parametrize("v", [9, 21])
def test_kts_search_reproduces_bundled_asset(v):
    res = resolvable_sts_search(v, SearchConfig(seed=1, node_cap=5_000_000))
    assert res.found and verifier.verify_kts(res.value).accepted
    assert res.value.to_json() == (assets.asset_dir() / f"kts_{v}.json").read_text()


def test_cyclic_kts15_exhausts():
    res = resolvable_sts_search(15, SearchConfig(seed=1, node_cap=5_000_000), cyclic=True)
    assert not res.found and res.nodes_expanded < 5_000_000


def test_sidecar_fields():
    res = open21_search(2, SearchConfig(seed=0, node_cap=100))
    side = json.loads(res.sidecar_json())
    assert {"target", "seed", "node_cap", "nodes_expanded", "outcome", "trace_hash", "restarts"} <= set(side)
