"""Independent oracles and the certificate mutation harness used by the tests."""

import copy
import random
from itertools import combinations, product


def shift_raw(p, k):
    return ((p[0] + k) % 7, p[1])


def raw_edge(a, b):
    a, b = tuple(a), tuple(b)
    return (a, b) if a <= b else (b, a)


def orbit_of(edge):
    """Orbit of a raw edge under the residue shift, by brute force."""
    a, b = edge
    return frozenset(raw_edge(shift_raw(a, k), shift_raw(b, k)) for k in range(7))


def cycle_edges_raw(cycle):
    return [raw_edge(cycle[i - 1], cycle[i]) for i in range(len(cycle))]


def cert_edges(cert):
    return [e for f in cert["factors"] for c in f["cycles"] for e in cycle_edges_raw(c)]


def all_pairs(points):
    return {raw_edge(a, b) for a, b in combinations(points, 2)}


def kts_pair_counts(v, classes):
    counts = {p: 0 for p in combinations(range(v), 2)}
    for cls in classes:
        for t in cls:
            for a, b in combinations(sorted(t), 2):
                counts[(a, b)] += 1
    return counts


def part_patterns_of_7():
    """Multiplicity patterns of proper 3-colourings of a 7-cycle."""
    out = set()
    for seq in product(range(3), repeat=7):
        if all(seq[i] != seq[(i + 1) % 7] for i in range(7)):
            out.add(tuple(sorted((seq.count(c) for c in range(3)), reverse=True)))
    return out


# ---------------------------------------------------------------------------
# mutations; each takes a canonical certificate dict and returns a new one


def _edges_of(f):
    return [list(e) for c in f["cycles"] for e in cycle_edges_raw(c)]


def delete_edge(cert, rng):
    out = copy.deepcopy(cert)
    k = rng.randrange(len(out["factors"]))
    edges = _edges_of(out["factors"][k])
    edges.pop(rng.randrange(len(edges)))
    out["factors"][k] = {"kind": out["factors"][k]["kind"], "edges": edges}
    return out


def swap_edges(cert, rng):
    out = copy.deepcopy(cert)
    i, j = rng.sample(range(len(out["factors"])), 2)
    ei, ej = _edges_of(out["factors"][i]), _edges_of(out["factors"][j])
    x, y = rng.randrange(len(ei)), rng.randrange(len(ej))
    ei[x], ej[y] = ej[y], ei[x]
    out["factors"][i] = {"kind": out["factors"][i]["kind"], "edges": ei}
    out["factors"][j] = {"kind": out["factors"][j]["kind"], "edges": ej}
    return out


def flip_kind(cert, rng):
    out = copy.deepcopy(cert)
    f = out["factors"][rng.randrange(len(out["factors"]))]
    f["kind"] = "C7" if f["kind"] == "C3" else "C3"
    return out


def relabel_vertex(cert, rng):
    out = copy.deepcopy(cert)
    f = out["factors"][rng.randrange(len(out["factors"]))]
    c = f["cycles"][rng.randrange(len(f["cycles"]))]
    pos = rng.randrange(len(c))
    groups = out["n"] // 7
    while True:
        new = [rng.randrange(7), rng.randrange(groups)]
        if new != list(c[pos]):
            break
    c[pos] = new
    return out


def duplicate_factor(cert, rng):
    out = copy.deepcopy(cert)
    i, j = rng.sample(range(len(out["factors"])), 2)
    out["factors"][j] = copy.deepcopy(out["factors"][i])
    return out


MUTATIONS = {
    "delete_edge": delete_edge,
    "swap_edges": swap_edges,
    "flip_kind": flip_kind,
    "relabel_vertex": relabel_vertex,
    "duplicate_factor": duplicate_factor,
}


def random_mutation(cert, rng: random.Random):
    name = rng.choice(sorted(MUTATIONS))
    return name, MUTATIONS[name](cert, rng)
