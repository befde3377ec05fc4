"""Kirkman triple systems and the blow-up of K_n into block factors.

For n = 42t + 21 the vertex groups V_0, ..., V_{6t+2} (seven vertices each)
are the points of a KTS(6t+3).  Each parallel class becomes a K_{7,7,7}-factor
of K_n; one designated class also absorbs the K_7 edges inside every group and
becomes the K_21-factor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import assets, verifier
from .core import DesignError, Edge, Vertex

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class KirkmanSystem:
    v: int
    classes: tuple[tuple[Triple, ...], ...]

    @classmethod
    def from_classes(cls, v: int, classes: Iterable[Iterable[Sequence[int]]]) -> "KirkmanSystem":
        canon = [tuple(sorted(tuple(sorted(int(p) for p in t)) for t in c)) for c in classes]
        return cls(v, tuple(sorted(canon)))

    def to_dict(self) -> dict:
        return {"v": self.v, "classes": [[list(t) for t in c] for c in self.classes]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "KirkmanSystem":
        try:
            return cls.from_classes(int(data["v"]), data["classes"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DesignError(f"malformed KTS: {exc}") from exc


def kirkman_triple_system(v: int, seed: int = 0, node_cap: int | None = None) -> KirkmanSystem:
    if v < 3 or v % 6 != 3:
        raise DesignError(f"KTS order must be 3 mod 6, got {v}")
    if v == 3:
        return KirkmanSystem.from_classes(3, [[(0, 1, 2)]])
    if v in assets.KTS_ORDERS:
        return KirkmanSystem.from_dict(assets.kts_data(v))
    from .search import SearchConfig, resolvable_sts_search

    res = resolvable_sts_search(v, SearchConfig(seed=seed, node_cap=node_cap))
    if not res.found:
        raise DesignError(
            f"KTS({v}) search exhausted after {res.nodes_expanded} nodes (seed={seed}); "
            "raise the node cap or try another seed"
        )
    return res.value


@dataclass(frozen=True)
class BlockDecomposition:
    """K_{7,7,7}-factors and the K_21-factor of K_n, as triples of group indices."""

    n: int
    tripartite_block_factors: tuple[tuple[Triple, ...], ...]
    k21_blocks: tuple[Triple, ...]

    @property
    def t(self) -> int:
        return (self.n - 21) // 42


def blow_up(kts: KirkmanSystem, k21_class: int = 0) -> BlockDecomposition:
    report = verifier.verify_kts(kts)
    if not report.accepted:
        raise DesignError(f"not a Kirkman triple system:\n{report.summary()}")
    classes = list(kts.classes)
    k21 = classes.pop(k21_class)
    return BlockDecomposition(7 * kts.v, tuple(classes), k21)


def group_edges(g: int) -> set[Edge]:
    return {Edge.of(Vertex(a, g), Vertex(b, g)) for a, b in combinations(range(7), 2)}


def tripartite_edges(groups: Triple) -> set[Edge]:
    out = set()
    for g, h in combinations(groups, 2):
        out |= {Edge.of(Vertex(a, g), Vertex(b, h)) for a in range(7) for b in range(7)}
    return out


def block_edge_sets(decomp: BlockDecomposition) -> list[set[Edge]]:
    """Edge set of every block, K_{7,7,7} blocks first, then the K_21 blocks."""
    out = [tripartite_edges(b) for f in decomp.tripartite_block_factors for b in f]
    for b in decomp.k21_blocks:
        out.append(tripartite_edges(b) | group_edges(b[0]) | group_edges(b[1]) | group_edges(b[2]))
    return out
