"""2-factorizations of K_{7,7,7} into triangle-factors and heptagon-factors.

Everything is built in local coordinates (parts 0, 1, 2) and relabeled onto
ambient groups last.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import assets
from .core import (
    MODULUS,
    C7,
    DesignError,
    DifferenceClass,
    Factorization,
    TwoFactor,
    Vertex,
    classify_edge,
    develop_mod7,
    expand_difference_class,
)

ALPHAS = (0, 1, 3, 5, 7)
PAIR_IDS = (16, 25, 34)


@dataclass(frozen=True)
class TripartiteBlock:
    groups: tuple[int, int, int]
    alpha: int

    def __post_init__(self):
        if len(set(self.groups)) != 3:
            raise DesignError(f"block groups must be distinct: {self.groups}")
        if self.alpha not in ALPHAS:
            raise DesignError(f"alpha={self.alpha} not in {ALPHAS}")

    @property
    def beta(self) -> int:
        return 7 - self.alpha

    def factorization(self) -> Factorization:
        return tripartite_factorization(self.alpha, self.groups)


def cross_classes(d0: int, d1: int, d2: int) -> list[DifferenceClass]:
    return [DifferenceClass(0, 1, d0 % 7), DifferenceClass(1, 2, d1 % 7), DifferenceClass(2, 0, d2 % 7)]


def triangle_factor_from_triple(d0: int, d1: int, d2: int) -> TwoFactor:
    """Triangles (l_0, (l+d0)_1, (l+d0+d1)_2) from E_01(d0), E_12(d1), E_20(d2)."""
    if (d0 + d1 + d2) % MODULUS:
        raise DesignError(f"differences ({d0},{d1},{d2}) do not sum to 0 mod 7")
    return TwoFactor.from_cycles(
        (Vertex(l, 0), Vertex((l + d0) % 7, 1), Vertex((l + d0 + d1) % 7, 2))
        for l in range(MODULUS)
    )


def part_hamilton_factor(part: int, d: int) -> TwoFactor:
    """The 7-cycle E_ii(d) on a single part."""
    if d % MODULUS == 0:
        raise DesignError("difference 0 gives no cycle")
    d %= MODULUS
    return TwoFactor.from_cycles([[Vertex(k * d % 7, part) for k in range(MODULUS)]])


def _pattern_factor(residues: Sequence[int], offsets: Sequence[int]) -> TwoFactor:
    return TwoFactor.from_cycles(
        [Vertex(j, (i + o) % 3) for j, o in zip(residues, offsets)] for i in range(3)
    )


# Residue order and group offsets of the explicit heptagon pairs.
_PAIRS = {
    16: ((0, 1, 2, 3, 4, 5, 6), (0, 1, 2, 0, 1, 0, 1), (0, 2, 1, 0, 2, 0, 2)),
    25: ((0, 2, 4, 6, 1, 3, 5), (0, 1, 2, 0, 1, 0, 1), (0, 2, 1, 0, 2, 0, 2)),
    34: ((0, 3, 6, 2, 5, 1, 4), (0, 1, 2, 0, 1, 0, 1), (0, 2, 1, 0, 2, 0, 2)),
}


def pair_classes(pair_id: int) -> list[DifferenceClass]:
    d = pair_id // 10
    return cross_classes(d, d, d) + cross_classes(7 - d, 7 - d, 7 - d)


@lru_cache(maxsize=None)
def heptagon_factor_pair(pair_id: int) -> tuple[TwoFactor, TwoFactor]:
    if pair_id not in _PAIRS:
        raise DesignError(f"pair id must be one of {PAIR_IDS}")
    residues, off1, off2 = _PAIRS[pair_id]
    f1 = _pattern_factor(residues, off1)
    f2 = _pattern_factor(residues, off2)
    e1, e2 = set(f1.edges()), set(f2.edges())
    want = set().union(*(expand_difference_class(c) for c in pair_classes(pair_id)))
    if e1 & e2 or e1 | e2 != want:
        raise DesignError(f"heptagon pair {pair_id} does not cover its classes")
    return f1, f2


def starter_classes(starter: TwoFactor) -> list[DifferenceClass]:
    """Class tags of a starter's edges; raises on the first collision."""
    seen: dict[DifferenceClass, object] = {}
    for e in starter.edges():
        c = classify_edge(e)
        if c.i == c.j:
            raise DesignError(f"starter edge {e} lies inside a part")
        if c in seen:
            raise DesignError(f"difference class ({c.i},{c.j},{c.d}) used twice")
        seen[c] = e
    return sorted(seen)


def c7_uniform_tripartite(starter: TwoFactor | None = None) -> Factorization:
    if starter is None:
        starter = assets.starter_c7()
    if starter.kind != C7 or len(starter.vertices()) != 21:
        raise DesignError("starter must be a spanning C7-factor of K_{7,7,7}")
    if len(starter_classes(starter)) != 21:
        raise DesignError("starter must hit all 21 cross classes")
    return Factorization.from_factors(21, develop_mod7(starter))


def _rotations(d0: int, d1: int, d2: int) -> list[tuple[int, int, int]]:
    # i -> i+1 moves E_01(x) to E_12(x) etc.
    return [(d0, d1, d2), (d2, d0, d1), (d1, d2, d0)]


# Triangle-factor triples (d01, d12, d20) and heptagon pairs for each alpha.
RECIPES: dict[int, tuple[list[tuple[int, int, int]], tuple[int, ...]]] = {
    1: ([(0, 0, 0)], (16, 25, 34)),
    3: (_rotations(0, 1, 6), (25, 34)),
    5: ([(0, 1, 6), (2, 0, 5), (5, 2, 0), (6, 6, 2), (1, 5, 1)], (34,)),
    7: (_rotations(1, 2, 4) + _rotations(3, 5, 6) + [(0, 0, 0)], ()),
}


@lru_cache(maxsize=None)
def _local_factorization(alpha: int) -> Factorization:
    if alpha == 0:
        return c7_uniform_tripartite()
    triples, pairs = RECIPES[alpha]
    factors = [triangle_factor_from_triple(*t) for t in triples]
    for p in pairs:
        factors.extend(heptagon_factor_pair(p))
    return Factorization.from_factors(21, factors)


def tripartite_factorization(alpha: int, groups: Sequence[int] = (0, 1, 2)) -> Factorization:
    if alpha not in ALPHAS:
        hint = " (even alpha is open; see search.tripartite_even_probe)" if alpha in (2, 4, 6) else ""
        raise DesignError(f"alpha={alpha} not in {ALPHAS}{hint}")
    local = _local_factorization(alpha)
    groups = tuple(groups)
    if groups == (0, 1, 2):
        return local
    if len(set(groups)) != 3:
        raise DesignError(f"block groups must be distinct: {groups}")
    return local.relabel_groups(groups)


def starter_to_json(starter: TwoFactor) -> str:
    from .certificate import two_factor_to_list

    return json.dumps(
        {
            "kind": starter.kind,
            "cycles": two_factor_to_list(starter),
            "classes": [[c.i, c.j, c.d] for c in starter_classes(starter)],
        },
        separators=(",", ":"),
    ) + "\n"
