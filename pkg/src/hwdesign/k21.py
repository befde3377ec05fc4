"""2-factorizations of K_21 into gamma triangle-factors and 10 - gamma heptagon-factors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .core import (
    DesignError,
    Factorization,
    TwoFactor,
    Vertex,
    develop_mod7,
    disjoint_union,
    merge_edge_disjoint,
)
from .tripartite import part_hamilton_factor, triangle_factor_from_triple, tripartite_factorization

GAMMAS = (0, 1, 3, 5, 7, 8, 9, 10)
OPEN_GAMMAS = (2, 4, 6)

# Base triangle-factors developed mod 7 for gamma = 8 and gamma = 9.
BASE_F0_GAMMA8 = (
    ((0, 0), (1, 0), (2, 1)),
    ((1, 1), (4, 1), (5, 2)),
    ((1, 2), (6, 2), (3, 0)),
    ((2, 0), (6, 1), (4, 2)),
    ((4, 0), (0, 1), (3, 2)),
    ((5, 0), (3, 1), (2, 2)),
    ((6, 0), (5, 1), (0, 2)),
)
BASE_F0_GAMMA9 = (
    ((0, 0), (1, 0), (6, 1)),
    ((0, 1), (1, 1), (4, 2)),
    ((0, 2), (2, 2), (3, 0)),
    ((2, 0), (4, 0), (4, 1)),
    ((3, 1), (5, 1), (3, 2)),
    ((5, 2), (6, 2), (5, 0)),
    ((6, 0), (2, 1), (1, 2)),
)


@dataclass(frozen=True)
class K21Plan:
    gamma: int
    groups: tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self):
        if self.gamma not in GAMMAS:
            if self.gamma in OPEN_GAMMAS:
                raise DesignError(
                    f"gamma={self.gamma} is an open case for K_21; see search.open21_search"
                )
            raise DesignError(f"gamma={self.gamma} not in {GAMMAS}")
        if len(set(self.groups)) != 3:
            raise DesignError(f"groups must be distinct: {self.groups}")

    @property
    def delta(self) -> int:
        return 10 - self.gamma


def base_factor(triangles) -> TwoFactor:
    return TwoFactor.from_cycles([Vertex(*p) for p in t] for t in triangles)


def within_part_factor(d0: int, d1: int, d2: int) -> TwoFactor:
    """E_00(d0) + E_11(d1) + E_22(d2): three 7-cycles, one per part."""
    parts = [part_hamilton_factor(i, d) for i, d in enumerate((d0, d1, d2))]
    return TwoFactor.from_cycles(c for p in parts for c in p.cycles)


def within_part_factorization() -> Factorization:
    """(K_7 + K_7 + K_7; C7^3) with the differences paired as (d, d, d)."""
    per_part = [
        Factorization.from_factors(7, [part_hamilton_factor(i, d) for d in (1, 2, 3)])
        for i in range(3)
    ]
    return disjoint_union(per_part)


def _gamma8() -> Factorization:
    factors = develop_mod7(base_factor(BASE_F0_GAMMA8))
    factors.append(triangle_factor_from_triple(0, 0, 0))
    factors.append(within_part_factor(2, 1, 1))
    factors.append(within_part_factor(3, 2, 3))
    return Factorization.from_factors(21, factors)


def _gamma9() -> Factorization:
    factors = develop_mod7(base_factor(BASE_F0_GAMMA9))
    factors.append(triangle_factor_from_triple(1, 2, 4))
    factors.append(triangle_factor_from_triple(4, 1, 2))
    factors.append(within_part_factor(3, 3, 3))
    return Factorization.from_factors(21, factors)


def _gamma10() -> Factorization:
    from .kirkman import kirkman_triple_system

    kts = kirkman_triple_system(21)
    factors = [
        TwoFactor.from_cycles([Vertex(p % 7, p // 7) for p in t] for t in cls)
        for cls in kts.classes
    ]
    return Factorization.from_factors(21, factors)


@lru_cache(maxsize=None)
def _local(gamma: int) -> Factorization:
    if gamma == 8:
        return _gamma8()
    if gamma == 9:
        return _gamma9()
    if gamma == 10:
        return _gamma10()
    return merge_edge_disjoint(tripartite_factorization(gamma), within_part_factorization())


def k21_factorization(plan: K21Plan | int, groups: Sequence[int] | None = None) -> Factorization:
    if not isinstance(plan, K21Plan):
        plan = K21Plan(plan, tuple(groups) if groups is not None else (0, 1, 2))
    local = _local(plan.gamma)
    if plan.groups == (0, 1, 2):
        return local
    return local.relabel_groups(plan.groups)
