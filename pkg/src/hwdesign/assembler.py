"""HW(n; r, s; 3, 7) for n = 42t + 21.

K_n is split into 3t K_{7,7,7}-factors and one K_21-factor (see
``kirkman.blow_up``).  Block-factor i is cut into alpha_i triangle-factors and
7 - alpha_i heptagon-factors, the K_21-factor into gamma and 10 - gamma, and
``assignment_plan`` picks the numbers so that gamma + sum(alpha_i) = r.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from . import verifier
from .core import DesignError, Factorization, disjoint_union, merge_all
from .k21 import GAMMAS, OPEN_GAMMAS, k21_factorization
from .kirkman import blow_up, kirkman_triple_system
from .tripartite import ALPHAS, tripartite_factorization

log = logging.getLogger(__name__)


class Infeasible(DesignError):
    pass


class OpenCase(Infeasible):
    """(21, r) with r in {2, 4, 6}: not known to exist or not to exist."""


@dataclass(frozen=True)
class AssignmentPlan:
    n: int
    r: int
    gamma: int
    alphas: tuple[int, ...]
    repaired: bool = False

    def __post_init__(self):
        if self.gamma not in GAMMAS:
            raise DesignError(f"gamma={self.gamma} not admissible")
        bad = [a for a in self.alphas if a not in ALPHAS]
        if bad:
            raise DesignError(f"alpha={bad[0]} not admissible")
        if len(self.alphas) != 3 * self.t:
            raise DesignError(f"need {3 * self.t} alphas, got {len(self.alphas)}")
        total = self.gamma + sum(self.alphas)
        if total != self.r:
            raise DesignError(f"checksum: gamma + sum(alphas) = {total} != r = {self.r}")

    @property
    def t(self) -> int:
        return (self.n - 21) // 42

    @property
    def a(self) -> int:
        return self.r // 7

    @property
    def b(self) -> int:
        return self.r % 7

    @property
    def s(self) -> int:
        return (self.n - 1) // 2 - self.r


def check_n(n: int) -> int:
    """Return t for n = 42t + 21, or raise Infeasible."""
    if n < 21 or n % 42 != 21:
        raise Infeasible(f"n={n} is not 21 mod 42; no HW(n; r, s; 3, 7) with rs != 0 exists")
    return (n - 21) // 42


def feasible_r(n: int) -> set[int]:
    if n < 21 or n % 42 != 21:
        return set()
    if n == 21:
        return set(GAMMAS)
    return set(range((n - 1) // 2 + 1))


def _spread(t: int, head: list[int], sevens: int) -> tuple[int, ...]:
    alphas = head + [7] * sevens
    return tuple(alphas + [0] * (3 * t - len(alphas)))


def published_case_row(t: int, r: int) -> tuple[int, tuple[int, ...]] | None:
    """The case table exactly as published, without repairs; None where it has no row."""
    a, b = divmod(r, 7)
    T = 3 * t
    if b in (0, 1, 3, 5):
        if a <= T:
            return {0: 0, 1: 1, 3: 3, 5: 5}[b], _spread(t, [], a)
        if b == 0:
            return 7, _spread(t, [], T)
        if b == 1:
            return 8, _spread(t, [], T)
        return None
    if b == 2:
        if a < T:
            return 1, _spread(t, [1], a)
        if a == T:
            return 9, _spread(t, [1], T - 1)
        return 8, _spread(t, [], T)
    if b == 4:
        if a < T:
            return 3, _spread(t, [1], a)
        return 8, _spread(t, [3], T - 1)
    if a < T:
        return 1, _spread(t, [5], a)
    return 8, _spread(t, [5], T - 1)


def assignment_plan(n: int, r: int) -> AssignmentPlan:
    t = check_n(n)
    if n == 21:
        if r in OPEN_GAMMAS:
            raise OpenCase(f"HW(21;{r},{10 - r};3,7) is open (r in {{2,4,6}})")
        if r not in GAMMAS:
            raise Infeasible(f"r={r} out of range for n=21")
        return AssignmentPlan(n, r, r, ())
    top = (n - 1) // 2
    if not 0 <= r <= top:
        raise Infeasible(f"r={r} out of range 0..{top}")
    T = 3 * t
    a, b = divmod(r, 7)
    if r == top:  # s = 0: no row in the published table
        return AssignmentPlan(n, r, 10, _spread(t, [], T))
    if b == 2 and a == T:
        return AssignmentPlan(n, r, 8, _spread(t, [1], T - 1), repaired=True)
    if b == 2 and a == T + 1:
        return AssignmentPlan(n, r, 9, _spread(t, [], T), repaired=True)
    gamma, alphas = published_case_row(t, r)
    return AssignmentPlan(n, r, gamma, alphas)


def assemble_hw(n: int, r: int, verify: bool = True) -> Factorization:
    plan = assignment_plan(n, r)
    if plan.t == 0:
        result = k21_factorization(plan.gamma).canonical()
    else:
        decomp = blow_up(kirkman_triple_system(6 * plan.t + 3))
        parts = []
        for blocks, alpha in zip(decomp.tripartite_block_factors, plan.alphas):
            parts.append(disjoint_union([tripartite_factorization(alpha, g) for g in blocks]))
        parts.append(disjoint_union([k21_factorization(plan.gamma, g) for g in decomp.k21_blocks]))
        result = merge_all(parts).canonical()
    if verify:
        report = verifier.verify(result, n, r, plan.s)
        if not report.accepted:
            raise DesignError(f"assembled HW({n};{r},{plan.s};3,7) failed verification:\n{report.summary()}")
    log.debug("assembled HW(%d;%d,%d;3,7) gamma=%d alphas=%s", n, r, plan.s, plan.gamma, plan.alphas)
    return result
