"""Seeded, node-capped searches for ingredients that are cited rather than built.

Every search is a deterministic function of ``(seed, target, node_cap)``.
Wall-clock budgets are turned into node caps up front at a fixed rate, so a
rerun with the same arguments expands the same nodes and reports the same
trace hash.  Nothing is returned as ``found`` unless the verifier accepted it.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import verifier
from .core import C3, C7, Cycle, DesignError, Edge, Factorization, TwoFactor, Vertex, classify_edge, develop_mod7

log = logging.getLogger(__name__)

# Fixed conversion from seconds to nodes; keeps budgets machine independent.
NODES_PER_SECOND = 50_000

FOUND, INCONCLUSIVE = "found", "inconclusive"

_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    node_cap: int | None = None
    budget_seconds: float | None = None

    def cap(self) -> int:
        if self.node_cap is not None:
            return int(self.node_cap)
        if self.budget_seconds is not None:
            return max(1, int(self.budget_seconds * NODES_PER_SECOND))
        return 10 * NODES_PER_SECOND


@dataclass
class SearchResult:
    target: str
    outcome: str
    value: Any
    seed: int
    node_cap: int
    nodes_expanded: int
    trace_hash: str
    notes: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.outcome == FOUND

    def sidecar(self) -> dict:
        return {
            "target": self.target,
            "seed": self.seed,
            "node_cap": self.node_cap,
            "nodes_expanded": self.nodes_expanded,
            "outcome": self.outcome,
            "trace_hash": self.trace_hash,
            **self.notes,
        }

    def sidecar_json(self) -> str:
        return json.dumps(self.sidecar(), indent=1, sort_keys=True) + "\n"


class _Exhausted(Exception):
    pass


class _Budget:
    """Node counter with a running FNV-1a trace hash of every expansion."""

    def __init__(self, cap: int):
        self.cap = cap
        self.nodes = 0
        self.h = 0xCBF29CE484222325

    def tick(self, token: int) -> None:
        if self.nodes >= self.cap:
            raise _Exhausted
        self.nodes += 1
        self.h = ((self.h ^ (token & _MASK64)) * _FNV_PRIME) & _MASK64

    @property
    def trace(self) -> str:
        return f"{self.h:016x}"


def _result(target, cfg, budget, value, notes=None) -> SearchResult:
    return SearchResult(
        target=target,
        outcome=FOUND if value is not None else INCONCLUSIVE,
        value=value,
        seed=cfg.seed,
        node_cap=budget.cap,
        nodes_expanded=budget.nodes,
        trace_hash=budget.trace,
        notes=notes or {},
    )


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# cyclic starter for (K_{7,7,7}; C7^7)

_LOCAL = [Vertex(j, i) for i in range(3) for j in range(7)]


def starter_c7_search(cfg: SearchConfig) -> SearchResult:
    """Find a C7-factor of K_{7,7,7} with one edge in each cross difference class.

    Cycles are grown one vertex at a time; an extension whose edge repeats a
    used class is never made.
    """
    rng = random.Random(cfg.seed)
    budget = _Budget(cfg.cap())
    used_v: set[Vertex] = set()
    used_c: set = set()
    cycles: list[list[Vertex]] = []
    order = {v: rng.random() for v in _LOCAL}

    def extend(path: list[Vertex]) -> bool:
        last = path[-1]
        if len(path) == 7:
            close = classify_edge_cross(last, path[0])
            if close is None or close in used_c:
                return False
            used_c.add(close)
            cycles.append(list(path))
            if start_next():
                return True
            cycles.pop()
            used_c.discard(close)
            return False
        cands = [w for w in _LOCAL if w not in used_v and w.group != last.group]
        cands.sort(key=order.__getitem__)
        for w in cands:
            c = classify_edge_cross(last, w)
            if c in used_c:
                continue
            budget.tick(w.residue + 7 * w.group + 32 * len(path))
            used_v.add(w)
            used_c.add(c)
            path.append(w)
            if extend(path):
                return True
            path.pop()
            used_c.discard(c)
            used_v.discard(w)
        return False

    def start_next() -> bool:
        free = [v for v in _LOCAL if v not in used_v]
        if not free:
            return True
        v0 = min(free)
        used_v.add(v0)
        if extend([v0]):
            return True
        used_v.discard(v0)
        return False

    starter = None
    try:
        if start_next():
            candidate = TwoFactor.from_cycles(cycles)
            dev = Factorization.from_factors(21, develop_mod7(candidate))
            if verifier.verify_tripartite(dev, expect_r=0, expect_s=7).accepted:
                starter = candidate
    except _Exhausted:
        pass
    return _result("starter_c7", cfg, budget, starter)


def classify_edge_cross(a: Vertex, b: Vertex):
    if a.group == b.group:
        return None
    return classify_edge(Edge.of(a, b))


# ---------------------------------------------------------------------------
# resolvable Steiner triple systems


def resolvable_sts_search(v: int, cfg: SearchConfig, cyclic: bool | None = None) -> SearchResult:
    """Search for a Kirkman triple system of order v.

    The plain mode builds parallel classes one at a time with the first class
    fixed to {0,1,2},{3,4,5},...  The cyclic mode only looks at systems on
    Z_(v/3) x Z_3 that are invariant under the residue shift (see
    ``_cyclic_kts``).  By default the cyclic tree is searched first and, if it
    holds no solution, the plain search gets the rest of the node budget.
    """
    from .kirkman import KirkmanSystem

    if v % 6 != 3 or v < 3:
        raise DesignError(f"KTS order must be 3 mod 6, got {v}")
    budget = _Budget(cfg.cap())
    rng = random.Random(cfg.seed)
    if v == 3:
        return _result(f"resolvable_sts({v})", cfg, budget, KirkmanSystem.from_classes(3, [[(0, 1, 2)]]))
    modes = ["cyclic", "class-by-class"] if cyclic is None else ["cyclic" if cyclic else "class-by-class"]
    classes = None
    mode = modes[0]
    try:
        for mode in modes:
            run = _cyclic_kts if mode == "cyclic" else _plain_kts
            classes = run(v, rng, budget)
            if classes is not None:
                break
    except _Exhausted:
        classes = None
    kts = None
    if classes is not None:
        cand = KirkmanSystem.from_classes(v, classes)
        if verifier.verify_kts(cand).accepted:
            kts = cand
    return _result(f"resolvable_sts({v})", cfg, budget, kts, {"mode": mode})


def _plain_kts(v: int, rng: random.Random, budget: _Budget):
    full = (1 << v) - 1
    avail = [full & ~(1 << p) for p in range(v)]
    first = [tuple(range(k, k + 3)) for k in range(0, v, 3)]
    for a, b, c in first:
        _use(avail, a, b, c)
    classes: list[list[tuple[int, int, int]]] = [first]
    n_classes = (v - 1) // 2

    def fill(uncovered: int, current: list[tuple[int, int, int]]) -> bool:
        if not uncovered:
            classes.append(current)
            if len(classes) == n_classes or fill(full, []):
                return True
            classes.pop()
            return False
        p = (uncovered & -uncovered).bit_length() - 1
        rest = uncovered & ~(1 << p)
        qs = list(_bits(avail[p] & rest))
        rng.shuffle(qs)
        for q in qs:
            for r in _bits(avail[p] & avail[q] & rest & ~((1 << (q + 1)) - 1)):
                budget.tick(p * v * v + q * v + r)
                left = rest & ~(1 << q) & ~(1 << r)
                _use(avail, p, q, r)
                if _coverable(avail, left):
                    current.append((p, q, r))
                    if fill(left, current):
                        return True
                    current.pop()
                _free(avail, p, q, r)
        return False

    return classes if fill(full, []) else None


def _use(avail, a, b, c):
    avail[a] &= ~((1 << b) | (1 << c))
    avail[b] &= ~((1 << a) | (1 << c))
    avail[c] &= ~((1 << a) | (1 << b))


def _free(avail, a, b, c):
    avail[a] |= (1 << b) | (1 << c)
    avail[b] |= (1 << a) | (1 << c)
    avail[c] |= (1 << a) | (1 << b)


def _coverable(avail, uncovered: int) -> bool:
    for x in _bits(uncovered):
        m = avail[x] & uncovered
        if m & (m - 1) == 0:
            return False
    return True


def _cyclic_kts(v: int, rng: random.Random, budget: _Budget):
    """KTS on Z_k x Z_3 (k = v/3) invariant under adding 1 to every residue.

    Such a system is one base class developed mod k plus (k-1)/2 classes that
    are fixed by the shift, each of the form {(l,0), (l+a,1), (l+a+b,2)}.
    The base class has to put its pairs in distinct difference orbits and leave,
    for every group pair, exactly (k-1)/2 cross differences for the fixed
    classes.
    """
    k = v // 3
    n_fixed = (k - 1) // 2
    points = [(l, g) for g in range(3) for l in range(k)]

    def orbit(p, q):
        (a, g), (b, h) = p, q
        if g == h:
            d = (b - a) % k
            return (g, g, min(d, k - d))
        if h == (g + 1) % 3:
            return (g, h, (b - a) % k)
        return (h, g, (a - b) % k)

    used: set = set()
    covered: set = set()
    base: list = []
    cross_used = [0, 0, 0]
    cross_max = (k + 1) // 2

    def leftovers():
        return [
            sorted(d for d in range(k) if (g, (g + 1) % 3, d) not in used)
            for g in range(3)
        ]

    def match_fixed(left):
        # choose n_fixed triples (a from left[0], b from left[1], c from left[2]) summing to 0
        if not left[0]:
            return []
        a = left[0][0]
        for b in left[1]:
            c = (-a - b) % k
            if c in left[2]:
                budget.tick(a * k * k + b * k + c + 7)
                rest = [left[0][1:], [x for x in left[1] if x != b], [x for x in left[2] if x != c]]
                sub = match_fixed(rest)
                if sub is not None:
                    return [(a, b, c)] + sub
        return None

    def place():
        free = [p for p in points if p not in covered]
        if not free:
            left = leftovers()
            if any(len(x) != n_fixed for x in left):
                return None
            return match_fixed(left)
        p = min(free, key=lambda x: (x[1], x[0]))
        others = [q for q in free if q != p]
        rng.shuffle(others)
        for i, q in enumerate(others):
            o1 = orbit(p, q)
            if o1 in used:
                continue
            for r in others[i + 1 :]:
                o2, o3 = orbit(p, r), orbit(q, r)
                if len({o1, o2, o3}) < 3 or o2 in used or o3 in used:
                    continue
                trio = (o1, o2, o3)
                for o in trio:
                    if o[0] != o[1]:
                        cross_used[o[0]] += 1
                if max(cross_used) <= cross_max:
                    budget.tick(((p[1] * k + p[0]) * v + q[1] * k + q[0]) * v + r[1] * k + r[0])
                    used.update(trio)
                    covered.update((p, q, r))
                    base.append((p, q, r))
                    fixed = place()
                    if fixed is not None:
                        return fixed
                    base.pop()
                    covered.difference_update((p, q, r))
                    used.difference_update(trio)
                for o in trio:
                    if o[0] != o[1]:
                        cross_used[o[0]] -= 1
        return None

    fixed = place()
    if fixed is None:
        return None
    index = {p: g * k + l for l, g in points for p in [(l, g)]}
    classes = []
    for s in range(k):
        classes.append([tuple(index[((l + s) % k, g)] for l, g in t) for t in base])
    for a, b, _ in fixed:
        classes.append([(index[(l, 0)], index[((l + a) % k, 1)], index[((l + a + b) % k, 2)]) for l in range(k)])
    return classes


# ---------------------------------------------------------------------------
# generic factor-at-a-time search


def _adjacency(vertices: Sequence[Vertex], edges) -> list[int]:
    index = {v: k for k, v in enumerate(vertices)}
    adj = [0] * len(vertices)
    for a, b in edges:
        i, j = index[a], index[b]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return adj


class _FactorSearch:
    """Backtracking over factors in a fixed kind order, with restarts.

    Each restart reshuffles the candidate order from the seeded generator and
    is allowed ``restart_nodes`` expansions before the search starts over.
    """

    def __init__(self, vertices, edges, kinds, rng, budget, restart_nodes=20_000):
        self.vertices = list(vertices)
        self.n = len(self.vertices)
        self.base_adj = _adjacency(self.vertices, edges)
        self.kinds = list(kinds)
        self.rng = rng
        self.budget = budget
        self.restart_nodes = restart_nodes

    def run(self):
        self.restarts = 0
        self.deepest = 0
        while True:
            self.adj = list(self.base_adj)
            self.factors: list[list[list[int]]] = []
            self.perm = list(range(self.n))
            self.rng.shuffle(self.perm)
            self.rank = {v: k for k, v in enumerate(self.perm)}
            self.restart_at = self.budget.nodes + self.restart_nodes
            try:
                if self._factor(0, (1 << self.n) - 1, []):
                    return self._as_factors()
            except _Restart:
                pass
            self.restarts += 1

    def _tick(self, token):
        self.budget.tick(token)
        if self.budget.nodes >= self.restart_at:
            raise _Restart

    def _first(self, uncovered: int) -> int:
        return min(_bits(uncovered), key=self.rank.__getitem__)

    def _order(self, mask: int) -> list[int]:
        return sorted(_bits(mask), key=self.rank.__getitem__)

    def _factor(self, k: int, uncovered: int, cycles: list[list[int]]) -> bool:
        if k == len(self.kinds):
            return True
        if not uncovered:
            self.factors.append([list(c) for c in cycles])
            self.deepest = max(self.deepest, len(self.factors))
            if self._factor(k + 1, (1 << self.n) - 1, []):
                return True
            self.factors.pop()
            return False
        length = 3 if self.kinds[k] == C3 else 7
        p = self._first(uncovered)
        return self._grow(k, uncovered & ~(1 << p), cycles, [p], length)

    def _grow(self, k, uncovered, cycles, path, length) -> bool:
        last = path[-1]
        if len(path) == length:
            if not (self.adj[last] >> path[0]) & 1:
                return False
            cyc_edges = [(path[t - 1], path[t]) for t in range(length)]
            for a, b in cyc_edges:
                self.adj[a] &= ~(1 << b)
                self.adj[b] &= ~(1 << a)
            ok = False
            if self._viable(k, uncovered, length):
                cycles.append(path)
                ok = self._factor(k, uncovered, cycles)
                if not ok:
                    cycles.pop()
            if not ok:
                for a, b in cyc_edges:
                    self.adj[a] |= 1 << b
                    self.adj[b] |= 1 << a
            return ok
        for w in self._order(self.adj[last] & uncovered):
            self._tick(w + 64 * last + 4096 * k)
            path.append(w)
            if self._grow(k, uncovered & ~(1 << w), cycles, path, length):
                return True
            path.pop()
        return False

    def _viable(self, k, uncovered, length) -> bool:
        # every uncovered vertex still needs two unused edges to uncovered vertices
        for x in _bits(uncovered):
            m = self.adj[x] & uncovered
            if m & (m - 1) == 0:
                return False
        return True

    def _as_factors(self) -> list[TwoFactor]:
        return [
            TwoFactor.from_cycles(Cycle.of(self.vertices[i] for i in c) for c in f)
            for f in self.factors
        ]


class _Restart(Exception):
    pass


def _factor_search(target, cfg, vertices, edges, kinds, check: Callable[[Factorization], bool], n: int, restart_nodes: int):
    rng = random.Random(cfg.seed)
    budget = _Budget(cfg.cap())
    engine = _FactorSearch(vertices, edges, kinds, rng, budget, restart_nodes)
    value = None
    try:
        cand = Factorization.from_factors(n, engine.run())
        if check(cand):
            value = cand
        else:
            log.error("%s: search produced a certificate the verifier rejected", target)
    except _Exhausted:
        pass
    notes = {"restarts": engine.restarts, "deepest_factor": engine.deepest}
    return _result(target, cfg, budget, value, notes)


def _k21_setup():
    vs = [Vertex(j, i) for i in range(3) for j in range(7)]
    edges = [Edge.of(a, b) for x, a in enumerate(vs) for b in vs[x + 1 :]]
    return vs, edges


def open21_search(r: int, cfg: SearchConfig, restart_nodes: int = 20_000) -> SearchResult:
    """Hunt for HW(21; r, 10-r; 3, 7) with r in {2, 4, 6}."""
    if r not in (2, 4, 6):
        raise DesignError(f"r={r} is not an open case; use k21.k21_factorization")
    vs, edges = _k21_setup()
    kinds = [C3] * r + [C7] * (10 - r)
    return _factor_search(
        f"open21({r})",
        cfg,
        vs,
        edges,
        kinds,
        lambda f: verifier.verify(f, 21, r, 10 - r).accepted,
        21,
        restart_nodes,
    )


def tripartite_even_probe(alpha: int, cfg: SearchConfig, restart_nodes: int = 20_000) -> SearchResult:
    """Probe (K_{7,7,7}; C3^alpha, C7^(7-alpha)) for alpha in {2, 4, 6}.

    A success is reported for manual review only; nothing consumes it.
    """
    if alpha not in (2, 4, 6):
        raise DesignError(f"alpha={alpha} is not an even probe target (0 is starter_c7_search)")
    vs, _ = _k21_setup()
    edges = [Edge.of(a, b) for x, a in enumerate(vs) for b in vs[x + 1 :] if a.group != b.group]
    kinds = [C3] * alpha + [C7] * (7 - alpha)
    return _factor_search(
        f"tripartite_even({alpha})",
        cfg,
        vs,
        edges,
        kinds,
        lambda f: verifier.verify_tripartite(f, alpha, 7 - alpha).accepted,
        21,
        restart_nodes,
    )


def tripartite_c7_fallback(cfg: SearchConfig, restart_nodes: int = 50_000) -> SearchResult:
    """Non-cyclic search for (K_{7,7,7}; C7^7), used if no cyclic starter turns up."""
    vs, _ = _k21_setup()
    edges = [Edge.of(a, b) for x, a in enumerate(vs) for b in vs[x + 1 :] if a.group != b.group]
    return _factor_search(
        "tripartite_c7",
        cfg,
        vs,
        edges,
        [C7] * 7,
        lambda f: verifier.verify_tripartite(f, 0, 7).accepted,
        21,
        restart_nodes,
    )
