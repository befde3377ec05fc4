"""Vertices, edges, cycles, 2-factors and the composition operators.

Vertices are pairs ``(residue, group)`` with the residue in Z_7, written
``j_i`` in text form.  Everything here is an immutable value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

MODULUS = 7


class DesignError(ValueError):
    """Raised when a construction input violates its preconditions."""


class Vertex(NamedTuple):
    residue: int
    group: int

    # Ordering is by (group, residue), not by field order.
    def key(self) -> tuple[int, int]:
        return (self[1], self[0])

    def __lt__(self, other):
        return (self[1], self[0]) < (other[1], other[0])

    def __le__(self, other):
        return (self[1], self[0]) <= (other[1], other[0])

    def __gt__(self, other):
        return (self[1], self[0]) > (other[1], other[0])

    def __ge__(self, other):
        return (self[1], self[0]) >= (other[1], other[0])

    def shift(self, k: int) -> "Vertex":
        return Vertex((self[0] + k) % MODULUS, self[1])

    def __str__(self) -> str:
        return f"{self[0]}_{self[1]}"


class Edge(NamedTuple):
    u: Vertex
    v: Vertex

    @classmethod
    def of(cls, a: Vertex, b: Vertex) -> "Edge":
        if a == b:
            raise DesignError(f"loop at {a}")
        return cls(a, b) if a < b else cls(b, a)

    def __str__(self) -> str:
        return f"{{{self.u},{self.v}}}"


def vertex_set(n_groups: int) -> frozenset[Vertex]:
    return frozenset(Vertex(j, i) for i in range(n_groups) for j in range(MODULUS))


# ---------------------------------------------------------------------------
# difference classes


@dataclass(frozen=True, order=True)
class DifferenceClass:
    """The edge orbit E_ij(d) = {{l_i, (l+d)_j} : l in Z_7}."""

    i: int
    j: int
    d: int

    def __post_init__(self):
        if self.i == self.j:
            if self.d not in (1, 2, 3):
                raise DesignError(f"within-part difference must be 1..3, got {self.d}")
        elif not 0 <= self.d < MODULUS:
            raise DesignError(f"cross difference must be in Z_7, got {self.d}")

    @classmethod
    def normalized(cls, i: int, j: int, d: int) -> "DifferenceClass":
        d %= MODULUS
        if i == j:
            d = min(d, MODULUS - d)
        return cls(i, j, d)

    def __str__(self) -> str:
        return f"E_{self.i}{self.j}({self.d})"


def expand_difference_class(c: DifferenceClass | tuple[int, int, int]) -> frozenset[Edge]:
    if not isinstance(c, DifferenceClass):
        c = DifferenceClass(*c)
    return frozenset(
        Edge.of(Vertex(l, c.i), Vertex((l + c.d) % MODULUS, c.j)) for l in range(MODULUS)
    )


def _local_pair(i: int, j: int) -> bool:
    return j == (i + 1) % 3


def classify_edge(e: Edge) -> DifferenceClass:
    """Difference class of an edge in local coordinates (groups 0, 1, 2).

    Cross classes are oriented 0->1, 1->2, 2->0.
    """
    (a, i), (b, j) = e
    if not (0 <= i < 3 and 0 <= j < 3):
        raise DesignError(f"edge {e} is not in local coordinates")
    if i == j:
        return DifferenceClass.normalized(i, i, b - a)
    if _local_pair(i, j):
        return DifferenceClass(i, j, (b - a) % MODULUS)
    return DifferenceClass(j, i, (a - b) % MODULUS)


def difference_catalog() -> list[DifferenceClass]:
    """All 30 difference classes of a 3-group block."""
    out = [DifferenceClass(i, i, d) for i in range(3) for d in (1, 2, 3)]
    out += [DifferenceClass(i, (i + 1) % 3, d) for i in range(3) for d in range(MODULUS)]
    return out


# ---------------------------------------------------------------------------
# cycles and 2-factors


def canonical_cycle(vertices: Sequence[Vertex]) -> tuple[Vertex, ...]:
    vs = tuple(vertices)
    if len(vs) < 3:
        raise DesignError(f"cycle too short: {vs}")
    if len(set(vs)) != len(vs):
        raise DesignError(f"repeated vertex in cycle {vs}")
    k = vs.index(min(vs))
    rot = vs[k:] + vs[:k]
    if rot[-1] < rot[1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


@dataclass(frozen=True, order=True)
class Cycle:
    vertices: tuple[Vertex, ...]

    @classmethod
    def of(cls, vertices: Iterable[Vertex]) -> "Cycle":
        return cls(canonical_cycle(tuple(Vertex(*v) for v in vertices)))

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [Edge.of(vs[k - 1], vs[k]) for k in range(len(vs))]

    def map(self, f) -> "Cycle":
        return Cycle.of(f(v) for v in self.vertices)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.vertices) + ")"


C3, C7, MIXED = "C3", "C7", "mixed"
_KIND_RANK = {C3: 0, C7: 1, MIXED: 2}


def kind_of(cycles: Iterable[Cycle]) -> str:
    lengths = {len(c) for c in cycles}
    if lengths == {3}:
        return C3
    if lengths == {7}:
        return C7
    return MIXED


@dataclass(frozen=True)
class TwoFactor:
    cycles: tuple[Cycle, ...]
    kind: str

    @classmethod
    def from_cycles(cls, cycles: Iterable[Cycle | Sequence[Vertex]]) -> "TwoFactor":
        cs = tuple(sorted(c if isinstance(c, Cycle) else Cycle.of(c) for c in cycles))
        seen: set[Vertex] = set()
        for c in cs:
            for v in c.vertices:
                if v in seen:
                    raise DesignError(f"vertex {v} lies on two cycles")
                seen.add(v)
        return cls(cs, kind_of(cs))

    def vertices(self) -> frozenset[Vertex]:
        return frozenset(v for c in self.cycles for v in c.vertices)

    def edges(self) -> list[Edge]:
        return [e for c in self.cycles for e in c.edges()]

    def map(self, f) -> "TwoFactor":
        return TwoFactor.from_cycles(c.map(f) for c in self.cycles)

    def shift(self, k: int) -> "TwoFactor":
        return self.map(lambda v: v.shift(k))

    def relabel_groups(self, groups: Sequence[int]) -> "TwoFactor":
        return self.map(lambda v: Vertex(v.residue, groups[v.group]))

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.cycles)

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.cycles)


@dataclass(frozen=True)
class Factorization:
    """An ordered list of 2-factors with declared C3 / C7 counts."""

    n: int
    factors: tuple[TwoFactor, ...]
    declared_r: int
    declared_s: int

    @classmethod
    def from_factors(cls, n: int, factors: Iterable[TwoFactor]) -> "Factorization":
        fs = tuple(factors)
        return cls(
            n,
            fs,
            sum(1 for f in fs if f.kind == C3),
            sum(1 for f in fs if f.kind == C7),
        )

    def vertices(self) -> frozenset[Vertex]:
        out: set[Vertex] = set()
        for f in self.factors:
            out |= f.vertices()
        return frozenset(out)

    def edges(self) -> list[Edge]:
        return [e for f in self.factors for e in f.edges()]

    def relabel_groups(self, groups: Sequence[int]) -> "Factorization":
        return Factorization(
            self.n,
            tuple(f.relabel_groups(groups) for f in self.factors),
            self.declared_r,
            self.declared_s,
        )

    def canonical(self) -> "Factorization":
        return Factorization(
            self.n,
            tuple(sorted(self.factors, key=TwoFactor.sort_key)),
            self.declared_r,
            self.declared_s,
        )


def develop_mod7(base: TwoFactor) -> list[TwoFactor]:
    """The seven translates base+0, ..., base+6; group indices stay fixed."""
    return [base if k == 0 else base.shift(k) for k in range(MODULUS)]


def disjoint_union(parts: Sequence[Factorization]) -> Factorization:
    if not parts:
        raise DesignError("disjoint_union needs at least one part")
    if len(parts) == 1:
        return parts[0]
    width = len(parts[0].factors)
    seen: set[Vertex] = set()
    for p in parts:
        if len(p.factors) != width:
            raise DesignError(f"factor counts differ: {width} vs {len(p.factors)}")
        vs = p.vertices()
        overlap = seen & vs
        if overlap:
            raise DesignError(f"vertex sets overlap at {min(overlap)}")
        seen |= vs
    factors = []
    for k in range(width):
        kinds = {p.factors[k].kind for p in parts}
        if len(kinds) != 1:
            raise DesignError(f"factor {k} kinds disagree: {sorted(kinds)}")
        factors.append(TwoFactor.from_cycles(c for p in parts for c in p.factors[k].cycles))
    return Factorization.from_factors(sum(p.n for p in parts), factors)


def merge_edge_disjoint(a: Factorization, b: Factorization) -> Factorization:
    if not b.factors:
        return a
    if not a.factors:
        return b
    if a.n != b.n or a.vertices() != b.vertices():
        raise DesignError("merge_edge_disjoint needs a common vertex set")
    used = set(a.edges())
    for e in b.edges():
        if e in used:
            raise DesignError(f"edge {e} occurs in both factorizations")
    return Factorization(
        a.n, a.factors + b.factors, a.declared_r + b.declared_r, a.declared_s + b.declared_s
    )


def merge_all(parts: Iterable[Factorization]) -> Factorization:
    out: Factorization | None = None
    for p in parts:
        out = p if out is None else merge_edge_disjoint(out, p)
    if out is None:
        raise DesignError("nothing to merge")
    return out
