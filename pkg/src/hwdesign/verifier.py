"""Independent certificate checks.

Nothing here imports the constructive modules.  A certificate is reduced to
plain integer pairs ``(residue, group)`` and every fact (host vertex set, host
edge set, degrees, components) is recomputed from scratch.

Besides the canonical ``"cycles"`` form, a factor may be given as
``"edges": [[u, v], ...]``; the mutation harness uses that to express a
factor with a deleted or foreign edge.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable

MAX_WITNESSES = 10

Point = tuple[int, int]


@dataclass(frozen=True)
class Violation:
    check: str
    message: str
    witness: Any = None

    def to_dict(self) -> dict:
        return {"check": self.check, "message": self.message, "witness": self.witness}


@dataclass
class VerificationReport:
    subject: str
    violations: list[Violation] = field(default_factory=list)
    violation_count: int = 0
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.violation_count == 0

    def __bool__(self) -> bool:
        return self.accepted

    def add(self, check: str, message: str, witness: Any = None) -> None:
        self.violation_count += 1
        if len(self.violations) < MAX_WITNESSES:
            self.violations.append(Violation(check, message, witness))

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "accepted": self.accepted,
            "violation_count": self.violation_count,
            "violations": [v.to_dict() for v in self.violations],
            "counts": self.counts,
        }

    def summary(self) -> str:
        head = f"{self.subject}: {'ACCEPTED' if self.accepted else 'REJECTED'}"
        if self.counts:
            head += " " + " ".join(f"{k}={v}" for k, v in self.counts.items())
        lines = [head]
        for v in self.violations:
            lines.append(f"  [{v.check}] {v.message} witness={v.witness}")
        if self.violation_count > len(self.violations):
            lines.append(f"  ... {self.violation_count - len(self.violations)} more")
        return "\n".join(lines)


class MalformedCertificate(ValueError):
    pass


# ---------------------------------------------------------------------------
# normalization


def _point(v: Any) -> Point:
    if isinstance(v, dict):
        return (int(v["residue"]), int(v["group"]))
    a, b = v
    return (int(a), int(b))


def _norm(v: Any) -> Point:
    # Accepts Vertex objects (tuples) as well as JSON lists.
    try:
        return _point(v)
    except (TypeError, ValueError, KeyError) as exc:
        raise MalformedCertificate(f"bad vertex {v!r}") from exc


def normalize(cert: Any) -> dict:
    """Reduce a Factorization or certificate dict to plain data."""
    if not isinstance(cert, dict):
        cert = {
            "n": cert.n,
            "r": cert.declared_r,
            "s": cert.declared_s,
            "factors": [
                {"kind": tf.kind, "cycles": [list(c.vertices) for c in tf.cycles]}
                for tf in cert.factors
            ],
        }
    try:
        out = {"n": int(cert["n"]), "r": int(cert["r"]), "s": int(cert["s"]), "factors": []}
        for fd in cert["factors"]:
            f = {"kind": str(fd["kind"])}
            if "edges" in fd:
                f["edges"] = [(_norm(a), _norm(b)) for a, b in fd["edges"]]
            else:
                f["cycles"] = [[_norm(v) for v in c] for c in fd["cycles"]]
            out["factors"].append(f)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCertificate(f"malformed certificate: {exc}") from exc
    return out


def _pair(a: Point, b: Point) -> tuple[Point, Point]:
    return (a, b) if a <= b else (b, a)


# ---------------------------------------------------------------------------
# hosts


def complete_host(n: int) -> tuple[set[Point], set[tuple[Point, Point]]]:
    """Vertex and edge set of K_n on Z_7 x Z_(n/7)."""
    pts = {(j, i) for i in range(n // 7) for j in range(7)}
    return pts, {_pair(a, b) for a, b in combinations(sorted(pts), 2)}


def tripartite_host(groups: Iterable[int] = (0, 1, 2)) -> tuple[set[Point], set[tuple[Point, Point]]]:
    """Vertex and edge set of the complete multipartite graph on whole groups."""
    gs = list(groups)
    pts = {(j, i) for i in gs for j in range(7)}
    edges = {_pair(a, b) for a, b in combinations(sorted(pts), 2) if a[1] != b[1]}
    return pts, edges


# ---------------------------------------------------------------------------
# factor analysis


def _factor_edges(f: dict, k: int, report: VerificationReport) -> list[tuple[Point, Point]]:
    if "edges" in f:
        out = []
        for a, b in f["edges"]:
            if a == b:
                report.add("structure", f"factor {k} has a loop", {"factor": k, "vertex": a})
                continue
            out.append(_pair(a, b))
        return out
    out = []
    for c in f["cycles"]:
        if len(c) < 3:
            report.add("structure", f"factor {k} has a cycle of length {len(c)}", {"factor": k, "cycle": c})
        dup = [v for v, m in Counter(c).items() if m > 1]
        if dup:
            report.add("structure", f"factor {k} cycle repeats a vertex", {"factor": k, "vertex": dup[0]})
        for idx in range(len(c)):
            a, b = c[idx - 1], c[idx]
            if a != b:
                out.append(_pair(a, b))
    return out


def _components(edges: list[tuple[Point, Point]]) -> list[int]:
    adj: dict[Point, list[Point]] = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen: set[Point] = set()
    sizes = []
    for start in sorted(adj):
        if start in seen:
            continue
        stack, size = [start], 0
        seen.add(start)
        while stack:
            x = stack.pop()
            size += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        sizes.append(size)
    return sizes


def verify_decomposition(
    cert: Any,
    host_vertices: set[Point],
    host_edges: set[tuple[Point, Point]],
    expect_r: int | None = None,
    expect_s: int | None = None,
    subject: str = "certificate",
) -> VerificationReport:
    report = VerificationReport(subject)
    try:
        data = normalize(cert)
    except MalformedCertificate as exc:
        report.add("malformed", str(exc))
        return report

    # (1) vertex set
    used: set[Point] = set()
    for f in data["factors"]:
        if "edges" in f:
            used.update(v for e in f["edges"] for v in e)
        else:
            used.update(v for c in f["cycles"] for v in c)
    for v in sorted(used - host_vertices):
        report.add("vertex-set", "vertex outside the host graph", v)
    if data["factors"]:
        for v in sorted(host_vertices - used):
            report.add("vertex-set", "host vertex never used", v)

    coverage: Counter = Counter()
    n_c3 = n_c7 = 0
    for k, f in enumerate(data["factors"]):
        edges = _factor_edges(f, k, report)
        coverage.update(edges)
        # (2) spanning and 2-regular
        deg: Counter = Counter()
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        for v in sorted(host_vertices):
            if deg[v] != 2:
                report.add("two-factor", f"factor {k}: vertex has degree {deg[v]}", {"factor": k, "vertex": v})
        dup = [e for e, m in Counter(edges).items() if m > 1]
        for e in dup:
            report.add("two-factor", f"factor {k}: repeated edge", {"factor": k, "edge": e})
        # (3) uniform cycle lengths and kind label
        regular = all(deg[v] == 2 for v in deg) and not dup
        sizes = _components(edges) if regular else []
        lengths = set(sizes)
        actual = "C3" if lengths == {3} else "C7" if lengths == {7} else "mixed"
        if not regular:
            actual = "invalid"
        elif actual == "mixed":
            report.add("uniform", f"factor {k}: cycle lengths {sorted(lengths)}", {"factor": k})
        if regular and f["kind"] != actual:
            report.add("kind", f"factor {k}: labeled {f['kind']} but is {actual}", {"factor": k})
        if f["kind"] == "C3":
            n_c3 += 1
        elif f["kind"] == "C7":
            n_c7 += 1
        else:
            report.add("kind", f"factor {k}: kind {f['kind']!r} not allowed", {"factor": k})

    # (4) exact edge partition
    for e, m in sorted(coverage.items()):
        if e not in host_edges:
            report.add("partition", "edge not in host graph", e)
        elif m > 1:
            report.add("partition", f"edge used {m} times", e)
    for e in sorted(host_edges - coverage.keys()):
        report.add("partition", "host edge not covered", e)

    # (5) counts
    report.counts = {"factors": len(data["factors"]), "r": n_c3, "s": n_c7}
    if (data["r"], data["s"]) != (n_c3, n_c7):
        report.add("counts", f"declared (r,s)=({data['r']},{data['s']}) but labels give ({n_c3},{n_c7})")
    if expect_r is not None and n_c3 != expect_r:
        report.add("counts", f"expected r={expect_r}, found {n_c3}")
    if expect_s is not None and n_c7 != expect_s:
        report.add("counts", f"expected s={expect_s}, found {n_c7}")
    return report


def verify(cert: Any, expect_n: int | None = None, expect_r: int | None = None, expect_s: int | None = None) -> VerificationReport:
    """Check a claimed HW(n; r, s; 3, 7) certificate against K_n."""
    try:
        data = normalize(cert)
    except MalformedCertificate as exc:
        report = VerificationReport("HW certificate")
        report.add("malformed", str(exc))
        return report
    n = data["n"] if expect_n is None else expect_n
    subject = f"HW({n};{data['r']},{data['s']};3,7)"
    if n % 7 or n < 7:
        report = VerificationReport(subject)
        report.add("vertex-set", f"n={n} is not a positive multiple of 7")
        return report
    pts, edges = complete_host(n)
    report = verify_decomposition(data, pts, edges, expect_r, expect_s, subject)
    if data["n"] != n:
        report.add("counts", f"certificate declares n={data['n']}, expected {n}")
    if len(data["factors"]) != (n - 1) // 2:
        report.add("counts", f"{len(data['factors'])} factors, expected {(n - 1) // 2}")
    return report


def verify_tripartite(cert: Any, expect_r: int | None = None, expect_s: int | None = None, groups=(0, 1, 2)) -> VerificationReport:
    """Check a claimed 2-factorization of K_{7,7,7} on the given groups."""
    pts, edges = tripartite_host(groups)
    report = verify_decomposition(cert, pts, edges, expect_r, expect_s, "K_{7,7,7} factorization")
    if report.counts.get("factors") != 7:
        report.add("counts", f"{report.counts.get('factors')} factors, expected 7")
    return report


# ---------------------------------------------------------------------------
# Kirkman triple systems


def verify_kts(k: Any) -> VerificationReport:
    if not isinstance(k, dict):
        k = {"v": k.v, "classes": [[list(t) for t in cls] for cls in k.classes]}
    report = VerificationReport("KTS")
    try:
        v = int(k["v"])
        classes = [[[int(p) for p in t] for t in cls] for cls in k["classes"]]
    except (KeyError, TypeError, ValueError) as exc:
        report.add("malformed", f"malformed KTS: {exc}")
        return report
    report.subject = f"KTS({v})"
    if v % 6 != 3:
        report.add("order", f"v={v} is not 3 mod 6")
    points = set(range(v))
    if len(classes) != (v - 1) // 2:
        report.add("classes", f"{len(classes)} classes, expected {(v - 1) // 2}")
    pairs: Counter = Counter()
    for ci, cls in enumerate(classes):
        seen: Counter = Counter()
        for t in cls:
            if len(t) != 3 or len(set(t)) != 3:
                report.add("triple", f"class {ci}: bad triple", t)
                continue
            seen.update(t)
            pairs.update(_pair(a, b) for a, b in combinations(t, 2))
        for p in sorted(set(seen) - points):
            report.add("partition", f"class {ci}: point out of range", p)
        for p in sorted(points):
            if seen[p] != 1:
                report.add("partition", f"class {ci}: point covered {seen[p]} times", p)
    for pr, m in sorted(pairs.items()):
        if m > 1:
            report.add("pairs", f"pair covered {m} times", list(pr))
    for pr in combinations(sorted(points), 2):
        if pr not in pairs:
            report.add("pairs", "pair not covered", list(pr))
    report.counts = {"classes": len(classes), "triples": sum(len(c) for c in classes)}
    return report
