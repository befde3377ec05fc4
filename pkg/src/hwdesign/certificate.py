"""Canonical JSON and text forms of factorizations."""

from __future__ import annotations

import json
from typing import Any

from .core import Cycle, DesignError, Factorization, TwoFactor, Vertex


def to_dict(f: Factorization) -> dict[str, Any]:
    f = f.canonical()
    return {
        "n": f.n,
        "r": f.declared_r,
        "s": f.declared_s,
        "factors": [
            {
                "kind": tf.kind,
                "cycles": [[[v.residue, v.group] for v in c.vertices] for c in tf.cycles],
            }
            for tf in f.factors
        ],
    }


def dumps(f: Factorization) -> str:
    return json.dumps(to_dict(f), separators=(",", ":")) + "\n"


def from_dict(data: dict[str, Any]) -> Factorization:
    """Parse a certificate, keeping the declared kinds and counts as given."""
    try:
        factors = []
        for fd in data["factors"]:
            cycles = tuple(
                sorted(Cycle.of(Vertex(int(v[0]), int(v[1])) for v in c) for c in fd["cycles"])
            )
            factors.append(TwoFactor(cycles, str(fd["kind"])))
        return Factorization(int(data["n"]), tuple(factors), int(data["r"]), int(data["s"]))
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise DesignError(f"malformed certificate: {exc}") from exc


def loads(text: str) -> Factorization:
    return from_dict(json.loads(text))


def to_text(f: Factorization) -> str:
    f = f.canonical()
    lines = [f"HW({f.n};{f.declared_r},{f.declared_s};3,7)"]
    for k, tf in enumerate(f.factors):
        lines.append(f"F{k} {tf.kind}: {tf}")
    return "\n".join(lines) + "\n"


def two_factor_to_list(tf: TwoFactor) -> list:
    return [[[v.residue, v.group] for v in c.vertices] for c in tf.cycles]


def two_factor_from_list(cycles: list) -> TwoFactor:
    return TwoFactor.from_cycles(Cycle.of(Vertex(int(a), int(b)) for a, b in c) for c in cycles)
