"""Bundled data: Kirkman triple systems and the cyclic C7 starter.

Every asset is verified when loaded; a bad file raises instead of being used.
Set ``HWDESIGN_ASSET_DIR`` to read assets from another directory.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from . import verifier
from .core import DesignError, Factorization, develop_mod7

ENV_VAR = "HWDESIGN_ASSET_DIR"
KTS_ORDERS = (9, 15, 21, 27)


class AssetError(DesignError):
    pass


def asset_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(str(resources.files("hwdesign") / "data"))


def _read(name: str) -> dict:
    path = asset_dir() / name
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise AssetError(f"cannot read asset {path}: {exc}") from exc


@lru_cache(maxsize=None)
def kts_data(v: int) -> dict:
    data = _read(f"kts_{v}.json")
    report = verifier.verify_kts(data)
    if not report.accepted or int(data["v"]) != v:
        raise AssetError(f"bundled KTS({v}) failed verification:\n{report.summary()}")
    return data


@lru_cache(maxsize=None)
def starter_c7():
    from .certificate import two_factor_from_list
    from .tripartite import starter_classes

    data = _read("starter_c7.json")
    starter = two_factor_from_list(data["cycles"])
    tags = [[c.i, c.j, c.d] for c in starter_classes(starter)]
    if sorted(tags) != sorted(data["classes"]) or len(tags) != 21:
        raise AssetError("bundled C7 starter does not match its class list")
    developed = Factorization.from_factors(21, develop_mod7(starter))
    report = verifier.verify_tripartite(developed, 0, 7)
    if not report.accepted:
        raise AssetError(f"bundled C7 starter does not develop:\n{report.summary()}")
    return starter


def clear_cache() -> None:
    """Drop loaded assets and every factorization built from them."""
    from . import k21, tripartite

    kts_data.cache_clear()
    starter_c7.cache_clear()
    tripartite.heptagon_factor_pair.cache_clear()
    tripartite._local_factorization.cache_clear()
    k21._local.cache_clear()
