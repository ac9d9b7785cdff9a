"""On-disk cache of model polynomials, one JSON file per (model, n, k).

Entries carry a content hash; a damaged or mismatching entry is ignored and
overwritten, never trusted.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

from .exactnum import Poly

log = logging.getLogger(__name__)

ENV_VAR = "POLYBERN_CACHE"


def resolve_cache_dir(flag: str | None) -> Path | None:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def _digest(model: str, n: int, k: int, coeffs: list[int], count: int) -> str:
    payload = json.dumps({"model": model, "n": n, "k": k, "coeffs": coeffs, "count": count},
                         sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory: Path):
        self.directory = Path(directory)

    def path(self, model: str, n: int, k: int) -> Path:
        return self.directory / f"{model}__n{n}_k{k}.json"

    def get(self, model: str, n: int, k: int) -> Poly | None:
        path = self.path(model, n, k)
        try:
            data = json.loads(path.read_text())
            coeffs, count = [int(c) for c in data["coeffs"]], int(data["count"])
        except FileNotFoundError:
            return None
        except (ValueError, KeyError, TypeError):
            log.warning("ignoring unreadable cache entry %s", path)
            return None
        poly = Poly(tuple(coeffs))
        if data.get("hash") != _digest(model, n, k, coeffs, count) or poly(1) != count:
            log.warning("ignoring cache entry %s with a bad hash", path)
            return None
        return poly

    def put(self, model: str, n: int, k: int, poly: Poly) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        coeffs, count = poly.to_list(), poly(1)
        entry = {"model": model, "n": n, "k": k, "coeffs": coeffs, "count": count,
                 "hash": _digest(model, n, k, coeffs, count)}
        tmp = self.path(model, n, k).with_suffix(".tmp")
        tmp.write_text(json.dumps(entry, sort_keys=True) + "\n")
        tmp.replace(self.path(model, n, k))

    def polynomial(self, model: str, n: int, k: int, compute) -> Poly:
        cached = self.get(model, n, k)
        if cached is not None:
            return cached
        poly = compute(model, n, k)
        self.put(model, n, k, poly)
        return poly
