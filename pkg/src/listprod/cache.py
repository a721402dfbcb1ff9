"""Advisory on-disk memo for chi_l and P_l results.

Entries are keyed by the canonical graph hash plus a digest of the labelled
edge list (cached witnesses refer to concrete vertex ids).  Every hit is
re-checked cheaply before it is returned; a stale or corrupt entry is
ignored and overwritten.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .coloring import ChoosabilityResult, CountReport, _count_masks, _masks, is_colorable
from .graphs import Graph, graph_hash
from .lists import ListAssignment

CACHE_ENV = "LISTPROD_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "listprod"


def _lists_json(L: ListAssignment | None):
    return None if L is None else {str(v): sorted(cs) for v, cs in L.items}


def _lists_from(d) -> ListAssignment | None:
    return None if d is None else ListAssignment.from_mapping({int(v): cs for v, cs in d.items()})


class DiskCache:
    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.hits = 0

    def _path(self, G: Graph, op: str, param: int) -> Path:
        labelled = hashlib.sha256(repr(sorted(G.edges)).encode()).hexdigest()[:16]
        return self.root / f"{graph_hash(G)}-{labelled}-{G.n}-{op}-{param}.json"

    def get(self, G: Graph, op: str, param: int):
        path = self._path(G, op, param)
        try:
            data = json.loads(path.read_text())
            result = self._decode(op, data)
        except (OSError, ValueError, KeyError, TypeError, AssertionError):
            return None
        if not self._valid(G, op, result):
            return None
        self.hits += 1
        return result

    def put(self, G: Graph, op: str, param: int, result) -> None:
        path = self._path(G, op, param)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(self._encode(op, result), sort_keys=True))
            tmp.replace(path)
        except OSError:
            pass  # the cache is advisory

    @staticmethod
    def _encode(op: str, r) -> dict:
        if op == "lcf":
            return {"value": str(r.value),
                    "witness": None if r.witness is None else {str(v): c for v, c in r.witness.items()},
                    "minimizer": _lists_json(r.minimizer)}
        return {"value": r.value, "hard": _lists_json(r.hard_assignment),
                "lower": r.lower_bound, "reason": r.upper_bound_reason}

    @staticmethod
    def _decode(op: str, d: dict):
        if op == "lcf":
            wit = None if d["witness"] is None else {int(v): c for v, c in d["witness"].items()}
            return CountReport(int(d["value"]), wit, _lists_from(d["minimizer"]))
        return ChoosabilityResult(int(d["value"]), _lists_from(d["hard"]), int(d["lower"]), d["reason"])

    @staticmethod
    def _valid(G: Graph, op: str, r) -> bool:
        if op == "lcf":
            if r.minimizer is None:
                return False
            return _count_masks(G, _masks(G, r.minimizer))[0] == r.value
        if r.hard_assignment is None:
            return r.value == 1
        return r.hard_assignment.uniform_size == r.value - 1 and not is_colorable(G, r.hard_assignment)
