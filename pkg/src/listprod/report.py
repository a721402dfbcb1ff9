"""Versioned JSON reports.  Big counts travel as decimal strings."""
from __future__ import annotations

import json
from fractions import Fraction

SCHEMA_VERSION = 1


def _plain(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= 2 ** 53 else obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_plain(v) for v in items]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def make_report(command: str, config: dict, result: dict, verified: bool) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "config": _plain(config),
            "verified": verified, "result": _plain(result)}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"
