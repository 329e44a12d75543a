"""Deterministic JSON and CSV serialization of command reports."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

# integers beyond this are emitted as strings so that no JSON reader rounds them
_SAFE = 2 ** 53


def _plain(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x if abs(x) < _SAFE else str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in items]
    return str(x)


@dataclass
class Report:
    command: list[str]
    seed: int | None
    payload: dict
    passed: bool
    seconds: float | None = None
    figures: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        d = {"command": self.command, "seed": self.seed, "passed": self.passed,
             "payload": self.payload}
        if self.figures:
            d["figures"] = self.figures
        if self.seconds is not None:
            d["seconds"] = round(self.seconds, 3)
        return _plain(d)

    def to_json(self) -> str:
        return dumps(self.as_dict()) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in flatten(self.as_dict()):
            w.writerow([k, v])
        return buf.getvalue()


def dumps(x, level: int = 0) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    pad = "  " * (level + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, level + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(x, list) and any(isinstance(v, (dict, list)) for v in x):
        items = [pad + dumps(v, level + 1) for v in x]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    return json.dumps(x)


def flatten(d, prefix: str = ""):
    """(dotted key, scalar) pairs in document order."""
    if isinstance(d, dict):
        for k, v in d.items():
            yield from flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(d, list):
        if all(not isinstance(v, (dict, list)) for v in d):
            yield prefix, " ".join("" if v is None else str(v) for v in d)
        else:
            for i, v in enumerate(d):
                yield from flatten(v, f"{prefix}.{i}")
    else:
        yield prefix, "" if d is None else str(d).lower() if isinstance(d, bool) else str(d)
