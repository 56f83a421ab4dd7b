"""Serializable experiment reports with canonical JSON and a determinism digest."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

__all__ = ["Report", "SCHEMA_VERSION", "canonical_json", "to_jsonable"]

SCHEMA_VERSION = "1.0"


def to_jsonable(x):
    """Plain JSON-compatible structure; numpy scalars and fractions are unwrapped."""
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if x is None or isinstance(x, str):
        return x
    if isinstance(x, np.ndarray):
        return to_jsonable(x.tolist())
    return str(x)


def _dump(x) -> str:
    if x is None:
        return "null"
    if x is True:
        return "true"
    if x is False:
        return "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            return json.dumps(str(x))
        s = format(x, ".17g")
        if not any(ch in s for ch in ".en"):
            s += ".0"
        return s
    if isinstance(x, str):
        return json.dumps(x, ensure_ascii=True)
    if isinstance(x, list):
        return "[" + ",".join(_dump(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_dump(x[k])}" for k in sorted(x)) + "}"
    raise TypeError(f"not serializable: {type(x).__name__}")


def canonical_json(obj) -> str:
    """Sorted keys, no whitespace, floats with 17 significant digits."""
    return _dump(to_jsonable(obj))


@dataclass
class Report:
    command: str
    parameters: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    per_item: list = field(default_factory=list)
    verdict: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return bool(self.verdict.get("pass", True))

    def body(self) -> dict:
        return {
            "schemaVersion": self.schema_version,
            "command": self.command,
            "parameters": to_jsonable(self.parameters),
            "metrics": to_jsonable(self.metrics),
            "perItem": to_jsonable(self.per_item),
            "verdict": to_jsonable(self.verdict),
        }

    @property
    def digest(self) -> str:
        return hashlib.sha256(canonical_json(self.body()).encode()).hexdigest()

    def to_dict(self) -> dict:
        d = self.body()
        d["determinismDigest"] = self.digest
        return d

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        rep = cls(
            command=d["command"],
            parameters=d["parameters"],
            metrics=d["metrics"],
            per_item=d["perItem"],
            verdict=d["verdict"],
            schema_version=d["schemaVersion"],
        )
        if "determinismDigest" in d and d["determinismDigest"] != rep.digest:
            raise ValueError("determinism digest does not match the report body")
        return rep

    def to_csv(self) -> str:
        """perItem rows only; columns are the union of row keys, sorted."""
        import csv
        import io

        rows = [to_jsonable(r) for r in self.per_item]
        cols = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _csv_cell(r.get(k)) for k in cols})
        return buf.getvalue()


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, (dict, list)):
        return canonical_json(v)
    return v
