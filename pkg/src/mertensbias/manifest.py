"""Deterministic result emission and run manifests.

Result files are byte-deterministic for identical inputs: fixed field order,
'\\n' line endings, floats at 17 significant digits. Every file written to
disk gets a sidecar ``<path>.manifest.json`` recording the command, resolved
parameters, input digests, and wall time (the manifest is the only place a
rerun may differ byte-wise).
"""

import math
import os
import tempfile
from dataclasses import dataclass, field


@dataclass
class RunManifest:
    command: str
    parameters: dict = field(default_factory=dict)
    zero_table_digest: str | None = None
    constants_prime_limit: int | None = None
    seed: int | None = None
    tool_version: str = ""
    wall_time: float = 0.0

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "zero_table_digest": self.zero_table_digest,
            "constants_prime_limit": self.constants_prime_limit,
            "seed": self.seed,
            "tool_version": self.tool_version,
            "wall_time": self.wall_time,
        }


def format_float(v: float) -> str:
    if isinstance(v, float) and (math.isnan(v) or math.isinf(v)):
        return str(v)
    return format(float(v), ".17g")


def dumps_json(obj, indent: int = 0) -> str:
    """JSON text with fixed float formatting (17 significant digits)."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{out}"'
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}"{k}": {dumps_json(v, indent + 2)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{dumps_json(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    # numpy scalars and anything float-like
    try:
        return format_float(float(obj))
    except (TypeError, ValueError):
        return dumps_json(str(obj), indent)


def format_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(format_float(v) if isinstance(v, float) else str(v) for v in row)
        )
    return "\n".join(lines) + "\n"


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def emit(text: str, path: str | None, manifest: RunManifest | None = None) -> None:
    """Write result text to ``path`` (or stdout) plus the manifest sidecar."""
    if path is None:
        print(text, end="" if text.endswith("\n") else "\n")
        return
    _atomic_write(path, text)
    if manifest is not None:
        _atomic_write(path + ".manifest.json", dumps_json(manifest.as_dict()) + "\n")


def read_csv(path: str):
    """Parse a CSV the tool emitted: (header, rows of floats-or-strings)."""
    with open(path, "r", newline="") as f:
        lines = [ln.rstrip("\n") for ln in f if ln.strip()]
    header = lines[0].split(",")
    rows = []
    for ln in lines[1:]:
        row = []
        for tok in ln.split(","):
            try:
                row.append(float(tok))
            except ValueError:
                row.append(tok)
        rows.append(row)
    return header, rows


def read_json(path: str):
    import json

    with open(path, "r") as f:
        return json.load(f)
