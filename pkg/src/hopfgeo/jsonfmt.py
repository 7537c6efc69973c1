"""Deterministic JSON rendering with 17-significant-digit doubles.

Output is plain JSON (insertion-ordered objects, no whitespace surprises) in
which every float is printed with '%.17g', enough digits to round-trip any
IEEE-754 double bit-exactly.
"""

from __future__ import annotations

import json
import math


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"non-finite float in JSON output: {x!r}")
    return format(float(x), ".17g")


def render(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {render(v)}" for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(render(v) for v in value) + "]"
    raise TypeError(f"cannot render {type(value).__name__} as JSON")
