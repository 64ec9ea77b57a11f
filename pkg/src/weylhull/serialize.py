"""Deterministic JSON and CSV encoding: rationals as ``"p/q"`` strings,
floats in shortest round-trip form."""
from __future__ import annotations

import csv
import io
import json
from enum import Enum
from fractions import Fraction

import numpy as np

from .coxeter import WeylElement
from .exact import format_fraction


def plain(obj):
    """Convert package values into JSON-ready builtins."""
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, WeylElement):
        return list(obj.word)
    if isinstance(obj, (frozenset, set)):
        return sorted(plain(v) for v in obj)
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, np.generic):
        return plain(obj.item())
    if isinstance(obj, float) and not np.isfinite(obj):
        return str(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(plain(obj), sort_keys=True, indent=2) + "\n"


def csv_rows(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()
