"""On-disk cache of Fock structure-constant tables.

Files are versioned JSON keyed by (space, N, max label size, h).  Values are
exact strings ("p/q" or a rational function of h).  Writes go to a temporary
file in the same directory followed by ``os.replace``, so a reader sees either
the old file, the new one, or none.
"""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from .fock import structure_table
from .ring import Space
from .scalars import frac_str

CACHE_VERSION = 1
ENV_VAR = "STAR_CACHE_DIR"
DEFAULT_DIR = ".star-cache"


def cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR) or Path.cwd() / DEFAULT_DIR)


def _h_tag(h0: Optional[Fraction]) -> str:
    return "formal" if h0 is None else frac_str(Fraction(h0)).replace("/", "_")


def cache_path(space: Space, max_size: int, h0: Optional[Fraction] = None, normalized: bool = True) -> Path:
    layer = "M" if normalized else "Mt"
    return cache_dir() / f"{layer}-{space.name}-N{space.N}-S{max_size}-h{_h_tag(h0)}.json"


def _encode(value) -> str:
    if isinstance(value, (int, Fraction)):
        return frac_str(Fraction(value))
    return str(value)


def _payload(space: Space, max_size: int, h0, normalized: bool) -> dict:
    table = structure_table(space.N, max_size, space, h0, normalized)
    return {
        "version": CACHE_VERSION,
        "space": space.name,
        "N": space.N,
        "max_size": max_size,
        "h": "formal" if h0 is None else frac_str(Fraction(h0)),
        "normalized": normalized,
        "table": {k: {"target": v["target"], "coeff": _encode(v["coeff"])} for k, v in sorted(table.items())},
    }


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_table(space: Space, max_size: int, h0=None, normalized: bool = True) -> Optional[dict]:
    path = cache_path(space, max_size, h0, normalized)
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("version") != CACHE_VERSION:
        return None
    return data


def get_table(space: Space, max_size: int, h0=None, normalized: bool = True) -> dict:
    """Cached table, computing and publishing it on a miss or version mismatch."""
    data = load_table(space, max_size, h0, normalized)
    if data is not None:
        return data
    data = _payload(space, max_size, h0, normalized)
    _write_atomic(cache_path(space, max_size, h0, normalized), json.dumps(data, sort_keys=True, indent=1))
    return data


def list_entries() -> List[Dict[str, object]]:
    d = cache_dir()
    if not d.is_dir():
        return []
    out = []
    for p in sorted(d.glob("*.json")):
        try:
            data = json.loads(p.read_text())
            out.append({"file": p.name, "version": data.get("version"), "entries": len(data.get("table", {}))})
        except (OSError, ValueError):
            out.append({"file": p.name, "version": None, "entries": None})
    return out


def clear() -> int:
    d = cache_dir()
    if not d.is_dir():
        return 0
    n = 0
    for p in d.glob("*.json"):
        p.unlink()
        n += 1
    return n


__all__ = ["CACHE_VERSION", "ENV_VAR", "cache_dir", "cache_path", "get_table", "load_table", "list_entries", "clear"]
