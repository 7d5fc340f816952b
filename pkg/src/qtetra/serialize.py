"""Deterministic JSON output and the bundled example data."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .cartan import ValuedQuiver

EXAMPLES = ("a2", "a3", "b2", "g2", "kronecker")


def _scalar_list(x) -> bool:
    return isinstance(x, list) and all(not isinstance(t, (list, dict)) for t in x)


def _render(x, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_render(v, indent, level + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(x, list):
        if _scalar_list(x) or all(_scalar_list(t) for t in x) and len(x) <= 1:
            return json.dumps(x)
        items = [f"{pad}{_render(v, indent, level + 1)}" for v in x]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(x)


def dumps(obj, indent: int = 2) -> str:
    """Stable JSON: key order as built, lists of scalars on one line."""
    return _render(obj, indent, 0) + "\n"


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def example_path(name: str, seed_data: str | Path | None = None):
    fname = f"{name.lower()}.json"
    if seed_data is not None:
        path = Path(seed_data) / fname
        if path.exists():
            return path
    return resources.files("qtetra").joinpath("data", fname)


def load_example(name: str, seed_data: str | Path | None = None) -> dict:
    """A bundled example (``a2``, ``a3``, ``b2``, ``g2``, ``kronecker``); ``seed_data`` overrides."""
    path = example_path(name, seed_data)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise ValueError(f"unknown example {name!r}") from None
    return json.loads(text)


def load_quiver(source: str, seed_data: str | Path | None = None) -> ValuedQuiver:
    """A quiver from a bundled example name or a JSON file (bare quiver or example file)."""
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        data = load_json(path)
    else:
        data = load_example(source, seed_data)
    return ValuedQuiver.from_json(data.get("quiver", data))
