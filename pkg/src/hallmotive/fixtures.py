"""Bundled example inputs, looked up by file name."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

DATA = resources.files("hallmotive") / "data"


def available() -> list:
    return sorted(p.name for p in DATA.iterdir() if p.name.endswith(".json"))


def resolve_fixture(name) -> Path:
    """An existing path as given, else the bundled file of that name."""
    path = Path(name)
    if path.exists():
        return path
    for candidate in (path.name, path.name + ".json"):
        bundled = DATA / candidate
        if bundled.is_file():
            return Path(str(bundled))
    raise FileNotFoundError(f"{name}: no such file and no bundled fixture "
                            f"(bundled: {', '.join(available())})")
