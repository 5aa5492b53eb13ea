"""Access to the golden data files shipped inside the package."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Any

CODE_TYPES = ("A", "B", "C", "DK")


def _root():
    return resources.files("k3char2") / "data"


def read_text(relpath: str) -> str:
    return (_root() / relpath).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load_json(relpath: str) -> Any:
    return json.loads(read_text(relpath))


@lru_cache(maxsize=None)
def code_rows(t: str) -> tuple[str, ...]:
    lines = read_text(f"codes/{t}.txt").splitlines()
    return tuple(r.strip() for r in lines if r.strip() and not r.lstrip().startswith("#"))


def gamma_table(t: str) -> list[list[str]]:
    d = load_json(f"families/{t}.json")
    return [d[f"P{i}"] for i in range(1, 22)]


def family_tables(t: str) -> dict:
    return load_json(f"families/{t}_tables.json")


def hesse() -> dict:
    return load_json("codes/hesse.json")


def correspondences() -> dict:
    return load_json("correspondences.json")


def relations() -> dict:
    return load_json("relations.json")


def orbit_table() -> dict:
    return load_json("orbits.json")


def worked_example() -> dict:
    return load_json("worked_example.json")


def groups() -> dict:
    return load_json("groups.json")
