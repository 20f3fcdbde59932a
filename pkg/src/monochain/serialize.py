"""Deterministic JSON dumps of chains and reports."""

from __future__ import annotations

import json
from typing import Any

from .axial import AxialExpr
from .chain import Chain, ChainRecord
from .cliffop import BoundaryDensity, PotentialPair

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def record_to_json(rec: ChainRecord) -> dict:
    a, b = rec.boundary
    return {
        "level": rec.level,
        "A": rec.A.to_json(),
        "B": rec.B.to_json(),
        "boundary": {"a": a.to_json(), "b": b.to_json()},
    }


def chain_to_json(chain: Chain) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "chain",
        "m": chain.m,
        "dim": chain.m + 1,
        "levels": [record_to_json(rec) for rec in chain],
    }


def chain_from_json(data: dict) -> Chain:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {data.get('schema_version')!r}")
    if data.get("kind") != "chain":
        raise SchemaError(f"expected a chain dump, got kind={data.get('kind')!r}")
    m = int(data["m"])
    chain = Chain(m)
    for item in data["levels"]:
        k = int(item["level"])
        pair = PotentialPair(m, AxialExpr.from_json(item["A"]), AxialExpr.from_json(item["B"]))
        bd = item["boundary"]
        boundary = (BoundaryDensity.from_json(m, bd["a"]), BoundaryDensity.from_json(m, bd["b"]))
        chain.add(ChainRecord(m, k, pair, boundary))
    levels = chain.levels
    if levels and levels != list(range(levels[0], levels[-1] + 1)):
        raise SchemaError("chain levels must be contiguous")
    return chain


def dumps(obj: Any) -> str:
    """Byte-stable JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
