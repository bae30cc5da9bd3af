"""Instance files: a JSON schema for conic intersections plus queries.

Schema (version ``conecuts-instance/1``)::

    {
      "schema": "conecuts-instance/1",
      "name": "t_prime",                      # optional
      "blocks": [
        {"type": "quadratic", "Q": [["0","1"],["1","0"]], "d": ["0","0"],
         "s": "-1", "sense": ">=", "branch": ["2","2"]},
        {"type": "soc", "rows": [["0","0"],["1","-1"],["1","1"]],
         "rhs": ["-2","0","0"]},
        {"type": "halfspace", "normal": ["1","1"], "offset": "3"}
      ],
      "bounds": {"box": [-100, 100, -100, 100]},   # optional
      "queries": {                                  # optional
        "face": {"pi": ["1","0"], "pi0": "1"},
        "functions": [{"gamma": ["0","1/2","1/2"], "j": 1, "block": 0}],
        "aggregations": [{"block": 0, "weights": ["0","1","1"],
                          "round": true}]
      }
    }

Every numeric literal is an exact rational: "p/q", an integer string, or a
finite decimal.  Loading normalizes all blocks to their SOC form; dumping
emits that form, so load(dump(x)) reproduces x exactly.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from conecuts.conic2d import (
    ConicBlock2D,
    QuadraticConic,
    blocks_hash,
    halfspace_block,
    quadratic_to_block,
    soc_block,
)
from conecuts.errors import MalformedInputError
from conecuts.exact import Vec, format_rational, parse_rational

SCHEMA = "conecuts-instance/1"

Box = tuple[int, int, int, int]


def _rat(value) -> Fraction:
    if isinstance(value, bool):
        raise MalformedInputError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise MalformedInputError(
        f"numeric literals must be strings or integers, got {value!r}"
    )


def _rat_vec(values, length: Optional[int] = None) -> Vec:
    if not isinstance(values, (list, tuple)):
        raise MalformedInputError(f"expected a list of rationals, got {values!r}")
    out = tuple(_rat(v) for v in values)
    if length is not None and len(out) != length:
        raise MalformedInputError(f"expected {length} entries, got {len(out)}")
    return out


@dataclass(frozen=True)
class FaceQuery:
    """A claimed face pi.x >= pi0 to be re-derived."""

    pi: Vec
    pi0: Fraction

    def as_dict(self) -> dict:
        return {
            "pi": [format_rational(c) for c in self.pi],
            "pi0": format_rational(self.pi0),
        }


@dataclass(frozen=True)
class FunctionQuery:
    """A step-function cut request: apply the gamma family to one block
    (or to every block of matching dimension when block is None)."""

    gamma: Vec
    j: int
    block: Optional[int] = None

    def as_dict(self) -> dict:
        out = {"gamma": [format_rational(c) for c in self.gamma], "j": self.j}
        if self.block is not None:
            out["block"] = self.block
        return out


@dataclass(frozen=True)
class AggregationQuery:
    """A dual-multiplier aggregation cut request against one block."""

    block: int
    weights: Vec
    round: bool = True

    def as_dict(self) -> dict:
        return {
            "block": self.block,
            "weights": [format_rational(c) for c in self.weights],
            "round": self.round,
        }


@dataclass(frozen=True)
class Instance:
    """A parsed instance: normalized blocks plus optional bounds/queries."""

    blocks: tuple[ConicBlock2D, ...]
    name: str = ""
    box: Optional[Box] = None
    face: Optional[FaceQuery] = None
    functions: tuple[FunctionQuery, ...] = ()
    aggregations: tuple[AggregationQuery, ...] = ()

    def hash(self) -> str:
        return blocks_hash(self.blocks)

    def as_dict(self) -> dict:
        out: dict = {"schema": SCHEMA}
        if self.name:
            out["name"] = self.name
        out["blocks"] = [_dump_block(b) for b in self.blocks]
        if self.box is not None:
            out["bounds"] = {"box": list(self.box)}
        queries: dict = {}
        if self.face is not None:
            queries["face"] = self.face.as_dict()
        if self.functions:
            queries["functions"] = [q.as_dict() for q in self.functions]
        if self.aggregations:
            queries["aggregations"] = [q.as_dict() for q in self.aggregations]
        if queries:
            out["queries"] = queries
        return out


def _dump_block(b: ConicBlock2D) -> dict:
    out: dict = {
        "type": "soc",
        "rows": [[format_rational(c) for c in r] for r in b.rows],
        "rhs": [format_rational(c) for c in b.rhs],
    }
    if b.branch is not None:
        out["branch"] = b.branch
    return out


def _parse_branch(raw):
    if raw is None:
        return None
    if isinstance(raw, str):
        if raw not in ("positive", "negative"):
            raise MalformedInputError(
                "branch must be 'positive', 'negative', or a point [x, y]"
            )
        return raw
    return _rat_vec(raw, 2)


def _load_block(raw, index: int) -> ConicBlock2D:
    if not isinstance(raw, dict):
        raise MalformedInputError(f"block {index} is not an object")
    btype = raw.get("type")
    if btype == "halfspace":
        return halfspace_block(_rat_vec(raw.get("normal"), 2), _rat(raw.get("offset")))
    if btype == "quadratic":
        q_rows = raw.get("Q")
        if not isinstance(q_rows, (list, tuple)) or len(q_rows) != 2:
            raise MalformedInputError(f"block {index}: Q must be 2x2")
        q = tuple(_rat_vec(r, 2) for r in q_rows)
        d = _rat_vec(raw.get("d"), 2)
        s = _rat(raw.get("s"))
        sense = raw.get("sense", ">=")
        if sense not in (">=", "<="):
            raise MalformedInputError(f"block {index}: sense must be '>=' or '<='")
        return quadratic_to_block(
            QuadraticConic(q, d, s, sense), branch=_parse_branch(raw.get("branch"))
        )
    if btype == "soc":
        rows = raw.get("rows") or raw.get("soc_rows")
        rhs = raw.get("rhs") or raw.get("soc_rhs")
        if not isinstance(rows, (list, tuple)):
            raise MalformedInputError(f"block {index}: rows must be a list")
        block = soc_block(tuple(_rat_vec(r, 2) for r in rows), _rat_vec(rhs))
        tag = raw.get("branch")
        if tag is not None and block.kind == "hyperbola":
            if tag not in ("positive", "negative"):
                raise MalformedInputError(
                    f"block {index}: soc branch tag must be positive/negative"
                )
            block = dataclasses.replace(block, branch=tag)
        return block
    raise MalformedInputError(
        f"block {index}: unknown type {btype!r} (expected quadratic, soc, "
        "or halfspace)"
    )


def _load_box(raw) -> Box:
    if not isinstance(raw, (list, tuple)) or len(raw) != 4:
        raise MalformedInputError("bounds.box must be [x0, x1, y0, y1]")
    vals = []
    for v in raw:
        f = _rat(v)
        if f.denominator != 1:
            raise MalformedInputError("bounds.box entries must be integers")
        vals.append(int(f))
    x0, x1, y0, y1 = vals
    if x0 > x1 or y0 > y1:
        raise MalformedInputError("bounds.box is empty")
    return x0, x1, y0, y1


def _load_int(raw, what: str) -> int:
    f = _rat(raw)
    if f.denominator != 1:
        raise MalformedInputError(f"{what} must be an integer")
    return int(f)


def loads(text: str) -> Instance:
    """Parse an instance from a JSON string."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedInputError("instance file must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise MalformedInputError(
            f"missing or unsupported schema field (expected {SCHEMA!r})"
        )
    raw_blocks = doc.get("blocks", [])
    if not isinstance(raw_blocks, (list, tuple)):
        raise MalformedInputError("blocks must be a list")
    blocks = tuple(_load_block(b, i) for i, b in enumerate(raw_blocks))
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise MalformedInputError("name must be a string")
    box = None
    bounds = doc.get("bounds")
    if bounds is not None:
        if not isinstance(bounds, dict):
            raise MalformedInputError("bounds must be an object")
        box = _load_box(bounds.get("box"))
    face = None
    functions: list[FunctionQuery] = []
    aggregations: list[AggregationQuery] = []
    queries = doc.get("queries")
    if queries is not None:
        if not isinstance(queries, dict):
            raise MalformedInputError("queries must be an object")
        fq = queries.get("face")
        if fq is not None:
            face = FaceQuery(_rat_vec(fq.get("pi"), 2), _rat(fq.get("pi0")))
        for raw in queries.get("functions", ()):
            block = raw.get("block")
            functions.append(
                FunctionQuery(
                    _rat_vec(raw.get("gamma")),
                    _load_int(raw.get("j"), "j"),
                    None if block is None else _load_int(block, "block"),
                )
            )
        for raw in queries.get("aggregations", ()):
            aggregations.append(
                AggregationQuery(
                    _load_int(raw.get("block"), "block"),
                    _rat_vec(raw.get("weights")),
                    bool(raw.get("round", True)),
                )
            )
    for q in functions:
        if q.block is not None and not 0 <= q.block < len(blocks):
            raise MalformedInputError(f"function query names block {q.block}")
    for q in aggregations:
        if not 0 <= q.block < len(blocks):
            raise MalformedInputError(f"aggregation query names block {q.block}")
    return Instance(
        blocks,
        name=name,
        box=box,
        face=face,
        functions=tuple(functions),
        aggregations=tuple(aggregations),
    )


def load(path: Union[str, Path]) -> Instance:
    """Load an instance from a JSON file."""
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(instance: Instance) -> str:
    """Serialize an instance to a stable, human-diffable JSON string."""
    return json.dumps(instance.as_dict(), indent=2) + "\n"


def dump(instance: Instance, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(instance), encoding="utf-8")
