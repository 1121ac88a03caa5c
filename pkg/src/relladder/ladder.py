"""K4 ladder domain model: cell parameters, presets, JSON form, component graph.

Cell ``i`` (``i >= 1``) joins the rungs ``(S[i-1], T[i-1])`` and
``(S[i], T[i])``.  Each of its five edges carries a forward reliability and a
reverse one (suffix ``_rev``)::

    a : S[i-1] -> S[i]      a_rev : S[i]   -> S[i-1]
    e : S[i-1] -> T[i]      e_rev : T[i]   -> S[i-1]
    d : T[i-1] -> S[i]      d_rev : S[i]   -> T[i-1]
    c : T[i-1] -> T[i]      c_rev : T[i]   -> T[i-1]
    b : S[i]   -> T[i]      b_rev : T[i]   -> S[i]

``S`` and ``T`` are the reliabilities of the two nodes of rung ``i``.  Cell 0
only has the rung edge ``b``/``b_rev`` and the nodes ``S[0]``, ``T[0]``; its
``a`` and ``d`` are pinned to 1 and ``c``, ``e`` to 0.
"""

from __future__ import annotations

import dataclasses
import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PresetViolation

EDGE_FIELDS = ("a", "b", "c", "d", "e")
REV_FIELDS = ("a_rev", "b_rev", "c_rev", "d_rev", "e_rev")
NODE_FIELDS = ("S", "T")
FIELDS = ("a", "a_rev", "b", "b_rev", "c", "c_rev", "d", "d_rev", "e", "e_rev", "S", "T")

# field -> (origin, target); rung offsets: 0 = previous rung, 1 = this rung
ARC_ENDPOINTS = {
    "a": (("S", 0), ("S", 1)),
    "a_rev": (("S", 1), ("S", 0)),
    "e": (("S", 0), ("T", 1)),
    "e_rev": (("T", 1), ("S", 0)),
    "d": (("T", 0), ("S", 1)),
    "d_rev": (("S", 1), ("T", 0)),
    "c": (("T", 0), ("T", 1)),
    "c_rev": (("T", 1), ("T", 0)),
    "b": (("S", 1), ("T", 1)),
    "b_rev": (("T", 1), ("S", 1)),
}


class Preset(str, enum.Enum):
    GENERAL_DIRECTED = "general_directed"
    UNDIRECTED = "undirected"
    ANGELE_DIRECTED = "angele_directed"
    ANGELE_UNDIRECTED = "angele_undirected"

    @property
    def undirected(self) -> bool:
        return self in (Preset.UNDIRECTED, Preset.ANGELE_UNDIRECTED)

    @property
    def angele(self) -> bool:
        return self in (Preset.ANGELE_DIRECTED, Preset.ANGELE_UNDIRECTED)


def as_preset(value) -> Preset:
    if isinstance(value, Preset):
        return value
    key = str(value).strip().lower().replace("-", "_").replace(" ", "_")
    aliases = {"directed": "general_directed", "general": "general_directed"}
    return Preset(aliases.get(key, key))


@dataclass(frozen=True)
class CellParams:
    """Reliabilities of the components of one ladder cell."""

    a: object = 0
    a_rev: object = 0
    b: object = 0
    b_rev: object = 0
    c: object = 0
    c_rev: object = 0
    d: object = 0
    d_rev: object = 0
    e: object = 0
    e_rev: object = 0
    S: object = 1
    T: object = 1

    def replace(self, **changes) -> CellParams:
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in FIELDS}


def _pinned(preset: Preset, i: int, n: int) -> dict:
    """Fields whose value the preset fixes for cell ``i`` of an ``n``-cell ladder."""
    pins = {}
    if i == 0:
        pins.update(a=1, d=1, c=0, e=0)
        if not preset.undirected:
            pins.update(a_rev=0, c_rev=0, d_rev=0, e_rev=0)
    if preset.angele:
        pins.update(b=0, b_rev=0)
        if i == 0 or i == n:
            pins["T"] = 0
        if preset is Preset.ANGELE_DIRECTED:
            pins.update(a_rev=0, c_rev=0, d_rev=0, e_rev=0)
    return pins


def free_fields(preset: Preset, i: int, n: int) -> list[str]:
    """Fields of cell ``i`` that are genuine components under ``preset``.

    For undirected presets an edge is listed once, under its forward name.
    """
    pins = _pinned(preset, i, n)
    names = []
    for f in FIELDS:
        if f in pins:
            continue
        if preset.undirected and f in REV_FIELDS:
            continue
        if i == 0 and f in ("a", "c", "d", "e"):
            continue
        names.append(f)
    return names


@dataclass(frozen=True)
class LadderConfig:
    """Cells ``0..n`` plus destination and structural preset.

    Use :meth:`from_cells` or :meth:`uniform` to build a config; they apply the
    preset's pinned values.  Direct construction validates them instead.
    """

    cells: tuple
    destination: str = "S"
    preset: Preset = Preset.GENERAL_DIRECTED

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "preset", as_preset(self.preset))
        if self.destination not in ("S", "T"):
            raise ValueError(f"destination must be 'S' or 'T', got {self.destination!r}")
        if len(self.cells) < 2:
            raise ValueError("a ladder needs at least one cell beyond cell 0")
        n = self.n
        for i, cell in enumerate(self.cells):
            for f, v in _pinned(self.preset, i, n).items():
                if getattr(cell, f) != v:
                    raise PresetViolation(f"cell {i}: {f} must be {v} for preset {self.preset.value}")
            if self.preset.undirected:
                for f in EDGE_FIELDS:
                    if getattr(cell, f) != getattr(cell, f + "_rev"):
                        raise PresetViolation(f"cell {i}: {f}_rev must equal {f} for an undirected preset")

    @property
    def n(self) -> int:
        return len(self.cells) - 1

    @classmethod
    def from_cells(cls, preset, cells, destination: str = "S") -> LadderConfig:
        """Build a config, overwriting pinned fields and tying reverse edges."""
        preset = as_preset(preset)
        cells = list(cells)
        n = len(cells) - 1
        out = []
        for i, cell in enumerate(cells):
            if isinstance(cell, dict):
                cell = CellParams(**cell)
            changes = {}
            if preset.undirected:
                changes.update({f + "_rev": getattr(cell, f) for f in EDGE_FIELDS})
            changes.update(_pinned(preset, i, n))
            if preset.undirected and i == 0:
                changes.update(a_rev=1, d_rev=1, c_rev=0, e_rev=0)
            out.append(cell.replace(**changes))
        return cls(tuple(out), destination, preset)

    @classmethod
    def uniform(cls, preset, n: int, p, rho, destination: str = "S") -> LadderConfig:
        """Every edge has reliability ``p`` and every node ``rho``."""
        if n < 1:
            raise ValueError("n must be >= 1")
        edges = {f: p for f in EDGE_FIELDS + REV_FIELDS}
        cell = CellParams(**edges, S=rho, T=rho)
        return cls.from_cells(preset, [cell] * (n + 1), destination)

    def components(self) -> list[tuple[str, int]]:
        """Live components as ``(field, cell)`` keys, in cell order."""
        return [(f, i) for i in range(self.n + 1) for f in free_fields(self.preset, i, self.n)]

    def get(self, key):
        f, i = key
        return getattr(self.cells[i], f)

    def with_value(self, key, value) -> LadderConfig:
        """Copy with one component changed (both directions if undirected)."""
        f, i = key
        cells = list(self.cells)
        changes = {f: value}
        if self.preset.undirected and f in EDGE_FIELDS:
            changes[f + "_rev"] = value
        cells[i] = cells[i].replace(**changes)
        return LadderConfig(tuple(cells), self.destination, self.preset)

    def map_values(self, fn) -> LadderConfig:
        """Apply ``fn(key, value)`` to every live component."""
        cfg = self
        for key in self.components():
            cfg = cfg.with_value(key, fn(key, self.get(key)))
        return cfg

    # JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        cells = []
        for cell in self.cells:
            cells.append({f: _json_number(getattr(cell, f)) for f in FIELDS})
        return {"schema": 1, "preset": self.preset.value, "destination": self.destination, "cells": cells}

    @classmethod
    def from_json(cls, doc) -> LadderConfig:
        """Parse the JSON document (dict or string) of a ladder config.

        Numbers may be JSON numbers or strings such as ``"1/3"`` for exact
        rationals.  The uniform shorthand ``{"preset", "n", "p", "rho"}`` is
        also accepted.
        """
        if isinstance(doc, str):
            doc = json.loads(doc)
        schema = doc.get("schema", 1)
        if schema != 1:
            raise ValueError(f"unsupported schema version {schema!r}")
        if "preset" not in doc:
            raise ValueError("config is missing 'preset'")
        preset = as_preset(doc["preset"])
        dest = doc.get("destination", "S")
        if "cells" in doc:
            cells = []
            for k, raw in enumerate(doc["cells"]):
                unknown = set(raw) - set(FIELDS)
                if unknown:
                    raise ValueError(f"cell {k}: unknown fields {sorted(unknown)}")
                cells.append(CellParams(**{f: _parse_number(v) for f, v in raw.items()}))
            return cls.from_cells(preset, cells, dest)
        for key in ("n", "p", "rho"):
            if key not in doc:
                raise ValueError(f"uniform config is missing {key!r}")
        return cls.uniform(preset, int(doc["n"]), _parse_number(doc["p"]), _parse_number(doc["rho"]), dest)


def _parse_number(v):
    if isinstance(v, bool):
        raise ValueError(f"not a number: {v!r}")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    raise ValueError(f"not a number: {v!r}")


def _json_number(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


@dataclass(frozen=True)
class Arc:
    key: tuple
    origin: tuple
    target: tuple
    reliability: object
    bidirectional: bool = False


@dataclass(frozen=True)
class ComponentGraph:
    """Explicit component graph: nodes and arcs carry reliabilities.

    Node keys are ``("S", i)`` / ``("T", i)``; arc keys are ``(field, i)``.
    A bidirectional arc is a single component usable in both directions.
    """

    nodes: dict
    arcs: tuple
    source: tuple
    destination: tuple = field(default=None)

    def components(self) -> list[tuple]:
        """All component keys, sorted by (cell, label)."""
        keys = [("node", k) for k in self.nodes] + [("arc", a.key) for a in self.arcs]
        return sorted(keys, key=component_order)

    def reliability(self, comp):
        kind, key = comp
        if kind == "node":
            return self.nodes[key]
        for a in self.arcs:
            if a.key == key:
                return a.reliability
        raise KeyError(comp)


def component_order(comp):
    kind, key = comp
    return (key[1], key[0], kind)


def expand_graph(config: LadderConfig) -> ComponentGraph:
    """Component graph of a ladder; zero-reliability components are dropped."""
    n = config.n
    nodes = {}
    for i, cell in enumerate(config.cells):
        for f in NODE_FIELDS:
            r = getattr(cell, f)
            if r != 0:
                nodes[(f, i)] = r
    arcs = []
    for i, cell in enumerate(config.cells):
        if i == 0:
            names = ["b", "b_rev"]
        else:
            names = list(ARC_ENDPOINTS)
        for f in names:
            if config.preset.undirected and f in REV_FIELDS:
                continue
            r = getattr(cell, f)
            if r == 0:
                continue
            (o, do), (t, dt) = ARC_ENDPOINTS[f]
            origin = (o, i - 1 + do)
            target = (t, i - 1 + dt)
            if origin not in nodes or target not in nodes:
                continue
            arcs.append(Arc((f, i), origin, target, r, config.preset.undirected))
    return ComponentGraph(nodes, tuple(arcs), ("S", 0), (config.destination, n))
