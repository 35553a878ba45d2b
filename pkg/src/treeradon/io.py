"""JSON wire formats with exact rational round-trips.

Every rational is a decimal-free string ("p/q" or "p"); ray lengths are
"inf". Writers emit canonical, sorted JSON so identical inputs produce
byte-identical files; writes go through a temporary file and an atomic
replace.

Formats:
  tree      {"vertices": [...], "edges": [{"u":..., "v":...|null, "len":...}]}
  measure   {"atoms": [{"edge": id, "offset": "p/q", "mass": "p/q"}]}
            (vertex atoms use offset 0 or the full length on the smallest
            incident edge)
  h         {"values": {"<vertex>": "p/q", ...}}
  table     {"flags": [{"x":..., "e": id, "f": id, "value": "p/q"}]}
  plan      {"w2_squared": "p/q", "couplings": [{"src": point, "dst": point,
             "mass": "p/q"}]}
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from typing import Mapping

from .errors import FileFormatError
from .measures import Measure, make_measure
from .radon import FlagTable, VertexFunction, vertex_function
from .rationals import format_rational, parse_rational
from .transport import TransportPlan
from .tree import Tree, TreePoint, build_tree

# ---------------------------------------------------------------------- #
# Generic JSON plumbing                                                     #
# ---------------------------------------------------------------------- #


def save_json(payload, path) -> None:
    """Canonical, atomic JSON write."""
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=True) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path} is not valid JSON: {exc}") from exc


def _rational(raw, context: str) -> Fraction:
    try:
        return parse_rational(raw)
    except (ValueError, TypeError) as exc:
        raise FileFormatError(f"bad rational in {context}: {raw!r}") from exc


# ---------------------------------------------------------------------- #
# Trees                                                                     #
# ---------------------------------------------------------------------- #


def load_tree(path) -> Tree:
    payload = load_json(path)
    if not isinstance(payload, Mapping) or "vertices" not in payload or "edges" not in payload:
        raise FileFormatError(f"{path}: a tree file needs 'vertices' and 'edges'")
    return build_tree(payload)


def save_tree(tree: Tree, path) -> None:
    save_json(tree.describe(), path)


# ---------------------------------------------------------------------- #
# Points and measures                                                       #
# ---------------------------------------------------------------------- #


def point_to_dict(tree: Tree, point: TreePoint) -> dict:
    """Encode a point as edge + offset; vertices ride their smallest
    incident edge at offset 0 (or the full length at the far end)."""
    if point.is_vertex:
        eid = tree.incident_edges(point.vertex)[0]
        rec = tree.edge(eid)
        offset = rec.endpoint_offset(point.vertex)
        return {"edge": eid, "offset": format_rational(offset)}
    return {"edge": point.edge, "offset": format_rational(point.offset)}


def point_from_dict(tree: Tree, payload, context: str = "point") -> TreePoint:
    if not isinstance(payload, Mapping) or "edge" not in payload or "offset" not in payload:
        raise FileFormatError(f"{context}: expected {{'edge', 'offset'}}")
    edge = payload["edge"]
    if not isinstance(edge, int):
        raise FileFormatError(f"{context}: edge id must be an integer")
    return tree.point(edge, _rational(payload["offset"], context))


def measure_to_dict(tree: Tree, measure: Measure) -> dict:
    atoms = []
    for point, mass in measure.atoms:
        entry = point_to_dict(tree, point)
        entry["mass"] = format_rational(mass)
        atoms.append(entry)
    return {"atoms": atoms}


def measure_from_dict(tree: Tree, payload) -> Measure:
    if not isinstance(payload, Mapping) or "atoms" not in payload:
        raise FileFormatError("a measure file needs an 'atoms' list")
    atoms = []
    for i, entry in enumerate(payload["atoms"]):
        point = point_from_dict(tree, entry, context=f"atom {i}")
        if "mass" not in entry:
            raise FileFormatError(f"atom {i} has no mass")
        atoms.append((point, _rational(entry["mass"], f"atom {i}")))
    return make_measure(tree, atoms)


def load_measure(tree: Tree, path) -> Measure:
    return measure_from_dict(tree, load_json(path))


def save_measure(tree: Tree, measure: Measure, path) -> None:
    save_json(measure_to_dict(tree, measure), path)


# ---------------------------------------------------------------------- #
# Vertex functions and flag tables                                          #
# ---------------------------------------------------------------------- #


def vertex_function_to_dict(h: VertexFunction) -> dict:
    return {"values": {str(v): format_rational(x) for v, x in sorted(
        h.values.items(), key=lambda item: str(item[0]))}}


def vertex_function_from_dict(tree: Tree, payload) -> VertexFunction:
    if not isinstance(payload, Mapping) or "values" not in payload:
        raise FileFormatError("an h file needs a 'values' mapping")
    raw = payload["values"]
    if not isinstance(raw, Mapping):
        raise FileFormatError("'values' must map vertex ids to rationals")
    by_name = {str(v): v for v in tree.vertices}
    values = {}
    for key, value in raw.items():
        vertex = by_name.get(str(key))
        if vertex is None:
            raise FileFormatError(f"unknown vertex {key!r} in h file")
        values[vertex] = _rational(value, f"h[{key}]")
    return vertex_function(tree, values)


def load_vertex_function(tree: Tree, path) -> VertexFunction:
    return vertex_function_from_dict(tree, load_json(path))


def save_vertex_function(h: VertexFunction, path) -> None:
    save_json(vertex_function_to_dict(h), path)


def flag_table_to_dict(table: FlagTable) -> dict:
    rows = []
    for flag, value in table.values.items():
        e, f = flag.edges
        rows.append({"x": flag.vertex, "e": e, "f": f,
                     "value": format_rational(value)})
    rows.sort(key=lambda row: (str(row["x"]), row["e"], row["f"]))
    return {"flags": rows}


def flag_table_from_dict(tree: Tree, payload) -> FlagTable:
    if not isinstance(payload, Mapping) or "flags" not in payload:
        raise FileFormatError("a flag table file needs a 'flags' list")
    values = {}
    for i, row in enumerate(payload["flags"]):
        try:
            flag = tree.flag(_resolve_vertex(tree, row["x"]), row["e"], row["f"])
            values[flag] = _rational(row["value"], f"flag row {i}")
        except KeyError as exc:
            raise FileFormatError(f"flag row {i} missing key {exc}") from None
    return FlagTable(values)


def _resolve_vertex(tree: Tree, raw):
    if tree.has_vertex(raw):
        return raw
    for v in tree.vertices:
        if str(v) == str(raw):
            return v
    raise FileFormatError(f"unknown vertex {raw!r}")


def load_flag_table(tree: Tree, path) -> FlagTable:
    return flag_table_from_dict(tree, load_json(path))


def save_flag_table(table: FlagTable, path) -> None:
    save_json(flag_table_to_dict(table), path)


# ---------------------------------------------------------------------- #
# Transport plans                                                           #
# ---------------------------------------------------------------------- #


def plan_to_dict(tree: Tree, plan: TransportPlan) -> dict:
    return {
        "w2_squared": format_rational(plan.squared_cost),
        "couplings": [
            {
                "src": point_to_dict(tree, src),
                "dst": point_to_dict(tree, dst),
                "mass": format_rational(mass),
            }
            for src, dst, mass in plan.couplings
        ],
    }


def save_plan(tree: Tree, plan: TransportPlan, path) -> None:
    save_json(plan_to_dict(tree, plan), path)
