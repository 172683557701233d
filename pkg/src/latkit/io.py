"""JSON interchange for lattices and posets, plus DOT export of Hasse diagrams.

The lattice file shape is ``{"name"?, "size", "covers", "labels"?,
"pruned_edges"?}``. Covers are written in the canonical element order, so a
file we wrote re-parses to the identical lattice; labels in a hand-written
file are only accepted when the file's covers already are canonical, because
otherwise they would silently attach to the wrong elements.

Posets use ``{"size": n, "lt": [[i, j], ...]}`` with strict-order generator
pairs.
"""
from __future__ import annotations

import json

from .core import FiniteLattice, Poset, from_covers
from .errors import ParameterOutOfRange


def _labels_to_json(labels):
    def conv(x):
        if isinstance(x, (tuple, list, frozenset, set)):
            return [conv(y) for y in (sorted(x) if isinstance(x, (frozenset, set)) else x)]
        return x
    return [conv(l) for l in labels]


def _labels_from_json(raw):
    def conv(x):
        if isinstance(x, list):
            return tuple(conv(y) for y in x)
        return x
    return tuple(conv(l) for l in raw)


def lattice_to_dict(lat: FiniteLattice) -> dict:
    out: dict = {}
    if lat.name:
        out["name"] = lat.name
    out["size"] = lat.n
    out["covers"] = [list(c) for c in sorted(lat.covers)]
    if lat.labels is not None:
        out["labels"] = _labels_to_json(lat.labels)
    if lat.pruned_edges is not None:
        out["pruned_edges"] = [list(e) for e in lat.pruned_edges]
    return out


def lattice_from_dict(data: dict) -> FiniteLattice:
    if not isinstance(data, dict):
        raise ParameterOutOfRange("lattice file must be a JSON object")
    if "size" not in data or "covers" not in data:
        raise ParameterOutOfRange("lattice file needs 'size' and 'covers' fields")
    size = data["size"]
    covers = data["covers"]
    if not isinstance(size, int) or not isinstance(covers, list):
        raise ParameterOutOfRange("'size' must be an integer and 'covers' a list of pairs")
    pairs = []
    for c in covers:
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(x, int) for x in c)):
            raise ParameterOutOfRange(f"cover entry {c!r} is not an index pair")
        pairs.append((c[0], c[1]))
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ParameterOutOfRange("'name' must be a string")
    lat = from_covers(size, pairs, name=name)

    canonical = frozenset(pairs) == lat.covers
    if "labels" in data:
        labels = _labels_from_json(data["labels"])
        if len(labels) != lat.n:
            raise ParameterOutOfRange("label count differs from the element count")
        if not canonical:
            raise ParameterOutOfRange(
                "labels are only accepted when covers are in canonical element order")
        lat.labels = labels
    if "pruned_edges" in data:
        edges = data["pruned_edges"]
        if not canonical:
            raise ParameterOutOfRange(
                "pruned edges are only accepted when covers are in canonical element order")
        out = []
        for e in edges:
            if not (isinstance(e, list) and len(e) == 2 and all(
                    isinstance(x, int) and 0 <= x < lat.n for x in e)):
                raise ParameterOutOfRange(f"pruned edge {e!r} is not an index pair")
            out.append((e[0], e[1]))
        lat.pruned_edges = tuple(out)
    return lat


def save_lattice(lat: FiniteLattice, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(lattice_to_dict(lat), fh, indent=2)
        fh.write("\n")


def load_lattice(path: str) -> FiniteLattice:
    with open(path, encoding="utf-8") as fh:
        return lattice_from_dict(json.load(fh))


def poset_to_dict(poset: Poset) -> dict:
    return {"size": poset.n, "lt": [list(p) for p in sorted(poset.lt_pairs())]}


def poset_from_dict(data: dict) -> Poset:
    if not isinstance(data, dict) or "size" not in data or "lt" not in data:
        raise ParameterOutOfRange("poset file needs 'size' and 'lt' fields")
    size, lt = data["size"], data["lt"]
    if not isinstance(size, int) or not isinstance(lt, list):
        raise ParameterOutOfRange("'size' must be an integer and 'lt' a list of pairs")
    pairs = []
    for p in lt:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) for x in p)):
            raise ParameterOutOfRange(f"order entry {p!r} is not an index pair")
        pairs.append((p[0], p[1]))
    return Poset.from_lt(size, pairs)


def load_poset(path: str) -> Poset:
    with open(path, encoding="utf-8") as fh:
        return poset_from_dict(json.load(fh))


def export_dot(lat: FiniteLattice, *, show_pruned: bool = False,
               label_mode: str = "index") -> str:
    """Hasse diagram in DOT: nodes ranked by height, covers solid, and (with
    ``show_pruned``) the recorded removed product edges dashed."""
    if label_mode not in ("index", "coords"):
        raise ParameterOutOfRange("label mode must be 'index' or 'coords'")
    if label_mode == "coords" and lat.labels is None:
        raise ParameterOutOfRange("lattice carries no coordinate labels")
    if show_pruned and lat.pruned_edges is None:
        raise ParameterOutOfRange("lattice carries no pruned-edge metadata")

    def node_label(x: int) -> str:
        if label_mode == "coords":
            lab = lat.labels[x]
            if isinstance(lab, tuple):
                return "(" + ",".join(str(v) for v in lab) + ")"
            return str(lab)
        return str(x)

    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=ellipse];"]
    for x in range(lat.n):
        lines.append(f'  e{x} [label="{node_label(x)}"];')
    heights = lat.heights()
    for h in range(int(heights.max()) + 1):
        members = [f"e{x};" for x in range(lat.n) if heights[x] == h]
        lines.append("  { rank=same; " + " ".join(members) + " }")
    for lo, hi in sorted(lat.covers):
        lines.append(f"  e{lo} -> e{hi};")
    if show_pruned:
        for lo, hi in lat.pruned_edges:
            lines.append(f"  e{lo} -> e{hi} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
