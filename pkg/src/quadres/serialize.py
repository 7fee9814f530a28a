"""JSON and Graphviz DOT export/import for diagrams and complexes."""

from __future__ import annotations

import json
from pathlib import Path

from .complex import FreeComplex
from .diagram import Diagram, Edge
from .ring import RingSpec


def dumps(obj: dict) -> str:
    # fixed formatting keeps export -> import -> export byte-identical
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def diagram_to_json(diagram: Diagram) -> dict:
    return {
        "spec": diagram.spec.to_json(),
        "initial": diagram.initial_label,
        "levels": diagram.ranks,
        "vertices": [{"id": v.id, "level": v.level} for v in diagram.vertices()],
        "edges": [
            {"from": e.source, "to": e.target, "label": e.label, "sign": e.sign}
            for e in diagram.edges
        ],
    }


def diagram_from_json(data: dict) -> Diagram:
    spec = RingSpec.from_json(data["spec"])
    nlev = len(data["levels"])
    levels: list[list[int]] = [[] for _ in range(nlev)]
    for v in data["vertices"]:
        levels[v["level"]].append(v["id"])
    if [len(ids) for ids in levels] != list(data["levels"]):
        raise ValueError("vertex list disagrees with the per-level counts")
    edges = tuple(Edge(e["from"], e["to"], e["label"], e["sign"]) for e in data["edges"])
    return Diagram(spec, data["initial"], tuple(tuple(ids) for ids in levels), edges)


def complex_to_json(cx: FreeComplex) -> dict:
    return cx.to_json()


def complex_from_json(data: dict) -> FreeComplex:
    return FreeComplex.from_json(data)


def save_json(obj: dict, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def load_json(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def diagram_to_dot(diagram: Diagram, name: str = "diagram") -> str:
    """One rank per level, levels stacked bottom to top."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=point, width=0.08];"]
    for lvl, ids in enumerate(diagram.levels):
        members = " ".join(f"v{v};" for v in ids)
        lines.append(f"  {{ rank=same; /* level {lvl} */ {members} }}")
    for e in diagram.edges:
        label = f"{'-' if e.sign < 0 else ''}x{e.label}"
        style = ', style=dashed' if e.sign < 0 else ""
        lines.append(f'  v{e.source} -> v{e.target} [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
