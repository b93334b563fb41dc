"""JSON instance/sequence/report formats and the Independent Set edge-list format.

Instance::

    {"k": 3,
     "vertices": [{"id": "a", "list": ["r", "g"], "initial": "r", "target": "g", "weight": 1}, ...],
     "edges": [["a", "b"], ...]}

Color strings are mapped to 0..k-1 in sorted string order.
"""
from __future__ import annotations

import json
import math
from typing import Any, Sequence

from .graph import Instance
from .reduction import IsInstance
from .solver import SolveReport


class FormatError(ValueError):
    """Malformed input file; the message carries the offending location."""


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None


def _expect(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise FormatError(f"{where}: {msg}")


def instance_from_json(data: Any) -> Instance:
    if isinstance(data, str):
        data = _load(data)
    _expect(isinstance(data, dict), "top level", "expected an object")
    k = data.get("k")
    _expect(isinstance(k, int) and not isinstance(k, bool) and k >= 1, "k", f"expected a positive integer, got {k!r}")
    verts = data.get("vertices")
    _expect(isinstance(verts, list), "vertices", "expected a list")
    edges = data.get("edges", [])
    _expect(isinstance(edges, list), "edges", "expected a list")

    seen = set()
    for i, v in enumerate(verts):
        where = f"vertices[{i}]"
        _expect(isinstance(v, dict), where, "expected an object")
        _expect(isinstance(v.get("id"), str), f"{where}.id", "expected a string")
        _expect(v["id"] not in seen, f"{where}.id", f"duplicate id {v['id']!r}")
        seen.add(v["id"])
        lst = v.get("list")
        _expect(isinstance(lst, list) and all(isinstance(c, str) for c in lst), f"{where}.list",
                "expected a list of color strings")
        _expect(len(set(lst)) == len(lst), f"{where}.list", "repeated color")
        for key in ("initial", "target"):
            _expect(isinstance(v.get(key), str), f"{where}.{key}", "expected a color string")
        w = v.get("weight", 1)
        _expect(isinstance(w, int) and not isinstance(w, bool) and w >= 1, f"{where}.weight",
                f"expected a positive integer, got {w!r}")
    for i, e in enumerate(edges):
        _expect(isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e),
                f"edges[{i}]", "expected a pair of vertex ids")
        _expect(e[0] in seen and e[1] in seen, f"edges[{i}]", f"unknown vertex in {e!r}")
        _expect(e[0] != e[1], f"edges[{i}]", "self-loop")

    names = sorted({c for v in verts for c in v["list"] + [v["initial"], v["target"]]})
    _expect(len(names) <= k, "k", f"{len(names)} distinct colors used but k={k}")
    code = {c: i for i, c in enumerate(names)}
    try:
        return Instance.build(
            k,
            {v["id"]: [code[c] for c in v["list"]] for v in verts},
            {v["id"]: code[v["initial"]] for v in verts},
            {v["id"]: code[v["target"]] for v in verts},
            [tuple(e) for e in edges],
            {v["id"]: v.get("weight", 1) for v in verts},
            color_names=names + [str(i) for i in range(len(names), k)],
        )
    except ValueError as e:
        raise FormatError(f"instance: {e}") from None


def instance_to_json(inst: Instance) -> dict:
    g = inst.graph
    names = inst.color_names
    vertices = []
    for v, lab in enumerate(g.labels):
        entry = {
            "id": lab,
            "list": [names[c] for c in sorted(inst.lists[v])],
            "initial": names[inst.initial[v]],
            "target": names[inst.target[v]],
        }
        if inst.weights[v] != 1:
            entry["weight"] = inst.weights[v]
        vertices.append(entry)
    return {
        "k": inst.k,
        "vertices": vertices,
        "edges": [[g.labels[i], g.labels[j]] for i, j in g.edges],
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def sequence_from_json(inst: Instance, data: Any) -> list:
    """Colorings obtained by applying the listed steps to the initial coloring."""
    if isinstance(data, str):
        data = _load(data)
    _expect(isinstance(data, dict) and isinstance(data.get("steps"), list), "steps", "expected {\"steps\": [...]}")
    code = {}
    for c, name in enumerate(inst.color_names):
        code.setdefault(name, c)
    f = list(inst.initial)
    seq = [tuple(f)]
    for i, step in enumerate(data["steps"]):
        where = f"steps[{i}]"
        _expect(isinstance(step, dict), where, "expected an object")
        vid, col = step.get("vertex"), step.get("to")
        try:
            v = inst.graph.index_of(vid)
        except (KeyError, TypeError):
            raise FormatError(f"{where}.vertex: unknown vertex {vid!r}") from None
        _expect(isinstance(col, str) and col in code, f"{where}.to", f"unknown color {col!r}")
        f[v] = code[col]
        seq.append(tuple(f))
    return seq


def sequence_to_json(inst: Instance, seq: Sequence[Sequence[int]]) -> dict:
    steps = []
    for a, b in zip(seq, seq[1:]):
        for v, (x, y) in enumerate(zip(a, b)):
            if x != y:
                steps.append({"vertex": inst.graph.labels[v], "to": inst.color_names[y]})
    return {"steps": steps}


def _number(x):
    if x is None:
        return None
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def report_to_json(inst: Instance, rep: SolveReport) -> dict:
    return {
        "verdict": rep.verdict,
        "length": _number(rep.length),
        "sequence": sequence_to_json(inst, rep.sequence)["steps"] if rep.sequence is not None else None,
        "stats": {k: _number(v) for k, v in rep.stats.items()},
    }


def parse_is_graph(text: str, s: int) -> IsInstance:
    """Edge-list text: first line n, then one ``a b`` pair per line (1-based)."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise FormatError("line 1: missing vertex count")
    lineno, first = rows[0]
    _expect(len(first) == 1 and first[0].isdigit(), f"line {lineno}", "expected the vertex count n")
    n = int(first[0])
    edges = []
    for lineno, parts in rows[1:]:
        _expect(len(parts) == 2 and all(p.isdigit() for p in parts), f"line {lineno}", "expected 'a b'")
        a, b = int(parts[0]), int(parts[1])
        _expect(1 <= a <= n and 1 <= b <= n, f"line {lineno}", f"vertex out of range 1..{n}")
        _expect(a != b, f"line {lineno}", "self-loop")
        edges.append((a, b))
    try:
        return IsInstance.from_edges(n, edges, s)
    except ValueError as e:
        raise FormatError(str(e)) from None
