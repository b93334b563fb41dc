"""LCR instances from Independent Set instances.

Selection vertex v_i picks a vertex of H through its color c_i^p. A forbidding
vertex adjacent to v_i and v_j with list {c_i^q, c_j^p} blocks the pair
(v_i = c_i^q, v_j = c_j^p). The lock w1 - w2 can only swap a/b if w2 visits
"key", which needs every selection vertex off "key" at the same time, i.e. an
independent set of size s.
"""
from __future__ import annotations

import dataclasses
import itertools

from .graph import Graph, Instance
from .kernel_vc import is_vertex_cover
from .solver import cover_reachable


@dataclasses.dataclass(frozen=True)
class IsInstance:
    """A graph H (vertices u_1..u_n in label order) and a target size s."""

    graph: Graph
    s: int

    def __post_init__(self):
        if not 0 <= self.s <= self.graph.n:
            raise ValueError(f"need 0 <= s <= n, got s={self.s}, n={self.graph.n}")

    @classmethod
    def from_edges(cls, n: int, edges, s: int) -> "IsInstance":
        return cls(Graph.from_edges(range(1, n + 1), edges), s)


def color_name(i: int, p: int) -> str:
    return f"c{i}_{p}"


def gadget_label(i: int, j: int, p: int, q: int) -> str:
    return f"x{i}_{j}_{p}_{q}"


@dataclasses.dataclass(frozen=True)
class GadgetPlan:
    selection: tuple
    forbidding: dict  # label -> (i, j, p, q)
    w1: str
    w2: str
    lists: dict  # label -> tuple of color names
    edges: tuple


def plan_reduction(h: IsInstance) -> GadgetPlan:
    n, s = h.graph.n, h.s
    selection = tuple(f"v{i}" for i in range(1, s + 1))
    lists = {f"v{i}": ("key",) + tuple(color_name(i, p) for p in range(1, n + 1)) for i in range(1, s + 1)}
    lists["w1"] = ("a", "b")
    lists["w2"] = ("a", "b", "key")
    edges = [("w1", "w2")] + [("w2", v) for v in selection]
    pairs = [(p, p) for p in range(1, n + 1)]
    for a, b in h.graph.edges:
        pairs += [(a + 1, b + 1), (b + 1, a + 1)]
    forbidding = {}
    for i, j in itertools.combinations(range(1, s + 1), 2):
        for p, q in pairs:
            x = gadget_label(i, j, p, q)
            forbidding[x] = (i, j, p, q)
            lists[x] = (color_name(i, q), color_name(j, p))
            edges += [(x, f"v{i}"), (x, f"v{j}")]
    return GadgetPlan(selection, forbidding, "w1", "w2", lists, tuple(edges))


def reduce_is_to_lcr(h: IsInstance) -> Instance:
    plan = plan_reduction(h)
    names = sorted({c for l in plan.lists.values() for c in l})
    code = {c: i for i, c in enumerate(names)}
    initial = {v: code["key"] for v in plan.selection}
    target = dict(initial)
    initial.update(w1=code["a"], w2=code["b"])
    target.update(w1=code["b"], w2=code["a"])
    for x in plan.forbidding:
        cols = sorted(code[c] for c in plan.lists[x])
        initial[x] = cols[0]
        target[x] = cols[-1]
    lists = {v: [code[c] for c in l] for v, l in plan.lists.items()}
    return Instance.build(len(names), lists, initial, target, plan.edges, color_names=names)


def has_independent_set(g: Graph, s: int) -> bool:
    """Brute force over s-subsets."""
    return any(all(not g.has_edge(a, b) for a, b in itertools.combinations(sub, 2))
               for sub in itertools.combinations(range(g.n), s))


def reduction_cover(h: IsInstance) -> frozenset:
    return frozenset(("w2",) + tuple(f"v{i}" for i in range(1, h.s + 1)))


def cover_bound_of_reduction(h: IsInstance) -> int:
    inst = reduce_is_to_lcr(h)
    assert is_vertex_cover(inst.graph, reduction_cover(h)), "w2 plus the selection vertices must cover G"
    return h.s + 1


def verify_reduction(h: IsInstance, cap: int | None = None) -> bool:
    """Whether IS(H, s) and reachability of the generated instance agree."""
    inst = reduce_is_to_lcr(h)
    lcr_yes = cover_reachable(inst, reduction_cover(h), cap).yes
    return lcr_yes == has_independent_set(h.graph, h.s)
