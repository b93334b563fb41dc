"""Kernelization by vertex cover for the weighted shortest variant.

Independent-side vertices with the same neighbourhood and the same
(list, initial, target) triple are merged, adding up their weights. This keeps
the optimum weighted length unchanged.
"""
from __future__ import annotations

import dataclasses
from typing import Iterable

from .graph import Graph, Instance, Label, bits, restrict
from .kernel_mw import Reduction, ReplayLog


def min_vertex_cover(g: Graph, bound: int) -> frozenset | None:
    """A vertex cover with at most ``bound`` vertices, or None.

    Plain bounded search tree: take an uncovered edge and branch on which
    endpoint joins the cover.
    """
    everything = (1 << g.n) - 1

    def uncovered_edge(cover: int):
        for u in bits(everything & ~cover):
            nb = g.adj[u] & ~cover
            if nb:
                return u, (nb & -nb).bit_length() - 1
        return None

    def branch(cover: int, budget: int) -> int | None:
        e = uncovered_edge(cover)
        if e is None:
            return cover
        if budget == 0:
            return None
        for v in e:
            found = branch(cover | 1 << v, budget - 1)
            if found is not None:
                return found
        return None

    if bound < 0:
        return None
    found = branch(0, bound)
    return None if found is None else g.labels_of(found)


def is_vertex_cover(g: Graph, cover: Iterable[Label]) -> bool:
    c = g.mask_of(cover)
    return all(c >> i & 1 or c >> j & 1 for i, j in g.edges)


def split_partition(g: Graph) -> tuple[frozenset, frozenset] | None:
    """(clique, independent set) if ``g`` is split, else None.

    Degree-sequence test: with degrees d_1 >= ... >= d_n and
    m = max{i : d_i >= i - 1}, the graph is split iff
    sum_{i<=m} d_i == m(m-1) + sum_{i>m} d_i.
    """
    if g.n == 0:
        return frozenset(), frozenset()
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    deg = [g.degree(v) for v in order]
    m = max(i for i in range(1, g.n + 1) if deg[i - 1] >= i - 1)
    if sum(deg[:m]) != m * (m - 1) + sum(deg[m:]):
        return None
    clique = sum(1 << v for v in order[:m])
    rest = ((1 << g.n) - 1) & ~clique
    assert all((g.adj[v] | 1 << v) & clique == clique for v in bits(clique))
    assert all(g.adj[v] & rest == 0 for v in bits(rest))
    return g.labels_of(clique), g.labels_of(rest)


def find_cover(g: Graph) -> frozenset:
    """Clique side for split graphs (minus a redundant vertex), otherwise a minimum cover."""
    split = split_partition(g)
    if split is not None:
        clique, rest = split
        rest_mask = g.mask_of(rest)
        # a clique vertex with no neighbour on the other side is not needed
        for v in sorted(clique):
            if not g.adj[g.index_of(v)] & rest_mask:
                return clique - {v}
        return clique
    for bound in range(g.n + 1):
        cover = min_vertex_cover(g, bound)
        if cover is not None:
            return cover
    raise AssertionError("the full vertex set is always a cover")


@dataclasses.dataclass(frozen=True)
class Merge:
    into: Label
    absorbed: Label
    weight: int  # weight of the absorbed vertex before merging


@dataclasses.dataclass(frozen=True)
class MergeLog:
    original: Instance
    merges: tuple = ()

    def to_json(self) -> list:
        return [{"into": m.into, "absorbed": m.absorbed, "weight": m.weight} for m in self.merges]

    def to_replay_log(self) -> ReplayLog:
        return ReplayLog(self.original, tuple(Reduction((m.absorbed,), {m.into: m.absorbed}) for m in self.merges))


def kernelize_vc(inst: Instance, cover: Iterable[Label]) -> tuple[Instance, MergeLog]:
    g = inst.graph
    cover = frozenset(cover)
    if not cover <= set(g.labels):
        raise ValueError("cover contains unknown vertices")
    if not is_vertex_cover(g, cover):
        raise ValueError("the given vertex set is not a vertex cover")
    cmask = g.mask_of(cover)
    groups: dict[tuple, list[int]] = {}
    for v in bits(((1 << g.n) - 1) & ~cmask):
        a = inst.assignment(v)
        key = (g.adj[v], tuple(sorted(a.colors)), a.initial, a.target)
        groups.setdefault(key, []).append(v)
    weights = list(inst.weights)
    merges = []
    dropped = set()
    for members in groups.values():
        keep = members[0]
        for v in members[1:]:
            merges.append(Merge(g.labels[keep], g.labels[v], inst.weights[v]))
            weights[keep] += weights[v]
            dropped.add(v)
    survivors = [v for v in range(g.n) if v not in dropped]
    kernel = restrict(inst, [g.labels[v] for v in survivors])
    kernel = kernel.with_weights([weights[v] for v in survivors])
    merges.sort(key=lambda m: (g.index_of(m.into), g.index_of(m.absorbed)))
    return kernel, MergeLog(inst, tuple(merges))


def vc_kernel_bound(tau: int, k: int) -> int:
    """Upper bound on surviving independent-side vertices: 2^tau * 2^k * k^2."""
    if tau < 0 or k < 0:
        raise ValueError("tau and k must be non-negative")
    return 2 ** tau * 2 ** k * k * k
