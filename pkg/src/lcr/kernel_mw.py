"""Kernelization by modular-width.

Children of a parallel PMD-tree node whose ID-matrices coincide induce
identical subgraphs, and all but one of them can be dropped without changing
reachability. Every drop is recorded so that a sequence for the kernel can be
lifted back to the input instance.
"""
from __future__ import annotations

import dataclasses
import math
from typing import Mapping

from .graph import Instance, Label, restrict
from .modular import Kind, Node, pmd_tree


@dataclasses.dataclass(frozen=True)
class IdMatrix:
    """An (m+1) x m matrix: padded adjacency block plus an assignment row.

    Assignment entries are ``(sorted list, initial, target)`` triples, or
    ``None`` past the node's vertex count.
    """

    m: int
    adjacency: tuple
    assignments: tuple

    def rows(self) -> list:
        return [list(r) for r in self.adjacency] + [list(self.assignments)]

    def key(self) -> bytes:
        adj = bytes(x for row in self.adjacency for x in row)
        return adj + b"|" + repr(self.assignments).encode()


def id_matrix(inst: Instance, node: Node, m: int) -> IdMatrix:
    labels = sorted(node.vertices)
    p = len(labels)
    if m < p:
        raise ValueError(f"m={m} is smaller than the node's {p} vertices")
    g = inst.graph
    idx = [g.index_of(lab) for lab in labels]
    adjacency = tuple(
        tuple(int(i < p and j < p and g.has_edge(idx[i], idx[j])) for j in range(m))
        for i in range(m)
    )
    assignments = tuple(
        (tuple(sorted(inst.lists[idx[j]])), inst.initial[idx[j]], inst.target[idx[j]]) if j < p else None
        for j in range(m)
    )
    return IdMatrix(m, adjacency, assignments)


def _identical(inst: Instance, phi: Mapping[int, int], alive: int) -> bool:
    g = inst.graph
    h1 = sum(1 << v for v in phi)
    h2 = sum(1 << v for v in phi.values())
    for v, pv in phi.items():
        for w, pw in phi.items():
            if g.has_edge(v, w) != g.has_edge(pv, pw):
                return False
        if (g.adj[v] & alive & ~h1) != (g.adj[pv] & alive & ~h2):
            return False
        if inst.assignment(v) != inst.assignment(pv):
            return False
    return True


def identical_check(inst: Instance, h1, h2, phi: Mapping[Label, Label]) -> bool:
    """Whether ``h1`` and ``h2`` induce identical subgraphs under ``phi``."""
    h1, h2 = set(h1), set(h2)
    if h1 & h2:
        raise ValueError("the two vertex sets must be disjoint")
    if len(h1) != len(h2):
        raise ValueError("the two vertex sets must have equal size")
    if set(phi) != h1 or set(phi.values()) != h2 or len(set(phi.values())) != len(phi):
        raise ValueError("phi must be a bijection from h1 onto h2")
    g = inst.graph
    idx_phi = {g.index_of(a): g.index_of(b) for a, b in phi.items()}
    return _identical(inst, idx_phi, (1 << g.n) - 1)


@dataclasses.dataclass(frozen=True)
class Reduction:
    removed: tuple
    phi: dict = dataclasses.field(hash=False)


@dataclasses.dataclass(frozen=True)
class ReplayLog:
    """Ordered reductions applied to ``original``; replayed backwards when lifting."""

    original: Instance
    records: tuple = ()

    @property
    def removed(self) -> frozenset:
        return frozenset(lab for r in self.records for lab in r.removed)

    def to_json(self) -> list:
        return [{"removed": list(r.removed), "phi": {str(a): b for a, b in r.phi.items()}}
                for r in self.records]


def kernelize_mw_tree(inst: Instance) -> tuple[Instance, ReplayLog, Node]:
    """Kernelize a connected instance; also returns the maintained PMD-tree."""
    g = inst.graph
    if not g.is_connected():
        raise ValueError("modular-width kernelization needs a connected graph")
    records: list[Reduction] = []
    alive = (1 << g.n) - 1

    def process(node: Node) -> Node:
        nonlocal alive
        if node.is_leaf:
            return node
        children = [process(c) for c in node.children]
        if node.kind is not Kind.PARALLEL:
            return dataclasses.replace(node, children=tuple(children))
        while True:
            m = max(c.size for c in children)
            buckets: dict[bytes, list[Node]] = {}
            for c in children:
                buckets.setdefault(id_matrix(inst, c, m).key(), []).append(c)
            groups = [b for b in buckets.values() if len(b) > 1]
            if not groups:
                break
            for group in groups:
                group.sort(key=lambda c: c.min_label)
                keep = group[0]
                for y in group[1:]:
                    phi = dict(zip(sorted(keep.vertices), sorted(y.vertices)))
                    idx_phi = {g.index_of(a): g.index_of(b) for a, b in phi.items()}
                    assert _identical(inst, idx_phi, alive), "equal ID-matrices must give identical subgraphs"
                    records.append(Reduction(tuple(sorted(y.vertices)), phi))
                    for b in idx_phi.values():
                        alive &= ~(1 << b)
                    children.remove(y)
        if len(children) == 1:
            return children[0]
        return Node.internal(Kind.PARALLEL, children)

    tree = process(pmd_tree(g))
    kernel = restrict(inst, tree.vertices)
    return kernel, ReplayLog(inst, tuple(records)), tree


def kernelize_mw(inst: Instance) -> tuple[Instance, ReplayLog]:
    kernel, log, _ = kernelize_mw_tree(inst)
    return kernel, log


def kernel_bound_log2(i: int, k: int, width: int) -> float:
    """log2 of the kernel size bound g(i) for ``k`` colors and pseudo modular-width ``width``."""
    if i < 1:
        raise ValueError("the bound is defined for i >= 1")
    if k < 1 or width < 2:
        raise ValueError("need k >= 1 and width >= 2")
    per_vertex = k + 2 * math.log2(k)  # log2(2^k * k^2)
    lg = 0.0
    for _ in range(i - 1):
        try:
            prev = 2.0 ** lg
        except OverflowError:
            return math.inf
        lg = math.log2(width) + lg + prev * prev / 2 + prev * per_vertex
    return lg


def kernel_bound(i: int, k: int, width: int) -> float:
    lg = kernel_bound_log2(i, k, width)
    try:
        return 2.0 ** lg
    except OverflowError:
        return math.inf
