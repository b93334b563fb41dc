"""Modules, substitution trees, MD-trees and PMD-trees.

The decomposition is the classical recursive one: a disconnected graph gets a
parallel root, a graph with disconnected complement a series root, and
otherwise the vertex set splits into maximal strong modules under a prime
root. Maximal modules are found by module closure (add splitters until
stable), which is cubic-ish but fine at kernel scale.
"""
from __future__ import annotations

import dataclasses
import enum
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .graph import Graph, Label, bits


class Kind(str, enum.Enum):
    LEAF = "leaf"
    SERIES = "series"
    PARALLEL = "parallel"
    PRIME = "prime"
    JOIN = "2-join"


@dataclasses.dataclass(frozen=True)
class Node:
    """A substitution-tree node.

    ``quotient`` holds the quotient-graph edges as position pairs ``(a, b)``
    with ``a < b`` into ``children``. Leaves carry one vertex label.
    """

    kind: Kind
    children: tuple = ()
    quotient: frozenset = frozenset()
    vertex: Label = None

    @classmethod
    def leaf(cls, vertex: Label) -> "Node":
        return cls(Kind.LEAF, vertex=vertex)

    @classmethod
    def internal(cls, kind: Kind, children: Sequence["Node"], quotient: Iterable[tuple] | None = None) -> "Node":
        p = len(children)
        if quotient is None:
            if kind in (Kind.SERIES, Kind.JOIN):
                quotient = [(a, b) for a in range(p) for b in range(a + 1, p)]
            elif kind is Kind.PARALLEL:
                quotient = []
            else:
                raise ValueError("prime nodes need an explicit quotient")
        q = frozenset((min(a, b), max(a, b)) for a, b in quotient)
        return cls(kind, tuple(children), q)

    @property
    def is_leaf(self) -> bool:
        return self.kind is Kind.LEAF

    @cached_property
    def vertices(self) -> frozenset:
        if self.is_leaf:
            return frozenset([self.vertex])
        return frozenset().union(*(c.vertices for c in self.children))

    @cached_property
    def size(self) -> int:
        return len(self.vertices)

    @cached_property
    def min_label(self):
        return min(self.vertices)

    def quotient_graph(self) -> Graph:
        return Graph.from_edges(range(len(self.children)), self.quotient)

    def walk(self) -> Iterator["Node"]:
        """Pre-order traversal."""
        yield self
        for c in self.children:
            yield from c.walk()


def is_module(g: Graph, labels: Iterable[Label]) -> bool:
    m = g.mask_of(labels)
    outside = None
    for v in bits(m):
        nb = g.adj[v] & ~m
        if outside is None:
            outside = nb
        elif nb != outside:
            return False
    return True


def substitute(q: Graph, parts: Sequence[Graph]) -> Graph:
    """The Q-substitution of ``parts``; ``parts[i]`` replaces the i-th vertex of ``q``."""
    if len(parts) != q.n:
        raise ValueError(f"quotient has {q.n} nodes but {len(parts)} graphs were given")
    if q.n < 2:
        raise ValueError("a quotient graph needs at least two nodes")
    labels = [lab for h in parts for lab in h.labels]
    if len(set(labels)) != len(labels):
        raise ValueError("substituted graphs must be vertex-disjoint")
    edges = [(h.labels[i], h.labels[j]) for h in parts for i, j in h.edges]
    for a, b in q.edges:
        edges.extend((x, y) for x in parts[a].labels for y in parts[b].labels)
    return Graph.from_edges(labels, edges)


def evaluate(node: Node) -> Graph:
    """The graph represented by a substitution tree."""
    if node.is_leaf:
        return Graph.from_edges([node.vertex])
    return substitute(node.quotient_graph(), [evaluate(c) for c in node.children])


# -- decomposition ----------------------------------------------------------

def _module_closure(g: Graph, total: int, seed: int) -> int:
    m = seed
    changed = True
    while changed and m != total:
        changed = False
        for z in bits(total & ~m):
            hit = g.adj[z] & m
            if hit and hit != m:
                m |= 1 << z
                changed = True
    return m


def _split(g: Graph, total: int, adjacency) -> list[int]:
    parts = []
    rest = total
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= adjacency(u)
            frontier = nxt & total & ~comp
            comp |= frontier
        parts.append(comp)
        rest &= ~comp
    return parts


def _maximal_modules(g: Graph, total: int) -> list[int]:
    # valid only when G[total] and its complement are both connected: the
    # maximal proper modules then partition the vertex set
    parts = []
    rest = total
    while rest:
        v = (rest & -rest).bit_length() - 1
        part = 1 << v
        for u in bits(rest & ~part):
            if _module_closure(g, total, (1 << v) | (1 << u)) != total:
                part |= 1 << u
        parts.append(part)
        rest &= ~part
    return parts


def _decompose(g: Graph, total: int) -> Node:
    if total & (total - 1) == 0:
        return Node.leaf(g.labels[total.bit_length() - 1])
    comps = _split(g, total, lambda u: g.adj[u])
    if len(comps) > 1:
        return Node.internal(Kind.PARALLEL, [_decompose(g, c) for c in _sorted(comps)])
    cocomps = _split(g, total, lambda u: ~g.adj[u] & ~(1 << u))
    if len(cocomps) > 1:
        return Node.internal(Kind.SERIES, [_decompose(g, c) for c in _sorted(cocomps)])
    parts = _sorted(_maximal_modules(g, total))
    assert len(parts) >= 4, "a prime quotient over maximal strong modules has at least 4 nodes"
    reps = [(p & -p).bit_length() - 1 for p in parts]
    quotient = [(a, b) for a in range(len(parts)) for b in range(a + 1, len(parts))
                if g.has_edge(reps[a], reps[b])]
    return Node.internal(Kind.PRIME, [_decompose(g, p) for p in parts], quotient)


def _sorted(masks: list[int]) -> list[int]:
    # children ordered by smallest vertex, i.e. smallest label
    return sorted(masks, key=lambda m: m & -m)


def compute_md_tree(g: Graph) -> Node:
    """The modular decomposition tree of ``g`` (n >= 1)."""
    if g.n == 0:
        raise ValueError("cannot decompose the empty graph")
    return _decompose(g, (1 << g.n) - 1)


def is_prime_graph(q: Graph) -> bool:
    if q.n < 4:
        return False
    total = (1 << q.n) - 1
    return all(_module_closure(q, total, (1 << a) | (1 << b)) == total
               for a in range(q.n) for b in range(a + 1, q.n))


def _complete(node: Node) -> bool:
    p = len(node.children)
    return len(node.quotient) == p * (p - 1) // 2


def _check_node(node: Node, kinds: set) -> None:
    if node.kind not in kinds:
        raise ValueError(f"{node.kind.value} node not allowed here")
    if node.is_leaf:
        if node.children:
            raise ValueError("leaf with children")
        return
    p = len(node.children)
    if p < 2:
        raise ValueError("internal node with fewer than two children")
    if any(not (0 <= a < b < p) for a, b in node.quotient):
        raise ValueError("quotient edge outside child range")
    if node.kind in (Kind.SERIES, Kind.JOIN) and not _complete(node):
        raise ValueError(f"{node.kind.value} quotient is not complete")
    if node.kind is Kind.JOIN and p != 2:
        raise ValueError("2-join node must have exactly two children")
    if node.kind is Kind.PARALLEL and node.quotient:
        raise ValueError("parallel quotient has edges")
    if node.kind is Kind.PRIME and not is_prime_graph(node.quotient_graph()):
        raise ValueError("prime node quotient is not prime")
    for c in node.children:
        if c.kind is node.kind and node.kind in (Kind.SERIES, Kind.PARALLEL):
            raise ValueError(f"{node.kind.value} node has a {node.kind.value} child")


def is_md_tree(root: Node) -> bool:
    try:
        for node in root.walk():
            _check_node(node, {Kind.LEAF, Kind.SERIES, Kind.PARALLEL, Kind.PRIME})
    except ValueError:
        return False
    return True


def is_pmd_tree(root: Node) -> bool:
    try:
        for node in root.walk():
            _check_node(node, {Kind.LEAF, Kind.JOIN, Kind.PARALLEL, Kind.PRIME})
    except ValueError:
        return False
    return True


def md_to_pmd(root: Node) -> Node:
    """Binarize series nodes into right-leaning chains of 2-join nodes."""
    if not is_md_tree(root):
        raise ValueError("input is not an MD-tree")
    return _binarize(root)


def _binarize(node: Node) -> Node:
    if node.is_leaf:
        return node
    children = [_binarize(c) for c in node.children]
    if node.kind is not Kind.SERIES:
        return dataclasses.replace(node, children=tuple(children))
    chain = Node.internal(Kind.JOIN, children[-2:])
    for y in reversed(children[:-2]):
        chain = Node.internal(Kind.JOIN, [y, chain])
    return chain


def modular_width(root: Node) -> int:
    return max((len(x.children) for x in root.walk() if x.kind is Kind.PRIME), default=0)


def pseudo_modular_width(root: Node) -> int:
    return max((len(x.children) for x in root.walk()
                if not x.is_leaf and x.kind is not Kind.PARALLEL), default=0)


def pmd_tree(g: Graph) -> Node:
    return md_to_pmd(compute_md_tree(g))


def format_tree(node: Node, indent: int = 0) -> str:
    """Indented text dump of a tree, for debugging."""
    pad = "  " * indent
    if node.is_leaf:
        return f"{pad}leaf {node.vertex}"
    line = f"{pad}{node.kind.value} ({len(node.children)} children)"
    if node.kind is Kind.PRIME:
        line += " quotient " + " ".join(f"{a}-{b}" for a, b in sorted(node.quotient))
    return "\n".join([line] + [format_tree(c, indent + 1) for c in node.children])
