"""Graphs, list assignments, colorings and LCR instances.

Vertices carry external labels (any mutually comparable hashables). Inside a
graph they are indexed 0..n-1 in ascending label order, so index order is the
vertex total order used by ID-matrices. Colors are dense integers 0..k-1.
"""
from __future__ import annotations

import dataclasses
import itertools
from functools import cached_property
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

Label = Hashable
Coloring = tuple  # tuple[int, ...], indexed by vertex index


@dataclasses.dataclass(frozen=True)
class Graph:
    """Simple undirected graph with labelled vertices.

    Use :meth:`from_edges` to build one; the raw constructor expects labels
    already sorted and adjacency given as bitmasks.
    """

    labels: tuple
    adj: tuple  # adj[i] is a bitmask of the neighbours of vertex i

    @classmethod
    def from_edges(cls, labels: Iterable[Label], edges: Iterable[Sequence[Label]] = ()) -> "Graph":
        labels = tuple(sorted(set(labels)))
        index = {lab: i for i, lab in enumerate(labels)}
        adj = [0] * len(labels)
        for e in edges:
            a, b = e
            if a not in index or b not in index:
                raise ValueError(f"edge {a!r}-{b!r} references an unknown vertex")
            if a == b:
                raise ValueError(f"self-loop at {a!r}")
            i, j = index[a], index[b]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(labels, tuple(adj))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index_of(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"no vertex labelled {label!r}") from None

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @cached_property
    def edges(self) -> tuple:
        """Edges as sorted index pairs ``(i, j)`` with ``i < j``."""
        return tuple((i, j) for i in range(self.n) for j in bits(self.adj[i]) if i < j)

    def label_edges(self) -> set:
        return {frozenset((self.labels[i], self.labels[j])) for i, j in self.edges}

    def mask_of(self, labels: Iterable[Label]) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index_of(lab)
        return m

    def labels_of(self, mask: int) -> frozenset:
        return frozenset(self.labels[i] for i in bits(mask))

    def induced(self, labels: Iterable[Label]) -> "Graph":
        keep = sorted(self.index_of(lab) for lab in set(labels))
        pos = {old: new for new, old in enumerate(keep)}
        adj = []
        for old in keep:
            m = 0
            for u in bits(self.adj[old]):
                if u in pos:
                    m |= 1 << pos[u]
            adj.append(m)
        return Graph(tuple(self.labels[i] for i in keep), tuple(adj))

    def components(self) -> list[frozenset]:
        """Connected components as label sets, ordered by smallest label."""
        seen = 0
        out = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = 1 << v
            frontier = comp
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self.adj[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(self.labels_of(comp))
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class VertexAssignment(NamedTuple):
    """(list, initial color, target color) of one vertex."""

    colors: frozenset
    initial: int
    target: int


@dataclasses.dataclass(frozen=True)
class Instance:
    """An LCR instance ``(G, L, f_ini, f_tar)`` with optional vertex weights.

    ``lists``, ``initial``, ``target`` and ``weights`` are indexed by vertex
    index of ``graph``. Construction fails unless both colorings are proper
    list colorings and every weight is a positive integer.
    """

    graph: Graph
    k: int
    lists: tuple
    initial: tuple
    target: tuple
    weights: tuple = None
    color_names: tuple = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        n = self.graph.n
        if self.k < 1:
            raise ValueError("need at least one color (k >= 1)")
        object.__setattr__(self, "lists", tuple(frozenset(l) for l in self.lists))
        object.__setattr__(self, "initial", tuple(self.initial))
        object.__setattr__(self, "target", tuple(self.target))
        if self.weights is None:
            object.__setattr__(self, "weights", (1,) * n)
        else:
            object.__setattr__(self, "weights", tuple(self.weights))
        if self.color_names is None:
            width = len(str(self.k - 1))
            object.__setattr__(self, "color_names", tuple(str(c).zfill(width) for c in range(self.k)))
        for name, seq in (("lists", self.lists), ("initial", self.initial),
                          ("target", self.target), ("weights", self.weights)):
            if len(seq) != n:
                raise ValueError(f"{name} has {len(seq)} entries for {n} vertices")
        for v, lst in enumerate(self.lists):
            if any(not (0 <= c < self.k) for c in lst):
                raise ValueError(f"list of {self.graph.labels[v]!r} leaves the color set 0..{self.k - 1}")
        for v, w in enumerate(self.weights):
            if not isinstance(w, int) or w < 1:
                raise ValueError(f"weight of {self.graph.labels[v]!r} must be a positive integer, got {w!r}")
        if not is_proper_list_coloring(self.graph, self.lists, self.initial):
            raise ValueError("initial coloring is not a proper list coloring")
        if not is_proper_list_coloring(self.graph, self.lists, self.target):
            raise ValueError("target coloring is not a proper list coloring")

    @classmethod
    def build(
        cls,
        k: int,
        lists: Mapping[Label, Iterable[int]],
        initial: Mapping[Label, int],
        target: Mapping[Label, int],
        edges: Iterable[Sequence[Label]] = (),
        weights: Mapping[Label, int] | None = None,
        color_names: Sequence[str] | None = None,
    ) -> "Instance":
        """Build from label-keyed maps; the vertex set is ``lists.keys()``."""
        g = Graph.from_edges(lists.keys(), edges)
        w = None if weights is None else [weights.get(lab, 1) for lab in g.labels]
        return cls(
            g, k,
            [frozenset(lists[lab]) for lab in g.labels],
            [initial[lab] for lab in g.labels],
            [target[lab] for lab in g.labels],
            w,
            None if color_names is None else tuple(color_names),
        )

    @property
    def n(self) -> int:
        return self.graph.n

    def assignment(self, v: int) -> VertexAssignment:
        return VertexAssignment(self.lists[v], self.initial[v], self.target[v])

    def with_weights(self, weights: Sequence[int]) -> "Instance":
        return dataclasses.replace(self, weights=tuple(weights))

    def coloring_by_label(self, f: Coloring) -> dict:
        return dict(zip(self.graph.labels, f))


def is_proper_list_coloring(g: Graph, lists: Sequence[frozenset], f: Sequence[int]) -> bool:
    if len(f) != g.n:
        return False
    if any(f[v] not in lists[v] for v in range(g.n)):
        return False
    return all(f[i] != f[j] for i, j in g.edges)


def coloring_difference(f: Sequence[int], f2: Sequence[int]) -> set[int]:
    if len(f) != len(f2):
        raise ValueError(f"colorings have different domains ({len(f)} vs {len(f2)} vertices)")
    return {v for v, (a, b) in enumerate(zip(f, f2)) if a != b}


def are_adjacent(f: Sequence[int], f2: Sequence[int]) -> bool:
    return len(coloring_difference(f, f2)) == 1


def restrict(inst: Instance, keep: Iterable[Label]) -> Instance:
    """The instance induced on the vertex labels ``keep``."""
    keep = set(keep)
    missing = keep - set(inst.graph.labels)
    if missing:
        raise ValueError(f"vertices {sorted(missing, key=repr)} are not in the graph")
    sub = inst.graph.induced(keep)
    idx = [inst.graph.index_of(lab) for lab in sub.labels]
    return Instance(
        sub, inst.k,
        [inst.lists[i] for i in idx],
        [inst.initial[i] for i in idx],
        [inst.target[i] for i in idx],
        [inst.weights[i] for i in idx],
        inst.color_names,
    )


def max_clique_size(g: Graph) -> int:
    """Size of a maximum clique, by branching on the lowest candidate vertex."""
    best = 0

    def grow(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        v = (cand & -cand).bit_length() - 1
        grow(size + 1, cand & g.adj[v])
        grow(size, cand & ~(1 << v))

    grow(0, (1 << g.n) - 1)
    return best


def all_list_colorings(g: Graph, lists: Sequence[frozenset]):
    """Every proper list coloring, in lexicographic order of sorted lists."""
    for f in itertools.product(*(sorted(l) for l in lists)):
        if all(f[i] != f[j] for i, j in g.edges):
            yield f
