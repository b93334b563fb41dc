"""Seeded instance generators for test corpora.

Every generator is a pure function of its arguments and a ``random.Random``;
the initial coloring comes from first-fit in a random vertex order, lists are
padded around it, and the target is either reached by a random walk
(``mode="reachable"``) or drawn independently (``mode="independent"``).
"""
from __future__ import annotations

import random

from .graph import Graph, Instance
from .reduction import IsInstance, reduce_is_to_lcr

MODES = ("reachable", "independent")
FAMILIES = ("random", "cograph", "split", "reduction")
MAX_TRIES = 1000


def _labels(n: int) -> list[str]:
    width = len(str(max(n - 1, 0)))
    return [f"v{i:0{width}d}" for i in range(n)]


def _first_fit(g: Graph, k: int, rng: random.Random, allowed=None) -> list[int] | None:
    order = list(range(g.n))
    rng.shuffle(order)
    f = [None] * g.n
    for v in order:
        taken = {f[u] for u in g.neighbors(v)}
        choices = range(k) if allowed is None else sorted(allowed[v])
        free = [c for c in choices if c not in taken]
        if not free:
            return None
        f[v] = free[0]
    return f


def _walk(g: Graph, lists, f: list[int], steps: int, rng: random.Random) -> list[int]:
    f = list(f)
    for _ in range(steps):
        moves = [(v, c) for v in range(g.n) for c in sorted(lists[v])
                 if c != f[v] and all(f[u] != c for u in g.neighbors(v))]
        if not moves:
            break
        v, c = rng.choice(moves)
        f[v] = c
    return f


def color_graph(g: Graph, k: int, rng: random.Random, mode: str = "reachable",
                max_weight: int = 1) -> Instance | None:
    """Random lists and colorings on ``g``; None if first-fit needs more than k colors."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    f = _first_fit(g, k, rng)
    if f is None:
        return None
    perm = list(range(k))
    rng.shuffle(perm)
    f = [perm[c] for c in f]
    lists = [{f[v]} | {c for c in range(k) if rng.random() < 0.5} for v in range(g.n)]
    if mode == "reachable":
        target = _walk(g, lists, f, rng.randint(0, 2 * g.n), rng)
    else:
        target = _first_fit(g, k, rng, lists)
        if target is None:
            target = f
        else:
            target = _walk(g, lists, target, g.n, rng)
    # renumber used colors densely so the instance survives a JSON round trip
    used = sorted(set().union(*lists)) if lists else []
    code = {c: i for i, c in enumerate(used)}
    weights = [rng.randint(1, max_weight) for _ in range(g.n)]
    return Instance(g, k, [{code[c] for c in l} for l in lists],
                    [code[c] for c in f], [code[c] for c in target], weights)


def random_connected_graph(n: int, rng: random.Random, p: float = 0.3) -> Graph:
    labels = _labels(n)
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    edges |= {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    return Graph.from_edges(labels, [(labels[i], labels[j]) for i, j in edges])


def random_cograph(n: int, rng: random.Random, connected: bool = True) -> Graph:
    """Cograph from a random cotree; the root is a join when ``connected``."""
    labels = _labels(n)
    edges = []

    def build(vs: list[int], join: bool) -> None:
        if len(vs) == 1:
            return
        parts = rng.randint(2, min(3, len(vs)))
        cuts = sorted(rng.sample(range(1, len(vs)), parts - 1))
        groups = [vs[a:b] for a, b in zip([0] + cuts, cuts + [len(vs)])]
        for a in range(len(groups)):
            build(groups[a], not join)
            if join:
                for b in range(a + 1, len(groups)):
                    edges.extend((labels[x], labels[y]) for x in groups[a] for y in groups[b])

    order = list(range(n))
    rng.shuffle(order)
    build(order, connected or rng.random() < 0.5)
    return Graph.from_edges(labels, edges)


def random_split_graph(n: int, k: int, rng: random.Random) -> tuple[Graph, frozenset]:
    """Split graph with a clique side of at most ``k`` vertices; returns (graph, clique)."""
    labels = _labels(n)
    order = list(range(n))
    rng.shuffle(order)
    c = rng.randint(1, max(1, min(k, n)))
    clique, rest = order[:c], order[c:]
    edges = [(labels[a], labels[b]) for i, a in enumerate(clique) for b in clique[i + 1:]]
    for v in rest:
        nb = [u for u in clique if rng.random() < 0.5]
        if len(nb) == k:
            nb.pop()
        edges.extend((labels[v], labels[u]) for u in nb)
    return Graph.from_edges(labels, edges), frozenset(labels[i] for i in clique)


def random_is_instance(n: int, s: int, rng: random.Random, p: float = 0.4) -> IsInstance:
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
    return IsInstance.from_edges(n, edges, s)


def generate(family: str, n: int, k: int, seed: int, mode: str = "reachable",
             s: int = 2, max_weight: int = 1) -> Instance:
    """One instance of ``family``; identical arguments give identical instances."""
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}")
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    if family == "reduction":
        return reduce_is_to_lcr(random_is_instance(n, min(s, n), rng))
    for _ in range(MAX_TRIES):
        if family == "random":
            g = random_connected_graph(n, rng)
        elif family == "cograph":
            g = random_cograph(n, rng)
        else:
            g, _clique = random_split_graph(n, k, rng)
        inst = color_graph(g, k, rng, mode, max_weight)
        if inst is not None:
            return inst
    raise ValueError(f"could not color a {family} graph on {n} vertices with {k} colors")
