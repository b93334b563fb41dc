"""Exact search over the coloring graph, kernel pipelines and sequence lifting.

The coloring graph has one node per proper list coloring and an edge between
colorings that differ at a single vertex. States are packed as mixed-radix
integers over each vertex's sorted list.
"""
from __future__ import annotations

import dataclasses
import heapq
import math
import os
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

from .graph import Instance, Label, are_adjacent, is_proper_list_coloring, restrict
from .kernel_mw import ReplayLog, kernelize_mw
from .kernel_vc import find_cover, is_vertex_cover, kernelize_vc

DEFAULT_STATE_CAP = 10 ** 7
STRATEGIES = ("auto", "brute", "kernel-mw", "kernel-vc", "cover")


class StateLimitExceeded(RuntimeError):
    """The search would visit more states than the configured cap."""


def state_cap(cap: int | None = None) -> int:
    if cap is None:
        cap = int(os.environ.get("LCR_STATE_CAP", DEFAULT_STATE_CAP))
    if cap < 1:
        raise ValueError("state cap must be at least 1")
    return cap


@dataclasses.dataclass
class SolveReport:
    verdict: str  # "yes", "no" or "too-large"
    sequence: list | None = None
    length: int | float | None = None
    stats: dict = dataclasses.field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.verdict == "yes"


class _StateSpace:
    def __init__(self, inst: Instance):
        self.inst = inst
        g = inst.graph
        self.n = g.n
        self.lists = [sorted(l) for l in inst.lists]
        self.nbrs = [g.neighbors(v) for v in range(g.n)]
        self.mult = []
        m = 1
        for l in self.lists:
            self.mult.append(m)
            m *= max(len(l), 1)
        self.pos = [{c: j for j, c in enumerate(l)} for l in self.lists]

    def encode(self, f: Sequence[int]) -> int:
        return sum(self.pos[v][f[v]] * self.mult[v] for v in range(self.n))

    def decode(self, s: int) -> tuple:
        return tuple(self.lists[v][(s // self.mult[v]) % len(self.lists[v])] for v in range(self.n))

    def moves(self, s: int):
        """Yield ``(next_state, recolored_vertex)`` for every single-vertex recoloring."""
        f = self.decode(s)
        for v in range(self.n):
            here = self.pos[v][f[v]]
            taken = {f[u] for u in self.nbrs[v]}
            for j, c in enumerate(self.lists[v]):
                if j != here and c not in taken:
                    yield s + (j - here) * self.mult[v], v


def _path(parent: dict, end: int, space: _StateSpace) -> list:
    path = [end]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return [space.decode(s) for s in reversed(path)]


def brute_force_reachable(inst: Instance, cap: int | None = None) -> SolveReport:
    """Breadth-first search from the initial coloring; the sequence is a shortest one."""
    cap = state_cap(cap)
    space = _StateSpace(inst)
    start, goal = space.encode(inst.initial), space.encode(inst.target)
    parent = {start: None}
    queue = deque([start])
    while queue and goal not in parent:
        s = queue.popleft()
        for t, _ in space.moves(s):
            if t not in parent:
                parent[t] = s
                if len(parent) > cap:
                    raise StateLimitExceeded(f"more than {cap} colorings reachable")
                queue.append(t)
    stats = {"states": len(parent)}
    if goal in parent:
        path = _path(parent, goal, space)
        return SolveReport("yes", path, len(path) - 1, stats)
    return SolveReport("no", stats=stats)


def reachable_colorings(inst: Instance, cap: int | None = None) -> set:
    """Every coloring in the component of the coloring graph containing the initial one."""
    cap = state_cap(cap)
    space = _StateSpace(inst)
    start = space.encode(inst.initial)
    seen = {start}
    stack = [start]
    while stack:
        s = stack.pop()
        for t, _ in space.moves(s):
            if t not in seen:
                seen.add(t)
                if len(seen) > cap:
                    raise StateLimitExceeded(f"more than {cap} colorings reachable")
                stack.append(t)
    return {space.decode(s) for s in seen}


def shortest_weighted(inst: Instance, cap: int | None = None) -> SolveReport:
    """Dijkstra where recoloring v costs w(v); length is the optimum or inf."""
    cap = state_cap(cap)
    space = _StateSpace(inst)
    w = inst.weights
    start, goal = space.encode(inst.initial), space.encode(inst.target)
    dist = {start: 0}
    parent = {start: None}
    heap = [(0, start)]
    done = set()
    while heap:
        d, s = heapq.heappop(heap)
        if s in done:
            continue
        done.add(s)
        if s == goal:
            break
        for t, v in space.moves(s):
            nd = d + w[v]
            if t not in dist or nd < dist[t]:
                dist[t] = nd
                parent[t] = s
                if len(dist) > cap:
                    raise StateLimitExceeded(f"more than {cap} colorings reachable")
                heapq.heappush(heap, (nd, t))
    stats = {"states": len(dist)}
    if goal in done:
        return SolveReport("yes", _path(parent, goal, space), dist[goal], stats)
    return SolveReport("no", None, math.inf, stats)


def cover_reachable(inst: Instance, cover: Iterable[Label] | None = None, cap: int | None = None) -> SolveReport:
    """Decide reachability by searching over colorings of a vertex cover only.

    For a fixed coloring c of the cover W, the proper extensions to the
    independent side form a product of nonempty sets and are all mutually
    reachable. Recoloring u in W from c to c' is possible from some extension
    iff every independent neighbour x of u keeps a color outside both c(N(x))
    and c'(u). Searching this quotient is therefore exact, and a witness
    sequence is rebuilt by moving blocking neighbours out of the way first.
    """
    cap = state_cap(cap)
    g = inst.graph
    cover = find_cover(g) if cover is None else frozenset(cover)
    if not is_vertex_cover(g, cover):
        raise ValueError("the given vertex set is not a vertex cover")
    wv = sorted(g.index_of(lab) for lab in cover)
    slot = {v: i for i, v in enumerate(wv)}
    others = [v for v in range(g.n) if v not in slot]
    wlists = [sorted(inst.lists[v]) for v in wv]
    w_nbrs = [[slot[u] for u in g.neighbors(v) if u in slot] for v in wv]
    i_nbrs = [[x for x in g.neighbors(v) if x not in slot] for v in wv]
    x_nbrs = {x: [slot[u] for u in g.neighbors(x)] for x in others}

    def free(x: int, c: tuple) -> set:
        return inst.lists[x] - {c[i] for i in x_nbrs[x]}

    def moves(c: tuple):
        for i, v in enumerate(wv):
            taken = {c[j] for j in w_nbrs[i]}
            for col in wlists[i]:
                if col == c[i] or col in taken:
                    continue
                if all(free(x, c) - {col} for x in i_nbrs[i]):
                    yield c[:i] + (col,) + c[i + 1:]

    start = tuple(inst.initial[v] for v in wv)
    goal = tuple(inst.target[v] for v in wv)
    parent = {start: None}
    queue = deque([start])
    while queue and goal not in parent:
        c = queue.popleft()
        for t in moves(c):
            if t not in parent:
                parent[t] = c
                if len(parent) > cap:
                    raise StateLimitExceeded(f"more than {cap} cover colorings reachable")
                queue.append(t)
    stats = {"states": len(parent), "cover": len(wv)}
    if goal not in parent:
        return SolveReport("no", stats=stats)
    path = [goal]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()

    f = list(inst.initial)
    seq = [tuple(f)]

    def recolor(v: int, col: int) -> None:
        f[v] = col
        seq.append(tuple(f))

    for c, c2 in zip(path, path[1:]):
        i = next(j for j in range(len(wv)) if c[j] != c2[j])
        new = c2[i]
        for x in i_nbrs[i]:
            if f[x] == new:
                recolor(x, min(free(x, c) - {new}))
        recolor(wv[i], new)
    for x in others:
        if f[x] != inst.target[x]:
            recolor(x, inst.target[x])
    return SolveReport("yes", seq, stats=stats)


def validate_sequence(inst: Instance, seq: Sequence[Sequence[int]]) -> bool:
    """Proper colorings throughout, single-vertex steps, correct endpoints."""
    if not seq:
        return False
    seq = [tuple(f) for f in seq]
    if seq[0] != inst.initial or seq[-1] != inst.target:
        return False
    if not all(is_proper_list_coloring(inst.graph, inst.lists, f) for f in seq):
        return False
    return all(are_adjacent(a, b) for a, b in zip(seq, seq[1:]))


def sequence_length(inst: Instance, seq: Sequence[Sequence[int]]) -> int:
    """Weighted length: sum of the weights of the recolored vertices."""
    total = 0
    for a, b in zip(seq, seq[1:]):
        (v,) = [i for i, (x, y) in enumerate(zip(a, b)) if x != y]
        total += inst.weights[v]
    return total


def lift_sequence(seq: Sequence[Sequence[int]], log: ReplayLog) -> list:
    """Turn a sequence for the kernel into one for ``log.original``.

    Removed copies follow their twins: each coloring is extended by copying the
    twin's color, and a step that recolors a twin is followed by the same step
    on its copy.
    """
    original = log.original
    kernel_labels = sorted(set(original.graph.labels) - log.removed)
    current = []
    for f in seq:
        if len(f) != len(kernel_labels):
            raise ValueError(f"sequence has {len(f)} vertices, the kernel has {len(kernel_labels)}")
        current.append(dict(zip(kernel_labels, f)))
    for rec in reversed(log.records):
        lifted = []
        for i, g in enumerate(current):
            if i > 0:
                prev = current[i - 1]
                diff = [v for v in g if g[v] != prev[v]]
                if len(diff) != 1:
                    raise ValueError(f"step {i} recolors {len(diff)} vertices")
                w = diff[0]
                if w in rec.phi:
                    between = dict(lifted[-1])
                    between[w] = g[w]
                    lifted.append(between)
            hat = dict(g)
            for a, b in rec.phi.items():
                hat[b] = g[a]
            lifted.append(hat)
        current = lifted
    return [tuple(f[lab] for lab in original.graph.labels) for f in current]


# -- pipelines ----------------------------------------------------------------

def _solve_component(sub: Instance, strategy: str, shortest: bool, cap: int) -> tuple:
    info = {"n": sub.n}
    if strategy == "kernel-mw" or (strategy == "auto" and not shortest):
        kernel, log = kernelize_mw(sub)
        info["kernel_n"] = kernel.n
        info["removed"] = len(log.removed)
        try:
            rep = brute_force_reachable(kernel, cap)
        except StateLimitExceeded:
            if strategy != "auto":
                raise
            rep = cover_reachable(sub, cap=cap)
            info["fallback"] = "cover"
            info["states"] = rep.stats["states"]
            return rep.verdict, rep.sequence, None, info
        info["states"] = rep.stats["states"]
        seq = lift_sequence(rep.sequence, log) if rep.yes else None
        return rep.verdict, seq, None, info
    if strategy in ("kernel-vc", "auto"):
        cover = find_cover(sub.graph)
        kernel, mlog = kernelize_vc(sub, cover)
        info["cover"] = len(cover)
        info["kernel_n"] = kernel.n
        rep = shortest_weighted(kernel, cap)
        info["states"] = rep.stats["states"]
        seq = lift_sequence(rep.sequence, mlog.to_replay_log()) if rep.yes else None
        return rep.verdict, seq, rep.length if shortest else None, info
    if strategy == "cover":
        rep = cover_reachable(sub, cap=cap)
        info["states"] = rep.stats["states"]
        info["cover"] = rep.stats["cover"]
        return rep.verdict, rep.sequence, None, info
    raise ValueError(f"unknown strategy {strategy!r}")


def solve(inst: Instance, strategy: str = "auto", *, shortest: bool = False,
          cap: int | None = None, jobs: int = 1) -> SolveReport:
    """Decide reachability (or the weighted optimum with ``shortest=True``).

    ``brute`` searches the whole instance directly. Every other strategy works
    per connected component and combines the answers: all components must be
    reachable, and optimal lengths add up. The returned sequence always refers
    to ``inst`` itself.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
    if shortest and strategy in ("kernel-mw", "cover"):
        raise ValueError(f"strategy {strategy!r} decides reachability only")
    cap = state_cap(cap)
    t0 = time.perf_counter()
    if strategy == "brute":
        if shortest:
            rep = shortest_weighted(inst, cap)
        else:
            rep = brute_force_reachable(inst, cap)
            rep.length = None
        rep.stats.update(strategy="brute", seconds=time.perf_counter() - t0)
        return rep

    comps = [sorted(c) for c in inst.graph.components()]
    subs = [restrict(inst, c) for c in comps]
    if jobs > 1 and len(subs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_component, subs, [strategy] * len(subs),
                                    [shortest] * len(subs), [cap] * len(subs)))
    else:
        results = [_solve_component(s, strategy, shortest, cap) for s in subs]

    stats = {
        "strategy": strategy,
        "components": [r[3] for r in results],
        "states": sum(r[3].get("states", 0) for r in results),
    }
    if any(r[0] != "yes" for r in results):
        stats["seconds"] = time.perf_counter() - t0
        return SolveReport("no", None, math.inf if shortest else None, stats)

    f = list(inst.initial)
    seq = [tuple(f)]
    for labels, sub, (_, subseq, _, _) in zip(comps, subs, results):
        idx = [inst.graph.index_of(lab) for lab in sub.graph.labels]
        for g in subseq[1:]:
            for v, col in zip(idx, g):
                f[v] = col
            seq.append(tuple(f))
    length = sum(r[2] for r in results) if shortest else None
    stats["seconds"] = time.perf_counter() - t0
    return SolveReport("yes", seq, length, stats)
