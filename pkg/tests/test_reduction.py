import itertools
import random

import pytest

from lcr.generators import random_is_instance
from lcr.graph import Graph, is_proper_list_coloring
from lcr.kernel_vc import is_vertex_cover
from lcr.reduction import (
    IsInstance,
    color_name,
    cover_bound_of_reduction,
    has_independent_set,
    plan_reduction,
    reduce_is_to_lcr,
    reduction_cover,
    verify_reduction,
)
from lcr.solver import brute_force_reachable, reachable_colorings

FIVE_VERTEX_EDGES = [(1, 2), (1, 3), (1, 4), (2, 5)]


def expected_gadgets(h: IsInstance) -> int:
    return h.s * (h.s - 1) // 2 * (h.graph.n + 2 * len(h.graph.edges))


def independent_oracle(n, edges, s):
    return any(all(tuple(sorted(p)) not in edges for p in itertools.combinations(sub, 2))
               for sub in itertools.combinations(range(1, n + 1), s))


class TestConstruction:
    def test_five_vertex_example(self):
        h = IsInstance.from_edges(5, FIVE_VERTEX_EDGES, 3)
        plan = plan_reduction(h)
        inst = reduce_is_to_lcr(h)
        assert len(plan.forbidding) == 39
        assert inst.n == 44 == 3 + 39 + 2

    def test_single_vertex(self):
        inst = reduce_is_to_lcr(IsInstance.from_edges(1, [], 1))
        g = inst.graph
        assert set(g.labels) == {"v1", "w1", "w2"}
        assert g.label_edges() == {frozenset(("v1", "w2")), frozenset(("w1", "w2"))}

    def test_empty_target_size(self):
        inst = reduce_is_to_lcr(IsInstance.from_edges(3, [(1, 2)], 0))
        assert inst.graph.labels == ("w1", "w2")
        assert brute_force_reachable(inst).yes
        assert verify_reduction(IsInstance.from_edges(3, [(1, 2)], 0))

    def test_size_exceeds_n(self):
        with pytest.raises(ValueError):
            IsInstance.from_edges(2, [], 3)

    def test_layout(self):
        rng = random.Random(4)
        for _ in range(30):
            n = rng.randint(1, 5)
            h = random_is_instance(n, rng.randint(1, min(3, n)), rng)
            plan = plan_reduction(h)
            inst = reduce_is_to_lcr(h)
            n, s = h.graph.n, h.s
            assert len(plan.forbidding) == expected_gadgets(h)
            assert inst.n == s + expected_gadgets(h) + 2
            assert plan.selection == tuple(f"v{i}" for i in range(1, s + 1))
            names = inst.color_names
            lists = {lab: {names[c] for c in inst.lists[v]} for v, lab in enumerate(inst.graph.labels)}
            assert lists["w1"] == {"a", "b"} and lists["w2"] == {"a", "b", "key"}
            for i in range(1, s + 1):
                assert lists[f"v{i}"] == {"key"} | {color_name(i, p) for p in range(1, n + 1)}
            for x, (i, j, p, q) in plan.forbidding.items():
                assert lists[x] == {color_name(i, q), color_name(j, p)}
                nb = {inst.graph.labels[u] for u in inst.graph.neighbors(inst.graph.index_of(x))}
                assert nb == {f"v{i}", f"v{j}"}
            w2 = inst.graph.index_of("w2")
            assert {inst.graph.labels[u] for u in inst.graph.neighbors(w2)} == {"w1", *plan.selection}

    def test_colorings(self):
        h = IsInstance.from_edges(4, [(1, 2), (3, 4)], 3)
        inst = reduce_is_to_lcr(h)
        names = inst.color_names
        assert list(names) == sorted(names)
        by = {lab: (names[inst.initial[v]], names[inst.target[v]]) for v, lab in enumerate(inst.graph.labels)}
        assert by["w1"] == ("a", "b") and by["w2"] == ("b", "a")
        assert all(by[f"v{i}"] == ("key", "key") for i in range(1, 4))
        plan = plan_reduction(h)
        for x in plan.forbidding:
            lo, hi = sorted(plan.lists[x])
            assert by[x] == (lo, hi)
        assert is_proper_list_coloring(inst.graph, inst.lists, inst.initial)
        assert is_proper_list_coloring(inst.graph, inst.lists, inst.target)


class TestCover:
    @pytest.mark.parametrize("s,expected", [(3, 4), (1, 2)])
    def test_bound(self, s, expected):
        assert cover_bound_of_reduction(IsInstance.from_edges(4, [(1, 2)], s)) == expected

    def test_rest_is_edgeless(self):
        rng = random.Random(9)
        for _ in range(50):
            n = rng.randint(1, 6)
            h = random_is_instance(n, rng.randint(0, min(3, n)), rng)
            inst = reduce_is_to_lcr(h)
            cover = reduction_cover(h)
            assert is_vertex_cover(inst.graph, cover)
            rest = [lab for lab in inst.graph.labels if lab not in cover]
            assert inst.graph.induced(rest).edges == ()


class TestEquivalence:
    def test_edge_pair_is_no(self):
        h = IsInstance.from_edges(2, [(1, 2)], 2)
        assert not has_independent_set(h.graph, 2)
        assert not brute_force_reachable(reduce_is_to_lcr(h)).yes
        assert verify_reduction(h)

    def test_isolated_pair_is_yes(self):
        h = IsInstance.from_edges(2, [], 2)
        assert has_independent_set(h.graph, 2)
        assert brute_force_reachable(reduce_is_to_lcr(h)).yes
        assert verify_reduction(h)

    def test_independent_set_oracle(self):
        rng = random.Random(2)
        for _ in range(100):
            n = rng.randint(1, 7)
            edges = {e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.4}
            g = Graph.from_edges(range(1, n + 1), edges)
            for s in range(n + 1):
                assert has_independent_set(g, s) == independent_oracle(n, edges, s)

    def test_all_labelled_graphs_up_to_four(self):
        cases = 0
        for n in range(1, 5):
            pairs = list(itertools.combinations(range(1, n + 1), 2))
            for r in range(len(pairs) + 1):
                for edges in itertools.combinations(pairs, r):
                    for s in range(0, min(3, n) + 1):
                        assert verify_reduction(IsInstance.from_edges(n, edges, s))
                        cases += 1
        assert cases == 1 * 2 + 2 * 3 + 8 * 4 + 64 * 4

    def test_random_graphs_up_to_six(self):
        rng = random.Random(15)
        for _ in range(100):
            n = rng.randint(1, 6)
            assert verify_reduction(random_is_instance(n, rng.randint(1, min(3, n)), rng))

    def test_forbidden_pairs_never_reached(self):
        for n, edges in ((2, [(1, 2)]), (2, []), (3, [(1, 2)]), (3, [(2, 3)])):
            h = IsInstance.from_edges(n, edges, 2)
            inst = reduce_is_to_lcr(h)
            plan = plan_reduction(h)
            code = {name: c for c, name in enumerate(inst.color_names)}
            idx = inst.graph.index_of
            states = reachable_colorings(inst)
            assert states
            for f in states:
                for i, j, p, q in plan.forbidding.values():
                    pair = (f[idx(f"v{i}")], f[idx(f"v{j}")])
                    assert pair != (code[color_name(i, p)], code[color_name(j, q)])
