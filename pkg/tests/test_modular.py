import itertools
import random

import pytest

from lcr.generators import random_cograph, random_connected_graph
from lcr.graph import Graph
from lcr.modular import (
    Kind,
    Node,
    compute_md_tree,
    evaluate,
    format_tree,
    is_md_tree,
    is_module,
    is_pmd_tree,
    md_to_pmd,
    modular_width,
    pmd_tree,
    pseudo_modular_width,
    substitute,
)


def canon(node: Node):
    """Order-free form of a tree: children sorted, quotient edges remapped."""
    if node.is_leaf:
        return ("leaf", node.vertex)
    forms = [canon(c) for c in node.children]
    order = sorted(range(len(forms)), key=lambda i: repr(forms[i]))
    pos = {old: new for new, old in enumerate(order)}
    q = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in node.quotient))
    return (node.kind.value, tuple(forms[i] for i in order), q)


def sample_tree():
    """Eleven leaves under a single prime node whose quotient is a P4.

    x12 = 1 | 2, x13 = 3 + 4, x14 = 5 | 6 | 7, x15 = 8 + 9 + 10 + 11.
    """
    leaf = Node.leaf
    x12 = Node.internal(Kind.PARALLEL, [leaf(1), leaf(2)])
    x13 = Node.internal(Kind.SERIES, [leaf(3), leaf(4)])
    x14 = Node.internal(Kind.PARALLEL, [leaf(5), leaf(6), leaf(7)])
    x15 = Node.internal(Kind.SERIES, [leaf(v) for v in (8, 9, 10, 11)])
    return Node.internal(Kind.PRIME, [x12, x13, x14, x15], [(0, 1), (1, 2), (2, 3)])


SAMPLE_EDGES = (
    [(3, 4)]
    + list(itertools.combinations((8, 9, 10, 11), 2))
    + [(a, b) for a in (1, 2) for b in (3, 4)]
    + [(a, b) for a in (3, 4) for b in (5, 6, 7)]
    + [(a, b) for a in (5, 6, 7) for b in (8, 9, 10, 11)]
)


def random_graphs(count, seed, n_max=10):
    rng = random.Random(seed)
    return [random_connected_graph(rng.randint(1, n_max), rng, p=rng.choice((0.15, 0.3, 0.5, 0.7)))
            for _ in range(count)]


class TestIsModule:
    def test_shared_outside_neighbourhood(self):
        # v3 and v4 both see exactly v1, v2, v6 outside {v3, v4}
        g = Graph.from_edges(
            [f"v{i}" for i in range(1, 7)],
            [("v1", "v2"), ("v1", "v3"), ("v2", "v3"), ("v3", "v6"), ("v1", "v4"),
             ("v2", "v4"), ("v4", "v6"), ("v5", "v6"), ("v3", "v4")],
        )
        m = {"v3", "v4"}
        assert is_module(g, m)
        for v in m:
            nb = {g.labels[u] for u in g.neighbors(g.index_of(v))} - m
            assert nb == {"v1", "v2", "v6"}

    @pytest.mark.parametrize("seed", range(5))
    def test_trivial_modules(self, seed):
        (g,) = random_graphs(1, seed)
        assert is_module(g, g.labels)
        assert is_module(g, [g.labels[0]])
        assert is_module(g, [])

    def test_p4_middle(self):
        p4 = Graph.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
        assert not is_module(p4, {"b", "c"})


class TestSubstitute:
    def test_k2_of_singletons(self):
        q = Graph.from_edges([0, 1], [(0, 1)])
        g = substitute(q, [Graph.from_edges(["a"]), Graph.from_edges(["b"])])
        assert g.labels == ("a", "b") and g.label_edges() == {frozenset("ab")}

    def test_edgeless_quotient_is_disjoint_union(self):
        parts = [Graph.from_edges("ab", [("a", "b")]), Graph.from_edges("cd"), Graph.from_edges("e")]
        g = substitute(Graph.from_edges(range(3)), parts)
        assert g.n == 5 and g.label_edges() == {frozenset("ab")}

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            substitute(Graph.from_edges([0, 1], [(0, 1)]), [Graph.from_edges("a")])

    def test_sample_tree_evaluates_to_hand_graph(self):
        g = evaluate(sample_tree())
        assert g.labels == tuple(range(1, 12))
        assert g.label_edges() == {frozenset(e) for e in SAMPLE_EDGES}
        assert len(SAMPLE_EDGES) == 29

    def test_evaluation_is_compositional(self):
        for g in random_graphs(40, 21):
            t = compute_md_tree(g)
            if t.is_leaf:
                continue
            inner = substitute(t.quotient_graph(), [evaluate(c) for c in t.children])
            assert inner == evaluate(t) == g


class TestMdTree:
    def test_complete_graph(self):
        t = compute_md_tree(Graph.from_edges(range(5), itertools.combinations(range(5), 2)))
        assert t.kind is Kind.SERIES and len(t.children) == 5
        assert all(c.is_leaf for c in t.children)

    def test_single_vertex(self):
        t = compute_md_tree(Graph.from_edges(["v"]))
        assert t.is_leaf and t.vertex == "v"

    def test_sample_graph(self):
        g = Graph.from_edges(range(1, 12), SAMPLE_EDGES)
        t = compute_md_tree(g)
        primes = [x for x in t.walk() if x.kind is Kind.PRIME]
        assert len(primes) == 1 and len(primes[0].children) == 4
        assert modular_width(t) == 4
        assert canon(t) == canon(sample_tree())

    def test_p4_is_prime(self):
        t = compute_md_tree(Graph.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "d")]))
        assert t.kind is Kind.PRIME and modular_width(t) == 4

    def test_structure_and_modules(self):
        for g in random_graphs(200, 1):
            t = compute_md_tree(g)
            assert is_md_tree(t)
            assert evaluate(t) == g
            for x in t.walk():
                assert is_module(g, x.vertices)
            assert all(len(x.children) >= 4 for x in t.walk() if x.kind is Kind.PRIME)

    def test_permutation_invariance(self):
        rng = random.Random(4)
        for g in random_graphs(60, 2, n_max=9):
            fresh = [f"w{i}" for i in range(g.n)]
            rng.shuffle(fresh)
            rename = dict(zip(g.labels, fresh))
            h = Graph.from_edges(fresh, [(rename[a], rename[b]) for a, b in map(tuple, g.label_edges())])
            back = {v: k for k, v in rename.items()}

            def relabel(node):
                if node.is_leaf:
                    return Node.leaf(back[node.vertex])
                return Node(node.kind, tuple(relabel(c) for c in node.children), node.quotient)

            assert canon(relabel(compute_md_tree(h))) == canon(compute_md_tree(g))

    def test_format_tree_mentions_kinds(self):
        text = format_tree(compute_md_tree(Graph.from_edges(range(1, 12), SAMPLE_EDGES)))
        assert text.startswith("prime (4 children)")
        assert "leaf 11" in text


class TestPmd:
    def test_two_child_series_unchanged(self):
        t = compute_md_tree(Graph.from_edges("ab", [("a", "b")]))
        p = md_to_pmd(t)
        assert p.kind is Kind.JOIN and p.children == t.children

    def test_four_child_series_chain(self):
        t = compute_md_tree(Graph.from_edges("abcd", itertools.combinations("abcd", 2)))
        p = md_to_pmd(t)
        ys = [Node.leaf(v) for v in "abcd"]
        x1 = p
        assert x1.kind is Kind.JOIN and x1.children[0] == ys[0]
        x2 = x1.children[1]
        assert x2.kind is Kind.JOIN and x2.children[0] == ys[1]
        x3 = x2.children[1]
        assert x3.kind is Kind.JOIN and list(x3.children) == ys[2:]

    def test_rejects_non_md_input(self):
        bad = Node.internal(Kind.SERIES, [Node.internal(Kind.SERIES, [Node.leaf(1), Node.leaf(2)]), Node.leaf(3)])
        with pytest.raises(ValueError):
            md_to_pmd(bad)

    def test_round_trip_and_widths(self):
        for g in random_graphs(200, 7):
            t = compute_md_tree(g)
            p = md_to_pmd(t)
            assert is_pmd_tree(p)
            assert evaluate(p) == g
            assert sum(1 for _ in p.walk()) <= 2 * g.n
            mw = modular_width(t)
            assert all(len(x.children) <= mw for x in p.walk() if x.kind is Kind.PRIME)
            if g.n > 1:
                assert pseudo_modular_width(p) == max(2, mw)
                assert pseudo_modular_width(p) == max(2, modular_width(p))

    def test_sample_tree_widths(self):
        t = sample_tree()
        assert modular_width(t) == 4
        assert pseudo_modular_width(md_to_pmd(t)) == 4

    def test_cographs(self):
        rng = random.Random(8)
        for _ in range(50):
            g = random_cograph(rng.randint(2, 10), rng)
            t = compute_md_tree(g)
            assert modular_width(t) == 0
            assert pseudo_modular_width(pmd_tree(g)) == 2
