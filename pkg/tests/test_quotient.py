import itertools
import random

import networkx as nx
import pytest

from helpers import ALL_BUILTINS, digraph_presentation, random_digraph
from oracles import paths_into, raeburn_nonreturning, unbordered
from ordgraph.path import word_path
from ordgraph.presentation import builtin
from ordgraph.quotient import (NotConstructible, NotFound, build_nonreturning,
                               check_nonreturning_bounded, components, cycles_without_entry,
                               digraph_nonreturning, elementary_cycles, falpha, tail_equiv)
from ordgraph.regularity import PreconditionError

FIG1 = builtin("interval_omega2")
TPT = builtin("two_plus_two")
LPT = builtin("long_path_trunc(3)")


def test_components():
    assert components(LPT, 0) == [("v0",), ("v1",), ("v2",)]
    assert components(FIG1, 1) == [("v",)]
    assert components(LPT, 1) == [("v0", "v1", "v2")]


def test_tail_equiv_examples():
    assert tail_equiv(TPT, "g", "g", 1)
    assert not tail_equiv(TPT, "g", "h", 1)
    assert tail_equiv(LPT, "g0", "g1", 1)
    with pytest.raises(ValueError):
        tail_equiv(TPT, "e", "g", 1)


@pytest.mark.parametrize("name", ALL_BUILTINS)
def test_tail_equiv_is_an_equivalence(name):
    p = builtin(name)
    for k in p.levels:
        names = p.level_names(k)
        rel = {(a, b): tail_equiv(p, a, b, k) for a in names for b in names}
        for a in names:
            assert rel[a, a]
        for a, b in itertools.product(names, repeat=2):
            assert rel[a, b] == rel[b, a]
        for a, b, c in itertools.product(names, repeat=3):
            if rel[a, b] and rel[b, c]:
                assert rel[a, c]
        assert falpha(p, k).well_defined


def test_falpha_examples():
    for k in (0, 1):
        d = falpha(TPT, k)
        assert (len(d.vertices), len(d.edges)) == (1, 2)
    d = falpha(FIG1, 1)
    assert (len(d.vertices), len(d.edges)) == (1, 1)
    d = falpha(LPT, 1)
    assert len(d.vertices) == 1 and len(d.edges) == 1 and d.edges[0].members == ("g0", "g1", "g2")


def test_falpha_zero_is_the_digraph():
    edges = {"a": ("u", "v"), "b": ("v", "v"), "c": ("v", "u"), "d": ("w", "v")}
    p = digraph_presentation(edges, ["u", "v", "w"])
    d = falpha(p, 0)
    src = nx.MultiDiGraph()
    src.add_nodes_from(p.vertices)
    src.add_edges_from((s, r) for s, r in edges.values())
    assert nx.is_isomorphic(d.to_networkx(), src)


def test_cycles_without_entry_examples():
    loop = digraph_presentation({"a": ("v", "v")}, ["v"])
    assert cycles_without_entry(falpha(loop, 0)) == [["a"]]
    assert cycles_without_entry(falpha(TPT, 0)) == []
    chain = digraph_presentation({"a": ("u", "v"), "b": ("v", "w")}, ["u", "v", "w"])
    assert cycles_without_entry(falpha(chain, 0)) == []


def test_elementary_cycles():
    p = digraph_presentation({"a": ("u", "v"), "b": ("v", "u"), "c": ("v", "v")}, ["u", "v"])
    assert elementary_cycles(falpha(p, 0)) == [["a", "b"], ["c"]]


def test_digraph_nonreturning_examples():
    d = falpha(TPT, 1)
    walk = digraph_nonreturning(d, "[v]", 2)
    assert len(walk) >= 2 and raeburn_nonreturning(tuple(walk))
    assert len(digraph_nonreturning(d, "[v]", 1)) == 1
    loop = digraph_presentation({"a": ("v", "v")}, ["v"])
    with pytest.raises(PreconditionError):
        digraph_nonreturning(falpha(loop, 0), "[v]", 1)
    sink = digraph_presentation({"a": ("u", "v")}, ["u", "v"])
    with pytest.raises(NotFound):
        digraph_nonreturning(falpha(sink, 0), "[u]", 1)


def test_build_nonreturning_two_plus_two():
    for n in (2, 3, 5):
        u = build_nonreturning(TPT, "v", n, 1)
        terms = u.length.terms
        assert u.range == "v"
        assert len(terms) == 1 and terms[0][0] == 1 and terms[0][1] >= n
        assert check_nonreturning_bounded(u, 1, 3)[0]


def test_build_nonreturning_fails_on_loop_without_entry():
    with pytest.raises(NotConstructible) as info:
        build_nonreturning(FIG1, "v", 1, 1)
    assert info.value.stage == "quotient"


def test_check_nonreturning_examples():
    ok, bad = check_nonreturning_bounded(word_path(FIG1, "e e"), 0, 3)
    assert not ok
    f, beta = bad
    assert str(f) == "e" and beta == 0
    assert check_nonreturning_bounded(word_path(TPT, "g"), 1, 3) == (True, None)
    with pytest.raises(ValueError):
        check_nonreturning_bounded(word_path(FIG1, "f e"), 1, 3)


def test_digraph_nonreturning_outputs_on_random_graphs():
    rng = random.Random(7)
    seen = 0
    for _ in range(60):
        edges, verts = random_digraph(rng)
        p = digraph_presentation(edges, verts)
        d = falpha(p, 0)
        for w in d.vertices:
            for n in (1, 2, 4):
                try:
                    walk = digraph_nonreturning(d, w, n)
                except (PreconditionError, NotFound):
                    continue
                seen += 1
                assert len(walk) >= n and raeburn_nonreturning(tuple(walk))
                path = word_path(p, walk)
                assert path.range == w[1:-1]
                u = build_nonreturning(p, w[1:-1], n, 0)
                assert check_nonreturning_bounded(u, 0, len(walk) + 1)[0]
    assert seen > 20


def test_bounded_check_agrees_with_unbordered_oracle():
    rng = random.Random(11)
    for _ in range(25):
        edges, verts = random_digraph(rng, 4, 6)
        p = digraph_presentation(edges, verts)
        for v in verts:
            for word in paths_into(edges, v, 4):
                if not word:
                    continue
                ok, _ = check_nonreturning_bounded(word_path(p, word), 0, len(word))
                assert ok == unbordered(word)
                if raeburn_nonreturning(word):
                    assert ok


def test_to_dot():
    dot = falpha(TPT, 0).to_dot()
    assert dot.count("->") == 2 and '"[v]" [label="v"]' in dot
