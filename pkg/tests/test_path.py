import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ALL_BUILTINS, random_ordinal_upto, random_path
from ordgraph.ordinal import OMEGA, UndefinedOperation, add
from ordgraph.path import (Extension, NonComposable, compare_extensions, compose, compose_all,
                           equals, gen_path, identity, normal_blocks, split, streams_differ,
                           tail_states, tail_states_at, tail_vertices, word_path)
from ordgraph.presentation import builtin

FIG1 = builtin("interval_omega2")
LOOP2 = builtin("two_loop")
TPT = builtin("two_plus_two")
LPT = builtin("long_path_trunc(3)")


def W(p, text):
    return word_path(p, text)


def test_lengths():
    v = identity(FIG1, "v")
    assert v.length == 0 and v.source == v.range == "v"
    assert W(FIG1, "f").length == OMEGA
    g = W(TPT, "g")
    assert (g.length, g.source, g.range) == (OMEGA, "v", "v")
    assert str(W(FIG1, "f e e").length) == "w+2"


def test_compose_examples():
    assert equals(compose(W(FIG1, "e"), W(FIG1, "f")), W(FIG1, "f"))
    e = W(LOOP2, "e f e")
    assert equals(compose(identity(LOOP2, "v"), e), e)
    assert equals(compose(compose(W(LOOP2, "e"), W(LOOP2, "f")), W(LOOP2, "g")), W(LOOP2, "g"))


def test_compose_rejects_mismatch():
    with pytest.raises(NonComposable):
        compose(W(LPT, "e0"), W(LPT, "e0"))


def test_split_examples():
    e = W(FIG1, "f e")
    head, tail = split(e, 0)
    assert head.is_identity() and head.range == e.range and equals(tail, e)
    h, t = split(W(FIG1, "f"), 1)
    assert equals(h, W(FIG1, "e")) and equals(t, W(FIG1, "f"))
    h, t = split(W(LOOP2, "g"), 2)
    assert equals(h, W(LOOP2, "e f")) and equals(t, W(LOOP2, "g"))


def test_split_beyond_length():
    with pytest.raises(UndefinedOperation):
        split(W(FIG1, "e e"), 3)


def test_equality_examples():
    assert equals(compose(W(FIG1, "e"), W(FIG1, "f")), W(FIG1, "f"))
    assert equals(W(FIG1, "e"), W(FIG1, "e"))
    assert not equals(compose(W(LOOP2, "e"), W(LOOP2, "g")), W(LOOP2, "g"))
    assert W(FIG1, "e f") == W(FIG1, "f")


def test_long_path_relation():
    # g0 unfolds to f0 e0 g1
    assert equals(W(LPT, "f0 e0 g1"), W(LPT, "g0"))
    assert not equals(W(LPT, "e0 g1"), W(LPT, "g0"))


def test_compare_extensions_examples():
    e = W(FIG1, "e")
    assert compare_extensions(e, e) is Extension.EQUAL
    assert compare_extensions(e, W(FIG1, "f")) is Extension.PROPER_PREFIX_OF
    assert compare_extensions(W(FIG1, "f"), e) is Extension.PROPERLY_EXTENDS
    assert compare_extensions(W(TPT, "g"), W(TPT, "h")) is Extension.DISJOINT


def test_tails():
    lp = builtin("long_path_trunc(3)")
    a = W(lp, "e1")
    assert tail_vertices(a) == [a.range]
    f = W(FIG1, "f")
    assert any(equals(x, f) for x in tail_states(f))
    assert tail_vertices(f) == ["v"]
    tails = tail_states(W(LPT, "g0"))
    for name in ("g1", "g2"):
        assert any(equals(x, W(LPT, name)) for x in tails)


def test_tail_states_at_offsets():
    # g0 = f0 e0 g1, so the tail after two steps is g1
    pairs = tail_states_at(W(LPT, "g0"))
    betas = {str(b) for b, x in pairs if equals(x, W(LPT, "g1"))}
    assert "2" in betas


def test_normal_blocks_examples():
    a = W(LPT, "e0")
    assert [(str(l), str(b)) for l, b in normal_blocks(a)] == [("1", "e0")]
    nb = normal_blocks(W(FIG1, "f e e"))
    assert [str(l) for l, _ in nb] == ["w", "1", "1"]
    assert [str(b) for _, b in nb] == ["f", "e", "e"]
    assert [str(l) for l, _ in normal_blocks(W(TPT, "g"))] == ["w"]
    with pytest.raises(UndefinedOperation):
        normal_blocks(identity(FIG1, "v"))


def test_streams_differ_is_not_equality():
    # e g and g emit different streams; g and e f g emit the same
    assert streams_differ(W(LOOP2, "e g"), W(LOOP2, "g"))
    assert not streams_differ(W(LOOP2, "e f g"), W(LOOP2, "g"))


seeds = st.integers(0, 10 ** 6)


def _sample(seed):
    rng = random.Random(seed)
    p = builtin(rng.choice(ALL_BUILTINS))
    return rng, p


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_split_recomposes(seed):
    rng, p = _sample(seed)
    e = random_path(rng, p)
    a = random_ordinal_upto(rng, e.length)
    h, t = split(e, a)
    assert h.length == a
    assert add(h.length, t.length) == e.length
    assert equals(compose(h, t), e)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_composition_length_additive(seed):
    rng, p = _sample(seed)
    e = random_path(rng, p)
    nxt = [n for n in p.generators if p.gen(n).range == e.source]
    if not nxt:
        return
    f = gen_path(p, rng.choice(sorted(nxt)))
    assert compose(e, f).length == add(e.length, f.length)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_left_cancellation(seed):
    rng, p = _sample(seed)
    f = random_path(rng, p, 2)
    into = sorted(n for n in p.generators if p.gen(n).range == f.source)
    if not into:
        return
    g = gen_path(p, rng.choice(into))
    h = gen_path(p, rng.choice(into))
    if equals(compose(f, g), compose(f, h)):
        assert equals(g, h)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_trichotomy(seed):
    rng, p = _sample(seed)
    e = random_path(rng, p, 3)
    f = random_path(rng, p, 3) if rng.random() < 0.5 else split(e, random_ordinal_upto(rng, e.length))[0]
    rel = compare_extensions(e, f)
    back = compare_extensions(f, e)
    mirror = {Extension.EQUAL: Extension.EQUAL, Extension.DISJOINT: Extension.DISJOINT,
              Extension.PROPER_PREFIX_OF: Extension.PROPERLY_EXTENDS,
              Extension.PROPERLY_EXTENDS: Extension.PROPER_PREFIX_OF}
    assert back is mirror[rel]
    assert (rel is Extension.EQUAL) == equals(e, f)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_normal_blocks_roundtrip(seed):
    rng, p = _sample(seed)
    e = random_path(rng, p)
    if e.is_identity():
        return
    blocks = normal_blocks(e)
    lengths = [l for l, _ in blocks]
    assert all(a >= b for a, b in zip(lengths, lengths[1:]))
    assert equals(compose_all(*(b for _, b in blocks)), e)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_tail_states_are_genuine_tails(seed):
    rng, p = _sample(seed)
    e = random_path(rng, p, 2)
    for beta, x in tail_states_at(e):
        assert beta < e.length
        assert equals(split(e, beta)[1], x)


def test_hash_consistent_with_equality():
    assert hash(W(FIG1, "e f")) == hash(W(FIG1, "f"))
    assert len({W(FIG1, "e f"), W(FIG1, "f"), W(FIG1, "f e")}) == 2


def test_paths_from_different_presentations():
    with pytest.raises(ValueError):
        equals(W(FIG1, "e"), W(builtin("interval_omega2"), "e"))
