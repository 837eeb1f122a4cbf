"""Shared generators for tests: random ordinals, random paths, random digraphs."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from ordgraph.ordinal import Ordinal
from ordgraph.path import Path, compose, gen_path, identity, split
from ordgraph.presentation import Generator, Presentation, builtin

ALL_BUILTINS = ["interval_omega2", "two_loop", "two_plus_two", "long_path_trunc(3)",
                "long_path_trunc(4)", "cantor_trunc(1,2)", "cantor_trunc(2,2)", "cantor_trunc(2,3)"]


def raw_ordinals(depth: int = 3, max_terms: int = 3, max_coeff: int = 5):
    """Hypothesis strategy for nested-tuple CNF values of exponent depth <= depth."""
    if depth == 0:
        return st.integers(0, max_coeff).map(lambda n: (((), n),) if n else ())
    exps = raw_ordinals(depth - 1, max_terms, max_coeff)
    terms = st.lists(st.tuples(exps, st.integers(1, max_coeff)), max_size=max_terms)

    def canon(ts):
        ts = sorted({e: c for e, c in ts}.items(), reverse=True)
        return tuple(ts)

    return terms.map(canon)


def ordinals(depth: int = 3, **kw):
    return raw_ordinals(depth, **kw).map(Ordinal._wrap)


def random_ordinal_upto(rng: random.Random, top: Ordinal, inclusive: bool = True) -> Ordinal:
    """A random ordinal <= top (or < top), biased toward structurally interesting cuts."""
    terms = top.terms
    if not terms:
        return Ordinal(0)
    choices = []
    for i, (exp, coeff) in enumerate(terms):
        for c in range(coeff):
            choices.append((i, c))
    if inclusive:
        choices.append((len(terms), 0))
    i, c = rng.choice(choices)
    head = list(terms[:i])
    if i == len(terms):
        return top
    exp, _ = terms[i]
    if c:
        head.append((exp, c))
    k = int(exp)
    # random lower part with exponents < exp
    for j in range(k - 1, -1, -1):
        if rng.random() < 0.5:
            head.append((Ordinal(j), rng.randint(1, 3)))
    return Ordinal.from_terms(head)


def random_path(rng: random.Random, p: Presentation, max_gens: int = 4) -> Path:
    """Compose up to max_gens random generators, then maybe cut a prefix or suffix."""
    names = sorted(p.generators)
    x = gen_path(p, rng.choice(names))
    for _ in range(rng.randint(0, max_gens - 1)):
        nxt = [n for n in names if p.gen(n).range == x.source]
        if not nxt:
            break
        x = compose(x, gen_path(p, rng.choice(nxt)))
    roll = rng.random()
    if roll < 0.25:
        x = split(x, random_ordinal_upto(rng, x.length))[0]
    elif roll < 0.5:
        x = split(x, random_ordinal_upto(rng, x.length))[1]
    if rng.random() < 0.3:
        pre = [n for n in names if p.gen(n).source == x.range]
        if pre:
            x = compose(gen_path(p, rng.choice(pre)), x)
    return x


def random_path_into(rng: random.Random, p: Presentation, v: str, max_gens: int = 3) -> Path:
    x = identity(p, v)
    names = sorted(p.generators)
    for _ in range(rng.randint(1, max_gens)):
        nxt = [n for n in names if p.gen(n).range == x.source]
        if not nxt:
            break
        x = compose(x, gen_path(p, rng.choice(nxt)))
    return x


def random_digraph(rng: random.Random, max_vertices: int = 5, max_edges: int = 8) -> dict:
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    m = rng.randint(0, max_edges)
    return {f"a{j}": (rng.choice(verts), rng.choice(verts)) for j in range(m)}, verts


def digraph_presentation(edges: dict, verts: list[str], name: str = "digraph") -> Presentation:
    return Presentation(name, verts, [Generator(e, 0, s, r) for e, (s, r) in edges.items()])


def load(name: str) -> Presentation:
    return builtin(name)
