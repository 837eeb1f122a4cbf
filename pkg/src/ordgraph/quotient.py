"""Level-k components, tail equivalence, the quotient digraphs, and non-returning paths."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import networkx as nx
from networkx.utils import UnionFind

from .ordinal import Ordinal
from .path import (Path, compose, compose_all, equals, gen_path, in_extensions,
                   tail_states, tail_states_at)
from .presentation import Presentation
from .regularity import PreconditionError, connecting_path


class NotFound(LookupError):
    pass


class NotConstructible(RuntimeError):
    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"{stage}: {message}")


@dataclass(frozen=True)
class QEdge:
    id: str              # name of the representative generator
    members: tuple[str, ...]
    range: str           # component id
    source: str          # component id


@dataclass
class QuotientDigraph:
    level: int
    vertices: dict[str, tuple[str, ...]]   # component id -> member vertices
    edges: list[QEdge]
    well_defined: bool = True
    _index: dict = field(default_factory=dict, repr=False)

    def component_of(self, v: str) -> str:
        if not self._index:
            self._index.update({m: cid for cid, ms in self.vertices.items() for m in ms})
        return self._index[v]

    def edge(self, eid: str) -> QEdge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def in_edges(self, cid: str) -> list[QEdge]:
        return [e for e in self.edges if e.range == cid]

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.source, e.range, key=e.id)
        return g

    def to_dot(self) -> str:
        lines = [f'digraph "F{self.level}" {{']
        for cid, members in self.vertices.items():
            lines.append(f'  "{cid}" [label="{" ".join(members)}"];')
        for e in self.edges:
            lines.append(f'  "{e.source}" -> "{e.range}" [label="{e.id}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def components(p: Presentation, k: int) -> list[tuple[str, ...]]:
    """Weakly connected vertex classes under generators of level < k, sorted."""
    uf = UnionFind(p.vertices)
    for g in p.below(k):
        uf.union(g.source, g.range)
    return sorted(tuple(sorted(c)) for c in uf.to_sets())


def _component_ids(p: Presentation, k: int) -> dict[str, tuple[str, ...]]:
    return {f"[{c[0]}]": c for c in components(p, k)}


def tail_equiv(p: Presentation, f: str, g: str, k: int) -> bool:
    """Some tail of f (before w**k) equals some tail of g."""
    if p.gen(f).level != k or p.gen(g).level != k:
        raise ValueError(f"{f} and {g} must both have level {k}")
    if f == g:
        return True
    tf = tail_states(gen_path(p, f))
    tg = tail_states(gen_path(p, g))
    return any(equals(x, y) for x in tf for y in tg)


def falpha(p: Presentation, k: int) -> QuotientDigraph:
    cache = p.cache.setdefault("falpha", {})
    if k in cache:
        return cache[k]
    comps = _component_ids(p, k)
    where = {v: cid for cid, ms in comps.items() for v in ms}
    names = p.level_names(k)
    uf = UnionFind(names)
    for a, b in itertools.combinations(names, 2):
        if uf[a] != uf[b] and tail_equiv(p, a, b, k):
            uf.union(a, b)
    edges = []
    ok = True
    for cls in sorted(tuple(sorted(c)) for c in uf.to_sets()):
        ranges = {where[p.gen(x).range] for x in cls}
        sources = {where[p.gen(x).source] for x in cls}
        ok &= len(ranges) == 1 and len(sources) == 1
        rep = p.gen(cls[0])
        edges.append(QEdge(rep.name, cls, where[rep.range], where[rep.source]))
    cache[k] = QuotientDigraph(k, comps, edges, ok)
    return cache[k]


# ---------------------------------------------------------------------- cycles

def elementary_cycles(d: QuotientDigraph) -> list[list[str]]:
    """Cycles with distinct sources, as edge ids in composition order."""
    simple = nx.DiGraph()
    simple.add_nodes_from(d.vertices)
    parallel: dict[tuple[str, str], list[str]] = {}
    for e in d.edges:
        simple.add_edge(e.source, e.range)
        parallel.setdefault((e.source, e.range), []).append(e.id)
    out = []
    for nodes in nx.simple_cycles(simple):
        hops = [(nodes[i], nodes[(i + 1) % len(nodes)]) for i in range(len(nodes))]
        for choice in itertools.product(*(parallel[h] for h in hops)):
            out.append(_rotate(list(reversed(choice))))
    return sorted(out)


def _rotate(cycle: list[str]) -> list[str]:
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def cycles_without_entry(d: QuotientDigraph) -> list[list[str]]:
    """Cycles none of whose vertices receives an edge off the cycle."""
    indeg: dict[str, int] = {cid: 0 for cid in d.vertices}
    for e in d.edges:
        indeg[e.range] += 1
    simple = nx.DiGraph()
    simple.add_nodes_from(d.vertices)
    only: dict[str, QEdge] = {}
    for e in d.edges:
        if indeg[e.range] == 1:
            simple.add_edge(e.source, e.range)
            only[e.range] = e
    out = []
    for nodes in nx.simple_cycles(simple):
        out.append(_rotate([only[n].id for n in reversed(nodes)]))
    return sorted(out)


def digraph_nonreturning(d: QuotientDigraph, w: str, n: int) -> list[str]:
    """Edge ids mu_1..mu_m, m >= n, range(mu_1) = w, last edge not repeated earlier."""
    if n < 1:
        raise ValueError("n must be at least 1")
    bad = cycles_without_entry(d)
    if bad:
        raise PreconditionError(f"cycle without entry: {bad[0]}")
    if not d.in_edges(w):
        raise NotFound(f"no edge has range {w}")
    for last in sorted(d.edges, key=lambda e: e.id):
        walk = _walk_avoiding(d, w, last.range, n - 1, last.id)
        if walk is not None:
            return walk + [last.id]
    raise NotFound(f"no non-returning path of length >= {n} into {w}")


def _walk_avoiding(d: QuotientDigraph, start: str, goal: str, need: int, banned: str) -> list[str] | None:
    """Edges mu_1..mu_j, j >= need, from range start backwards to source goal, avoiding banned."""
    begin = (start, 0)
    back: dict[tuple[str, int], tuple] = {begin: None}
    queue = deque([begin])
    incoming = {cid: sorted((e for e in d.in_edges(cid) if e.id != banned), key=lambda e: e.id)
                for cid in d.vertices}
    while queue:
        state = queue.popleft()
        at, count = state
        if at == goal and count >= need:
            out = []
            while back[state] is not None:
                state, eid = back[state]
                out.append(eid)
            return list(reversed(out))
        for e in incoming[at]:
            nxt = (e.source, min(count + 1, need))
            if nxt not in back:
                back[nxt] = (state, e.id)
                queue.append(nxt)
    return None


# ----------------------------------------------------------- non-returning paths

def build_nonreturning(p: Presentation, v: str, n: int, k: int) -> Path:
    """A path of length w**k * m (m >= n) with range v assembled from a
    non-returning path in the level-k quotient and lower-level connectors."""
    d = falpha(p, k)
    bad = cycles_without_entry(d)
    if bad:
        raise NotConstructible("quotient", f"level-{k} quotient has a cycle without entry {bad[0]}")
    try:
        route = digraph_nonreturning(d, d.component_of(v), n)
    except NotFound as exc:
        raise NotConstructible("path", str(exc)) from None
    block = Ordinal.omega_power(k)
    target = v
    pieces = []
    for eid in route:
        g = p.gen(eid)
        for _beta, rest in tail_states_at(gen_path(p, g.name)):
            link = connecting_path(p, target, rest.range, k)
            if link is not None:
                break
        else:
            raise NotConstructible("connector", f"no level-{k} connector from a tail of {g.name} to {target}")
        piece = compose(link, rest)
        if piece.length != block:
            raise NotConstructible("connector", f"piece {piece} has length {piece.length}")
        pieces.append(piece)
        target = g.source
    u = compose_all(*pieces)
    if u.range != v or u.length != Ordinal.omega_power(k, len(route)):
        raise NotConstructible("assembly", f"assembled path {u} has the wrong shape")
    return u


def _words_into(p: Presentation, x: str, k: int, depth: int) -> list[Path]:
    """Paths of 1..depth generators of level <= k whose source is x."""
    gens = sorted((g for g in p.generators.values() if g.level <= k), key=lambda g: g.name)
    by_source: dict[str, list] = {}
    for g in gens:
        by_source.setdefault(g.source, []).append(g)
    out = []
    frontier = [identity_like(p, x)]
    for _ in range(depth):
        grown = []
        for f in frontier:
            for g in by_source.get(f.range, ()):
                y = compose(gen_path(p, g.name), f)
                grown.append(y)
                out.append(y)
        frontier = grown
    return out


def identity_like(p: Presentation, x: str) -> Path:
    return Path(p, x, x)


def check_nonreturning_bounded(e: Path, k: int, depth: int) -> tuple[bool, tuple[Path, Ordinal] | None]:
    """Search for f, beta with w**k <= d(f) < w**k * n, beta < w**k and f e^beta in e Lambda.

    Returns (True, None) when no violation is found among words of at most
    ``depth`` generators, else (False, (f, beta)).
    """
    terms = e.length.terms
    if len(terms) != 1 or terms[0][0] != Ordinal(k):
        raise ValueError(f"length {e.length} is not a multiple w^{k}*n")
    n = terms[0][1]
    low, high = Ordinal.omega_power(k), Ordinal.omega_power(k, n)
    if n == 1:
        return True, None
    p = e.home
    for beta, rest in tail_states_at(e):
        if not beta < low:
            continue
        for f in _words_into(p, rest.range, k, depth):
            if low <= f.length < high and in_extensions(compose(f, rest), e):
                return False, (f, beta)
    return True, None
