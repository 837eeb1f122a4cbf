"""Source, row-finiteness and regularity of vertices; exhaustive sets.

Three-valued answers use ``None`` for "undecided within the bound".
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .ordinal import Ordinal
from .path import (Path, compose, equals, gen_path, identity, in_extensions, prefix,
                   split, streams_differ, word_path)
from .presentation import Presentation

DEFAULT_BOUND = 64
PUMP_WALK_LENGTH = 4


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteSet:
    members: tuple[Path, ...]
    kind = "FiniteSet"


@dataclass(frozen=True)
class InfiniteWitness:
    """``cycle**n * seed`` are pairwise distinct paths at ``cycle.range``.

    ``connector`` joins the queried vertex (its range) to the cycle's vertex.
    """
    cycle: Path
    seed: Path
    connector: Path
    kind = "InfiniteWitness"

    def pump(self, n: int) -> Path:
        x = self.seed
        for _ in range(n):
            x = compose(self.cycle, x)
        return compose(self.connector, x)


@dataclass(frozen=True)
class Unknown:
    bound: int
    kind = "Unknown"


Fibre = Union[FiniteSet, InfiniteWitness, Unknown]


@dataclass(frozen=True)
class VertexLevelReport:
    vertex: str
    level: int
    is_source: bool
    is_source_regular: bool
    fibre: Fibre
    is_regular: bool | None


# ---------------------------------------------------------------- reachability

def _arcs_below(p: Presentation, k: int) -> dict[str, list]:
    """range -> generators of level < k ending there, sorted by name."""
    cache = p.cache.setdefault("arcs_below", {})
    if k not in cache:
        arcs: dict[str, list] = {v: [] for v in p.vertices}
        for g in sorted(p.below(k), key=lambda g: g.name):
            arcs[g.range].append(g)
        cache[k] = arcs
    return cache[k]


def reachable(p: Presentation, v: str, k: int) -> set[str]:
    """Sources of paths of length < w**k with range v (v included)."""
    arcs = _arcs_below(p, k)
    seen = {v}
    todo = [v]
    while todo:
        x = todo.pop()
        for g in arcs[x]:
            if g.source not in seen:
                seen.add(g.source)
                todo.append(g.source)
    return seen


def connecting_path(p: Presentation, v: str, w: str, k: int) -> Path | None:
    """Shortest, then name-least, path of length < w**k with range v and source w."""
    if v == w:
        return identity(p, v)
    arcs = _arcs_below(p, k)
    back: dict[str, tuple[str, str]] = {v: ("", "")}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for g in arcs[x]:
            if g.source in back:
                continue
            back[g.source] = (x, g.name)
            if g.source == w:
                names = []
                cur = w
                while cur != v:
                    cur, name = back[cur]
                    names.append(name)
                return word_path(p, reversed(names))
            queue.append(g.source)
    return None


def _tops(p: Presentation, k: int) -> list:
    return [g for g in p.generators.values() if g.level == k]


def is_alpha_source(p: Presentation, v: str, k: int) -> bool:
    ranges = {g.range for g in _tops(p, k)}
    return not (ranges & reachable(p, v, k))


def is_alpha_source_regular(p: Presentation, v: str, k: int) -> bool:
    return all(not is_alpha_source(p, w, k) for w in reachable(p, v, k))


# ----------------------------------------------------------------------- fibre

def _closed_walks(p: Presentation, w: str, k: int, max_len: int) -> list[Path]:
    """Closed walks at w of length < w**k built only from level-(k-1) blocks."""
    arcs = _arcs_below(p, k)
    out: list[Path] = []
    frontier: list[tuple[list[str], str]] = [([], w)]
    for _ in range(max_len):
        nxt = []
        for names, at in frontier:
            for g in arcs[at]:
                walk = [*names, g.name]
                nxt.append((walk, g.source))
                if g.source == w:
                    c = word_path(p, walk)
                    if all(b.level == k - 1 for b in c.blocks):
                        out.append(c)
        frontier = nxt
    return out


def _find_witness(p: Presentation, v: str, k: int, seeds_at: dict[str, list[Path]],
                  reach: Iterable[str]) -> InfiniteWitness | None:
    for w in sorted(reach):
        seeds = [gen_path(p, g.name) for g in _tops(p, k) if g.range == w]
        seeds += [s for s in seeds_at.get(w, []) if len(s.blocks) == 1]
        if not seeds:
            continue
        for c in _closed_walks(p, w, k, PUMP_WALK_LENGTH):
            for s in seeds:
                if streams_differ(compose(c, s), s):
                    link = connecting_path(p, v, w, k)
                    if link is not None:
                        return InfiniteWitness(c, s, link)
    return None


def fibre(p: Presentation, v: str, k: int, bound: int = DEFAULT_BOUND) -> Fibre:
    """Paths with range v and length w**k, up to equality.

    The classes at every vertex reachable from v are generated by closing the
    level-k generators under left multiplication by lower generators; reaching
    a fixed point proves finiteness.  Past ``bound`` classes, a pumping
    certificate is sought.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    memo = p.cache.setdefault("fibre", {})
    if (v, k, bound) not in memo:
        memo[(v, k, bound)] = _fibre(p, v, k, bound)
    return memo[(v, k, bound)]


def _fibre(p: Presentation, v: str, k: int, bound: int) -> Fibre:
    if k == 0:
        edges = [gen_path(p, g.name) for g in _tops(p, 0) if g.range == v]
        return FiniteSet(tuple(sorted(edges, key=str)))
    reach = reachable(p, v, k)
    classes: dict[str, list[Path]] = {w: [] for w in reach}
    lower = sorted(p.below(k), key=lambda g: g.name)
    by_source: dict[str, list] = {}
    for g in lower:
        if g.range in reach:
            by_source.setdefault(g.source, []).append(g)

    def admit(x: Path) -> bool:
        bucket = classes[x.range]
        if any(equals(x, y) for y in bucket):
            return False
        bucket.append(x)
        return True

    frontier = [x for x in (gen_path(p, g.name) for g in _tops(p, k) if g.range in reach) if admit(x)]
    total = len(frontier)
    while frontier and total <= bound:
        grown = []
        for x in frontier:
            for g in by_source.get(x.range, ()):
                y = compose(gen_path(p, g.name), x)
                if admit(y):
                    grown.append(y)
                    total += 1
        frontier = grown
    if not frontier:
        return FiniteSet(tuple(sorted(classes[v], key=str)))
    witness = _find_witness(p, v, k, classes, reach)
    return witness if witness is not None else Unknown(bound)


def is_alpha_regular(p: Presentation, v: str, k: int, bound: int = DEFAULT_BOUND) -> bool | None:
    if not is_alpha_source_regular(p, v, k):
        return False
    fib = fibre(p, v, k, bound)
    if isinstance(fib, FiniteSet):
        return True
    if isinstance(fib, InfiniteWitness):
        return False
    return None


def vertex_level_report(p: Presentation, v: str, k: int, bound: int = DEFAULT_BOUND) -> VertexLevelReport:
    src = is_alpha_source(p, v, k)
    src_reg = is_alpha_source_regular(p, v, k)
    fib = fibre(p, v, k, bound)
    if not src_reg:
        regular: bool | None = False
    elif isinstance(fib, FiniteSet):
        regular = True
    elif isinstance(fib, InfiniteWitness):
        regular = False
    else:
        regular = None
    return VertexLevelReport(v, k, src, src_reg, fib, regular)


def relation_four_line(v: str, fib: FiniteSet) -> str:
    """The Cuntz-Krieger sum asserted at a regular vertex, as text (not decided algebra)."""
    terms = " + ".join(f"T[{m}] T[{m}]*" for m in fib.members) or "0"
    return f"T[{v}] = {terms}"


# ------------------------------------------------------------ exhaustive sets

def _dedupe(paths: Iterable[Path]) -> list[Path]:
    out: list[Path] = []
    for x in paths:
        if not any(equals(x, y) for y in out):
            out.append(x)
    return out


def minimalize(F: Iterable[Path], v: str | None = None) -> list[Path]:
    """Drop duplicates and every member that properly extends another member."""
    F = _dedupe(F)
    if v is not None and any(f.range != v for f in F):
        raise PreconditionError(f"members must have range {v}")
    out = []
    for f in F:
        # after dedupe only strictly shorter members can be proper prefixes
        cuts: dict[tuple, Path] = {}
        for e in F:
            if e.range != f.range or not e.length < f.length:
                continue
            key = e.length.raw
            if key not in cuts:
                cuts[key] = prefix(f, e.length)
            if equals(cuts[key], e):
                break
        else:
            out.append(f)
    return out


def split_exhaustive(F: Sequence[Path], e: Path, v: str | None = None,
                     check_exhaustive: bool = False,
                     bound: int = DEFAULT_BOUND) -> tuple[list[Path], list[Path]]:
    """Return (F_e, F^e): F_e = (F minus e*Lambda) plus e, F^e = {g : e g in F}.

    Minimality, range and overlap preconditions are always checked;
    exhaustiveness only with ``check_exhaustive`` since it may be undecided.
    """
    v = e.range if v is None else v
    F = list(F)
    if e.range != v or any(f.range != v for f in F):
        raise PreconditionError(f"e and all members of F must have range {v}")
    if len(minimalize(F)) != len(F):
        raise PreconditionError("F is not minimal")
    below = [f for f in F if in_extensions(f, e)]
    if not below:
        raise PreconditionError(f"F has no member in {e}*Lambda")
    if check_exhaustive and is_exhaustive(p_of(e), v, F, bound) is not True:
        raise PreconditionError("F is not (provably) exhaustive")
    lower = [f for f in F if not in_extensions(f, e)] + [e]
    upper = [split(f, e.length)[1] for f in below]
    return lower, upper


def p_of(e: Path) -> Presentation:
    return e.home


def _and3(values: Iterable[bool | None]) -> bool | None:
    out: bool | None = True
    for x in values:
        if x is False:
            return False
        if x is None:
            out = None
    return out


def is_exhaustive(p: Presentation, v: str, F: Iterable[Path], bound: int = DEFAULT_BOUND) -> bool | None:
    """Whether every path with range v shares a common extension with a member of F."""
    F = list(F)
    if any(f.range != v for f in F):
        raise PreconditionError(f"every member of F must have range {v}")
    F = minimalize(F)
    if any(f.is_identity() for f in F):
        return True
    if not F:
        return False
    shortest = min((f.length for f in F), key=lambda o: o.raw)
    fixed = all(f.length == shortest for f in F)
    cut = Ordinal.omega_power(int(shortest.lead_exponent())) if fixed else shortest
    groups = _group_by_head(F, cut)
    heads = [h for h, _ in groups]
    if fixed:
        k = int(shortest.lead_exponent())
        if not is_alpha_source_regular(p, v, k):
            return False
        fib = fibre(p, v, k, bound)
        if isinstance(fib, InfiniteWitness):
            return False
        if isinstance(fib, Unknown):
            return None
        if not all(any(equals(x, h) for h in heads) for x in fib.members):
            return False
        return _and3(is_exhaustive(p, h.source, rest, bound) for h, rest in groups)
    top = is_exhaustive(p, v, heads, bound)
    if top is False:
        return False
    return _and3([top] + [is_exhaustive(p, h.source, rest, bound) for h, rest in groups])


def _group_by_head(F: list[Path], cut: Ordinal) -> list[tuple[Path, list[Path]]]:
    """Split every member at ``cut`` and collect the tails under equal heads."""
    groups: list[tuple[Path, list[Path]]] = []
    for f in F:
        head, tail = split(f, cut)
        for h, rest in groups:
            if equals(h, head):
                rest.append(tail)
                break
        else:
            groups.append((head, [tail]))
    return groups
