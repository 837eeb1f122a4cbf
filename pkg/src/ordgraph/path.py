"""Morphisms of a presented ordinal graph, kept in block normal form.

A path is a sequence of blocks whose lengths are non-increasing powers of w.
A level-0 block is an edge; a level-k block ``(u, p)`` is a prefix path
``u`` of length < w**k followed by the level-k generator ``p``, and denotes
the composite ``u p``.  Composition is written range side first, so
``compose(e, f)`` needs ``source(e) == range(f)``.

Blocks are not canonical: ``(u, p)`` and ``(u w, t)`` are the same morphism
when ``p = w t`` is a rule.  Equality is therefore decided by simulating the
unfolding of both sides (see :func:`equals`).
"""
from __future__ import annotations

import enum
from typing import Iterable, Sequence

from . import kernel
from .ordinal import ZERO, Ordinal, UndefinedOperation, add, left_sub
from .presentation import Presentation


class NonComposable(ValueError):
    pass


class Extension(enum.Enum):
    EQUAL = "Equal"
    PROPER_PREFIX_OF = "ProperPrefixOf"   # first argument is a proper prefix of the second
    PROPERLY_EXTENDS = "ProperlyExtends"  # first argument properly extends the second
    DISJOINT = "Disjoint"


class Block:
    __slots__ = ("prefix", "gen", "level", "source", "_key")

    def __init__(self, prefix: "Path", gen: str, level: int, source: str):
        self.prefix = prefix
        self.gen = gen
        self.level = level
        self.source = source
        self._key = None

    @property
    def range(self) -> str:
        return self.prefix.range

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.prefix.key, self.gen)
        return self._key

    def letters(self) -> list[str]:
        return [*self.prefix.letters(), self.gen]


class Path:
    """An immutable morphism.  ``==`` is morphism equality."""

    __slots__ = ("home", "range", "source", "blocks", "_key", "_length")

    def __init__(self, home: Presentation, range: str, source: str, blocks: tuple[Block, ...] = ()):
        self.home = home
        self.range = range
        self.source = source
        self.blocks = blocks
        self._key = None
        self._length = None

    @property
    def key(self) -> tuple:
        """Structural key; equal keys imply equal morphisms, not conversely."""
        if self._key is None:
            self._key = (self.range, self.source, tuple(b.key for b in self.blocks))
        return self._key

    @property
    def length(self) -> Ordinal:
        if self._length is None:
            self._length = Ordinal._wrap(kernel.from_levels([b.level for b in self.blocks]))
        return self._length

    def is_identity(self) -> bool:
        return not self.blocks

    def letters(self) -> list[str]:
        out: list[str] = []
        for b in self.blocks:
            out.extend(b.letters())
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Path):
            return NotImplemented
        return equals(self, other)

    def __hash__(self) -> int:
        return hash((self.range, self.source, self.length.raw))

    def __str__(self) -> str:
        letters = self.letters()
        return " ".join(letters) if letters else self.range

    def __repr__(self) -> str:
        return f"Path({str(self)!r})"


# ----------------------------------------------------------------- building

def identity(p: Presentation, v: str) -> Path:
    if v not in p.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    return Path(p, v, v)


def _sub(p: Presentation, blocks: Sequence[Block], range_: str | None = None,
         source: str | None = None) -> Path:
    blocks = tuple(blocks)
    if blocks:
        return Path(p, blocks[0].range, blocks[-1].source, blocks)
    v = range_ if range_ is not None else source
    return Path(p, v, v)


def gen_path(p: Presentation, name: str) -> Path:
    cache = p.cache.setdefault("gen_path", {})
    hit = cache.get(name)
    if hit is None:
        g = p.gen(name)
        hit = Path(p, g.range, g.source, (Block(Path(p, g.range, g.range), name, g.level, g.source),))
        cache[name] = hit
    return hit


def word_path(p: Presentation, word: str | Iterable[str]) -> Path:
    """Compose generators given range side first; a lone vertex name is its identity."""
    names = word.split() if isinstance(word, str) else list(word)
    if not names:
        raise ValueError("empty word")
    if len(names) == 1 and names[0] in p.vertices:
        return identity(p, names[0])
    return compose_all(*(gen_path(p, n) for n in names))


def rule_word(p: Presentation, name: str) -> Path:
    """The rule word of a level >= 1 generator as a path."""
    cache = p.cache.setdefault("rule_word", {})
    hit = cache.get(name)
    if hit is None:
        hit = word_path(p, p.gen(name).word)
        cache[name] = hit
    return hit


def compose(e: Path, f: Path) -> Path:
    if e.home is not f.home:
        raise ValueError("paths belong to different presentations")
    if e.source != f.range:
        raise NonComposable(f"cannot compose {e} (source {e.source}) with {f} (range {f.range})")
    if not e.blocks:
        return f
    if not f.blocks:
        return e
    head = f.blocks[0]
    k = head.level
    r = len(e.blocks)
    while r > 0 and e.blocks[r - 1].level < k:
        r -= 1
    if r == len(e.blocks):
        return Path(e.home, e.range, f.source, e.blocks + f.blocks)
    low = _sub(e.home, e.blocks[r:])
    merged = Block(compose(low, head.prefix), head.gen, k, head.source)
    return Path(e.home, e.range, f.source, e.blocks[:r] + (merged,) + f.blocks[1:])


def compose_all(*paths: Path) -> Path:
    if not paths:
        raise ValueError("nothing to compose")
    out = paths[-1]
    for left in reversed(paths[:-1]):
        out = compose(left, out)
    return out


def length(e: Path) -> Ordinal:
    return e.length


def source(e: Path) -> str:
    return e.source


def range_of(e: Path) -> str:
    return e.range


# -------------------------------------------------------------------- split

def _unfold(p: Presentation, prefix: Path, gen: str) -> tuple[Path, str]:
    return compose(prefix, rule_word(p, gen)), p.gen(gen).tail


def _split_block(p: Presentation, b: Block, beta: Ordinal) -> tuple[Path, Block]:
    x, t = b.prefix, b.gen
    while x.length < beta:
        x, t = _unfold(p, x, t)
    head, rest = split(x, beta)
    return head, Block(rest, t, b.level, b.source)


def split(e: Path, a: Ordinal | int) -> tuple[Path, Path]:
    """The unique (head, tail) with head*tail == e and length(head) == a."""
    a = Ordinal(a)
    total = e.length
    if a > total:
        raise UndefinedOperation(f"cannot split a path of length {total} at {a}")
    p = e.home
    if not a:
        return Path(p, e.range, e.range), e
    if a == total:
        return e, Path(p, e.source, e.source)
    consumed = ZERO
    for i, b in enumerate(e.blocks):
        step = add(consumed, Ordinal.omega_power(b.level))
        if step <= a:
            consumed = step
            if step == a:
                return _sub(p, e.blocks[:i + 1]), _sub(p, e.blocks[i + 1:])
            continue
        head_part, rest = _split_block(p, b, left_sub(consumed, a))
        head = Path(p, e.range, head_part.source, e.blocks[:i] + head_part.blocks)
        tail = Path(p, rest.range, e.source, (rest,) + e.blocks[i + 1:])
        return head, tail
    raise AssertionError("unreachable: split position beyond the last block")


def prefix(e: Path, a: Ordinal | int) -> Path:
    return split(e, a)[0]


def suffix(e: Path, a: Ordinal | int) -> Path:
    return split(e, a)[1]


# ----------------------------------------------------------------- equality

def _decompose(p: Presentation, x: Path, k: int) -> tuple[tuple[Block, ...], Path]:
    """Leading level-(k-1) blocks of x, and the lower remainder."""
    i = 0
    while i < len(x.blocks) and x.blocks[i].level == k - 1:
        i += 1
    return x.blocks[:i], _sub(p, x.blocks[i:], source=x.source)


class _Side:
    __slots__ = ("queue", "rem", "tail")

    def __init__(self, queue, rem, tail):
        self.queue = list(queue)
        self.rem = rem
        self.tail = tail

    def key(self) -> tuple:
        return (self.tail, tuple(b.key for b in self.queue), self.rem.key)


def _simulate(p: Presentation, a: Block, b: Block, streams_only: bool) -> bool:
    """Run both unfoldings in step, matching their level-(k-1) block streams.

    Returns True when a synchronised point shows equal morphisms (or, with
    ``streams_only``, when a state repeats without any mismatch).
    """
    k = a.level
    left = _Side(*_decompose(p, a.prefix, k), a.gen)
    right = _Side(*_decompose(p, b.prefix, k), b.gen)
    visited: set = set()
    while True:
        while left.queue and right.queue:
            if not _block_equal(p, left.queue.pop(0), right.queue.pop(0)):
                return False
        if not streams_only and not left.queue and not right.queue:
            if left.tail == right.tail and equals(left.rem, right.rem):
                return True
        state = (left.key(), right.key())
        if state in visited:
            return streams_only
        visited.add(state)
        for side in (left, right):
            if not side.queue:
                grown = compose(side.rem, rule_word(p, side.tail))
                full, side.rem = _decompose(p, grown, k)
                side.queue.extend(full)
                side.tail = p.gen(side.tail).tail


def _block_equal(p: Presentation, a: Block, b: Block) -> bool:
    if a is b:
        return True
    if a.level != b.level or a.source != b.source or a.range != b.range:
        return False
    if a.level == 0:
        return a.gen == b.gen
    ka, kb = a.key, b.key
    if ka == kb:
        return True
    memo = p.cache.setdefault("block_eq", {})
    hit = memo.get((ka, kb))
    if hit is None:
        hit = _simulate(p, a, b, streams_only=False)
        memo[(ka, kb)] = memo[(kb, ka)] = hit
    return hit


def equals(e: Path, f: Path) -> bool:
    """Morphism equality."""
    if e is f:
        return True
    if e.home is not f.home:
        raise ValueError("paths belong to different presentations")
    if e.range != f.range or e.source != f.source or len(e.blocks) != len(f.blocks):
        return False
    if any(x.level != y.level for x, y in zip(e.blocks, f.blocks)):
        return False
    return all(_block_equal(e.home, x, y) for x, y in zip(e.blocks, f.blocks))


def streams_differ(e: Path, f: Path) -> bool:
    """True when two single-block paths of equal level emit different lower streams.

    Different streams imply different morphisms; the converse fails (two
    generators may emit the same stream and still be distinct).
    """
    if len(e.blocks) != 1 or len(f.blocks) != 1 or e.blocks[0].level != f.blocks[0].level:
        raise ValueError("streams_differ expects two single blocks of one level")
    a, b = e.blocks[0], f.blocks[0]
    if a.level == 0:
        return a.gen != b.gen
    return not _simulate(e.home, a, b, streams_only=True)


def compare_extensions(e: Path, f: Path) -> Extension:
    if e.range != f.range:
        return Extension.DISJOINT
    le, lf = e.length, f.length
    if le <= lf:
        if not equals(prefix(f, le), e):
            return Extension.DISJOINT
        return Extension.EQUAL if le == lf else Extension.PROPER_PREFIX_OF
    return Extension.PROPERLY_EXTENDS if equals(prefix(e, lf), f) else Extension.DISJOINT


def in_extensions(f: Path, e: Path) -> bool:
    """f in e*Lambda."""
    return compare_extensions(e, f) in (Extension.EQUAL, Extension.PROPER_PREFIX_OF)


# -------------------------------------------------------------------- tails

def _dedupe(pairs: list[tuple[Ordinal, Path]]) -> list[tuple[Ordinal, Path]]:
    pairs = sorted(pairs, key=lambda t: t[0].raw)
    out: list[tuple[Ordinal, Path]] = []
    for beta, x in pairs:
        if not any(equals(x, y) for _, y in out):
            out.append((beta, x))
    return out


def _gen_tails(p: Presentation, name: str) -> list[tuple[Ordinal, Path]]:
    cache = p.cache.setdefault("gen_tails", {})
    if name in cache:
        return cache[name]
    g = p.gen(name)
    out = [(ZERO, gen_path(p, name))]
    if g.level > 0:
        offset = ZERO
        for q in p.chain(name):
            out.append((offset, gen_path(p, q)))
            w = rule_word(p, q)
            t = gen_path(p, p.gen(q).tail)
            for gamma, s in _path_tails(w):
                out.append((add(offset, gamma), compose(s, t)))
            offset = add(offset, w.length)
    cache[name] = _dedupe(out)
    return cache[name]


def _block_tails(p: Presentation, b: Block) -> list[tuple[Ordinal, Path]]:
    if b.level == 0:
        return [(ZERO, _sub(p, (b,)))]
    g = gen_path(p, b.gen)
    out = [(gamma, compose(s, g)) for gamma, s in _path_tails(b.prefix)]
    du = b.prefix.length
    out.extend((add(du, gamma), s) for gamma, s in _gen_tails(p, b.gen))
    return out


def _path_tails(e: Path) -> list[tuple[Ordinal, Path]]:
    p = e.home
    out = []
    offset = ZERO
    for i, b in enumerate(e.blocks):
        rest = _sub(p, e.blocks[i + 1:], source=e.source)
        for gamma, s in _block_tails(p, b):
            out.append((add(offset, gamma), compose(s, rest)))
        offset = add(offset, Ordinal.omega_power(b.level))
    return out


def tail_states_at(e: Path, include_end: bool = False) -> list[tuple[Ordinal, Path]]:
    """One (smallest beta, e^beta) pair per distinct tail value, ordered by beta."""
    out = _dedupe(_path_tails(e))
    if include_end and not any(x.is_identity() for _, x in out):
        out.append((e.length, Path(e.home, e.source, e.source)))
    return out


def tail_states(e: Path, include_end: bool = False) -> list[Path]:
    return [x for _, x in tail_states_at(e, include_end)]


def tail_vertices(e: Path) -> list[str]:
    """Sorted ranges of e^beta for beta < length(e)."""
    return sorted({x.range for _, x in _path_tails(e)})


def normal_blocks(e: Path) -> list[tuple[Ordinal, Path]]:
    if not e.blocks:
        raise UndefinedOperation("an identity has no normal blocks")
    return [(Ordinal.omega_power(b.level), _sub(e.home, (b,))) for b in e.blocks]
