"""Finite presentations of ordinal graphs.

A presentation lists vertices and leveled generators.  A level-k generator
has length w**k; every generator of level >= 1 carries one unfolding rule
``p = a b ... t`` whose word ``a b ...`` uses strictly lower levels (range
side first) and whose tail ``t`` has level k.  DSL::

    vertex v
    edge e : v -> v
    gen f level 1 : v -> v = e f

``edge e : u -> w`` means source u, range w.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

KEYWORDS = frozenset({"vertex", "edge", "gen", "level"})
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class PresentationError(ValueError):
    """Malformed presentation text or data."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class DSLSyntaxError(PresentationError):
    pass


class UnknownIdentifier(PresentationError):
    pass


class DuplicateDefinition(PresentationError):
    pass


class InvalidPresentation(PresentationError):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid presentation: " + "; ".join(v.message for v in report.violations))


@dataclass(frozen=True)
class Generator:
    name: str
    level: int
    source: str
    range: str
    word: tuple[str, ...] = ()
    tail: str | None = None

    @property
    def has_rule(self) -> bool:
        return self.tail is not None


class Presentation:
    """Immutable description of an ordinal graph.

    Derived caches (word paths, tail sets, equality memo) hang off ``cache``;
    they only ever memoize pure functions of the presentation.
    """

    def __init__(self, name: str, vertices: Iterable[str], generators: Iterable[Generator],
                 meta: dict | None = None):
        self.name = name
        self.vertices: tuple[str, ...] = tuple(sorted(set(vertices)))
        gens = sorted(generators, key=lambda g: (g.level, g.name))
        self.generators: dict[str, Generator] = {}
        for g in gens:
            if g.name in self.generators or g.name in self.vertices:
                raise DuplicateDefinition(f"duplicate name {g.name!r}")
            self.generators[g.name] = g
        self.meta: dict = dict(meta or {})
        self.max_level: int = max((g.level for g in gens), default=0)
        self.cache: dict = {}

    def __repr__(self) -> str:
        return (f"Presentation({self.name!r}, {len(self.vertices)} vertices, "
                f"{len(self.generators)} generators, max level {self.max_level})")

    def gen(self, name: str) -> Generator:
        try:
            return self.generators[name]
        except KeyError:
            raise UnknownIdentifier(f"unknown generator {name!r}") from None

    def level_names(self, k: int) -> list[str]:
        return [g.name for g in self.generators.values() if g.level == k]

    def below(self, k: int) -> list[Generator]:
        return [g for g in self.generators.values() if g.level < k]

    @property
    def levels(self) -> list[int]:
        return sorted({g.level for g in self.generators.values()})

    def is_digraph(self) -> bool:
        return all(g.level == 0 for g in self.generators.values())

    def chain(self, name: str) -> list[str]:
        """Unfolding chain p, t(p), t(t(p)), ... up to (excluding) the first repeat."""
        seen: list[str] = []
        cur: str | None = name
        while cur is not None and cur not in seen:
            seen.append(cur)
            cur = self.gen(cur).tail
        return seen

    def structure(self) -> tuple:
        return (self.vertices, tuple(sorted(self.generators.values(), key=lambda g: g.name)))


# ---------------------------------------------------------------- DSL parsing

@dataclass
class _Token:
    kind: str  # ident, nat, sym
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        while col < len(line):
            ch = line[col]
            if ch.isspace():
                col += 1
                continue
            if line.startswith("->", col):
                tokens.append(_Token("sym", "->", lineno, col + 1))
                col += 2
                continue
            if ch in ":=":
                tokens.append(_Token("sym", ch, lineno, col + 1))
                col += 1
                continue
            if ch.isdigit():
                m = re.match(r"\d+", line[col:])
                tokens.append(_Token("nat", m.group(), lineno, col + 1))
                col += m.end()
                continue
            m = _IDENT.match(line, col)
            if not m:
                raise DSLSyntaxError(f"unexpected character {ch!r}", lineno, col + 1)
            tokens.append(_Token("ident", m.group(), lineno, col + 1))
            col = m.end()
    return tokens


class _DSLParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        last = self.tokens[-1] if self.tokens else None
        self.eof = (last.line, last.column + len(last.text)) if last else (1, 1)

    def _peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _error(self, message: str, tok: _Token | None):
        line, col = (tok.line, tok.column) if tok else self.eof
        raise DSLSyntaxError(message, line, col)

    def _take(self, kind: str, text: str | None = None) -> _Token:
        tok = self._peek()
        if tok is None or tok.kind != kind or (text is not None and tok.text != text):
            want = repr(text) if text else kind
            got = repr(tok.text) if tok else "end of input"
            self._error(f"expected {want}, found {got}", tok)
        self.i += 1
        return tok

    def _name(self) -> _Token:
        tok = self._take("ident")
        if tok.text in KEYWORDS:
            self._error(f"keyword {tok.text!r} cannot be used as a name", tok)
        return tok

    def _names_until_keyword(self) -> list[_Token]:
        out = []
        while (tok := self._peek()) is not None and tok.kind == "ident" and tok.text not in KEYWORDS:
            out.append(self._name())
        return out

    def parse(self):
        vertices: list[_Token] = []
        edges: list[tuple] = []
        gens: list[tuple] = []
        while (tok := self._peek()) is not None:
            if tok.kind != "ident" or tok.text not in ("vertex", "edge", "gen"):
                self._error(f"expected 'vertex', 'edge' or 'gen', found {tok.text!r}", tok)
            self.i += 1
            if tok.text == "vertex":
                names = self._names_until_keyword()
                if not names:
                    self._error("expected at least one vertex name", self._peek())
                vertices.extend(names)
            elif tok.text == "edge":
                name = self._name()
                self._take("sym", ":")
                src = self._name()
                self._take("sym", "->")
                rng = self._name()
                edges.append((name, src, rng))
            else:
                name = self._name()
                self._take("ident", "level")
                level = self._take("nat")
                self._take("sym", ":")
                src = self._name()
                self._take("sym", "->")
                rng = self._name()
                eq = self._take("sym", "=")
                letters = self._names_until_keyword()
                if not letters:
                    self._error("expected a rule word and tail", self._peek())
                if len(letters) == 1:
                    raise DSLSyntaxError(
                        f"rule for {name.text!r} has an empty word before the tail", eq.line, eq.column)
                gens.append((name, int(level.text), src, rng, letters))
        return vertices, edges, gens


def parse_presentation(text: str, name: str = "input", strict: bool = False) -> Presentation:
    """Parse DSL text.  With ``strict`` the result must also pass :func:`validate`."""
    vertices, edges, gens = _DSLParser(text).parse()
    seen: dict[str, _Token] = {}
    for tok in [*vertices, *(e[0] for e in edges), *(g[0] for g in gens)]:
        if tok.text in seen:
            first = seen[tok.text]
            raise DuplicateDefinition(
                f"{tok.text!r} already defined at line {first.line}, column {first.column}",
                tok.line, tok.column)
        seen[tok.text] = tok
    vset = {t.text for t in vertices}
    gset = {e[0].text for e in edges} | {g[0].text for g in gens}

    def vertex(tok: _Token) -> str:
        if tok.text not in vset:
            raise UnknownIdentifier(f"unknown vertex {tok.text!r}", tok.line, tok.column)
        return tok.text

    def letter(tok: _Token) -> str:
        if tok.text not in gset:
            raise UnknownIdentifier(f"unknown generator {tok.text!r}", tok.line, tok.column)
        return tok.text

    out = [Generator(n.text, 0, vertex(s), vertex(r)) for n, s, r in edges]
    for n, level, s, r, letters in gens:
        names = [letter(t) for t in letters]
        out.append(Generator(n.text, level, vertex(s), vertex(r), tuple(names[:-1]), names[-1]))
    pres = Presentation(name, (t.text for t in vertices), out)
    if strict:
        report = validate(pres)
        if not report.ok:
            raise InvalidPresentation(report)
    return pres


def to_dsl(p: Presentation) -> str:
    lines = [f"# {p.name}"]
    if p.vertices:
        lines.append("vertex " + " ".join(p.vertices))
    for g in p.generators.values():
        if g.level == 0 and not g.has_rule:
            lines.append(f"edge {g.name} : {g.source} -> {g.range}")
    for g in p.generators.values():
        if g.has_rule:
            word = " ".join((*g.word, g.tail))
            lines.append(f"gen {g.name} level {g.level} : {g.source} -> {g.range} = {word}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ validation

@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    message: str
    witness: tuple = ()


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def _structural_violations(p: Presentation) -> list[Violation]:
    out: list[Violation] = []
    vset = set(p.vertices)
    for g in p.generators.values():
        for end in (g.source, g.range):
            if end not in vset:
                out.append(Violation("reference", g.name, f"{g.name}: unknown vertex {end!r}"))
        if g.level < 0:
            out.append(Violation("level", g.name, f"{g.name}: negative level"))
        if g.level == 0:
            if g.has_rule:
                out.append(Violation("rule", g.name, f"{g.name}: level-0 generator has a rule"))
            continue
        if not g.has_rule:
            out.append(Violation("rule", g.name, f"{g.name}: level-{g.level} generator has no rule"))
            continue
        if not g.word:
            out.append(Violation("rule", g.name, f"{g.name}: rule word is empty"))
            continue
        unknown = [x for x in (*g.word, g.tail) if x not in p.generators]
        if unknown:
            out.append(Violation("reference", g.name, f"{g.name}: unknown letters {unknown}"))
            continue
        letters = [p.generators[x] for x in g.word]
        tail = p.generators[g.tail]
        high = [x.name for x in letters if x.level >= g.level]
        if high:
            out.append(Violation("level", g.name,
                                 f"{g.name}: word letters {high} are not below level {g.level}",
                                 tuple(high)))
        if tail.level != g.level:
            out.append(Violation("level", g.name,
                                 f"{g.name}: tail {tail.name} has level {tail.level}, expected {g.level}",
                                 (tail.name,)))
        if not any(x.level == g.level - 1 for x in letters):
            out.append(Violation("productivity", g.name,
                                 f"{g.name}: rule word has no level-{g.level - 1} letter"))
        if p.generators[g.word[0]].range != g.range:
            out.append(Violation("endpoint", g.name,
                                 f"{g.name}: range {g.range} differs from range of {g.word[0]}",
                                 (g.word[0],)))
        if tail.source != g.source:
            out.append(Violation("endpoint", g.name,
                                 f"{g.name}: source {g.source} differs from source of tail {tail.name}",
                                 (tail.name,)))
        seq = [*letters, tail]
        for left, right in zip(seq, seq[1:]):
            if left.source != right.range:
                out.append(Violation("endpoint", g.name,
                                     f"{g.name}: {left.name} then {right.name} is not composable",
                                     (left.name, right.name)))
    return out


def validate(p: Presentation) -> ValidationReport:
    """Check the well-formedness conditions used by this package.

    These are sufficient conditions: the structural checks make every rule a
    genuine length-w**k path, and the collision check makes distinct
    generator names denote distinct morphisms.
    """
    report = ValidationReport(_structural_violations(p))
    if report.violations:
        return report
    from .path import equals, gen_path

    for k in p.levels:
        if k == 0:
            continue
        names = p.level_names(k)
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                if equals(gen_path(p, a), gen_path(p, b)):
                    report.violations.append(Violation(
                        "collision", a,
                        f"{a} and {b} have merging unfolding chains and denote the same morphism",
                        (a, b)))
    return report


# -------------------------------------------------------------------- builtins

def _interval_omega2() -> Presentation:
    return Presentation("interval_omega2", ["v"], [
        Generator("e", 0, "v", "v"),
        Generator("f", 1, "v", "v", ("e",), "f"),
    ])


def _two_loop() -> Presentation:
    return Presentation("two_loop", ["v"], [
        Generator("e", 0, "v", "v"),
        Generator("f", 0, "v", "v"),
        Generator("g", 1, "v", "v", ("e", "f"), "g"),
    ])


def _two_plus_two() -> Presentation:
    return Presentation("two_plus_two", ["v"], [
        Generator("e", 0, "v", "v"),
        Generator("f", 0, "v", "v"),
        Generator("g", 1, "v", "v", ("e",), "g"),
        Generator("h", 1, "v", "v", ("f",), "h"),
    ])


def _long_path_trunc(n: int) -> Presentation:
    if n < 2:
        raise PresentationError(f"long_path_trunc needs N >= 2, got {n}")
    width = len(str(n - 1))

    def ix(i: int) -> str:
        return str(i % n).zfill(width)

    gens = []
    for i in range(n):
        gens.append(Generator(f"e{ix(i)}", 0, f"v{ix(i + 1)}", f"v{ix(i)}"))
        gens.append(Generator(f"f{ix(i)}", 0, f"v{ix(i)}", f"v{ix(i)}"))
        gens.append(Generator(f"g{ix(i)}", 1, f"v{ix(0)}", f"v{ix(i)}",
                              (f"f{ix(i)}", f"e{ix(i)}"), f"g{ix(i + 1)}"))
    return Presentation(f"long_path_trunc({n})", [f"v{ix(i)}" for i in range(n)], gens,
                        meta={"analogue": True, "wraps_mod": n})


def _cantor_trunc(length: int, levels: int) -> Presentation:
    if length < 1 or levels < 1:
        raise PresentationError(f"cantor_trunc needs L >= 1 and K >= 1, got ({length}, {levels})")
    words = [format(i, f"0{length}b") for i in range(2 ** length)]

    def shift(bit: str, x: str) -> str:
        # prepend and drop the last symbol, keeping length fixed
        return (bit + x)[:length]

    def v(x: str) -> str:
        return f"v{x}"

    ends: dict[str, tuple[str, str]] = {}  # name -> (source, range)
    gens: list[Generator] = []
    for x in words:
        v0, v1 = v(shift("0", x)), v(shift("1", x))
        for name, s, r in ((f"e0_{x}", v0, v0), (f"f0_{x}", v1, v1),
                           (f"g0_{x}", v0, v1), (f"h0_{x}", v1, v0)):
            ends[name] = (s, r)
            gens.append(Generator(name, 0, s, r))
    for a in range(levels - 1):
        b = a + 1
        for x in words:
            x0, x1 = shift("0", x), shift("1", x)
            rules = {
                f"e{b}_{x}": ((f"e{a}_{x0}",), ends[f"e{a}_{x0}"][0]),
                f"f{b}_{x}": ((f"f{a}_{x1}",), ends[f"f{a}_{x1}"][0]),
                f"g{b}_{x}": ((f"g{a}_{x1}", f"h{a}_{x1}"), ends[f"g{a}_{x0}"][0]),
                f"h{b}_{x}": ((f"h{a}_{x0}", f"g{a}_{x0}"), ends[f"h{a}_{x1}"][0]),
            }
            for name, (word, src) in rules.items():
                rng = ends[word[0]][1]
                ends[name] = (src, rng)
                gens.append(Generator(name, b, src, rng, word, name))
    return Presentation(f"cantor_trunc({length},{levels})", [v(x) for x in words], gens,
                        meta={"analogue": True, "string_length": length, "levels": levels})


BUILTINS = {
    "interval_omega2": (_interval_omega2, 0),
    "two_loop": (_two_loop, 0),
    "two_plus_two": (_two_plus_two, 0),
    "long_path_trunc": (_long_path_trunc, 1),
    "cantor_trunc": (_cantor_trunc, 2),
}

_CALL = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(\s*([0-9,\s]*)\))?\s*$")


def builtin(name: str, *params: int) -> Presentation:
    """Build a named example.  ``name`` may carry its parameters, e.g. ``"cantor_trunc(2,2)"``."""
    m = _CALL.match(name)
    if not m:
        raise PresentationError(f"unknown builtin {name!r}")
    base, args = m.group(1), m.group(2)
    if args is not None:
        if params:
            raise PresentationError("parameters given twice")
        params = tuple(int(a) for a in args.split(",") if a.strip())
    if base not in BUILTINS:
        raise PresentationError(f"unknown builtin {base!r}; choose from {sorted(BUILTINS)}")
    factory, arity = BUILTINS[base]
    if len(params) != arity:
        raise PresentationError(f"{base} takes {arity} parameter(s), got {len(params)}")
    return factory(*params)


def is_builtin_name(text: str) -> bool:
    m = _CALL.match(text)
    return bool(m) and m.group(1) in BUILTINS
