"""Reduced words T_e T_f* of the generator calculus, plus zero.

Only the multiplicative structure is modelled: products of reduced words
reduce to a reduced word or zero, using the extension trichotomy of paths.
"""
from __future__ import annotations

from dataclasses import dataclass

from .path import Extension, Path, compare_extensions, compose, equals, identity, split, word_path
from .presentation import Presentation


@dataclass(frozen=True, eq=False)
class StarWord:
    """T_left T_right^*; ``None`` sides mean the zero word."""

    left: Path | None = None
    right: Path | None = None

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("both sides must be given, or neither (zero)")
        if self.left is not None and self.left.source != self.right.source:
            raise ValueError(f"sources differ: {self.left.source} vs {self.right.source}")

    @property
    def is_zero(self) -> bool:
        return self.left is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, StarWord):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return equals(self.left, other.left) and equals(self.right, other.right)

    def __hash__(self) -> int:
        return 0 if self.is_zero else hash((hash(self.left), hash(self.right)))

    def __mul__(self, other: "StarWord") -> "StarWord":
        return multiply(self, other)

    def __str__(self) -> str:
        return "0" if self.is_zero else f"{self.left} * {self.right}"

    def __repr__(self) -> str:
        return f"StarWord({str(self)!r})"


ZERO_WORD = StarWord()


def t(e: Path) -> StarWord:
    """T_e."""
    return StarWord(e, identity(e.home, e.source))


def t_star(e: Path) -> StarWord:
    """T_e^*."""
    return StarWord(identity(e.home, e.source), e)


def projection(e: Path) -> StarWord:
    """T_e T_e^*."""
    return StarWord(e, e)


def adjoint(w: StarWord) -> StarWord:
    return w if w.is_zero else StarWord(w.right, w.left)


def multiply(w1: StarWord, w2: StarWord) -> StarWord:
    if w1.is_zero or w2.is_zero:
        return ZERO_WORD
    e, f = w1.left, w1.right
    g, h = w2.left, w2.right
    if f.range != g.range:
        return ZERO_WORD
    rel = compare_extensions(f, g)
    if rel is Extension.DISJOINT:
        return ZERO_WORD
    if rel in (Extension.EQUAL, Extension.PROPER_PREFIX_OF):
        rest = split(g, f.length)[1]       # g = f rest
        return StarWord(compose(e, rest), h)
    rest = split(f, g.length)[1]           # f = g rest
    return StarWord(e, compose(h, rest))


def parse_star_word(p: Presentation, text: str) -> StarWord:
    """``"e1 e2 * f1 f2"`` denotes T_{e1 e2} T_{f1 f2}^*; ``"0"`` is zero.

    A side consisting of a single vertex name is that vertex's identity.
    """
    text = text.strip()
    if text == "0":
        return ZERO_WORD
    if text.count("*") != 1:
        raise ValueError(f"expected exactly one '*' in {text!r}")
    left, right = (side.strip() for side in text.split("*"))
    if not left or not right:
        raise ValueError(f"both sides of '*' must be nonempty in {text!r}")
    return StarWord(word_path(p, left), word_path(p, right))
