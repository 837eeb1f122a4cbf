"""Combinatorics of finitely presented ordinal graphs.

Modules
-------
ordinal       Cantor normal form arithmetic below epsilon_0.
presentation  DSL, validation and builtin example graphs.
path          Block normal form, composition, factorization and equality.
starword      Reduced words T_e T_f* and their products.
regularity    Sources, fibres, regularity and exhaustive sets.
quotient      Components, tail equivalence, quotient digraphs, non-returning paths.
verdict       Conditions (V) and (S), uniqueness and simplicity verdicts.
"""
from .ordinal import OMEGA, Ordinal, parse_ordinal
from .path import Path, compose, equals, split, word_path
from .presentation import Presentation, builtin, parse_presentation, validate

__version__ = "0.1.0"

__all__ = [
    "OMEGA", "Ordinal", "Path", "Presentation", "__version__", "builtin", "compose",
    "equals", "parse_ordinal", "parse_presentation", "split", "validate", "word_path",
]
