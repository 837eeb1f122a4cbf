"""Ordinals below epsilon_0 in Cantor normal form.

Values are immutable and hashable.  Arithmetic is the usual non-commutative
ordinal arithmetic, so ``1 + w == w`` while ``w + 1 > w``.  Text syntax::

    ord  := term ("+" term)*
    term := "w" ("^" atom)? ("*" NAT)? | NAT
    atom := NAT | "w" | "(" ord ")"
"""
from __future__ import annotations

import enum
from typing import Iterable, Union

from . import kernel

IntoOrdinal = Union["Ordinal", int]


class UndefinedOperation(ArithmeticError):
    """Raised when an ordinal operation is outside its domain."""


class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class Comparison(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


class Ordinal:
    __slots__ = ("_t", "__weakref__")

    def __init__(self, value: IntoOrdinal = 0):
        if isinstance(value, Ordinal):
            self._t = value._t
        elif isinstance(value, int) and not isinstance(value, bool):
            self._t = kernel.finite(value)
        else:
            raise TypeError(f"cannot make an ordinal from {value!r}")

    @classmethod
    def _wrap(cls, raw: tuple) -> "Ordinal":
        obj = cls.__new__(cls)
        obj._t = raw
        return obj

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[IntoOrdinal, int]]) -> "Ordinal":
        """Build from (exponent, coefficient) pairs; they must already be in CNF order."""
        raw = []
        for exp, coeff in terms:
            if coeff < 1:
                raise ValueError("coefficients must be positive")
            raw.append((_coerce(exp)._t, coeff))
        for (e1, _), (e2, _) in zip(raw, raw[1:]):
            if not e1 > e2:
                raise ValueError("exponents must be strictly decreasing")
        return cls._wrap(tuple(raw))

    @classmethod
    def omega_power(cls, exponent: IntoOrdinal = 1, coefficient: int = 1) -> "Ordinal":
        if coefficient < 0:
            raise ValueError("negative coefficient")
        if coefficient == 0:
            return ZERO
        return cls._wrap(((_coerce(exponent)._t, coefficient),))

    @property
    def terms(self) -> tuple[tuple["Ordinal", int], ...]:
        return tuple((Ordinal._wrap(e), c) for e, c in self._t)

    @property
    def raw(self) -> tuple:
        return self._t

    def is_zero(self) -> bool:
        return not self._t

    def is_finite(self) -> bool:
        return not self._t or (len(self._t) == 1 and not self._t[0][0])

    def is_limit(self) -> bool:
        return bool(self._t) and bool(self._t[-1][0])

    def is_successor(self) -> bool:
        return bool(self._t) and not self._t[-1][0]

    def lead_exponent(self) -> "Ordinal":
        if not self._t:
            raise UndefinedOperation("zero has no leading exponent")
        return Ordinal._wrap(self._t[0][0])

    def last_exponent(self) -> "Ordinal":
        if not self._t:
            raise UndefinedOperation("zero has no trailing exponent")
        return Ordinal._wrap(self._t[-1][0])

    def __int__(self) -> int:
        if not self.is_finite():
            raise UndefinedOperation(f"{self} is infinite")
        return self._t[0][1] if self._t else 0

    def __index__(self) -> int:
        return int(self)

    def __bool__(self) -> bool:
        return bool(self._t)

    def __hash__(self) -> int:
        return hash(self._t)

    def __eq__(self, other) -> bool:
        try:
            return self._t == _coerce(other)._t
        except TypeError:
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self._t < _coerce(other)._t

    def __le__(self, other) -> bool:
        return self._t <= _coerce(other)._t

    def __gt__(self, other) -> bool:
        return self._t > _coerce(other)._t

    def __ge__(self, other) -> bool:
        return self._t >= _coerce(other)._t

    def __add__(self, other: IntoOrdinal) -> "Ordinal":
        return add(self, other)

    def __radd__(self, other: IntoOrdinal) -> "Ordinal":
        return add(other, self)

    def __mul__(self, other: IntoOrdinal) -> "Ordinal":
        return mul(self, other)

    def __rmul__(self, other: IntoOrdinal) -> "Ordinal":
        return mul(other, self)

    def __pow__(self, other: IntoOrdinal) -> "Ordinal":
        return power(self, other)

    def __rpow__(self, other: IntoOrdinal) -> "Ordinal":
        return power(other, self)

    def __str__(self) -> str:
        return _format(self._t)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"


def _coerce(x: IntoOrdinal) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal._wrap(kernel.finite(x))
    raise TypeError(f"not an ordinal: {x!r}")


ZERO = Ordinal._wrap(())
ONE = Ordinal._wrap(kernel.finite(1))
OMEGA = Ordinal._wrap(((kernel.finite(1), 1),))


def add(a: IntoOrdinal, b: IntoOrdinal) -> Ordinal:
    return Ordinal._wrap(kernel.add(_coerce(a)._t, _coerce(b)._t))


def left_sub(a: IntoOrdinal, b: IntoOrdinal) -> Ordinal:
    """The unique g with a + g == b (written -a+b)."""
    try:
        return Ordinal._wrap(kernel.left_sub(_coerce(a)._t, _coerce(b)._t))
    except ValueError:
        raise UndefinedOperation(f"-({a})+({b}) is undefined: {a} > {b}") from None


def mul(a: IntoOrdinal, b: IntoOrdinal) -> Ordinal:
    return Ordinal._wrap(kernel.mul(_coerce(a)._t, _coerce(b)._t))


def _finite_power(a: Ordinal, n: int) -> Ordinal:
    result, base = ONE, a
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def power(a: IntoOrdinal, b: IntoOrdinal) -> Ordinal:
    """a ** b.  By convention 0 ** 0 == 1."""
    a, b = _coerce(a), _coerce(b)
    if not b:
        return ONE
    if not a:
        return ZERO
    if a == ONE:
        return ONE
    result = ONE
    for exp, coeff in b.terms:
        if not exp:
            factor = _finite_power(a, coeff)
        else:
            if a.is_finite():
                # n ** (w ** e) == w ** (w ** (-1 + e)) for n >= 2
                top = Ordinal.omega_power(left_sub(ONE, exp))
            else:
                top = mul(a.lead_exponent(), Ordinal.omega_power(exp))
            factor = Ordinal.omega_power(mul(top, coeff))
        result = mul(result, factor)
    return result


def ord_divmod(g: IntoOrdinal, a: IntoOrdinal, b: IntoOrdinal | None = None) -> tuple[Ordinal, Ordinal]:
    """Return (q, r) with g == a*q + r and r < a; with b given, also require g < a*b."""
    g, a = _coerce(g), _coerce(a)
    if not a:
        raise UndefinedOperation("division by zero")
    if b is not None:
        b = _coerce(b)
        if not b or not g < mul(a, b):
            raise UndefinedOperation(f"divmod needs 0 < b and g < a*b; got g={g}, a={a}, b={b}")
    q_terms: list[tuple[Ordinal, int]] = []
    rest = g
    a_lead, a_coeff = a.terms[0]
    while rest >= a:
        lead, c = rest.terms[0]
        if lead > a_lead:
            q_terms.append((left_sub(a_lead, lead), c))
            rest = Ordinal._wrap(rest._t[1:])
            continue
        m = c // a_coeff
        if mul(a, m) > rest:
            m -= 1
        q_terms.append((ZERO, m))
        rest = left_sub(mul(a, m), rest)
        break
    q = Ordinal.from_terms(q_terms)
    return q, rest


def compare(a: IntoOrdinal, b: IntoOrdinal) -> Comparison:
    ta, tb = _coerce(a)._t, _coerce(b)._t
    if ta < tb:
        return Comparison.LESS
    if ta == tb:
        return Comparison.EQUAL
    return Comparison.GREATER


def omega_power_exponent(a: IntoOrdinal) -> Ordinal | None:
    """k when a == w**k exactly, else None."""
    t = _coerce(a)._t
    if len(t) == 1 and t[0][1] == 1:
        return Ordinal._wrap(t[0][0])
    return None


def from_levels(levels: Iterable[int]) -> Ordinal:
    """Sum of w**k over a non-increasing sequence of natural levels."""
    return Ordinal._wrap(kernel.from_levels(list(levels)))


# text form

def _format(t: tuple) -> str:
    if not t:
        return "0"
    parts = []
    for exp, coeff in t:
        if not exp:
            parts.append(str(coeff))
            continue
        if exp == kernel.finite(1):
            head = "w"
        elif len(exp) == 1 and not exp[0][0]:
            head = f"w^{exp[0][1]}"
        elif exp == ((kernel.finite(1), 1),):
            head = "w^w"
        else:
            head = f"w^({_format(exp)})"
        parts.append(head if coeff == 1 else f"{head}*{coeff}")
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _fail(self, message: str):
        raise OrdinalSyntaxError(message, self.pos, self.text)

    def _expect(self, ch: str) -> None:
        if self._peek() != ch:
            self._fail(f"expected {ch!r}")
        self.pos += 1

    def _nat(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self._fail("expected a natural number")
        return int(self.text[start:self.pos])

    def parse(self) -> Ordinal:
        value = self._ord()
        if self._peek():
            self._fail(f"unexpected {self._peek()!r}")
        return value

    def _ord(self) -> Ordinal:
        value = self._term()
        while self._peek() == "+":
            self.pos += 1
            value = add(value, self._term())
        return value

    def _term(self) -> Ordinal:
        ch = self._peek()
        if ch.isdigit():
            return Ordinal(self._nat())
        if ch != "w":
            self._fail("expected a term")
        self.pos += 1
        exp: Ordinal = ONE
        if self._peek() == "^":
            self.pos += 1
            exp = self._atom()
        coeff = 1
        if self._peek() == "*":
            self.pos += 1
            self._skip()
            at = self.pos
            coeff = self._nat()
            if coeff == 0:
                raise OrdinalSyntaxError("coefficient 0 is not allowed", at, self.text)
        return Ordinal.omega_power(exp, coeff)

    def _atom(self) -> Ordinal:
        ch = self._peek()
        if ch.isdigit():
            return Ordinal(self._nat())
        if ch == "w":
            self.pos += 1
            return OMEGA
        if ch == "(":
            self.pos += 1
            value = self._ord()
            self._expect(")")
            return value
        self._fail("expected an exponent")


def parse_ordinal(text: str) -> Ordinal:
    return _Parser(text).parse()
