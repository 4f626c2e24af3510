"""Exact polynomials in the central-charge symbol ``c`` over the rationals.

Every coefficient that shows up in a bracket, a normal form or a module
action lives in Q[c].  The representation is a dense tuple of
:class:`fractions.Fraction` indexed by the power of ``c``, with trailing
zeros trimmed, so the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction]

_ZERO = Fraction(0)


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class ScalarPoly:
    """An immutable element of Q[c]."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs = _trim([Fraction(x) for x in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...]) -> "ScalarPoly":
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value: Number) -> "ScalarPoly":
        value = Fraction(value)
        return cls._raw((value,) if value else ())

    @classmethod
    def c(cls, power: int = 1) -> "ScalarPoly":
        return cls._raw((_ZERO,) * power + (Fraction(1),))

    @classmethod
    def coerce(cls, value: "ScalarPoly | Number | str") -> "ScalarPoly":
        if isinstance(value, ScalarPoly):
            return value
        if isinstance(value, str):
            return parse_scalar(value)
        return cls.const(value)

    # -- queries -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> Fraction:
        if len(self.coeffs) > 1:
            raise ValueError(f"{self} is not a constant")
        return self.coeffs[0] if self.coeffs else _ZERO

    def eval(self, c_value: Number) -> Fraction:
        """Substitute a rational for ``c`` (Horner)."""
        c_value = Fraction(c_value)
        acc = _ZERO
        for coef in reversed(self.coeffs):
            acc = acc * c_value + coef
        return acc

    def specialize(self, c_value: Number | None) -> "ScalarPoly":
        if c_value is None:
            return self
        return ScalarPoly.const(self.eval(c_value))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ScalarPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = ScalarPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] += v
        if len(self.coeffs) == len(other.coeffs):
            return ScalarPoly._raw(_trim(out))
        return ScalarPoly._raw(tuple(out))

    __radd__ = __add__

    def __neg__(self) -> "ScalarPoly":
        return ScalarPoly._raw(tuple(-v for v in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, ScalarPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = ScalarPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ScalarPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            if not other:
                return ZERO
            return ScalarPoly._raw(tuple(v * other for v in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(b) == 1:
            s = b[0]
            return ScalarPoly._raw(tuple(v * s for v in a))
        if len(a) == 1:
            s = a[0]
            return ScalarPoly._raw(tuple(v * s for v in b))
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ScalarPoly._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ScalarPoly":
        if n < 0:
            raise ValueError("negative power")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, ScalarPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ScalarPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # -- text ----------------------------------------------------------------

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"ScalarPoly({format_scalar(self)!r})"


ZERO = ScalarPoly._raw(())
ONE = ScalarPoly._raw((Fraction(1),))
C = ScalarPoly.c()


def _format_term(coef: Fraction, power: int) -> str:
    if power == 0:
        return str(coef)
    var = "c" if power == 1 else f"c^{power}"
    if coef == 1:
        return var
    if coef == -1:
        return f"-{var}"
    return f"{coef}*{var}"


def format_scalar(p: ScalarPoly) -> str:
    """Canonical text, ascending powers: ``-4 - 1/2*c + c^2``."""
    parts = [(k, v) for k, v in enumerate(p.coeffs) if v]
    if not parts:
        return "0"
    out = _format_term(parts[0][1], parts[0][0])
    for k, v in parts[1:]:
        if v < 0:
            out += " - " + _format_term(-v, k)
        else:
            out += " + " + _format_term(v, k)
    return out


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<num>\d+(?:/\d+)?)\s*(?:\*\s*(?P<var1>c)(?:\^(?P<pow1>\d+))?)?
        | (?P<var2>c)(?:\^(?P<pow2>\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> ScalarPoly:
    """Parse sums of ``p/q``, ``p/q*c^k`` and ``c^k`` terms."""
    pos = 0
    coeffs: dict[int, Fraction] = {}
    src = text.strip()
    if not src:
        raise ValueError("empty scalar")
    first = True
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"bad scalar {text!r} at position {pos}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("num") is not None:
            coef = Fraction(m.group("num"))
            power = 0
            if m.group("var1"):
                power = int(m.group("pow1") or 1)
        else:
            coef = Fraction(1)
            power = int(m.group("pow2") or 1)
        coeffs[power] = coeffs.get(power, _ZERO) + sign * coef
        pos = m.end()
    top = max(coeffs)
    return ScalarPoly(coeffs.get(k, _ZERO) for k in range(top + 1))
