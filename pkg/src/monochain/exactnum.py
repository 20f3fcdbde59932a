"""Exact scalars: rationals and finite Laurent sums in the formal symbol pi.

Every constant that shows up in the potentials is of the form
``sum(q_n * pi**n)`` with rational ``q_n``.  Because pi is transcendental such
a sum vanishes only when every ``q_n`` does, so equality of two
:class:`Coefficient` values is decided exactly by comparing term maps.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction

Scalar = Union[int, Fraction, "Coefficient"]


class Coefficient:
    """Immutable element of Q[pi, 1/pi]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, value: Union[int, Fraction, Mapping[int, Fraction], None] = None):
        if value is None:
            items = {}
        elif isinstance(value, Mapping):
            items = {}
            for n, q in value.items():
                q = Fraction(q)
                if q:
                    items[int(n)] = items.get(int(n), 0) + q
            items = {n: q for n, q in items.items() if q}
        else:
            q = Fraction(value)
            items = {0: q} if q else {}
        self._terms = tuple(sorted(items.items(), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, items: Iterable[tuple[int, Fraction]]) -> "Coefficient":
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted(items, reverse=True))
        obj._hash = None
        return obj

    @classmethod
    def pi_power(cls, q: Union[int, Fraction], n: int) -> "Coefficient":
        """``q * pi**n``."""
        q = Fraction(q)
        return cls._raw([(n, q)] if q else [])

    @classmethod
    def coerce(cls, value: Scalar) -> "Coefficient":
        if isinstance(value, Coefficient):
            return value
        return cls(value)

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monomial(self) -> tuple[Fraction, int]:
        """Return ``(q, n)`` for a single-term value ``q * pi**n``."""
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a single pi-power term")
        n, q = self._terms[0]
        return q, n

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Coefficient):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Coefficient(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if not self._terms:
                self._hash = hash(0)
            elif len(self._terms) == 1 and self._terms[0][0] == 0:
                # agree with hash(Fraction) so that Coefficient(q) == q hashes alike
                self._hash = hash(self._terms[0][1])
            else:
                self._hash = hash(self._terms)
        return self._hash

    def __neg__(self) -> "Coefficient":
        return Coefficient._raw((n, -q) for n, q in self._terms)

    def __add__(self, other: Scalar) -> "Coefficient":
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for n, q in other._terms:
            s = acc.get(n, 0) + q
            if s:
                acc[n] = s
            else:
                acc.pop(n, None)
        return Coefficient._raw(acc.items())

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "Coefficient":
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Coefficient":
        return Coefficient.coerce(other) - self

    def __mul__(self, other: Scalar) -> "Coefficient":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Coefficient._raw((n, q * other) for n, q in self._terms)
        if not isinstance(other, Coefficient):
            return NotImplemented
        if len(other._terms) == 1:
            m, p = other._terms[0]
            return Coefficient._raw((n + m, q * p) for n, q in self._terms)
        acc: dict[int, Fraction] = {}
        for n, q in self._terms:
            for m, p in other._terms:
                acc[n + m] = acc.get(n + m, 0) + q * p
        return Coefficient._raw((n, q) for n, q in acc.items() if q)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Coefficient":
        """Division; the divisor must be a single term ``q * pi**n``."""
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, Coefficient):
            return NotImplemented
        q, n = other.monomial()
        return self * Coefficient.pi_power(1 / q, -n)

    def __rtruediv__(self, other: Scalar) -> "Coefficient":
        return Coefficient.coerce(other) / self

    def __pow__(self, k: int) -> "Coefficient":
        if k < 0:
            q, n = self.monomial()
            return Coefficient.pi_power(Fraction(1) / q ** (-k), n * k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def __float__(self) -> float:
        return math.fsum(float(q) * math.pi**n for n, q in self._terms)

    def __repr__(self) -> str:
        return f"Coefficient({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """Canonical rendering ``q1*pi^n1 + q2*pi^n2``, exponents descending."""
        if not self._terms:
            return "0"
        return " + ".join(f"{q}*pi^{n}" for n, q in self._terms)

    _TERM = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*\*\s*pi\^\s*([+-]?\d+)\s*$")

    @classmethod
    def parse(cls, text: str) -> "Coefficient":
        """Inverse of :meth:`to_text`."""
        text = text.strip()
        if text == "0":
            return ZERO
        items: dict[int, Fraction] = {}
        for part in text.split(" + "):
            m = cls._TERM.match(part)
            if m is None:
                raise ValueError(f"cannot parse coefficient term {part!r}")
            n = int(m.group(2))
            items[n] = items.get(n, 0) + Fraction(m.group(1))
        return cls(items)


ZERO = Coefficient()
ONE = Coefficient(1)
PI = Coefficient.pi_power(1, 1)


def double_factorial(n: int) -> int:
    """``n!!`` with the conventions ``0!! = (-1)!! = 1``."""
    if n < -1:
        raise ValueError(f"double factorial undefined for n={n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def harmonic_number(k: int) -> Fraction:
    if k < 0:
        raise ValueError(f"harmonic number undefined for k={k}")
    return sum((Fraction(1, n) for n in range(1, k + 1)), Fraction(0))
