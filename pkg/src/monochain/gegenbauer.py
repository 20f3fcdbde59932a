"""Gegenbauer polynomials with rational parameter and the downstream closed forms.

The downstream potentials are written with ``i**k * C_k^lam(i x0 / r)``.  The
substitution is carried out exactly: monomial ``x**n`` of ``C_k^lam`` picks up
``i**(k + n)``, which is real because ``C_k^lam`` only has powers of the parity
of ``k``.  Any surviving odd power of ``i`` is an error, never silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Union

from .axial import AxialExpr
from .exactnum import Coefficient, double_factorial


@dataclass(frozen=True)
class GegenbauerPoly:
    k: int
    lam: Fraction
    coeffs: tuple[Fraction, ...]  # powers x**0 .. x**k

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out


def gegenbauer(k: int, lam: Union[int, Fraction]) -> GegenbauerPoly:
    """``C_k^lam`` from the three-term recurrence.

    ``n C_n = 2 x (n + lam - 1) C_{n-1} - (n + 2 lam - 2) C_{n-2}``; only ``n`` is
    ever divided by, so negative parameters need no special casing.
    """
    if k < 0:
        raise ValueError(f"degree must be non-negative, got {k}")
    lam = Fraction(lam)
    prev = [Fraction(1)]
    if k == 0:
        return GegenbauerPoly(0, lam, tuple(prev))
    cur = [Fraction(0), 2 * lam]
    for n in range(2, k + 1):
        nxt = [Fraction(0)] * (n + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * (n + lam - 1) * c
        for i, c in enumerate(prev):
            nxt[i] -= (n + 2 * lam - 2) * c
        prev, cur = cur, [c / n for c in nxt]
    return GegenbauerPoly(k, lam, tuple(cur))


class ImaginaryResidue(ArithmeticError):
    """An odd power of i survived the substitution x = i x0 / r."""


def _rotated_numerator(shift: int, poly: GegenbauerPoly) -> AxialExpr:
    """``i**shift * r**deg * C(i x0 / r)`` as a real polynomial in ``x0, r``."""
    deg = poly.k
    terms = []
    for n, c in enumerate(poly.coeffs):
        if not c:
            continue
        p = (shift + n) % 4
        if p % 2:
            raise ImaginaryResidue(f"imaginary coefficient at x^{n} of C_{poly.k}^{poly.lam}")
        sign = 1 if p == 0 else -1
        terms.append((sign * c, n, deg - n, 0, "ONE"))
    return AxialExpr(terms)


def _check(k: int, m: int) -> None:
    if k < 1:
        raise ValueError(f"downstream index must be >= 1, got {k}")
    if m not in (2, 3):
        raise ValueError(f"unsupported boundary dimension m={m}")


def downstream_A(k: int, m: int) -> AxialExpr:
    """Scalar potential ``A_{-k}``."""
    _check(k, m)
    sign = (-1) ** (k + 1)
    if m == 2:
        lam = Fraction(-k)
        c = Coefficient.pi_power(
            Fraction(sign * factorial(k) * double_factorial(2 * k - 1), prod(range(k + 1, 2 * k + 1))), -1
        ) / 2
        alpha2 = -(2 * k + 1)
    else:
        lam = Fraction(-2 * k - 1, 2)
        c = Coefficient.pi_power(
            Fraction(sign * 2 ** (k - 1) * factorial(k) ** 2, prod(range(k + 2, 2 * k + 2))), -2
        )
        alpha2 = -2 * (k + 1)
    num = _rotated_numerator(k, gegenbauer(k, lam))
    return num * AxialExpr.term(c, alpha2=alpha2)


def downstream_B(k: int, m: int) -> AxialExpr:
    """Vector profile ``g`` of ``B_{-k} = omega * g``."""
    _check(k, m)
    sign = (-1) ** k
    if m == 2:
        lam = Fraction(-k)
        c = Coefficient.pi_power(
            Fraction(sign * factorial(k - 1) * double_factorial(2 * k - 1), prod(range(k + 2, 2 * k + 1))), -1
        ) / 2
        alpha2 = -(2 * k + 1)
    else:
        lam = Fraction(-2 * k - 1, 2)
        c = Coefficient.pi_power(
            Fraction(sign * 2 ** (k - 1) * factorial(k - 1) * factorial(k), prod(range(k + 3, 2 * k + 2))), -2
        )
        alpha2 = -2 * (k + 1)
    num = _rotated_numerator(k - 1, gegenbauer(k - 1, lam))
    # x = omega * r: the vector variable contributes one more power of r
    return num * AxialExpr.term(c, b=1, alpha2=alpha2)
