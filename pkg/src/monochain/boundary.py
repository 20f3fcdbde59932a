"""Catalogue of boundary distributions ``a_j`` (scalar) and ``b_j`` (vector) on R^m.

Upstream scalar values for ``j >= 1`` come from the closed forms driven by the
``alpha``/``beta`` sequences.  Vector values for ``j >= 3`` are derived as
``-dirac(a_{j+1})``.  Downstream values alternate between regular kernels
(finite part / principal value) and formal derivatives of delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .axial import RadialDensity
from .cliffop import BoundaryDensity, _check_dim
from .exactnum import Coefficient, double_factorial, harmonic_number


class ConsistencyError(ArithmeticError):
    """Two independent derivations of the same exact quantity disagree."""


def _pi(q, n: int) -> Coefficient:
    return Coefficient.pi_power(q, n)


@dataclass(frozen=True)
class AlphaBeta:
    """``alpha_{2k}`` and ``beta_{2k}`` for dimension ``m``."""

    k: int
    alpha: Coefficient
    beta: Coefficient
    m: int


@lru_cache(maxsize=None)
def _recursive(k: int, m: int) -> tuple[Coefficient, Coefficient]:
    if k == 0:
        alpha0 = _pi(Fraction(-1, 2), -2) if m == 2 else _pi(Fraction(-1, 4), -3)
        return alpha0, Coefficient(0)
    a, b = _recursive(k - 1, m)
    j = k - 1  # step from index 2j to 2j + 2
    f = _pi(Fraction(-1, 2 * j + 2), -1) / 2
    if m == 2:
        return a * f, (b - a / (j + 1)) * f
    return a * f, (b - a * Fraction(4 * j + 5, (2 * j + 2) * (2 * j + 3))) * f


def alpha_beta_closed(k: int, m: int) -> AlphaBeta:
    sign = (-1) ** k
    if m == 2:
        den = 2 ** (2 * k + 1) * factorial(k)
        return AlphaBeta(k, _pi(Fraction(-sign, den), -(k + 2)), _pi(sign * harmonic_number(k) / den, -(k + 2)), m)
    den = 2 ** (2 * k + 2) * factorial(k)
    return AlphaBeta(
        k, _pi(Fraction(-sign, den), -(k + 3)), _pi(sign * (harmonic_number(2 * k + 1) - 1) / den, -(k + 3)), m
    )


def alpha_beta(k: int, m: int) -> AlphaBeta:
    """Exact ``alpha_{2k}``, ``beta_{2k}`` by recursion, checked against the closed form."""
    if k < 0:
        raise ValueError(f"index must be >= 0, got {k}")
    _check_dim(m)
    a, b = _recursive(k, m)
    closed = alpha_beta_closed(k, m)
    if a != closed.alpha or b != closed.beta:
        raise ConsistencyError(f"alpha/beta recursion disagrees with closed form at k={k}, m={m}")
    return AlphaBeta(k, a, b, m)


def upstream_boundary(j: int, m: int) -> BoundaryDensity:
    """Scalar boundary value ``a_j`` for ``j >= 1``."""
    if j < 1:
        raise ValueError(f"upstream level must be >= 1, got {j}")
    _check_dim(m)
    if m == 2:
        if j % 2 == 0:
            k = j // 2
            c = _pi(Fraction((-1) ** (k + 1), 2 * double_factorial(2 * k - 1) ** 2), -1)
            return BoundaryDensity(m, RadialDensity({(2 * k - 1, 0): c}))
        k = (j - 1) // 2
        ab = alpha_beta(k, m)
        f = _pi(Fraction(1, factorial(k)), k + 1)
        return BoundaryDensity(m, RadialDensity({(2 * k, 1): ab.alpha * f, (2 * k, 0): ab.beta * f}))
    if j % 2 == 1:
        k = (j - 1) // 2
        c = _pi(Fraction((-1) ** k, 2 ** (k + 2) * factorial(k) * double_factorial(2 * k - 1)), -1)
        return BoundaryDensity(m, RadialDensity({(2 * k - 1, 0): c}))
    k = j // 2
    ab = alpha_beta(k - 1, m)
    f = _pi(Fraction(-(2**k), double_factorial(2 * k - 1)), k)
    return BoundaryDensity(m, RadialDensity({(2 * k - 2, 1): ab.alpha * f, (2 * k - 2, 0): ab.beta * f}))


def _scalar(m, b, c) -> BoundaryDensity:
    return BoundaryDensity(m, scalar=RadialDensity({(b, 0): c}))


def _vector(m, b, c) -> BoundaryDensity:
    return BoundaryDensity(m, vector=RadialDensity({(b, 0): c}))


def _delta(m, k) -> BoundaryDensity:
    return BoundaryDensity(m, singular={k: 1})


def boundary_a(j: int, m: int) -> BoundaryDensity:
    """Scalar boundary distribution ``a_j`` for any integer level."""
    _check_dim(m)
    if j >= 1:
        return upstream_boundary(j, m)
    if j == 0:
        return _scalar(m, -1, _pi(Fraction(-1, 2), -1)) if m == 2 else _scalar(m, -2, _pi(Fraction(-1, 2), -2))
    if j == -1:
        return _delta(m, 0)
    n = -j
    l = n // 2
    if n % 2:
        return _delta(m, 2 * l)
    sign = (-1) ** (l - 1)
    if m == 2:
        return _scalar(m, -(2 * l + 1), _pi(Fraction(sign * double_factorial(2 * l - 1) ** 2, 2), -1))
    return _scalar(m, -(2 * l + 2), _pi(sign * 2 ** (l - 1) * double_factorial(2 * l - 1) * factorial(l), -2))


def _tabulated_b(j: int, m: int) -> BoundaryDensity:
    """Explicitly tabulated ``b_0``, ``b_1``, ``b_2``."""
    if m == 2:
        table = {
            0: {(-1, 0): _pi(Fraction(1, 2), -1)},
            1: {(0, 0): _pi(Fraction(-1, 2), -1)},
            2: {(1, 0): _pi(Fraction(1, 8), -1), (1, 1): _pi(Fraction(-1, 4), -1)},
        }
    else:
        table = {
            0: {(-2, 0): _pi(Fraction(1, 4), -1)},
            1: {(-1, 0): _pi(Fraction(-1, 2), -2)},
            2: {(0, 0): _pi(Fraction(1, 8), -1)},
        }
    return BoundaryDensity(m, vector=RadialDensity(table[j]))


def boundary_b(j: int, m: int) -> BoundaryDensity:
    """Vector boundary distribution ``b_j`` (profile of ``omega``) for any level."""
    _check_dim(m)
    if j in (0, 1, 2):
        return _tabulated_b(j, m)
    if j >= 3:
        return BoundaryDensity(m, vector=-upstream_boundary(j + 1, m).scalar.diff_r())
    if j == -1:
        return _vector(m, -2, _pi(Fraction(-1, 2), -1)) if m == 2 else _vector(m, -3, _pi(-1, -2))
    n = -j
    l = n // 2
    if n % 2 == 0:
        return _delta(m, 2 * l - 1)
    sign = (-1) ** (l - 1)
    if m == 2:
        c = Fraction(sign * double_factorial(2 * l - 1) * double_factorial(2 * l + 1), 2)
        return _vector(m, -(2 * l + 2), _pi(c, -1))
    c = sign * 2**l * double_factorial(2 * l - 1) * factorial(l + 1)
    return _vector(m, -(2 * l + 3), _pi(c, -2))


def label_a(j: int) -> str:
    """Fundamental-solution name of ``a_j``: ``E`` kernels invert powers of the
    Dirac operator, ``F`` kernels invert powers of the Hilbert-Dirac operator."""
    return f"E_{j + 1}" if j % 2 else f"-F_{j + 1}"


def label_b(j: int) -> str:
    return f"F_{j + 1}" if j % 2 else f"-E_{j + 1}"


def hilbert_partner(kind: str, j: int) -> tuple[str, int]:
    """The Hilbert transform swaps ``a_j`` and ``b_j``.  Bookkeeping only."""
    if kind not in ("a", "b"):
        raise ValueError(f"unknown kind {kind!r}")
    return ("b" if kind == "a" else "a", j)


def convolution_index(kind1: str, j: int, kind2: str, k: int) -> tuple[str, int]:
    """Index rule for convolving two downstream values ``x_{-j} * y_{-k}``.

    Two like kinds give an ``a``, mixed kinds give a ``b``; the level is
    ``-(j + k - 1)``.  Bookkeeping only, nothing is integrated.
    """
    if j < 1 or k < 1:
        raise ValueError("convolution rule applies to downstream levels only")
    kind = "a" if kind1 == kind2 else "b"
    return kind, -(j + k - 1)


def catalogue(m: int, lo: int, hi: int) -> list[dict]:
    out = []
    for j in range(lo, hi + 1):
        a, b = boundary_a(j, m), boundary_b(j, m)
        out.append(
            {
                "level": j,
                "a": a.to_json(),
                "b": b.to_json(),
                "a_text": a.to_text(),
                "b_text": b.to_text(),
                "a_label": label_a(j),
                "b_label": label_b(j),
            }
        )
    return out
