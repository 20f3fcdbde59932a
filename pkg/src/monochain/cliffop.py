"""Dirac-type operators on axial potentials and on their boundary densities.

A potential ``C = A/2 + e0bar * B/2`` is axial: ``A = A(x0, r)`` is scalar and
``B = omega * g(x0, r)`` with ``omega = x/|x|`` the unit vector of the boundary
variable.  Only the radial profiles ``A`` and ``g`` are stored.

With ``e0bar**2 = -1`` and ``dirac(e0bar F) = -e0bar dirac(F)`` the operators
reduce to::

    Dbar C = C' :  A' = (A_x - dirac(B)) / 2,   B' = (B_x - dirac(A)) / 2
    D    C = C' :  A' = (A_x + dirac(B)) / 2,   B' = (B_x + dirac(A)) / 2

where on axial functions ``dirac(f) = omega * f_r`` and
``dirac(omega g) = -(g_r + (m - 1) g / r)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Mapping

from .axial import AxialExpr, RadialDensity
from .exactnum import Coefficient

Kind = Literal["scalar", "vector"]

DIMENSIONS = (2, 3)


def _check_dim(m: int) -> None:
    if m not in DIMENSIONS:
        raise ValueError(f"unsupported boundary dimension m={m}; expected 2 or 3")


@dataclass(frozen=True)
class PotentialPair:
    """``C = A/2 + e0bar * omega * B/2`` with ``B`` the radial vector profile."""

    m: int
    A: AxialExpr
    B: AxialExpr

    def __post_init__(self):
        _check_dim(self.m)

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.B.is_zero()

    def __add__(self, other: "PotentialPair") -> "PotentialPair":
        _same_dim(self.m, other.m)
        return PotentialPair(self.m, self.A + other.A, self.B + other.B)

    def __sub__(self, other: "PotentialPair") -> "PotentialPair":
        _same_dim(self.m, other.m)
        return PotentialPair(self.m, self.A - other.A, self.B - other.B)

    def scale(self, k) -> "PotentialPair":
        return PotentialPair(self.m, self.A.scale(k), self.B.scale(k))


def _same_dim(m1: int, m2: int) -> None:
    if m1 != m2:
        raise ValueError(f"dimension mismatch: {m1} vs {m2}")


def dirac_scalar(f: AxialExpr) -> AxialExpr:
    """Vector profile of ``dirac(f)`` for scalar ``f``."""
    return f.diff_r()


def dirac_vector(g: AxialExpr, m: int) -> AxialExpr:
    """Scalar ``dirac(omega g)``."""
    _check_dim(m)
    return -(g.diff_r() + g * AxialExpr.term(m - 1, b=-1))


def dirac_underline(e: AxialExpr, m: int, kind: Kind) -> AxialExpr:
    """Boundary Dirac operator; the output has the opposite kind."""
    if kind == "scalar":
        return dirac_scalar(e)
    if kind == "vector":
        return dirac_vector(e, m)
    raise ValueError(f"unknown kind {kind!r}")


_HALF = Fraction(1, 2)


def apply_Dbar(p: PotentialPair) -> PotentialPair:
    A = (p.A.diff_x0() - dirac_vector(p.B, p.m)).scale(_HALF)
    B = (p.B.diff_x0() - dirac_scalar(p.A)).scale(_HALF)
    return PotentialPair(p.m, A, B)


def apply_D(p: PotentialPair) -> PotentialPair:
    A = (p.A.diff_x0() + dirac_vector(p.B, p.m)).scale(_HALF)
    B = (p.B.diff_x0() + dirac_scalar(p.A)).scale(_HALF)
    return PotentialPair(p.m, A, B)


def laplacian(e: AxialExpr, m: int, kind: Kind = "scalar") -> AxialExpr:
    """Laplacian in R^{m+1} of ``e`` (scalar) or of ``omega * e`` (vector profile)."""
    _check_dim(m)
    er = e.diff_r()
    out = e.diff_x0().diff_x0() + er.diff_r() + er * AxialExpr.term(m - 1, b=-1)
    if kind == "vector":
        out = out - e * AxialExpr.term(m - 1, b=-2)
    elif kind != "scalar":
        raise ValueError(f"unknown kind {kind!r}")
    return out


def laplacian_pair(p: PotentialPair) -> PotentialPair:
    return PotentialPair(p.m, laplacian(p.A, p.m, "scalar"), laplacian(p.B, p.m, "vector"))


@dataclass(frozen=True)
class BoundaryDensity:
    """Radial distribution on R^m.

    ``scalar`` and ``vector`` are the regular parts (the vector part carries an
    implicit ``omega``); powers ``r**b`` with ``b <= -m`` are read as finite
    parts (or principal values for odd vector kernels).  ``singular`` maps
    ``k`` to the coefficient of ``(-dirac)**k delta``.
    """

    m: int
    scalar: RadialDensity = field(default_factory=RadialDensity)
    vector: RadialDensity = field(default_factory=RadialDensity)
    singular: Mapping[int, Coefficient] = field(default_factory=dict)

    def __post_init__(self):
        _check_dim(self.m)
        clean = {}
        for k, v in dict(self.singular).items():
            if k < 0:
                raise ValueError(f"negative delta-derivative order {k}")
            v = Coefficient.coerce(v)
            if v:
                clean[int(k)] = v
        object.__setattr__(self, "singular", clean)

    def regular_equal(self, other: "BoundaryDensity") -> bool:
        return self.scalar == other.scalar and self.vector == other.vector

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundaryDensity):
            return NotImplemented
        return self.m == other.m and self.regular_equal(other) and self.singular == other.singular

    def __hash__(self) -> int:
        return hash((self.m, self.scalar, self.vector, frozenset(self.singular.items())))

    def to_text(self) -> str:
        parts = []
        if self.scalar:
            parts.append(self.scalar.to_text())
        if self.vector:
            parts.append(f"omega*[{self.vector.to_text()}]")
        for k, v in sorted(self.singular.items()):
            parts.append(f"({v})*(-dirac)^{k} delta")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        def dens(d: RadialDensity):
            return [{"c": v.to_text(), "b": b, "log": L} for (b, L), v in d.items()]

        return {
            "scalar": dens(self.scalar),
            "vector": dens(self.vector),
            "singular": [{"c": v.to_text(), "k": k} for k, v in sorted(self.singular.items())],
        }

    @classmethod
    def from_json(cls, m: int, data: dict) -> "BoundaryDensity":
        def dens(items):
            return RadialDensity({(int(d["b"]), int(d["log"])): Coefficient.parse(d["c"]) for d in items})

        return cls(
            m,
            dens(data.get("scalar", [])),
            dens(data.get("vector", [])),
            {int(d["k"]): Coefficient.parse(d["c"]) for d in data.get("singular", [])},
        )


def radial_dirac_boundary(d: BoundaryDensity) -> BoundaryDensity:
    """Apply ``-dirac`` for r > 0.

    Regular parts are differentiated pointwise; formal delta terms are shifted
    one order up.  Delta corrections that a finite-part derivative would add at
    the origin are not generated.
    """
    m = d.m
    # -dirac f = -omega f_r ;  -dirac(omega g) = g_r + (m-1) g / r
    vector = -d.scalar.diff_r()
    scalar = d.vector.diff_r() + d.vector.shift(-1).scale(m - 1)
    singular = {k + 1: v for k, v in d.singular.items()}
    return BoundaryDensity(m, scalar, vector, singular)


def boundary_limit(p: PotentialPair) -> tuple[RadialDensity, RadialDensity]:
    """Pointwise x0 -> 0+ limits of the scalar and vector profiles."""
    return p.A.limit_x0_to_zero(), p.B.limit_x0_to_zero()


__all__ = [
    "PotentialPair",
    "BoundaryDensity",
    "dirac_scalar",
    "dirac_vector",
    "dirac_underline",
    "apply_D",
    "apply_Dbar",
    "laplacian",
    "laplacian_pair",
    "radial_dirac_boundary",
    "boundary_limit",
]
