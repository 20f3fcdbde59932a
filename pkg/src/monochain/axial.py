"""Closed term algebra for axial functions of ``(x0, r)``.

An expression is a finite sum of terms ``c * x0**a * r**b * s**n * atom`` where
``s = sqrt(x0**2 + r**2)`` and ``atom`` is one of

* ``ONE``    -- 1
* ``LOG``    -- ln(x0 + s)
* ``ARCTAN`` -- arctan(r / x0)
* ``LNSQ``   -- ln(s)

Because ``s**2 = x0**2 + r**2`` plain term lists are not unique, so every
expression is kept in a normal form: for each ``(atom, parity of n)`` there is
one reduced fraction ``N(x0, r) * s**parity / (x0**2 + r**2)**d`` with ``N`` a
polynomial in ``x0`` with Laurent coefficients in ``r``, ``d >= 0`` and ``N`` not
divisible by ``x0**2 + r**2`` whenever ``d > 0``.  Two expressions denote the
same function on the quadrant ``x0 > 0, r > 0`` iff their normal forms agree.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .exactnum import ZERO, Coefficient, Scalar


class Atom(enum.Enum):
    ONE = "ONE"
    LOG = "LOG"
    ARCTAN = "ARCTAN"
    LNSQ = "LNSQ"

    @property
    def order(self) -> int:
        return _ATOM_ORDER[self]


_ATOM_ORDER = {Atom.ONE: 0, Atom.LOG: 1, Atom.ARCTAN: 2, Atom.LNSQ: 3}


class Poly:
    """Polynomial in ``x0`` with Laurent-polynomial coefficients in ``r``.

    Stored as an immutable map ``(a, b) -> Coefficient`` for ``x0**a * r**b``.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[Mapping[tuple[int, int], Scalar], None] = None):
        c: dict[tuple[int, int], Coefficient] = {}
        if coeffs:
            for (a, b), v in coeffs.items():
                if a < 0:
                    raise ValueError(f"negative power of x0 in polynomial: {a}")
                v = Coefficient.coerce(v)
                if v:
                    c[(a, b)] = c.get((a, b), ZERO) + v
            c = {k: v for k, v in c.items() if v}
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "Poly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, c: Scalar, a: int = 0, b: int = 0) -> "Poly":
        return cls({(a, b): c})

    def items(self):
        return self._c.items()

    def coeff(self, a: int, b: int) -> Coefficient:
        return self._c.get((a, b), ZERO)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*x0^{a}*r^{b}" for (a, b), c in sorted(self._c.items(), reverse=True))
        return f"Poly({body or '0'})"

    def __add__(self, other: "Poly") -> "Poly":
        if not other._c:
            return self
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, ZERO) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return Poly._raw(c)

    def __neg__(self) -> "Poly":
        return Poly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, k: Scalar) -> "Poly":
        k = Coefficient.coerce(k)
        if not k:
            return Poly()
        return Poly._raw({key: v * k for key, v in self._c.items()})

    def shift(self, da: int, db: int) -> "Poly":
        """Multiply by ``x0**da * r**db``."""
        return Poly._raw({(a + da, b + db): v for (a, b), v in self._c.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        c: dict[tuple[int, int], Coefficient] = {}
        for (a1, b1), v1 in self._c.items():
            for (a2, b2), v2 in other._c.items():
                k = (a1 + a2, b1 + b2)
                c[k] = c.get(k, ZERO) + v1 * v2
        return Poly._raw({k: v for k, v in c.items() if v})

    def times_quadratic(self, n: int = 1) -> "Poly":
        """Multiply by ``(x0**2 + r**2)**n``, ``n >= 0``."""
        if n == 0:
            return self
        return self * _quadratic_power(n)

    def divmod_quadratic(self) -> tuple["Poly", "Poly"]:
        """Divide by the monic (in x0) polynomial ``x0**2 + r**2``."""
        rows: dict[int, dict[int, Coefficient]] = {}
        for (a, b), v in self._c.items():
            rows.setdefault(a, {})[b] = v
        quot: dict[tuple[int, int], Coefficient] = {}
        top = max(rows, default=-1)
        for a in range(top, 1, -1):
            # rows below are filled in as we go, so walk every degree
            row = rows.pop(a, None)
            if not row:
                continue
            below = rows.setdefault(a - 2, {})
            for b, v in row.items():
                quot[(a - 2, b)] = v
                s = below.get(b + 2, ZERO) - v
                if s:
                    below[b + 2] = s
                else:
                    below.pop(b + 2, None)
        rem = {(a, b): v for a, row in rows.items() for b, v in row.items() if v}
        return Poly._raw(quot), Poly._raw(rem)

    def diff_x(self) -> "Poly":
        return Poly._raw({(a - 1, b): v * a for (a, b), v in self._c.items() if a})

    def diff_r(self) -> "Poly":
        return Poly._raw({(a, b - 1): v * b for (a, b), v in self._c.items() if b})

    def integrate_x(self) -> "Poly":
        """Antiderivative in ``x0`` with zero ``x0**0`` part."""
        return Poly._raw({(a + 1, b): v / (a + 1) for (a, b), v in self._c.items()})

    def at_x0_zero(self) -> dict[int, Coefficient]:
        """``r``-Laurent polynomial obtained by setting ``x0 = 0``."""
        return {b: v for (a, b), v in self._c.items() if a == 0}

    def x_degree(self) -> int:
        return max((a for a, _ in self._c), default=-1)


@lru_cache(maxsize=None)
def _quadratic_power(n: int) -> Poly:
    from math import comb

    return Poly({(2 * i, 2 * (n - i)): comb(n, i) for i in range(n + 1)})


class AxialTerm(NamedTuple):
    """``c * x0**a * r**b * s**alpha2 * atom``; ``alpha2`` is the power of s,
    i.e. twice the power of ``x0**2 + r**2``."""

    c: Coefficient
    a: int
    b: int
    alpha2: int
    atom: Atom


class RadialDensity:
    """Radial function ``sum c * r**b * (ln r)**L`` with ``L`` in {0, 1}."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Union[Mapping[tuple[int, int], Scalar], None] = None):
        c: dict[tuple[int, int], Coefficient] = {}
        for (b, L), v in (coeffs or {}).items():
            if L not in (0, 1):
                raise ValueError(f"log power must be 0 or 1, got {L}")
            s = c.get((b, L), ZERO) + Coefficient.coerce(v)
            if s:
                c[(b, L)] = s
            else:
                c.pop((b, L), None)
        self._c = c

    def items(self):
        return sorted(self._c.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))

    def coeff(self, b: int, L: int = 0) -> Coefficient:
        return self._c.get((b, L), ZERO)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RadialDensity):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "RadialDensity") -> "RadialDensity":
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, ZERO) + v
        return RadialDensity(c)

    def __neg__(self) -> "RadialDensity":
        return RadialDensity({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "RadialDensity") -> "RadialDensity":
        return self + (-other)

    def scale(self, k: Scalar) -> "RadialDensity":
        return RadialDensity({key: v * Coefficient.coerce(k) for key, v in self._c.items()})

    def shift(self, db: int) -> "RadialDensity":
        return RadialDensity({(b + db, L): v for (b, L), v in self._c.items()})

    def diff_r(self) -> "RadialDensity":
        out: dict[tuple[int, int], Coefficient] = {}
        for (b, L), v in self._c.items():
            if b:
                out[(b - 1, L)] = out.get((b - 1, L), ZERO) + v * b
            if L:
                out[(b - 1, 0)] = out.get((b - 1, 0), ZERO) + v
        return RadialDensity(out)

    def __repr__(self) -> str:
        return f"RadialDensity({self.to_text()})"

    def to_text(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for (b, L), v in self.items():
            parts.append(f"({v})*r^{b}" + ("*ln(r)" if L else ""))
        return " + ".join(parts)


class LimitError(ArithmeticError):
    """The boundary limit x0 -> 0+ does not exist inside the term algebra."""


_Key = tuple  # (Atom, parity)


class AxialExpr:
    """Immutable axial expression in canonical form."""

    __slots__ = ("_groups", "_hash")

    def __init__(self, terms: Iterable[Union[AxialTerm, tuple]] = ()):
        self._groups = _normalize(AxialTerm(Coefficient.coerce(t[0]), t[1], t[2], t[3], Atom(t[4])) for t in terms)
        self._hash = None

    @classmethod
    def _from_groups(cls, groups: dict) -> "AxialExpr":
        obj = cls.__new__(cls)
        obj._groups = groups
        obj._hash = None
        return obj

    @classmethod
    def term(cls, c: Scalar = 1, a: int = 0, b: int = 0, alpha2: int = 0, atom: Atom = Atom.ONE) -> "AxialExpr":
        return cls([(c, a, b, alpha2, atom)])

    @classmethod
    def from_parts(cls, atom: Atom, poly: Poly, alpha2: int = 0) -> "AxialExpr":
        """``poly(x0, r) * s**alpha2 * atom``."""
        return cls((c, a, b, alpha2, atom) for (a, b), c in poly.items())

    # -- canonical view -------------------------------------------------

    @property
    def terms(self) -> list[AxialTerm]:
        out = []
        for (atom, parity), (d, poly) in self._sorted_groups():
            for (a, b), c in sorted(poly.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
                out.append(AxialTerm(c, a, b, parity - 2 * d, atom))
        return out

    def _sorted_groups(self):
        return sorted(self._groups.items(), key=lambda kv: (kv[0][0].order, kv[0][1]))

    def groups(self) -> Iterator[tuple[Atom, int, int, Poly]]:
        """Yield ``(atom, parity, d, N)`` for ``N * s**parity / (x0^2+r^2)**d * atom``."""
        for (atom, parity), (d, poly) in self._sorted_groups():
            yield atom, parity, d, poly

    def atoms(self) -> set[Atom]:
        return {atom for atom, _ in self._groups}

    def is_zero(self) -> bool:
        return not self._groups

    def __bool__(self) -> bool:
        return bool(self._groups)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Coefficient)):
            other = AxialExpr.term(other)
        if not isinstance(other, AxialExpr):
            return NotImplemented
        return self._groups == other._groups

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset((k, d, p) for k, (d, p) in self._groups.items()))
        return self._hash

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "AxialExpr":
        if isinstance(other, AxialExpr):
            return other
        if isinstance(other, (int, Fraction, Coefficient)):
            return AxialExpr.term(other)
        raise TypeError(f"cannot combine AxialExpr with {type(other).__name__}")

    def __add__(self, other) -> "AxialExpr":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other._groups:
            return self
        if not self._groups:
            return other
        return AxialExpr(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "AxialExpr":
        return AxialExpr._from_groups({k: (d, -p) for k, (d, p) in self._groups.items()})

    def __sub__(self, other) -> "AxialExpr":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "AxialExpr":
        return self._coerce(other) - self

    def scale(self, k: Scalar) -> "AxialExpr":
        k = Coefficient.coerce(k)
        if not k:
            return AxialExpr()
        return AxialExpr._from_groups({key: (d, p.scale(k)) for key, (d, p) in self._groups.items()})

    def __mul__(self, other) -> "AxialExpr":
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.scale(other)
        if not isinstance(other, AxialExpr):
            return NotImplemented
        raw = []
        for t1 in self.terms:
            for t2 in other.terms:
                if t1.atom is not Atom.ONE and t2.atom is not Atom.ONE:
                    raise ValueError("product of two transcendental atoms is outside the term algebra")
                atom = t1.atom if t2.atom is Atom.ONE else t2.atom
                raw.append(AxialTerm(t1.c * t2.c, t1.a + t2.a, t1.b + t2.b, t1.alpha2 + t2.alpha2, atom))
        return AxialExpr(raw)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "AxialExpr":
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.scale(Coefficient(1) / Coefficient.coerce(other))
        return NotImplemented

    def __pow__(self, k: int) -> "AxialExpr":
        ts = self.terms
        if len(ts) != 1 or ts[0].atom is not Atom.ONE:
            raise ValueError("only single algebraic monomials can be raised to a power")
        t = ts[0]
        return AxialExpr.term(t.c**k, t.a * k, t.b * k, t.alpha2 * k)

    # -- calculus -------------------------------------------------------

    def diff_x0(self) -> "AxialExpr":
        return AxialExpr(_dx_raw(self.terms))

    def diff_r(self) -> "AxialExpr":
        return AxialExpr(_dr_raw(self.terms))

    def limit_x0_to_zero(self) -> RadialDensity:
        """Pointwise limit x0 -> 0+ for fixed r > 0."""
        out: dict[tuple[int, int], Coefficient] = {}

        def put(b, L, v):
            out[(b, L)] = out.get((b, L), ZERO) + v

        for atom, parity, d, poly in self.groups():
            if any(a < 0 for (a, _), _ in poly.items()):
                raise LimitError("negative power of x0 survives the limit")
            for b, v in poly.at_x0_zero().items():
                e = b + parity - 2 * d
                if atom is Atom.ONE:
                    put(e, 0, v)
                elif atom is Atom.ARCTAN:
                    put(e, 0, v * Coefficient.pi_power(Fraction(1, 2), 1))
                else:  # LOG and LNSQ both tend to ln r
                    put(e, 1, v)
        return RadialDensity(out)

    # -- rendering ------------------------------------------------------

    def to_text(self) -> str:
        if not self._groups:
            return "0"
        parts = []
        for t in self.terms:
            factors = [f"({t.c})"]
            if t.a:
                factors.append(f"x0^{t.a}")
            if t.b:
                factors.append(f"r^{t.b}")
            if t.alpha2:
                factors.append(f"s^{t.alpha2}")
            if t.atom is not Atom.ONE:
                factors.append(t.atom.value)
            parts.append("*".join(factors))
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"AxialExpr({self.to_text()})"

    def to_json(self) -> list[dict]:
        return [
            {"c": t.c.to_text(), "a": t.a, "b": t.b, "alpha2": t.alpha2, "atom": t.atom.value}
            for t in self.terms
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "AxialExpr":
        return cls(
            (Coefficient.parse(d["c"]), int(d["a"]), int(d["b"]), int(d["alpha2"]), Atom(d["atom"]))
            for d in data
        )


def _normalize(terms: Iterable[AxialTerm]) -> dict:
    buckets: dict[_Key, list[tuple[int, int, int, Coefficient]]] = {}
    for t in terms:
        if t.a < 0:
            raise ValueError(f"negative power of x0 is outside the term algebra: {t}")
        if not t.c:
            continue
        parity = t.alpha2 % 2
        half = (t.alpha2 - parity) // 2
        buckets.setdefault((t.atom, parity), []).append((half, t.a, t.b, t.c))

    groups = {}
    for key, items in buckets.items():
        d = max(0, -min(h for h, *_ in items))
        acc: dict[tuple[int, int], Coefficient] = {}
        for half, a, b, c in items:
            for (qa, qb), qv in _quadratic_power(half + d).items():
                k = (a + qa, b + qb)
                acc[k] = acc.get(k, ZERO) + c * qv
        poly = Poly._raw({k: v for k, v in acc.items() if v})
        while d > 0 and poly:
            quot, rem = poly.divmod_quadratic()
            if rem:
                break
            poly, d = quot, d - 1
        if poly:
            groups[key] = (d, poly)
    return groups


def _dx_raw(terms: Iterable[AxialTerm]) -> Iterator[AxialTerm]:
    one = Atom.ONE
    for c, a, b, n, atom in terms:
        if a:
            yield AxialTerm(c * a, a - 1, b, n, atom)
        if n:
            yield AxialTerm(c * n, a + 1, b, n - 2, atom)
        if atom is Atom.LOG:
            yield AxialTerm(c, a, b, n - 1, one)
        elif atom is Atom.ARCTAN:
            yield AxialTerm(-c, a, b + 1, n - 2, one)
        elif atom is Atom.LNSQ:
            yield AxialTerm(c, a + 1, b, n - 2, one)


def _dr_raw(terms: Iterable[AxialTerm]) -> Iterator[AxialTerm]:
    one = Atom.ONE
    for c, a, b, n, atom in terms:
        if b:
            yield AxialTerm(c * b, a, b - 1, n, atom)
        if n:
            yield AxialTerm(c * n, a, b + 1, n - 2, atom)
        if atom is Atom.LOG:
            # (r/s)/(x0+s) rationalised: (s - x0)/(r s)
            yield AxialTerm(c, a, b - 1, n, one)
            yield AxialTerm(-c, a + 1, b - 1, n - 1, one)
        elif atom is Atom.ARCTAN:
            yield AxialTerm(c, a + 1, b, n - 2, one)
        elif atom is Atom.LNSQ:
            yield AxialTerm(c, a, b + 1, n - 2, one)


def normalize(e: Union[AxialExpr, Iterable[AxialTerm]]) -> AxialExpr:
    """Canonical form of an expression or of a raw term list."""
    if isinstance(e, AxialExpr):
        return AxialExpr(e.terms)
    return AxialExpr(e)


def diff_x0(e: AxialExpr) -> AxialExpr:
    return e.diff_x0()


def diff_r(e: AxialExpr) -> AxialExpr:
    return e.diff_r()


def limit_x0_to_zero(e: AxialExpr) -> RadialDensity:
    return e.limit_x0_to_zero()


X0 = AxialExpr.term(1, a=1)
R = AxialExpr.term(1, b=1)
S = AxialExpr.term(1, alpha2=1)
LOG = AxialExpr.term(1, atom=Atom.LOG)
ARCTAN = AxialExpr.term(1, atom=Atom.ARCTAN)
LNSQ = AxialExpr.term(1, atom=Atom.LNSQ)
