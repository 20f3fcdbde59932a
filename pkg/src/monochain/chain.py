"""The doubly infinite chain of axial monogenic potentials.

Level ``-1`` is the Cauchy kernel, level ``0`` the logarithmic function.
Negative levels come from the Gegenbauer closed forms and are cross-checked
against repeated ``Dbar`` differentiation.  Positive levels are solved one at a
time from the previous one: ``2 pi A_j`` has a fixed shape (three polynomial
families times a short list of transcendental atoms), two families are plain
antiderivatives, the third solves a triangular system, and the boundary value
``a_j`` fixes the integration constants.  The vector part is ``B_{j-1} =
-dirac(A_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from .axial import Atom, AxialExpr, LimitError, Poly
from .boundary import (
    AlphaBeta,
    ConsistencyError,
    alpha_beta,
    boundary_a,
    boundary_b,
    upstream_boundary,
)
from .cliffop import (
    BoundaryDensity,
    PotentialPair,
    _check_dim,
    apply_D,
    apply_Dbar,
    dirac_scalar,
    dirac_vector,
    laplacian,
    radial_dirac_boundary,
)
from .exactnum import Coefficient
from .gegenbauer import downstream_A, downstream_B

DEFAULT_DEPTH = 12

TWO_PI = Coefficient.pi_power(2, 1)
HALF_PI = Coefficient.pi_power(Fraction(1, 2), 1)

# surface area of the unit sphere in R^{m+1}
SIGMA = {2: Coefficient.pi_power(4, 1), 3: Coefficient.pi_power(2, 2)}


class ChainConsistencyError(ConsistencyError):
    """The two downstream construction routes disagree."""


class SolverError(ArithmeticError):
    """An upstream level could not be solved consistently."""

    def __init__(self, level: int, m: int, reason: str):
        super().__init__(f"upstream solver failed at level {level} (m={m}): {reason}")
        self.level = level
        self.m = m


@dataclass(frozen=True)
class ChainRecord:
    m: int
    level: int
    pair: PotentialPair
    boundary: tuple[BoundaryDensity, BoundaryDensity]

    @property
    def A(self) -> AxialExpr:
        return self.pair.A

    @property
    def B(self) -> AxialExpr:
        return self.pair.B


def _record(m: int, level: int, A: AxialExpr, B: AxialExpr) -> ChainRecord:
    return ChainRecord(m, level, PotentialPair(m, A, B), (boundary_a(level, m), boundary_b(level, m)))


@dataclass
class Chain:
    """Contiguous run of chain records for one dimension, keyed by level."""

    m: int
    records: dict[int, ChainRecord] = field(default_factory=dict)

    def __post_init__(self):
        _check_dim(self.m)

    def __getitem__(self, level: int) -> ChainRecord:
        return self.records[level]

    def __contains__(self, level: int) -> bool:
        return level in self.records

    def __iter__(self) -> Iterator[ChainRecord]:
        return (self.records[k] for k in sorted(self.records))

    def __len__(self) -> int:
        return len(self.records)

    @property
    def levels(self) -> list[int]:
        return sorted(self.records)

    def add(self, rec: ChainRecord) -> None:
        if rec.m != self.m:
            raise ValueError(f"record for m={rec.m} added to chain for m={self.m}")
        self.records[rec.level] = rec

    def restrict(self, lo: int, hi: int) -> "Chain":
        return Chain(self.m, {k: r for k, r in self.records.items() if lo <= k <= hi})


# -- pivot ---------------------------------------------------------------------


def cauchy_kernel(m: int) -> PotentialPair:
    """``C_{-1} = x e0bar / (sigma |x|^{m+1})`` split as ``A/2 + e0bar B/2``."""
    _check_dim(m)
    c = Coefficient(2) / SIGMA[m]
    A = AxialExpr.term(c, a=1, alpha2=-(m + 1))
    B = AxialExpr.term(-c, b=1, alpha2=-(m + 1))
    return PotentialPair(m, A, B)


def log_potential(m: int) -> PotentialPair:
    """The logarithmic pair at level 0, with ``B_0`` in rationalised form."""
    _check_dim(m)
    if m == 2:
        c = Coefficient.pi_power(Fraction(1, 2), -1)
        A = AxialExpr.term(-c, alpha2=-1)
        B = AxialExpr([(c, 0, -1, 0, Atom.ONE), (-c, 1, -1, -1, Atom.ONE)])
    else:
        c = Coefficient.pi_power(Fraction(1, 2), -2)
        A = AxialExpr.term(-c, alpha2=-2)
        B = AxialExpr([(c, 0, -2, 0, Atom.ARCTAN), (-c, 1, -1, -2, Atom.ONE)])
    return PotentialPair(m, A, B)


def build_pivot(m: int) -> tuple[ChainRecord, ChainRecord]:
    """Records for levels -1 and 0."""
    k, l = cauchy_kernel(m), log_potential(m)
    return _record(m, -1, k.A, k.B), _record(m, 0, l.A, l.B)


# -- downstream ------------------------------------------------------------------


def extend_downstream(chain: Chain, K: int) -> Chain:
    """Populate levels ``-1 .. -K`` and check both construction routes agree."""
    if K < 1:
        raise ValueError(f"downstream depth must be >= 1, got {K}")
    m = chain.m
    if -1 not in chain:
        chain.add(build_pivot(m)[0])
    current = chain[-1].pair
    for k in range(1, K + 1):
        closed = PotentialPair(m, downstream_A(k, m), downstream_B(k, m))
        if closed != current:
            raise ChainConsistencyError(f"closed form and Dbar^{k - 1} C_-1 differ at level {-k} (m={m})")
        if -k not in chain:
            chain.add(_record(m, -k, closed.A, closed.B))
        current = apply_Dbar(current)
    return chain


# -- upstream --------------------------------------------------------------------

_FAMILY_NAMES = {2: ("P", "Q", "S"), 3: ("U", "V", "W")}


@dataclass(frozen=True)
class UpstreamForm:
    """``2 pi A_j`` in the shape used by the upstream solver.

    m = 2:  ``P * LOG + Q * s + S``
    m = 3:  ``U * QUAT + V * LNSQ + W`` with ``QUAT = arctan(r/x0) / r``

    The last family of each triple is the one found by coefficient matching.
    """

    m: int
    j: int
    first: Poly
    second: Poly
    third: Poly

    @property
    def families(self) -> dict[str, Poly]:
        return dict(zip(_FAMILY_NAMES[self.m], (self.first, self.second, self.third)))

    def expr(self) -> AxialExpr:
        """``2 pi A_j``."""
        if self.m == 2:
            return (
                AxialExpr.from_parts(Atom.LOG, self.first)
                + AxialExpr.from_parts(Atom.ONE, self.second, alpha2=1)
                + AxialExpr.from_parts(Atom.ONE, self.third)
            )
        return (
            AxialExpr.from_parts(Atom.ARCTAN, self.first.shift(0, -1))
            + AxialExpr.from_parts(Atom.LNSQ, self.second)
            + AxialExpr.from_parts(Atom.ONE, self.third)
        )

    def potential(self) -> AxialExpr:
        """``A_j`` itself."""
        return self.expr() / TWO_PI

    @classmethod
    def from_expr(cls, e: AxialExpr, m: int, j: int) -> "UpstreamForm":
        """Read ``2 pi A_j`` back into its three families."""
        if m == 2:
            slots = {(Atom.LOG, 0): 0, (Atom.ONE, 1): 1, (Atom.ONE, 0): 2}
        else:
            slots = {(Atom.ARCTAN, 0): 0, (Atom.LNSQ, 0): 1, (Atom.ONE, 0): 2}
        parts = [Poly(), Poly(), Poly()]
        for atom, parity, d, poly in e.groups():
            idx = slots.get((atom, parity))
            if idx is None or d:
                raise SolverError(j, m, f"expression is not of the upstream shape ({atom.value}, s^{parity - 2 * d})")
            parts[idx] = poly
        if m == 3:
            parts[0] = parts[0].shift(0, 1)
        return cls(m, j, *parts)

    @classmethod
    def from_record(cls, rec: ChainRecord) -> "UpstreamForm":
        return cls.from_expr(rec.A * TWO_PI, rec.m, rec.level)


def upstream_seed(j: int, m: int) -> UpstreamForm:
    """Exact starting levels ``j = 1, 2``."""
    _check_dim(m)
    one = Poly.monomial(1)
    x = Poly.monomial(1, a=1)
    if m == 2:
        seeds = {1: (-one, Poly(), Poly()), 2: (-x, one, Poly())}
    else:
        inv_pi = Coefficient.pi_power(1, -1)
        seeds = {1: (one.scale(inv_pi), Poly(), Poly()), 2: (x.scale(inv_pi), one.scale(inv_pi), Poly())}
    if j not in seeds:
        raise ValueError(f"no seed for level {j}")
    return UpstreamForm(m, j, *seeds[j])


def _solve_coupled(G: Poly, shift: int, deg: int, free: dict[int, Coefficient], j: int, m: int) -> Poly:
    """Solve ``(shift + i) t_i + (i + 2) t_{i+2} = [x^{i+1} r^{deg-i}] G`` top-down.

    The unknown polynomial is ``sum t_i x^i r^{deg-i}`` over ``i = deg, deg-2, ... >= 0``.
    A zero pivot takes its value from ``free``.
    """
    t: dict[int, Coefficient] = {}
    for i in range(deg, -1, -2):
        if shift + i == 0:
            if i not in free:
                raise SolverError(j, m, f"undetermined coefficient at x0^{i}")
            t[i] = free[i]
            continue
        rhs = G.coeff(i + 1, deg - i) - t.get(i + 2, Coefficient()) * (i + 2)
        t[i] = rhs / (shift + i)
    return Poly({(i, deg - i): c for i, c in t.items()})


def _coupled_residual(form: UpstreamForm, prev: UpstreamForm) -> Poly:
    x = Poly.monomial(1, a=1)
    if form.m == 2:
        lhs = form.first + x * form.second + form.second.diff_x().times_quadratic()
        return lhs - prev.second.times_quadratic()
    lhs = -form.first + x * form.second + form.third.diff_x().times_quadratic()
    return lhs - prev.third.times_quadratic()


def solve_upstream(j: int, m: int, previous: Union[UpstreamForm, ChainRecord]) -> UpstreamForm:
    """Solve ``2 pi A_j`` from level ``j - 1``.

    Raises :class:`SolverError` naming the level if any of the redundant
    relations (full coupled equation, boundary limit, x0-derivative) fails.
    """
    _check_dim(m)
    if j < 2:
        raise ValueError(f"upstream solving starts at level 2, got {j}")
    prev = previous if isinstance(previous, UpstreamForm) else UpstreamForm.from_record(previous)
    if prev.m != m or prev.j != j - 1:
        raise ValueError(f"previous level must be {j - 1} for m={m}, got {prev.j} for m={prev.m}")
    target = upstream_boundary(j, m).scalar.scale(TWO_PI)
    x = Poly.monomial(1, a=1)
    first = prev.first.integrate_x()
    if m == 2:
        deg = j - 1
        third = prev.third.integrate_x()
        if deg % 2 == 0:
            first = first + Poly.monomial(target.coeff(deg, 1), b=deg)
            third = third + Poly.monomial(target.coeff(deg, 0), b=deg)
        G = prev.second.times_quadratic() - first
        # the s-family sits in the middle slot for m = 2
        second = _solve_coupled(G, 1, j - 2, {}, j, m)
    else:
        deg = j - 2
        second = prev.second.integrate_x()
        free = {}
        if j % 2:
            first = first + Poly.monomial(target.coeff(deg, 0) / HALF_PI, b=j - 1)
        else:
            second = second + Poly.monomial(target.coeff(deg, 1), b=deg)
            free[0] = target.coeff(deg, 0)
        G = prev.third.times_quadratic() + first - x * second
        third = _solve_coupled(G, 0, deg, free, j, m)
    form = UpstreamForm(m, j, first, second, third)

    if _coupled_residual(form, prev):
        raise SolverError(j, m, "redundant coefficient equation violated")
    e = form.expr()
    if e.limit_x0_to_zero() != target:
        raise SolverError(j, m, "boundary limit does not reproduce a_j")
    if e.diff_x0() != prev.expr():
        raise SolverError(j, m, "x0-derivative does not reproduce the previous level")
    return form


def upstream_forms(m: int, J: int) -> dict[int, UpstreamForm]:
    """Forms for levels ``1 .. J``, solved from the two seeds."""
    forms = {1: upstream_seed(1, m)}
    if J >= 2:
        forms[2] = upstream_seed(2, m)
    for j in range(3, J + 1):
        forms[j] = solve_upstream(j, m, forms[j - 1])
    return forms


def extend_upstream(chain: Chain, J: int) -> Chain:
    """Populate levels ``1 .. J``; needs ``A_{J+1}`` for ``B_J``."""
    if J < 1:
        raise ValueError(f"upstream depth must be >= 1, got {J}")
    m = chain.m
    forms = upstream_forms(m, J + 1)
    for j in range(1, J + 1):
        A = forms[j].potential()
        B = -dirac_scalar(forms[j + 1].potential())
        chain.add(_record(m, j, A, B))
    return chain


def build_chain(m: int, lo: int = -DEFAULT_DEPTH, hi: int = DEFAULT_DEPTH) -> Chain:
    """All records for levels ``lo .. hi``."""
    _check_dim(m)
    if lo > hi:
        raise ValueError(f"empty level range {lo}..{hi}")
    chain = Chain(m)
    lower, zero = build_pivot(m)
    chain.add(lower)
    chain.add(zero)
    if lo < -1:
        extend_downstream(chain, -lo)
    if hi >= 1:
        extend_upstream(chain, hi)
    return chain.restrict(lo, hi)


# -- verification ----------------------------------------------------------------


@dataclass(frozen=True)
class ReportEntry:
    identity: str
    m: int
    level: int
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"identity": self.identity, "m": self.m, "level": self.level, "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    entries: list[ReportEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[ReportEntry]:
        return [e for e in self.entries if not e.passed]

    def failed_identities(self) -> set[str]:
        return {e.identity for e in self.failures()}

    def extend(self, entries: Iterable[ReportEntry]) -> None:
        self.entries.extend(entries)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "total": len(self.entries),
            "failed": len(self.failures()),
            "failed_identities": sorted(self.failed_identities()),
            "entries": [e.to_json() for e in self.entries],
        }


def _level_checks(chain: Chain, k: int) -> Iterator[ReportEntry]:
    m = chain.m
    rec = chain[k]
    A, B = rec.A, rec.B

    def entry(name, ok, detail=""):
        return ReportEntry(name, m, k, bool(ok), "" if ok else detail)

    yield entry("monogenic", apply_D(rec.pair).is_zero(), "D C_k is not zero")
    yield entry("harmonic_A", laplacian(A, m, "scalar").is_zero(), "Laplacian of A_k is not zero")
    yield entry("harmonic_B", laplacian(B, m, "vector").is_zero(), "Laplacian of B_k is not zero")

    if k - 1 in chain:
        lo = chain[k - 1]
        yield entry("dx_A", A.diff_x0() == lo.A, "d/dx0 A_k != A_{k-1}")
        yield entry("dx_B", B.diff_x0() == lo.B, "d/dx0 B_k != B_{k-1}")
        yield entry("dirac_A", -dirac_scalar(A) == lo.B, "-dirac A_k != B_{k-1}")
        yield entry("dirac_B", -dirac_vector(B, m) == lo.A, "-dirac B_k != A_{k-1}")
        yield entry("dbar_step", apply_Dbar(rec.pair) == lo.pair, "Dbar C_k != C_{k-1}")

    if k <= -1:
        yield entry("closed_form_A", A == downstream_A(-k, m), "A_k differs from the Gegenbauer closed form")
        yield entry("closed_form_B", B == downstream_B(-k, m), "B_k differs from the Gegenbauer closed form")

    a, b = rec.boundary
    for name, e, dens in (("limit_A", A, a), ("limit_B", B, b)):
        try:
            lim = e.limit_x0_to_zero()
        except LimitError as exc:
            yield entry(name, False, str(exc))
            continue
        target = dens.scalar if name == "limit_A" else dens.vector
        yield entry(name, lim == target, f"limit {lim.to_text()} != {target.to_text()}")

    if k - 1 in chain:
        lo_a, lo_b = chain[k - 1].boundary
        # distributional identities are only tracked exactly below level 0
        exact = k <= -1
        for name, src, dst in (("boundary_dirac_a", a, lo_b), ("boundary_dirac_b", b, lo_a)):
            got = radial_dirac_boundary(src)
            ok = got == dst if exact else got.regular_equal(dst)
            yield entry(name, ok, f"-dirac gives {got.to_text()}, expected {dst.to_text()}")


def verify_chain(chain: Chain, depth: Optional[int] = None) -> VerificationReport:
    """Exact identity report for every level (optionally only ``|level| <= depth``)."""
    report = VerificationReport()
    for k in chain.levels:
        if depth is not None and abs(k) > depth:
            continue
        report.extend(_level_checks(chain, k))
    return report


__all__ = [
    "AlphaBeta",
    "Chain",
    "ChainConsistencyError",
    "ChainRecord",
    "DEFAULT_DEPTH",
    "ReportEntry",
    "SolverError",
    "UpstreamForm",
    "VerificationReport",
    "alpha_beta",
    "build_chain",
    "build_pivot",
    "cauchy_kernel",
    "extend_downstream",
    "extend_upstream",
    "log_potential",
    "solve_upstream",
    "upstream_forms",
    "upstream_seed",
    "verify_chain",
]
