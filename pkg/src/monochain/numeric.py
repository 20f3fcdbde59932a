"""Double-precision cross-checks of the exact algebra.

Finite differences use steps proportional to ``s = sqrt(x0^2 + r^2)``: the
potentials are homogeneous up to logarithms, so a fixed absolute step would be
far too coarse near the origin and drown in round-off far from it.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

from .axial import Atom, AxialExpr
from .cliffop import _check_dim


@dataclass(frozen=True)
class SamplePoint:
    x0: float
    r: float

    def __post_init__(self):
        if not (self.x0 > 0 and self.r > 0):
            raise ValueError(f"sample point must lie in the open quadrant, got ({self.x0}, {self.r})")


@dataclass(frozen=True)
class SampleSet:
    x0: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        if np.any(self.x0 <= 0) or np.any(self.r <= 0):
            raise ValueError("sample points must lie in the open quadrant")

    def __len__(self) -> int:
        return len(self.x0)

    def points(self) -> list[SamplePoint]:
        return [SamplePoint(float(a), float(b)) for a, b in zip(self.x0, self.r)]


def sample_set(n: int = 100, lo: float = 1e-2, hi: float = 1e2, spread: float = 0.5, seed: int = 0) -> SampleSet:
    """``x0`` log-spaced in ``[lo, hi]``; ``r = x0 * 10**u`` with ``|u| <= spread``, clipped to ``[lo, hi]``."""
    x0 = np.logspace(math.log10(lo), math.log10(hi), n)
    u = np.random.default_rng(seed).uniform(-spread, spread, n)
    r = np.clip(x0 * 10.0**u, lo, hi)
    return SampleSet(x0, r)


def _atom(atom: Atom, x0, r, s):
    if atom is Atom.ONE:
        return 1.0
    if atom is Atom.LOG:
        return np.log(x0 + s)
    if atom is Atom.ARCTAN:
        return np.arctan2(r, x0)
    return np.log(s)


def _term_values(e: AxialExpr, x0, r) -> list:
    x0 = np.asarray(x0, dtype=float)
    r = np.asarray(r, dtype=float)
    s = np.hypot(x0, r)
    out = []
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for t in e.terms:
            out.append(float(t.c) * x0**t.a * r**t.b * s**t.alpha2 * _atom(t.atom, x0, r, s))
    return out


def _finite(v, what: str):
    if not np.all(np.isfinite(v)):
        raise OverflowError(f"non-finite value while evaluating {what}")
    return v


def evaluate(e: AxialExpr, x0, r):
    """Vectorised evaluation; raises ``OverflowError`` instead of returning inf/nan."""
    vals = _term_values(e, x0, r)
    if not vals:
        return np.zeros(np.broadcast(np.asarray(x0), np.asarray(r)).shape)
    with np.errstate(over="ignore", invalid="ignore"):
        total = np.sum(vals, axis=0)
    return _finite(total, "expression")


def eval_point(e: AxialExpr, p: SamplePoint) -> float:
    return float(evaluate(e, p.x0, p.r))


def magnitude(e: AxialExpr, x0, r):
    """Sum of absolute term values: the scale that round-off is measured against."""
    vals = _term_values(e, x0, r)
    if not vals:
        return np.zeros(np.broadcast(np.asarray(x0), np.asarray(r)).shape)
    with np.errstate(over="ignore", invalid="ignore"):
        total = np.sum(np.abs(vals), axis=0)
    return _finite(total, "magnitude")


# -- finite differences ----------------------------------------------------------


def fd_x0(e: AxialExpr, x0, r, h: float):
    step = h * np.hypot(x0, r)
    return (evaluate(e, x0 + step, r) - evaluate(e, x0 - step, r)) / (2 * step)


def fd_r(e: AxialExpr, x0, r, h: float):
    step = h * np.hypot(x0, r)
    return (evaluate(e, x0, r + step) - evaluate(e, x0, r - step)) / (2 * step)


def fd_x0x0(e: AxialExpr, x0, r, h: float):
    step = h * np.hypot(x0, r)
    return (evaluate(e, x0 + step, r) - 2 * evaluate(e, x0, r) + evaluate(e, x0 - step, r)) / step**2


def fd_rr(e: AxialExpr, x0, r, h: float):
    step = h * np.hypot(x0, r)
    return (evaluate(e, x0, r + step) - 2 * evaluate(e, x0, r) + evaluate(e, x0, r - step)) / step**2


def fd_laplacian(e: AxialExpr, m: int, kind: str, x0, r, h: float):
    _check_dim(m)
    out = fd_x0x0(e, x0, r, h) + fd_rr(e, x0, r, h) + (m - 1) * fd_r(e, x0, r, h) / r
    if kind == "vector":
        out = out - (m - 1) * evaluate(e, x0, r) / r**2
    return out


def _laplacian_scale(e: AxialExpr, m: int, kind: str, x0, r):
    ex = e.diff_x0()
    er = e.diff_r()
    scale = magnitude(ex.diff_x0(), x0, r) + magnitude(er.diff_r(), x0, r) + (m - 1) * magnitude(er, x0, r) / r
    if kind == "vector":
        scale = scale + (m - 1) * magnitude(e, x0, r) / r**2
    return scale + magnitude(e, x0, r) / (x0 * x0 + r * r)


@dataclass(frozen=True)
class ResidualReport:
    identity: str
    m: int
    level: int
    residual: float
    h: float
    tolerance: float
    n_points: int

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_json(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _rel(diff, scale) -> float:
    diff = np.abs(np.asarray(diff, dtype=float))
    scale = np.asarray(scale, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = np.where(scale > 0, diff / np.where(scale > 0, scale, 1.0), diff)
    return float(np.max(rel)) if rel.size else 0.0


IDENTITIES = ("monogenic", "harmonic_A", "harmonic_B", "dx_A", "dx_B", "dirac_A", "dirac_B")


def finite_diff_residual(
    identity: str,
    m: int,
    level: int,
    upper: tuple[AxialExpr, AxialExpr],
    lower: Optional[tuple[AxialExpr, AxialExpr]],
    samples: SampleSet,
    h: float = 1e-4,
    tolerance: float = 1e-6,
) -> ResidualReport:
    """Relative residual of one identity with all derivatives taken by central differences.

    ``upper`` is ``(A_k, B_k)`` and ``lower`` is ``(A_{k-1}, B_{k-1})``, which
    step identities compare against.  The residual is measured relative to the
    summed magnitude of the individual operator terms.
    """
    x0, r = samples.x0, samples.r
    A, B = upper
    if identity == "monogenic":
        # both components of 2 D C: A_x + dirac(B) and B_x + A_r
        d1 = fd_x0(A, x0, r, h) - fd_r(B, x0, r, h) - (m - 1) * evaluate(B, x0, r) / r
        natural = (magnitude(A, x0, r) + magnitude(B, x0, r)) / np.hypot(x0, r)
        s1 = magnitude(A.diff_x0(), x0, r) + magnitude(B.diff_r(), x0, r) + (m - 1) * magnitude(B, x0, r) / r
        d2 = fd_x0(B, x0, r, h) + fd_r(A, x0, r, h)
        s2 = magnitude(B.diff_x0(), x0, r) + magnitude(A.diff_r(), x0, r)
        s1, s2 = s1 + natural, s2 + natural
        res = max(_rel(d1, s1), _rel(d2, s2))
    elif identity in ("harmonic_A", "harmonic_B"):
        e, kind = (A, "scalar") if identity == "harmonic_A" else (B, "vector")
        res = _rel(fd_laplacian(e, m, kind, x0, r, h), _laplacian_scale(e, m, kind, x0, r))
    else:
        if lower is None:
            raise ValueError(f"identity {identity} needs the next lower level")
        lo_A, lo_B = lower
        if identity == "dx_A":
            got, want = fd_x0(A, x0, r, h), lo_A
        elif identity == "dx_B":
            got, want = fd_x0(B, x0, r, h), lo_B
        elif identity == "dirac_A":
            got, want = -fd_r(A, x0, r, h), lo_B
        elif identity == "dirac_B":
            got, want = fd_r(B, x0, r, h) + (m - 1) * evaluate(B, x0, r) / r, lo_A
        else:
            raise ValueError(f"unknown identity {identity!r}")
        src = A if identity.endswith("A") else B
        scale = magnitude(want, x0, r) + magnitude(src, x0, r) / np.hypot(x0, r)
        if identity == "dirac_B":
            scale = scale + magnitude(B.diff_r(), x0, r) + (m - 1) * magnitude(B, x0, r) / r
        res = _rel(got - evaluate(want, x0, r), scale)
    return ResidualReport(identity, m, level, res, h, tolerance, len(samples))


def symbolic_zero_residual(e: AxialExpr, samples: SampleSet) -> float:
    """Max absolute value of an expression that should vanish identically."""
    return float(np.max(np.abs(evaluate(e, samples.x0, samples.r)))) if len(samples) else 0.0


def chain_residuals(chain, lo: int, hi: int, samples: Optional[SampleSet] = None, h: float = 1e-4,
                    tolerance: float = 1e-6) -> list[ResidualReport]:
    """Finite-difference check of every identity at levels ``lo .. hi`` of a chain."""
    samples = samples if samples is not None else sample_set()
    out = []
    for k in range(lo, hi + 1):
        if k not in chain:
            continue
        rec = chain[k]
        lower = (chain[k - 1].A, chain[k - 1].B) if k - 1 in chain else None
        for ident in IDENTITIES:
            if lower is None and ident.startswith(("dx_", "dirac_")):
                continue
            out.append(finite_diff_residual(ident, chain.m, k, (rec.A, rec.B), lower, samples, h, tolerance))
    return out


# -- quadrature ------------------------------------------------------------------

# area of the unit sphere in R^m
_SPHERE = {2: 2 * math.pi, 3: 4 * math.pi}


def _poisson(m: int) -> AxialExpr:
    from .chain import cauchy_kernel

    return cauchy_kernel(m).A


def _radial_integral(f: Callable[[float], float], x0: float, upper: float, epsabs: float) -> float:
    # split at a few multiples of x0 so the adaptive rule sees the peak
    edges = [0.0] + [x0 * t for t in (1.0, 10.0, 100.0) if x0 * t < upper] + [upper]
    total = 0.0
    for a, b in zip(edges, edges[1:]):
        val, err = integrate.quad(f, a, b, epsabs=epsabs, epsrel=1e-12, limit=500)
        if not math.isfinite(val) or err > max(epsabs, 1e-9 * abs(val)) * 10:
            raise RuntimeError(f"radial quadrature did not converge on [{a}, {b}] (error estimate {err:g})")
        total += val
    return total


def poisson_mass(m: int, x0: float, epsabs: float = 1e-12) -> float:
    """``int_{R^m} A_{-1}(x0, x) dx``, which is 1 for every ``x0 > 0``."""
    _check_dim(m)
    P = _poisson(m)
    sphere = _SPHERE[m]

    def f(r):
        return float(evaluate(P, x0, r)) * sphere * r ** (m - 1)

    head = _radial_integral(f, x0, 1e3 * x0, epsabs)
    tail, _ = integrate.quad(f, 1e3 * x0, np.inf, epsabs=epsabs, limit=500)
    return head + tail


def gaussian_bump(support: float = 6.0) -> Callable[[float], float]:
    """``exp(-r^2)`` cut off at ``support``, where it is below double-precision resolution."""

    def phi(r):
        return math.exp(-r * r) if r < support else 0.0

    phi.support = support
    return phi


def delta_quadrature(m: int, x0s: Sequence[float], phi: Callable[[float], float], support: Optional[float] = None,
                     epsabs: float = 1e-9) -> list[float]:
    """``int_{R^m} A_{-1}(x0, x) phi(|x|) dx`` for each ``x0``; tends to ``phi(0)``."""
    _check_dim(m)
    support = support if support is not None else getattr(phi, "support", None)
    if support is None:
        raise ValueError("test function support radius is required")
    P = _poisson(m)
    sphere = _SPHERE[m]
    out = []
    for x0 in x0s:
        if x0 <= 0:
            raise ValueError(f"x0 must be positive, got {x0}")

        def f(r, x0=x0):
            return float(evaluate(P, x0, r)) * phi(r) * sphere * r ** (m - 1)

        out.append(_radial_integral(f, x0, support, epsabs))
    return out


def gaussian_poisson_oracle(m: int, x0: float) -> float:
    """Poisson extension of ``exp(-|x|^2)`` at height ``x0`` over the origin, computed
    on the Fourier side: ``c_m * int_0^inf rho^{m-1} exp(-x0 rho - rho^2/4) d rho``."""
    _check_dim(m)
    c = 0.5 if m == 2 else 0.5 / math.sqrt(math.pi)
    val, _ = integrate.quad(lambda p: p ** (m - 1) * math.exp(-x0 * p - p * p / 4), 0, np.inf, epsabs=1e-13)
    return c * val


def reports_to_json(reports: Sequence[ResidualReport]) -> str:
    return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2)
