"""Exact construction and verification of axial monogenic potential chains
in the upper half-spaces of R^3 and R^4."""

from .axial import ARCTAN, LNSQ, LOG, R, S, X0, Atom, AxialExpr, AxialTerm, LimitError, Poly, RadialDensity
from .boundary import AlphaBeta, alpha_beta, boundary_a, boundary_b, upstream_boundary
from .chain import (
    Chain,
    ChainConsistencyError,
    ChainRecord,
    SolverError,
    UpstreamForm,
    VerificationReport,
    build_chain,
    build_pivot,
    extend_downstream,
    solve_upstream,
    verify_chain,
)
from .cliffop import BoundaryDensity, PotentialPair, apply_D, apply_Dbar, laplacian, radial_dirac_boundary
from .exactnum import ONE, PI, ZERO, Coefficient, Rational, double_factorial, harmonic_number
from .gegenbauer import GegenbauerPoly, downstream_A, downstream_B, gegenbauer

__version__ = "0.1.0"
