from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from _formulas import DOWNSTREAM, downstream_expr
from scipy import special

from monochain.gegenbauer import downstream_A, downstream_B, gegenbauer


@pytest.mark.parametrize("k", range(0, 9))
@pytest.mark.parametrize("lam", [Fraction(1, 2), 1, Fraction(3, 2), -3, Fraction(-7, 2), -6])
def test_matches_sympy(k, lam):
    x = sp.Symbol("x")
    ref = sp.Poly(sp.gegenbauer(k, sp.Rational(str(lam)), x), x)
    ours = gegenbauer(k, lam).coeffs
    want = [Fraction(int(c.p), int(c.q)) for c in reversed(ref.all_coeffs())]
    want += [Fraction(0)] * (len(ours) - len(want))
    assert list(ours) == want


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("lam", [0.5, 1.5, 2.0])
def test_matches_scipy_for_positive_parameter(k, lam):
    xs = np.linspace(-1, 1, 7)
    ours = np.array([float(gegenbauer(k, Fraction(lam))(Fraction(float(v)))) for v in xs])
    np.testing.assert_allclose(ours, special.eval_gegenbauer(k, lam, xs), rtol=1e-12, atol=1e-12)


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        gegenbauer(-1, 2)


@pytest.mark.parametrize("entry", DOWNSTREAM, ids=lambda e: f"m{e['m']}-{e['kind']}{-e['k']}")
def test_closed_forms_match_reference_formulas(entry):
    build = downstream_A if entry["kind"] == "A" else downstream_B
    assert build(entry["k"], entry["m"]) == downstream_expr(entry)


@pytest.mark.parametrize("m", [2, 3])
def test_closed_forms_are_x0_derivatives(m):
    for k in range(1, 10):
        assert downstream_A(k, m).diff_x0() == downstream_A(k + 1, m)
        assert downstream_B(k, m).diff_x0() == downstream_B(k + 1, m)
