import pytest
from _formulas import DOWNSTREAM, LATEX_M2, downstream_expr, squash

from monochain.chain import build_chain, upstream_forms
from monochain.latex import chain_document, downstream_latex, latex_coefficient, upstream_latex
from monochain.exactnum import Coefficient, PI


@pytest.mark.parametrize("key", [f"{kind}-{k}" for kind in "AB" for k in range(1, 5)])
def test_downstream_lines_dimension_two(key):
    kind, k = key[0], int(key[2:])
    expr = next(downstream_expr(e) for e in DOWNSTREAM if e["m"] == 2 and e["kind"] == kind and e["k"] == k)
    assert squash(downstream_latex(expr, 2, kind)) == squash(LATEX_M2[key])


@pytest.mark.parametrize("j", range(3, 7))
def test_upstream_lines_dimension_two(j):
    assert squash(upstream_latex(upstream_forms(2, 6)[j])) == squash(LATEX_M2[f"U{j}"])


def test_dimension_three_uses_rho_downstream():
    entry = next(e for e in DOWNSTREAM if e["m"] == 3 and e["kind"] == "B" and e["k"] == 4)
    text = downstream_latex(downstream_expr(entry), 3, "B")
    assert squash(text) == squash(r"\frac{24}{\pi^2} \, \frac{(5 x_0^3 - 3 x_0 \rho^2) \underline{x}}{(x_0^2 + \rho^2)^{5}}")


def test_coefficients():
    assert latex_coefficient(Coefficient(0)) == "0"
    assert latex_coefficient(PI * 3) == r"3\pi"
    assert latex_coefficient(Coefficient.pi_power(-2, -2)) == r"-\frac{2}{\pi^2}"


def test_document_is_complete():
    doc = chain_document(build_chain(3, -2, 4))
    assert doc.startswith(r"\documentclass")
    assert doc.rstrip().endswith(r"\end{document}")
    assert doc.count("$$") % 2 == 0
    assert "QUAT" in doc and "A_{-2}" in doc
