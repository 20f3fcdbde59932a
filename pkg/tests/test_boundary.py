from fractions import Fraction

import pytest
from _formulas import UPSTREAM, upstream_form

from monochain.axial import RadialDensity
from monochain.boundary import (
    alpha_beta,
    alpha_beta_closed,
    boundary_a,
    boundary_b,
    catalogue,
    convolution_index,
    hilbert_partner,
    label_a,
    label_b,
    upstream_boundary,
)
from monochain.cliffop import radial_dirac_boundary
from monochain.exactnum import Coefficient


def pi(q, n):
    return Coefficient.pi_power(Fraction(q), n)


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("k", range(21))
def test_recursion_agrees_with_closed_form(m, k):
    ab = alpha_beta(k, m)
    closed = alpha_beta_closed(k, m)
    assert (ab.alpha, ab.beta) == (closed.alpha, closed.beta)


def test_starting_values():
    assert alpha_beta(0, 2).alpha == pi(Fraction(-1, 2), -2)
    assert alpha_beta(0, 3).alpha == pi(Fraction(-1, 4), -3)
    assert not alpha_beta(0, 2).beta and not alpha_beta(0, 3).beta


def test_first_step_by_hand():
    # m = 2: alpha_2 = 1/(8 pi^3), beta_2 = -1/(8 pi^3)
    ab = alpha_beta(1, 2)
    assert ab.alpha == pi(Fraction(1, 8), -3)
    assert ab.beta == pi(Fraction(-1, 8), -3)


@pytest.mark.parametrize("entry", UPSTREAM, ids=lambda e: f"m{e['m']}-A{e['j']}")
def test_reference_upstream_limits_match_catalogue(entry):
    # independent of the alpha/beta closed forms: the limit of the transcribed potential
    form = upstream_form(entry)
    assert form.potential().limit_x0_to_zero() == boundary_a(entry["j"], entry["m"]).scalar


def test_named_values_dimension_two():
    assert boundary_a(2, 2).scalar == RadialDensity({(1, 0): pi(Fraction(1, 2), -1)})
    # (1/4 pi)(-ln r + 1/2) r
    assert boundary_b(2, 2).vector == RadialDensity({(1, 1): pi(Fraction(-1, 4), -1), (1, 0): pi(Fraction(1, 8), -1)})
    assert boundary_a(-1, 2).singular == {0: Coefficient(1)}
    assert boundary_a(-2, 2).scalar == RadialDensity({(-3, 0): pi(Fraction(1, 2), -1)})
    assert boundary_b(-1, 2).vector == RadialDensity({(-2, 0): pi(Fraction(-1, 2), -1)})
    assert boundary_b(-2, 2).singular == {1: Coefficient(1)}


def test_named_values_dimension_three():
    assert boundary_a(2, 3).scalar == RadialDensity({(0, 1): pi(Fraction(1, 2), -2)})
    assert boundary_b(2, 3).vector == RadialDensity({(0, 0): pi(Fraction(1, 8), -1)})
    assert boundary_a(-2, 3).scalar == RadialDensity({(-4, 0): pi(1, -2)})
    assert boundary_b(-1, 3).vector == RadialDensity({(-3, 0): pi(-1, -2)})


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("j", range(-11, 12))
def test_dirac_steps_down_the_catalogue(m, j):
    got_b = radial_dirac_boundary(boundary_a(j, m))
    got_a = radial_dirac_boundary(boundary_b(j, m))
    want_b, want_a = boundary_b(j - 1, m), boundary_a(j - 1, m)
    if j <= -1:
        assert got_b == want_b and got_a == want_a
    else:
        assert got_b.regular_equal(want_b) and got_a.regular_equal(want_a)


def test_upstream_boundary_needs_positive_level():
    with pytest.raises(ValueError):
        upstream_boundary(0, 2)


def test_labels():
    assert [label_a(j) for j in (-2, -1, 0, 1)] == ["-F_-1", "E_0", "-F_1", "E_2"]
    assert [label_b(j) for j in (-1, 0, 1)] == ["F_0", "-E_1", "F_2"]


def test_bookkeeping_rules():
    assert hilbert_partner("a", 3) == ("b", 3)
    assert convolution_index("a", 1, "a", 1) == ("a", -1)
    assert convolution_index("a", 2, "b", 3) == ("b", -4)
    with pytest.raises(ValueError):
        convolution_index("a", 0, "b", 1)


def test_catalogue_rows():
    rows = catalogue(2, -2, 2)
    assert [r["level"] for r in rows] == [-2, -1, 0, 1, 2]
    assert {"a", "b", "a_text", "b_text", "a_label", "b_label"} <= set(rows[0])
