from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from monochain.axial import ARCTAN, LNSQ, LOG, R, S, X0, Atom, AxialExpr, Poly, RadialDensity
from monochain.exactnum import Coefficient

ATOMS = list(Atom)
fracs = st.fractions(min_value=-9, max_value=9, max_denominator=6)


@st.composite
def terms(draw):
    return AxialExpr.term(
        draw(fracs),
        draw(st.integers(0, 3)),
        draw(st.integers(0, 3)),
        draw(st.integers(-7, 2)),
        draw(st.sampled_from(ATOMS)),
    )


exprs = st.lists(terms(), max_size=4).map(lambda ts: sum(ts, AxialExpr()))
polys = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), fracs, max_size=5).map(Poly)

# -- canonical form ----------------------------------------------------------------

QUAD = X0 * X0 + R * R


@given(exprs)
def test_quadratic_factor_cancels(e):
    # (x0^2 + r^2) * e / s^2 must land on the same normal form as e
    assert (QUAD * e) * AxialExpr.term(1, alpha2=-2) == e


@given(exprs, exprs)
def test_sum_is_order_independent(a, b):
    assert a + b == b + a
    assert hash(a + b) == hash(b + a)


@given(polys)
def test_divmod_quadratic_reconstructs(p):
    q, rem = p.divmod_quadratic()
    assert q.times_quadratic() + rem == p
    # the remainder has x0-degree at most one
    assert all(a <= 1 for (a, _b), _c in rem.items())


@given(exprs)
def test_json_roundtrip(e):
    assert AxialExpr.from_json(e.to_json()) == e


algebraic = st.lists(terms().filter(lambda t: t.atoms() == {Atom.ONE}), max_size=3).map(lambda ts: sum(ts, AxialExpr()))


@given(exprs, algebraic)
def test_product_rule(a, b):
    assert (a * b).diff_x0() == a.diff_x0() * b + a * b.diff_x0()
    assert (a * b).diff_r() == a.diff_r() * b + a * b.diff_r()


@given(exprs)
def test_mixed_partials_commute(e):
    assert e.diff_x0().diff_r() == e.diff_r().diff_x0()


def test_s_squared_is_polynomial():
    assert S * S == QUAD
    assert (S * S).atoms() == {Atom.ONE}


# -- independent oracle: sympy ------------------------------------------------------

x, r = sp.symbols("x r", positive=True)
SYM_ATOM = {
    Atom.ONE: sp.Integer(1),
    Atom.LOG: sp.log(x + sp.sqrt(x**2 + r**2)),
    Atom.ARCTAN: sp.atan(r / x),
    Atom.LNSQ: sp.log(sp.sqrt(x**2 + r**2)),
}


def to_sympy(e: AxialExpr):
    out = sp.Integer(0)
    for t in e.terms:
        c = sum(sp.Rational(q.numerator, q.denominator) * sp.pi**n for n, q in t.c.terms.items())
        out += c * x**t.a * r**t.b * (x**2 + r**2) ** sp.Rational(t.alpha2, 2) * SYM_ATOM[t.atom]
    return out


POINTS = [(sp.Rational(1, 3), sp.Rational(2)), (sp.Rational(5, 2), sp.Rational(1, 7)), (1, 1)]


def assert_same(symbolic, ours):
    for px, pr in POINTS:
        want = complex(symbolic.subs({x: px, r: pr}).evalf(30))
        got = complex(to_sympy(ours).subs({x: px, r: pr}).evalf(30))
        assert got == pytest.approx(want, rel=1e-20, abs=1e-20)


@settings(max_examples=30, deadline=None)
@given(exprs)
def test_derivatives_match_sympy(e):
    f = to_sympy(e)
    assert_same(sp.diff(f, x), e.diff_x0())
    assert_same(sp.diff(f, r), e.diff_r())


def test_atom_derivatives():
    assert LOG.diff_x0() == AxialExpr.term(1, alpha2=-1)
    # r / (s (x0 + s)) rationalised
    assert LOG.diff_r() == AxialExpr.term(1, 0, -1) - AxialExpr.term(1, 1, -1, -1)
    # arctan(r/x0):  d/dx0 = -r/s^2,  d/dr = x0/s^2
    assert ARCTAN.diff_x0() == AxialExpr.term(-1, 0, 1, -2)
    assert ARCTAN.diff_r() == AxialExpr.term(1, 1, 0, -2)
    assert LNSQ.diff_x0() == AxialExpr.term(1, 1, 0, -2)


# -- boundary limits ------------------------------------------------------------------


def test_limit_of_regular_expression():
    e = AxialExpr.term(3, 0, 2, -3) + AxialExpr.term(5, 1, 0, -3)
    assert e.limit_x0_to_zero() == RadialDensity({(-1, 0): Coefficient(3)})


def test_limit_of_logarithm():
    # ln(x0 + s) -> ln r
    assert LOG.limit_x0_to_zero() == RadialDensity({(0, 1): Coefficient(1)})


def test_limit_of_arctan():
    half_pi = Coefficient.pi_power(Fraction(1, 2), 1)
    assert ARCTAN.limit_x0_to_zero() == RadialDensity({(0, 0): half_pi})


def test_negative_x0_powers_are_rejected():
    with pytest.raises(ValueError):
        AxialExpr.term(1, -1, 0, 0)


def test_product_of_transcendental_atoms_is_rejected():
    with pytest.raises(ValueError):
        LOG * LOG
