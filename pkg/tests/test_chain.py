import time
from fractions import Fraction

import pytest
from _formulas import UPSTREAM, upstream_form

from monochain.axial import AxialExpr, Poly
from monochain.chain import (
    TWO_PI,
    Chain,
    SolverError,
    UpstreamForm,
    build_chain,
    build_pivot,
    cauchy_kernel,
    extend_downstream,
    solve_upstream,
    upstream_forms,
    upstream_seed,
    verify_chain,
)
from monochain.cliffop import PotentialPair, apply_D, apply_Dbar
from monochain.exactnum import Coefficient
from monochain.gegenbauer import downstream_A, downstream_B


@pytest.fixture(scope="module", params=[2, 3])
def chain(request):
    return build_chain(request.param, -12, 12)


def test_levels_are_contiguous(chain):
    assert chain.levels == list(range(-12, 13))


def test_full_identity_suite_passes(chain):
    report = verify_chain(chain)
    assert report.passed, report.failures()[:3]
    idents = {e.identity for e in report.entries}
    assert {"monogenic", "harmonic_A", "harmonic_B", "dx_A", "dx_B", "dirac_A", "dirac_B"} <= idents


def test_each_level_is_monogenic(chain):
    for rec in chain:
        assert apply_D(rec.pair).is_zero()


def test_two_routes_downstream(chain):
    m = chain.m
    pair = chain[-1].pair
    for k in range(2, 13):
        pair = apply_Dbar(pair)
        assert pair.A == downstream_A(k, m)
        assert pair.B == downstream_B(k, m)


def test_pivot_is_cauchy_kernel(chain):
    m = chain.m
    lower, log = build_pivot(m)
    assert lower.pair == cauchy_kernel(m)
    assert apply_Dbar(log.pair) == lower.pair


@pytest.mark.parametrize("entry", UPSTREAM, ids=lambda e: f"m{e['m']}-A{e['j']}")
def test_solver_reproduces_reference_table(entry):
    m, j = entry["m"], entry["j"]
    assert upstream_forms(m, j)[j] == upstream_form(entry)


@pytest.mark.parametrize("m", [2, 3])
def test_solver_fixed_point_at_second_seed(m):
    assert solve_upstream(2, m, upstream_seed(1, m)) == upstream_seed(2, m)


@pytest.mark.parametrize("m", [2, 3])
def test_upstream_forms_stay_in_shape(m):
    forms = upstream_forms(m, 12)
    for j in range(2, 13):
        f = forms[j]
        assert f.expr().diff_x0() == forms[j - 1].expr()
        assert UpstreamForm.from_expr(f.expr(), m, j) == f
        assert f.potential() * TWO_PI == f.expr()


@pytest.mark.parametrize("m", [2, 3])
def test_solver_rejects_inconsistent_input(m):
    good = upstream_forms(m, 4)[4]
    bad = UpstreamForm(m, 4, good.first, good.second + Poly({(0, 0): Coefficient(1)}), good.third)
    with pytest.raises(SolverError) as err:
        solve_upstream(5, m, bad)
    assert err.value.level == 5 and err.value.m == m


def test_solver_needs_level_two_or_more():
    with pytest.raises((ValueError, SolverError)):
        solve_upstream(1, 2, upstream_seed(1, 2))


def test_vector_parts_come_from_next_scalar(chain):
    for k in range(0, 12):
        assert chain[k].B == -chain[k + 1].A.diff_r()


def test_restrict_and_add():
    c = build_chain(2, -3, 3)
    sub = c.restrict(-1, 1)
    assert sub.levels == [-1, 0, 1]
    assert isinstance(sub, Chain)
    assert 0 in sub and 2 not in sub


def test_extend_downstream_grows_chain():
    c = build_chain(3, -1, 0)
    extend_downstream(c, 5)
    assert c.levels[0] == -5
    assert c[-5].A == downstream_A(5, 3)


def test_tampered_record_is_reported():
    c = build_chain(2, -3, 3)
    rec = c[2]
    bumped = PotentialPair(2, rec.A + AxialExpr.term(Fraction(1, 5), 1, 0), rec.B)
    c.add(type(rec)(2, 2, bumped, rec.boundary))
    failed = verify_chain(c).failed_identities()
    assert "dx_A" in failed


@pytest.mark.parametrize("m", [2, 3])
def test_build_is_fast(m):
    t0 = time.perf_counter()
    build_chain(m, -12, 12)
    assert time.perf_counter() - t0 < 5
