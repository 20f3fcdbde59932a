"""Exit gate: one check per acceptance criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import sys
import tempfile
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _formulas import DOWNSTREAM, UPSTREAM, downstream_expr, perturbations, perturbed, upstream_form  # noqa: E402

from monochain import numeric  # noqa: E402
from monochain.boundary import alpha_beta, alpha_beta_closed, boundary_a, boundary_b  # noqa: E402
from monochain.chain import build_chain, upstream_forms, verify_chain  # noqa: E402
from monochain.cliffop import PotentialPair, apply_Dbar  # noqa: E402
from monochain.gegenbauer import downstream_A, downstream_B  # noqa: E402

RESULTS: list[str] = []


def _record(cid: str, ok: bool, detail: str) -> bool:
    line = f"criterion {cid:<3} {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def check_1():
    def run():
        bad = []
        for e in DOWNSTREAM:
            if e["m"] != 2:
                continue
            build = downstream_A if e["kind"] == "A" else downstream_B
            chain = build_chain(2, -e["k"], -e["k"])
            got = chain[-e["k"]].A if e["kind"] == "A" else chain[-e["k"]].B
            if got != downstream_expr(e) or build(e["k"], 2) != got:
                bad.append(f"{e['kind']}_{-e['k']}")
        return bad

    bad, dt = _timed(run)
    return _record("1", not bad and dt < 1, f"m=2 downstream A/B -1..-4 exact; mismatches={bad} ({dt:.2f}s < 1s)")


def check_2():
    def run():
        chain = build_chain(3, -4, -1)
        bad = []
        for e in DOWNSTREAM:
            if e["m"] != 3:
                continue
            got = chain[-e["k"]].A if e["kind"] == "A" else chain[-e["k"]].B
            if got != downstream_expr(e):
                bad.append(f"{e['kind']}_{-e['k']}")
        return bad

    bad, dt = _timed(run)
    return _record("2", not bad and dt < 1, f"m=3 downstream A/B -1..-4 exact; mismatches={bad} ({dt:.2f}s < 1s)")


def check_3():
    def run():
        bad = []
        for m in (2, 3):
            pair = build_chain(m, -1, -1)[-1].pair
            for k in range(2, 13):
                pair = apply_Dbar(pair)
                if pair != PotentialPair(m, downstream_A(k, m), downstream_B(k, m)):
                    bad.append((m, k))
        return bad

    bad, dt = _timed(run)
    return _record("3", not bad and dt < 10, f"Gegenbauer closed form == Dbar^k C_-1, k<=12, both m; bad={bad} ({dt:.2f}s < 10s)")


def _upstream(cid, m):
    def run():
        forms = upstream_forms(m, 6)
        return [e["j"] for e in UPSTREAM if e["m"] == m and forms[e["j"]] != upstream_form(e)]

    bad, dt = _timed(run)
    return _record(cid, not bad and dt < 5, f"m={m} solved 2pi A_3..A_6 exact; mismatches={bad} ({dt:.2f}s < 5s)")


def check_4():
    return _upstream("4", 2)


def check_5():
    return _upstream("5", 3)


def check_6():
    bad = []
    for m in (2, 3):
        for k in range(21):
            ab, closed = alpha_beta(k, m), alpha_beta_closed(k, m)
            if (ab.alpha, ab.beta) != (closed.alpha, closed.beta):
                bad.append((m, k))
    return _record("6", not bad, f"alpha/beta recursion == closed form, k<=20, both m; bad={bad}")


CORE = ("monogenic", "harmonic_A", "harmonic_B", "dx_A", "dx_B", "dirac_A", "dirac_B")


def check_7():
    def run():
        fails, count = [], 0
        for m in (2, 3):
            rep = verify_chain(build_chain(m, -12, 12))
            core = [e for e in rep.entries if e.identity in CORE]
            count += len(core)
            fails += [(m, e.identity, e.level) for e in core if not e.passed]
        return fails, count

    (fails, count), dt = _timed(run)
    return _record("7", not fails and dt < 30, f"{count} exact identities, levels -12..12, both m; failures={fails[:3]} ({dt:.2f}s < 30s)")


def check_8():
    fails, count = [], 0
    for m in (2, 3):
        chain = build_chain(m, -12, 12)
        rep = verify_chain(chain)
        for e in rep.entries:
            if e.identity.startswith(("limit_", "boundary_dirac_")):
                count += 1
                if not e.passed:
                    fails.append((m, e.identity, e.level))
        for rec in chain:
            if rec.boundary != (boundary_a(rec.level, m), boundary_b(rec.level, m)):
                fails.append((m, "catalogue", rec.level))
    return _record("8", not fails, f"{count} boundary limits and -dirac steps exact; failures={fails[:3]}")


def check_9a():
    def run():
        worst, n = 0.0, 0
        for m in (2, 3):
            reps = numeric.chain_residuals(build_chain(m, -5, 6), -4, 6, numeric.sample_set(100), h=1e-4, tolerance=1e-6)
            n += len(reps)
            worst = max([worst] + [r.residual for r in reps])
        return worst, n

    (worst, n), dt = _timed(run)
    return _record("9a", worst < 1e-6 and dt < 60, f"{n} FD residuals at levels -4..6, max {worst:.2e} < 1e-6 ({dt:.2f}s)")


def check_9b():
    worst = max(abs(numeric.poisson_mass(m, x0) - 1) for m in (2, 3) for x0 in (1e-2, 1e-1, 1.0, 10.0))
    return _record("9b", worst < 1e-6, f"Poisson mass, both m, x0 in 1e-2..10, max |mass-1| {worst:.2e} < 1e-6")


def check_9c():
    errs = {m: abs(numeric.delta_quadrature(m, [1e-2], numeric.gaussian_bump())[0] - 1.0) for m in (2, 3)}
    worst = max(errs.values())
    return _record(
        "9c",
        worst < 1e-3,
        f"delta quadrature at x0=1e-2 with phi=exp(-r^2): |err| m=2 {errs[2]:.2e}, m=3 {errs[3]:.2e} (need < 1e-3)",
    )


def check_10():
    from monochain.chain import ChainRecord
    from monochain.cli import main
    from monochain.serialize import chain_to_json, dumps

    caught, total, silent = 0, 0, []
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for case in perturbations():
            kind, i, family, n = case
            entry = perturbed(kind, i, family, n)
            m = entry["m"]
            chain = build_chain(m, -6, 7)
            if kind == "down":
                level, rec = -entry["k"], chain[-entry["k"]]
                expr = downstream_expr(entry)
                pair = PotentialPair(m, expr, rec.B) if entry["kind"] == "A" else PotentialPair(m, rec.A, expr)
            else:
                level, rec = entry["j"], chain[entry["j"]]
                pair = PotentialPair(m, upstream_form(entry).potential(), rec.B)
            chain.add(ChainRecord(m, level, pair, rec.boundary))
            (tmp / "c.json").write_text(dumps(chain_to_json(chain)))
            out = tmp / "r.json"
            code = main(["verify", "--chain", str(tmp / "c.json"), "--no-numeric", "--output", str(out)])
            report = json.loads(out.read_text())
            total += 1
            if code == 1 and report["failed_identities"]:
                caught += 1
            else:
                silent.append(case)
    return _record("10", caught == total, f"{caught}/{total} single-coefficient perturbations rejected by verify; missed={silent[:3]}")


CHECKS = {
    "1": check_1, "2": check_2, "3": check_3, "4": check_4, "5": check_5, "6": check_6,
    "7": check_7, "8": check_8, "9a": check_9a, "9b": check_9b, "9c": check_9c, "10": check_10,
}


@pytest.mark.parametrize("cid", list(CHECKS))
def test_criterion(cid, capsys):
    with capsys.disabled():
        ok = CHECKS[cid]()
    assert ok, RESULTS[-1]


if __name__ == "__main__":
    import contextlib
    import io

    results = []
    for cid, fn in CHECKS.items():
        with contextlib.redirect_stdout(io.StringIO()):
            results.append(fn())
        print(RESULTS[-1])
    sys.exit(0 if all(results) else 1)
