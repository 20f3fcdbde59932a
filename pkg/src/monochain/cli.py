"""Command-line entry point: ``monochain {gen,verify,boundary,export,bench}``."""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import numeric
from .boundary import alpha_beta, alpha_beta_closed, catalogue
from .chain import Chain, ReportEntry, VerificationReport, build_chain, verify_chain
from .latex import chain_document
from .serialize import SCHEMA_VERSION, SchemaError, chain_from_json, chain_to_json, dumps

REPORT_DIR_ENV = "MONOCHAIN_REPORT_DIR"

# finite differences are only run where double precision has headroom
NUMERIC_LEVELS = (-4, 6)


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monochain", description="Axial monogenic potential chains in R^3_+ and R^4_+.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, fmt_default: str, chain_file: bool = False):
        sp.add_argument("--dim", type=int, choices=(3, 4), required=not chain_file,
                        help="ambient half-space dimension (boundary dimension is dim - 1)")
        sp.add_argument("--from", dest="lo", type=int, default=-6, help="lowest level")
        sp.add_argument("--to", dest="hi", type=int, default=6, help="highest level")
        sp.add_argument("--format", choices=("json", "latex", "text"), default=fmt_default)
        sp.add_argument("--output", "-o", type=Path, help="write to this file instead of stdout")
        if chain_file:
            sp.add_argument("--chain", type=Path, help="read the chain from a JSON dump instead of building it")

    common(sub.add_parser("gen", help="build a chain and dump it"), "json")
    v = sub.add_parser("verify", help="run the exact and numeric identity suites")
    common(v, "text", chain_file=True)
    v.add_argument("--no-numeric", action="store_true", help="skip finite-difference and quadrature checks")
    common(sub.add_parser("boundary", help="print the boundary-value catalogue"), "text")
    common(sub.add_parser("export", help="render a chain (LaTeX by default)"), "latex", chain_file=True)
    b = sub.add_parser("bench", help="time chain construction and verification")
    common(b, "text")
    b.add_argument("--repeat", type=int, default=1)
    return p


def _check_range(args) -> None:
    if args.lo > args.hi:
        raise UsageError(f"--from ({args.lo}) must not exceed --to ({args.hi})")


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {output}: {exc}") from exc


def _load_or_build(args) -> Chain:
    if getattr(args, "chain", None) is not None:
        import json

        try:
            data = json.loads(args.chain.read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read chain file {args.chain}: {exc}") from exc
        chain = chain_from_json(data)
        if args.dim is not None and args.dim != chain.m + 1:
            raise UsageError(f"--dim {args.dim} does not match the chain file (dim {chain.m + 1})")
        return chain
    if args.dim is None:
        raise UsageError("either --dim or --chain is required")
    return build_chain(args.dim - 1, args.lo, args.hi)


def _chain_text(chain: Chain) -> str:
    lines = [f"# chain m={chain.m} levels {chain.levels[0]}..{chain.levels[-1]}"]
    for rec in chain:
        a, b = rec.boundary
        lines += [
            f"[{rec.level}]",
            f"  A = {rec.A.to_text()}",
            f"  B = omega*[{rec.B.to_text()}]",
            f"  a = {a.to_text()}",
            f"  b = {b.to_text()}",
        ]
    return "\n".join(lines) + "\n"


def _render_chain(chain: Chain, fmt: str) -> str:
    if fmt == "json":
        return dumps(chain_to_json(chain))
    if fmt == "latex":
        return chain_document(chain)
    return _chain_text(chain)


def cmd_gen(args) -> int:
    _check_range(args)
    _emit(_render_chain(build_chain(args.dim - 1, args.lo, args.hi), args.format), args.output)
    return 0


def cmd_export(args) -> int:
    _check_range(args)
    _emit(_render_chain(_load_or_build(args), args.format), args.output)
    return 0


def _numeric_entries(chain: Chain) -> list[ReportEntry]:
    m = chain.m
    lo = max(chain.levels[0], NUMERIC_LEVELS[0])
    hi = min(chain.levels[-1], NUMERIC_LEVELS[1])
    out = []
    for r in numeric.chain_residuals(chain, lo, hi):
        out.append(ReportEntry(f"fd_{r.identity}", m, r.level, r.passed, "" if r.passed else f"residual {r.residual:.3e}"))
    for x0 in (1.0, 0.1, 0.01):
        mass = numeric.poisson_mass(m, x0)
        ok = abs(mass - 1.0) <= 1e-6
        out.append(ReportEntry("poisson_mass", m, -1, ok, "" if ok else f"mass {mass!r} at x0={x0}"))
    return out


def _alpha_beta_entries(m: int) -> list[ReportEntry]:
    out = []
    for k in range(21):
        try:
            ab = alpha_beta(k, m)
            closed = alpha_beta_closed(k, m)
            ok = ab.alpha == closed.alpha and ab.beta == closed.beta
            detail = ""
        except ArithmeticError as exc:
            ok, detail = False, str(exc)
        out.append(ReportEntry("alpha_beta", m, k, ok, detail))
    return out


def cmd_verify(args) -> int:
    _check_range(args)
    try:
        chain = _load_or_build(args)
    except SchemaError as exc:
        raise UsageError(str(exc)) from exc
    report = verify_chain(chain)
    report.extend(_alpha_beta_entries(chain.m))
    if not args.no_numeric:
        report.extend(_numeric_entries(chain))

    payload = {"schema_version": SCHEMA_VERSION, "kind": "verify-report", "m": chain.m, "dim": chain.m + 1}
    payload.update(report.to_json())
    target = args.output
    if target is None and os.environ.get(REPORT_DIR_ENV):
        target = Path(os.environ[REPORT_DIR_ENV]) / f"verify-dim{chain.m + 1}.json"
    if args.format == "json" and target is None:
        sys.stdout.write(dumps(payload))
    else:
        if target is not None:
            _emit(dumps(payload), target)
        _print_summary(report, chain)
    return 0 if report.passed else 1


def _print_summary(report: VerificationReport, chain: Chain) -> None:
    fails = report.failures()
    status = "PASS" if not fails else "FAIL"
    print(f"{status}: {len(report.entries) - len(fails)}/{len(report.entries)} checks passed "
          f"(dim {chain.m + 1}, levels {chain.levels[0]}..{chain.levels[-1]})")
    for e in fails:
        print(f"  violated {e.identity} at level {e.level}: {e.detail}")


def cmd_boundary(args) -> int:
    _check_range(args)
    m = args.dim - 1
    rows = catalogue(m, args.lo, args.hi)
    if args.format == "json":
        text = dumps({"schema_version": SCHEMA_VERSION, "kind": "boundary", "m": m, "dim": args.dim, "levels": rows})
    elif args.format == "latex":
        lines = []
        for row in rows:
            j = row["level"]
            lines.append(rf"$a_{{{j}}} = {row['a_label']}$: \verb|{row['a_text']}|\\")
            lines.append(rf"$b_{{{j}}} = {row['b_label']}$: \verb|{row['b_text']}|\\")
        text = "\n".join(lines) + "\n"
    else:
        lines = []
        for row in rows:
            j = row["level"]
            lines.append(f"a_{j} = {row['a_label']:<6} = {row['a_text']}")
            lines.append(f"b_{j} = {row['b_label']:<6} = {row['b_text']}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def cmd_bench(args) -> int:
    _check_range(args)
    m = args.dim - 1
    timings = {"build": [], "verify": []}
    for _ in range(max(1, args.repeat)):
        t0 = time.perf_counter()
        chain = build_chain(m, args.lo, args.hi)
        t1 = time.perf_counter()
        verify_chain(chain)
        t2 = time.perf_counter()
        timings["build"].append(t1 - t0)
        timings["verify"].append(t2 - t1)
    best = {k: min(v) for k, v in timings.items()}
    if args.format == "json":
        _emit(dumps({"schema_version": SCHEMA_VERSION, "kind": "bench", "dim": args.dim,
                     "from": args.lo, "to": args.hi, "seconds": best}), args.output)
    else:
        _emit(f"dim {args.dim} levels {args.lo}..{args.hi}: build {best['build']:.3f}s, "
              f"verify {best['verify']:.3f}s\n", args.output)
    return 0


_COMMANDS = {"gen": cmd_gen, "verify": cmd_verify, "boundary": cmd_boundary, "export": cmd_export, "bench": cmd_bench}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"monochain {args.verb}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
