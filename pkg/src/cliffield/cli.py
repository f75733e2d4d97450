"""cliffield command line: scenario runner and conformance suite.

Exit codes: 0 all checks pass, 1 a check failed, 2 config/parse error,
3 resource-cap violation.

Reports are deterministic for a fixed config and seed: JSON is written
with sorted keys and contains no timestamps; wall-clock timings go to a
separate timing.json next to the report.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

import numpy as np

from . import blades, grassmann, witt
from .checks import CheckContext, CheckResult, run_suite
from .lattice import ResourceCapError
from .scenarios import BUNDLED, ConfigError, load_config, run_scenario

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_RESOURCE_CAP = 3


def _print_results_table(results: Sequence[CheckResult]) -> None:
    width = max((len(r.name) for r in results), default=20)
    for r in results:
        status = "pass" if r.passed else "FAIL"
        note = f"  {r.notes}" if r.notes else ""
        print(f"{status:4s}  {r.name:<{width}s}  dev={r.deviation: .3e}  "
              f"tol={r.tolerance:.1e}{note}")


def _print_results_csv(results: Sequence[CheckResult]) -> None:
    print("name,status,deviation,tolerance")
    for r in results:
        print(f"{r.name},{'pass' if r.passed else 'fail'},{r.deviation!r},{r.tolerance!r}")


def _emit_results(results: Sequence[CheckResult], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps([r.to_json_dict() for r in results], indent=2, sort_keys=True))
    elif fmt == "csv":
        _print_results_csv(results)
    else:
        _print_results_table(results)


def cmd_run(args) -> int:
    outdir = Path(args.out)
    cc = CheckContext(seed=args.seed, tolerance_scale=args.tolerance_scale)
    try:
        configs = [load_config(c) for c in args.config]
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    def execute(config):
        t0 = time.perf_counter()
        report = run_scenario(config, cc, outdir)
        return report, time.perf_counter() - t0

    try:
        if args.parallel and len(configs) > 1:
            with ThreadPoolExecutor() as pool:
                outcomes = list(pool.map(execute, configs))
        else:
            outcomes = [execute(c) for c in configs]
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_CAP

    outcomes.sort(key=lambda pair: pair[0].name)
    outdir.mkdir(parents=True, exist_ok=True)
    timings = {}
    all_passed = True
    for report, elapsed in outcomes:
        timings[report.name] = elapsed
        report_path = outdir / f"{report.name}_report.json"
        report_path.write_text(
            json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n"
        )
        all_passed &= report.passed
        if args.format == "json":
            print(json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
        else:
            print(f"scenario {report.name}: {'pass' if report.passed else 'FAIL'}"
                  f"  (report: {report_path})")
            _emit_results(report.results, args.format)
    (outdir / "timing.json").write_text(
        json.dumps(timings, indent=2, sort_keys=True) + "\n"
    )
    return EXIT_OK if all_passed else EXIT_CHECK_FAILED


def cmd_check(args) -> int:
    cc = CheckContext(seed=args.seed, tolerance_scale=args.tolerance_scale)
    try:
        results = run_suite(args.filter, cc)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    _emit_results(results, args.format)
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} checks passed")
    return EXIT_OK if n_pass == len(results) else EXIT_CHECK_FAILED


def cmd_list(args) -> int:
    width = max(len(name) for name in BUNDLED)
    for name in sorted(BUNDLED):
        info = BUNDLED[name]
        print(f"{name:<{width}s}  [{info.module}] {info.description}")
    return EXIT_OK


def cmd_describe(args) -> int:
    if args.name not in BUNDLED:
        print(f"unknown scenario {args.name!r}; try `cliffield list`", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    info = BUNDLED[args.name]
    print(f"name:        {info.name}")
    print(f"module:      {info.module}")
    print(f"description: {info.description}")
    print(f"covers:      {info.reference}")
    config = load_config(args.name)
    print("checks:")
    for check in config.get("checks", []):
        print(f"  - {check['name']} (tolerance {check.get('tolerance', 1e-9)})")
    return EXIT_OK


def cmd_spinor(args) -> int:
    try:
        p, q = (int(x) for x in args.sig.split(","))
        sig = blades.Signature(p, q)
        ctx = blades.make_algebra(sig)
        wb = witt.witt_basis(ctx, witt.WittScheme(args.scheme))
        bits = args.vacuum if args.vacuum else "1" * wb.n
        spec = witt.VacuumSpec.from_bitstring(bits)
        if spec.n != wb.n:
            raise ValueError(
                f"vacuum bitstring length {spec.n} does not match n={wb.n}"
            )
        ib = witt.ideal_basis(wb, spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    from .checks import measure_gamma_clifford, measure_witt_relations

    gammas = {
        f"gamma{i}": witt.matrix_to_json(witt.matrix_rep(ctx.gamma(i), ib))
        for i in range(1, ctx.n_generators + 1)
    }
    doc = {
        "sig": [p, q],
        "scheme": args.scheme,
        "vacuum": spec.bitstring(),
        "basis_order": [list(s) for s in ib.subsets],
        "matrices": gammas,
        "witt_residual": measure_witt_relations(wb),
        "max_clifford_residual": measure_gamma_clifford(ib),
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.emit:
        Path(args.emit).write_text(text + "\n")
        print(f"wrote {args.emit}")
    else:
        print(text)
    return EXIT_OK


def cmd_grassmann(args) -> int:
    if args.action != "expand":
        print(f"unknown grassmann action {args.action!r}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        data = json.loads(Path(args.input).read_text())
        f = grassmann.GrassmannFunction.from_json_dict(data)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error reading {args.input}: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    comps = grassmann.expand_components(f)
    doc = {
        "n": f.n,
        "order": "graded lexicographic subsets",
        "components": [[c.real, c.imag] for c in comps],
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffield",
        description="Clifford-algebra quantization kernels: scenarios and checks",
    )
    sub = parser.add_subparsers(dest="command")

    run_p = sub.add_parser("run", help="run scenario configs")
    run_p.add_argument("config", nargs="+",
                       help="scenario TOML path or bundled scenario name")
    run_p.add_argument("--out", default="out", help="artifact directory")
    run_p.add_argument("--seed", type=int, default=0)
    run_p.add_argument("--parallel", action="store_true",
                       help="run independent scenarios concurrently")
    run_p.add_argument("--tolerance-scale", type=float, default=1.0)
    run_p.add_argument("--format", choices=["json", "csv", "table"], default="table")
    run_p.set_defaults(func=cmd_run)

    check_p = sub.add_parser("check", help="run the conformance suite")
    check_p.add_argument("filter", nargs="?", default="",
                         help="substring filter on check names")
    check_p.add_argument("--seed", type=int, default=0)
    check_p.add_argument("--tolerance-scale", type=float, default=1.0)
    check_p.add_argument("--format", choices=["json", "csv", "table"], default="table")
    check_p.set_defaults(func=cmd_check)

    list_p = sub.add_parser("list", help="list bundled scenarios")
    list_p.set_defaults(func=cmd_list)

    desc_p = sub.add_parser("describe", help="describe a bundled scenario")
    desc_p.add_argument("name")
    desc_p.set_defaults(func=cmd_describe)

    spin_p = sub.add_parser("spinor", help="emit ideal-basis gamma matrices")
    spin_p.add_argument("--sig", required=True, help="signature as p,q")
    spin_p.add_argument("--scheme", choices=["doubled", "spacetime"],
                        default="spacetime")
    spin_p.add_argument("--vacuum", default="",
                        help="bitstring over pairing slots, 1 = barred")
    spin_p.add_argument("--emit", default="", help="output JSON path")
    spin_p.set_defaults(func=cmd_spinor)

    gr_p = sub.add_parser("grassmann", help="Grassmann function utilities")
    gr_p.add_argument("action", choices=["expand"])
    gr_p.add_argument("--input", required=True, help="function JSON path")
    gr_p.add_argument("--out", default="", help="output JSON path")
    gr_p.set_defaults(func=cmd_grassmann)

    dyn_p = sub.add_parser("dynamics", help="dynamics scenario shortcuts")
    dyn_sub = dyn_p.add_subparsers(dest="dynamics_command")
    dyn_run = dyn_sub.add_parser("run", help="run a dynamics scenario config")
    dyn_run.add_argument("config", nargs="+")
    dyn_run.add_argument("--out", default="out")
    dyn_run.add_argument("--seed", type=int, default=0)
    dyn_run.add_argument("--parallel", action="store_true")
    dyn_run.add_argument("--tolerance-scale", type=float, default=1.0)
    dyn_run.add_argument("--format", choices=["json", "csv", "table"], default="table")
    dyn_run.set_defaults(func=cmd_run)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_CONFIG_ERROR
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
