"""Experiment runner.

Subcommands map one-to-one onto the verification suites:

    ksum-verify          complete-sum oracle equivalence, Weil, Ramanujan
    incomplete-verify    completion majorant sweep, envelopes, characters
    identities           exact reciprocity and arithmetic invariants
    trilinear-sweep      bilinear spectral oracle + diagonal scaling ladder
    amplifier-check      Cauchy-Schwarz step + amplifier inequality chain
    compdiv-check        complementary-divisor exhaustive sweep
    detcount             determinant-equation counts vs. main term
    equidist             star discrepancy of the fraction multiset
    calibrate-constants  envelope calibration ratios

Configuration comes from an optional flat key=value file (--config) with
command-line flags overriding it; no environment variables are consulted.
Records append to a CSV (fixed column order, 17-significant-digit floats)
and optionally mirror to JSON.  Exit codes: 0 all assertions passed,
1 at least one assertion failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
import time

from .records import write_csv, write_json
from .verify import (
    calibrate_constants,
    cauchy_amplifier_verify,
    compdiv_verify,
    detcount_verify,
    equidist_verify,
    identities_verify,
    incomplete_verify,
    ksum_verify,
    trilinear_sweep_verify,
)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2


def _parse_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (want key=value): {line!r}")
            key, val = line.split("=", 1)
            out[key.strip()] = val.strip()
    return out


def _common_options(top_level: bool) -> argparse.ArgumentParser:
    """Options accepted both before and after the subcommand name.

    The top-level copy carries the real defaults; subparser copies default to
    SUPPRESS so a subcommand-position flag overrides without a not-given flag
    clobbering the value parsed earlier.  A fresh parser per caller: argparse
    parents share action objects, so they must not be reused.
    """
    dflt = (lambda v: v) if top_level else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=dflt(None),
                        help="flat key=value config file; flags override it")
    common.add_argument("--seed", type=int, default=dflt(7),
                        help="64-bit master seed (default 7)")
    common.add_argument("--out", default=dflt("kfractions_records.csv"),
                        help="CSV record file, appended (default kfractions_records.csv)")
    common.add_argument("--json", dest="json_path", default=dflt(None),
                        help="optional JSON mirror")
    common.add_argument("--workers", type=int, default=dflt(1),
                        help="worker threads for grid suites (default 1)")
    return common


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kfractions", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter,
                                     parents=[_common_options(top_level=True)])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[_common_options(top_level=False)], **kw)

    p = add_parser("ksum-verify", help="oracle equivalence + Weil bound grid")
    p.add_argument("--cmax", type=int, default=2000)
    p.add_argument("--pairs", type=int, default=20)

    p = add_parser("incomplete-verify", help="completion majorant + envelope suite")
    p.add_argument("--n-specs", type=int, default=200)
    p.add_argument("--gamma-max", type=int, default=300)
    p.add_argument("--sharp-specs", type=int, default=1000)

    p = add_parser("identities", help="exact reciprocity identity suite")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-n", type=int, default=10**6)

    p = add_parser("trilinear-sweep", help="bilinear oracle + scaling ladder")
    p.add_argument("--n-specs", type=int, default=20)
    p.add_argument("--ladder", default="8,16,32,64,128")

    p = add_parser("amplifier-check", help="Cauchy-Schwarz + amplifier chain")
    p.add_argument("--draws", type=int, default=100)

    p = add_parser("compdiv-check", help="complementary divisor sweep")
    p.add_argument("--m-scale", type=int, default=64)
    p.add_argument("--n-scale", type=int, default=64)
    p.add_argument("--l-scale", type=float, default=8.0)

    p = add_parser("detcount", help="determinant equation counts")
    p.add_argument("--n-specs", type=int, default=50)

    p = add_parser("equidist", help="fraction-set star discrepancy ladder")
    p.add_argument("--n-list", default="64,128,256,512")
    p.add_argument("--density-exponent", type=float, default=0.0)
    p.add_argument("--sampled", action="store_true",
                   help="draw X_N of size ceil(N^(1-exponent)) instead of the full set")

    add_parser("calibrate-constants", help="envelope calibration ratios")
    return parser


def _apply_config(args: argparse.Namespace, argv: list[str]) -> None:
    """Config file values fill in anything not explicitly given on the line."""
    if not args.config:
        return
    cfg = _parse_config_file(args.config)
    given = {tok.split("=")[0].lstrip("-").replace("-", "_") for tok in argv if tok.startswith("--")}
    for key, raw in cfg.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr) or attr in given:
            continue
        current = getattr(args, attr)
        if isinstance(current, bool):
            setattr(args, attr, raw.lower() in ("1", "true", "yes"))
        elif isinstance(current, int):
            setattr(args, attr, int(raw))
        elif isinstance(current, float):
            setattr(args, attr, float(raw))
        else:
            setattr(args, attr, raw)


def _dispatch(args: argparse.Namespace) -> list:
    seed, workers = args.seed, args.workers
    cmd = args.subcommand
    if cmd == "ksum-verify":
        return [ksum_verify(args.cmax, args.pairs, seed, workers)]
    if cmd == "incomplete-verify":
        return [incomplete_verify(args.n_specs, args.gamma_max, seed, args.sharp_specs)]
    if cmd == "identities":
        return [identities_verify(args.trials, seed, args.max_n)]
    if cmd == "trilinear-sweep":
        ladder = tuple(int(t) for t in args.ladder.split(","))
        return trilinear_sweep_verify(args.n_specs, seed, ladder)
    if cmd == "amplifier-check":
        return [cauchy_amplifier_verify(seed, args.draws)]
    if cmd == "compdiv-check":
        return [compdiv_verify(args.m_scale, args.n_scale, args.l_scale, seed)]
    if cmd == "detcount":
        return [detcount_verify(args.n_specs, seed, workers)]
    if cmd == "equidist":
        n_list = tuple(int(t) for t in args.n_list.split(","))
        return [equidist_verify(n_list, args.density_exponent, not args.sampled, seed)]
    if cmd == "calibrate-constants":
        return [calibrate_constants(seed)]
    raise ValueError(f"unknown subcommand {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        _apply_config(args, argv)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    start = time.perf_counter()
    try:
        records = _dispatch(args)
    except ValueError as exc:
        print(f"configuration rejected: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    for rec in records:
        rec.runtime_seconds = elapsed / len(records)

    write_csv(args.out, records)
    if args.json_path:
        write_json(args.json_path, records)

    failed = []
    for rec in records:
        for name, outcome in sorted(rec.assertions.items()):
            tag = "PASS" if outcome else "FAIL"
            print(f"[{tag}] {rec.subcommand}: {name}")
            if not outcome:
                failed.append((rec.subcommand, name))
        for name, val in sorted(rec.values.items()):
            print(f"       {rec.subcommand}: {name} = {val:.6g}")
    if failed:
        print(f"{len(failed)} assertion(s) failed", file=sys.stderr)
        return EXIT_ASSERTION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
