"""Command-line front end: generate, inspect, and verify spanning-set exports.

Exit codes: 0 success; 1 I/O or parse failure; 2 invalid parameters or usage;
3 verification failure. The BRAUERSPAN_OUTDIR environment variable sets the
default output directory (default: current directory).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import layers, verify

DEFAULT_SEED = 1234

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3


def _out_dir() -> str:
    return os.environ.get("BRAUERSPAN_OUTDIR", ".")


def _resolve_out(path: str | None, default_name: str) -> str:
    if path:
        return path
    return os.path.join(_out_dir(), default_name)


def _write_export(s: layers.SpanningSet, path: str, fmt: str) -> int:
    text = layers.export_json(s) if fmt == "json" else layers.export_text(s)
    try:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    if len(s) == 0:
        print("warning: spanning set is empty", file=sys.stderr)
    print(f"{len(s)} element(s) -> {path}")
    return EXIT_OK


def _add_common_gen_flags(p: argparse.ArgumentParser):
    p.add_argument("--out", help="output file path")
    p.add_argument("--format", choices=("json", "text"), default="json")


def run_gen(args) -> int:
    try:
        s = layers.spanning_set(args.group, args.n, args.k, args.l)
        if args.dk != 1 or args.dl != 1:
            s = layers.with_features(s, args.dk, args.dl)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    name = f"{args.group}_n{args.n}_k{args.k}_l{args.l}"
    if args.dk != 1 or args.dl != 1:
        name += f"_dk{args.dk}_dl{args.dl}"
    return _write_export(s, _resolve_out(args.out, name + ".json"), args.format)


def run_bias(args) -> int:
    try:
        s = layers.bias_set(args.group, args.n, args.l)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    name = f"bias_{args.group}_n{args.n}_l{args.l}.json"
    return _write_export(s, _resolve_out(args.out, name), args.format)


def _parse_factor(text: str) -> tuple[str, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"factor must be GROUP,n,k,l, got {text!r}")
    return parts[0], int(parts[1]), int(parts[2]), int(parts[3])


def run_local(args) -> int:
    try:
        factors = [_parse_factor(f) for f in args.factor]
        if len(factors) < 2:
            print("error: need at least two --factor arguments", file=sys.stderr)
            return EXIT_USAGE
        s = layers.local_spanning_set(factors)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    name = "local_" + "_".join(f"{g}{n}k{k}l{l}" for g, n, k, l in factors) + ".json"
    return _write_export(s, _resolve_out(args.out, name), args.format)


def run_dims(args) -> int:
    grid = [(args.group, args.n, args.k, args.l)]
    try:
        reports = verify.dims_table(grid, strict=False)
    except verify.OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status = EXIT_OK
    for r in reports:
        line = (f"group={r.group} n={r.n} k={r.k} l={r.l} "
                f"count={r.span_count} rank={r.span_rank} oracle={r.oracle_dim} "
                f"basis_regime={r.basis_regime}")
        print(line)
        if not r.consistent:
            print("error: rank/oracle assertion failed", file=sys.stderr)
            status = EXIT_VERIFY
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump([verify.report_to_dict(r) for r in reports], fh, indent=1, sort_keys=True)
            fh.write("\n")
    return status


def run_oracle(args) -> int:
    try:
        dim = verify.oracle_dimension(args.group, args.n, args.k, args.l)
    except (verify.OracleSizeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"group={args.group} n={args.n} k={args.k} l={args.l} oracle={dim}")
    return EXIT_OK


def run_verify(args) -> int:
    try:
        s = layers.load_spanning_set(args.path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: cannot load {args.path}: {exc}", file=sys.stderr)
        return EXIT_IO
    if len(s) == 0:
        print("warning: empty spanning set, nothing to verify", file=sys.stderr)
        print("max_residual=0.0 passed=True (vacuous)")
        return EXIT_OK
    tol = args.tol if args.tol is not None else verify.default_tolerance(
        s.group if isinstance(s.group, tuple) else (s.group,))
    worst = 0.0
    all_passed = True
    reports = []
    for idx, e in enumerate(s.elements):
        C = e.to_dense().astype(float)
        report = verify.check_equivariance_product(
            C, list(s.factors), d_k=s.d_k, d_l=s.d_l, trials=args.trials,
            tol=tol, seed=args.seed + idx, subject=f"element {idx} ({e.provenance})")
        reports.append(report)
        worst = max(worst, report.max_residual)
        all_passed = all_passed and report.passed
    print(f"{len(s)} element(s), {args.trials} trial(s) each: "
          f"max_residual={worst:.3e} tolerance={tol:.1e} passed={all_passed}")
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump([verify.report_to_dict(r) for r in reports], fh, indent=1, sort_keys=True)
            fh.write("\n")
    return EXIT_OK if all_passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brauerspan",
        description="Spanning sets of group-equivariant linear maps between "
                    "tensor power spaces, built from pairing diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_point_args(p, with_k=True, with_l=True):
        p.add_argument("--group", required=True, choices=("O", "SO", "Sp"))
        p.add_argument("--n", required=True, type=int)
        if with_k:
            p.add_argument("--k", required=True, type=int)
        if with_l:
            p.add_argument("--l", required=True, type=int)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p_gen = sub.add_parser("gen", help="generate a spanning-set export file")
    add_point_args(p_gen)
    p_gen.add_argument("--dk", type=int, default=1, help="input feature dimension")
    p_gen.add_argument("--dl", type=int, default=1, help="output feature dimension")
    _add_common_gen_flags(p_gen)
    p_gen.set_defaults(func=run_gen)

    p_bias = sub.add_parser("bias", help="generate an equivariant bias export file")
    add_point_args(p_bias, with_k=False)
    _add_common_gen_flags(p_bias)
    p_bias.set_defaults(func=run_bias)

    p_local = sub.add_parser("local", help="generate a local-symmetry (Kronecker) export")
    p_local.add_argument("--factor", action="append", default=[],
                         metavar="GROUP,n,k,l", help="repeatable, at least twice")
    p_local.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_common_gen_flags(p_local)
    p_local.set_defaults(func=run_local)

    p_dims = sub.add_parser("dims", help="span count/rank vs oracle dimension")
    add_point_args(p_dims)
    p_dims.add_argument("--json-out", help="also write reports as JSON")
    p_dims.set_defaults(func=run_dims)

    p_oracle = sub.add_parser("oracle", help="oracle dimension only")
    add_point_args(p_oracle)
    p_oracle.set_defaults(func=run_oracle)

    p_verify = sub.add_parser("verify", help="check every element of an export file")
    p_verify.add_argument("path", help="export file to verify")
    p_verify.add_argument("--trials", type=int, default=20)
    p_verify.add_argument("--tol", type=float, default=None)
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.add_argument("--json-out", help="also write reports as JSON")
    p_verify.set_defaults(func=run_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches the contract
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
