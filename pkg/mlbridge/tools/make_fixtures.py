"""Regenerate the bridge's fixture directory from the primary implementation.

Run from the repository root with the primary package installed:

    python3 mlbridge/tools/make_fixtures.py

Exports are produced by the primary CLI; reference outputs by the primary
forward path. The bridge's own tests consume only the generated files.
"""

from __future__ import annotations

import json
import os
import sys

import numpy as np

from brauerspan import cli
from brauerspan.layers import LayerSpec, forward, load_spanning_set

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.normpath(os.path.join(HERE, "..", "fixtures"))
EXPORTS = os.path.join(FIXTURES, "exports")

CASE_PLAN = [
    # (export args, bias args or None, n_cases)
    (["gen", "--group", "O", "--n", "2", "--k", "2", "--l", "2"],
     ["bias", "--group", "O", "--n", "2", "--l", "2"], 15),
    (["gen", "--group", "SO", "--n", "2", "--k", "3", "--l", "1"], None, 10),
    (["gen", "--group", "Sp", "--n", "2", "--k", "3", "--l", "1"], None, 10),
    (["gen", "--group", "O", "--n", "3", "--k", "2", "--l", "2"], None, 5),
    (["gen", "--group", "O", "--n", "2", "--k", "1", "--l", "1",
      "--dk", "2", "--dl", "2"], None, 10),
    # empty set: exercised by the loader tests only
    (["gen", "--group", "O", "--n", "3", "--k", "1", "--l", "2"], None, 0),
]

ACTIVATION_CYCLE = ["identity", "relu", "tanh"]


def _run_cli(args, out_name):
    path = os.path.join(EXPORTS, out_name)
    status = cli.main(args + ["--out", path])
    if status != 0:
        raise RuntimeError(f"primary CLI failed for {args}")
    return path


def _export_name(args):
    opts = dict(zip(args[1::2], args[2::2]))
    name = f"{opts['--group']}_n{opts['--n']}"
    if "--k" in opts:
        name += f"_k{opts['--k']}"
    name += f"_l{opts['--l']}"
    if "--dk" in opts:
        name += f"_dk{opts['--dk']}_dl{opts['--dl']}"
    if args[0] == "bias":
        name = "bias_" + name
    return name + ".json"


def main() -> int:
    os.makedirs(EXPORTS, exist_ok=True)
    rng = np.random.default_rng(20240817)
    cases = []
    for gen_args, bias_args, n_cases in CASE_PLAN:
        export_file = _export_name(gen_args)
        _run_cli(gen_args, export_file)
        bias_file = None
        if bias_args is not None:
            bias_file = _export_name(bias_args)
            _run_cli(bias_args, bias_file)
        s = load_spanning_set(os.path.join(EXPORTS, export_file))
        b = load_spanning_set(os.path.join(EXPORTS, bias_file)) if bias_file else None
        for c in range(n_cases):
            lam = rng.standard_normal(len(s))
            use_bias = b is not None and c % 3 != 0
            bias_lam = rng.standard_normal(len(b)) if use_bias else None
            activation = ACTIVATION_CYCLE[c % len(ACTIVATION_CYCLE)]
            x = rng.standard_normal(s.in_dim)
            spec = LayerSpec(spanning_set=s, weights=lam,
                             bias_set=b if use_bias else None,
                             bias_weights=bias_lam, activation=activation)
            y = forward([spec], x)
            cases.append({
                "export": f"exports/{export_file}",
                "bias_export": f"exports/{bias_file}" if use_bias else None,
                "lam": lam.tolist(),
                "bias_lam": bias_lam.tolist() if bias_lam is not None else None,
                "activation": activation,
                "x": x.tolist(),
                "y": y.tolist(),
            })
    out_path = os.path.join(FIXTURES, "parity_cases.json")
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(cases, fh, indent=1)
        fh.write("\n")
    print(f"{len(cases)} parity cases -> {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
