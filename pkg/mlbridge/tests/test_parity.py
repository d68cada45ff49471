"""Parity against reference outputs computed by the primary implementation."""

import json
from pathlib import Path

import numpy as np
import torch

from mlbridge import EquivariantLayerHandle, load

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def _load_cases():
    with open(FIXTURES / "parity_cases.json", "r", encoding="utf-8") as fh:
        return json.load(fh)


def test_fixture_count():
    assert len(_load_cases()) == 50


def test_forward_parity_within_1e6():
    cases = _load_cases()
    assert len(cases) == 50
    handles = {}
    for case in cases:
        key = (case["export"], case["bias_export"], case["activation"])
        if key not in handles:
            spanning = load(FIXTURES / case["export"])
            bias = load(FIXTURES / case["bias_export"]) if case["bias_export"] else None
            handles[key] = EquivariantLayerHandle(spanning, bias=bias,
                                                  activation=case["activation"])
        handle = handles[key]
        with torch.no_grad():
            handle.weights.copy_(torch.tensor(case["lam"], dtype=torch.float64))
            if case["bias_lam"] is not None:
                handle.bias_weights.copy_(
                    torch.tensor(case["bias_lam"], dtype=torch.float64))
        x = torch.tensor(case["x"], dtype=torch.float64)
        y = handle(x).detach().numpy()
        y_ref = np.asarray(case["y"])
        assert np.max(np.abs(y - y_ref)) <= 1e-6, case["export"]


def test_parity_covers_all_exports_and_activations():
    cases = _load_cases()
    exports = {c["export"] for c in cases}
    assert len(exports) >= 4
    assert {c["activation"] for c in cases} == {"identity", "relu", "tanh"}
    assert any(c["bias_export"] for c in cases)
