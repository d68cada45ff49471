"""Trainable equivariant linear layers over loaded spanning sets.

The layer map is linear in the weight vector: forward computes
(sum_i lam_i E_i) x + sum_j mu_j c_j followed by a pointwise activation,
with the E_i and c_j taken verbatim from export files.
"""

from __future__ import annotations

import numpy as np
import torch
from torch import nn

from .loader import LoadedSpanningSet

ACTIVATIONS = {
    "identity": lambda x: x,
    "relu": torch.relu,
    "tanh": torch.tanh,
}


class EquivariantLayerHandle(nn.Module):
    """A loaded spanning set with trainable weights, usable in autograd graphs."""

    def __init__(self, spanning: LoadedSpanningSet,
                 bias: LoadedSpanningSet | None = None,
                 activation: str = "identity",
                 dtype: torch.dtype = torch.float64):
        super().__init__()
        if activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {activation!r}")
        if bias is not None and bias.out_dim != spanning.out_dim:
            raise ValueError(
                f"bias output dimension {bias.out_dim} != layer output {spanning.out_dim}")
        self.spanning = spanning
        self.bias_set = bias
        self.activation = activation
        self.out_dim = spanning.out_dim
        self.in_dim = spanning.in_dim

        self.weights = nn.Parameter(torch.zeros(len(spanning), dtype=dtype))
        elem_ids, rows, cols, vals = [], [], [], []
        for i, e in enumerate(spanning.elements):
            elem_ids.append(np.full(e.nnz, i))
            rows.append(e.rows - 1)
            cols.append(e.cols - 1)
            vals.append(e.vals)
        self.register_buffer("_elem_ids", _cat_long(elem_ids))
        self.register_buffer("_rows", _cat_long(rows))
        self.register_buffer("_cols", _cat_long(cols))
        self.register_buffer("_vals", _cat_vals(vals, dtype))

        if bias is not None:
            self.bias_weights = nn.Parameter(torch.zeros(len(bias), dtype=dtype))
            bids, brows, bvals = [], [], []
            for i, e in enumerate(bias.elements):
                bids.append(np.full(e.nnz, i))
                brows.append(e.rows - 1)
                bvals.append(e.vals)
            self.register_buffer("_bias_ids", _cat_long(bids))
            self.register_buffer("_bias_rows", _cat_long(brows))
            self.register_buffer("_bias_vals", _cat_vals(bvals, dtype))
        else:
            self.bias_weights = None

    def assemble(self) -> torch.Tensor:
        """Dense weighted map (out_dim x in_dim); differentiable in the weights."""
        C = torch.zeros(self.out_dim, self.in_dim, dtype=self.weights.dtype,
                        device=self.weights.device)
        contrib = self._vals * self.weights[self._elem_ids]
        flat = self._rows * self.in_dim + self._cols
        return C.view(-1).index_add(0, flat, contrib).view(self.out_dim, self.in_dim)

    def assemble_bias(self) -> torch.Tensor | None:
        if self.bias_weights is None:
            return None
        b = torch.zeros(self.out_dim, dtype=self.weights.dtype,
                        device=self.weights.device)
        contrib = self._bias_vals * self.bias_weights[self._bias_ids]
        return b.index_add(0, self._bias_rows, contrib)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        single = x.dim() == 1
        if single:
            x = x.unsqueeze(0)
        if x.shape[-1] != self.in_dim:
            raise ValueError(f"input size {x.shape[-1]} != expected {self.in_dim}")
        x = x.to(self.weights.dtype)
        contrib = self._vals * self.weights[self._elem_ids]
        gathered = x[:, self._cols] * contrib  # (batch, nnz)
        y = torch.zeros(x.shape[0], self.out_dim, dtype=self.weights.dtype,
                        device=x.device)
        y = y.index_add(1, self._rows, gathered)
        b = self.assemble_bias()
        if b is not None:
            y = y + b
        y = ACTIVATIONS[self.activation](y)
        return y.squeeze(0) if single else y


def _cat_long(parts) -> torch.Tensor:
    if not parts:
        return torch.zeros(0, dtype=torch.long)
    return torch.from_numpy(np.concatenate(parts).astype(np.int64))


def _cat_vals(parts, dtype) -> torch.Tensor:
    if not parts:
        return torch.zeros(0, dtype=dtype)
    return torch.from_numpy(np.concatenate(parts).astype(np.float64)).to(dtype)


def layer_forward(handle: EquivariantLayerHandle, batch) -> torch.Tensor:
    """Functional wrapper over ``handle.forward`` for array-like inputs."""
    x = torch.as_tensor(np.asarray(batch, dtype=np.float64))
    return handle(x)
