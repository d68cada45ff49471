"""Spanning sets of equivariant linear maps, layer assembly, and the export format.

Element ordering contract (defines the public weight indexing):

* single-group sets: delta-product elements first, one per Brauer diagram in
  canonical order, then (SO only) sign-weighted elements, one per free-vertex
  diagram in canonical order;
* feature extension: base element outermost, then output feature index i in
  [d_l], then input feature index j in [d_k];
* local-symmetry sets: lexicographic over factor element indices, first
  factor most significant.

Export files are JSON with integer entries only::

    {
      "format_version": 1,
      "group": "O" | "SO" | "Sp" | [tags...],
      "n": 2 | [ns...],  "k": ..., "l": ...,
      "d_k": 1, "d_l": 1,
      "rows": <output dimension>, "cols": <input dimension>,
      "ordering": "<contract above, one line>",
      "elements": [
        {"diagram": "B 2 2 : (1,2)(3,4)", "kind": "E",
         "feature": [i, j],              # only when d_k*d_l > 1
         "entries": [[row, col, value], ...]},  # 1-based, sorted
        ...
      ]
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable, Sequence

import numpy as np

from .diagrams import enumerate_brauer, enumerate_grood
from .spanmat import SparseEquivariantMatrix, build_E, build_F, build_H

FORMAT_VERSION = 1

ORDERING_CONTRACT = (
    "E elements in canonical diagram order, then H elements in canonical "
    "(free set, blocks) order; features: base element, then i in [d_l], then "
    "j in [d_k]; local: lexicographic over factor element indices"
)

ACTIVATIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "identity": lambda x: x,
    "relu": lambda x: np.maximum(x, 0.0),
    "tanh": np.tanh,
}


@dataclass(frozen=True, eq=False)
class SpanElement:
    """One spanning element as a 1-based COO matrix with provenance."""

    shape: tuple[int, int]
    rows: np.ndarray = field(repr=False)
    cols: np.ndarray = field(repr=False)
    vals: np.ndarray = field(repr=False)
    kind: str
    provenance: str
    feature: tuple[int, int] | None = None

    @property
    def nnz(self) -> int:
        return len(self.vals)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        np.add.at(out, (self.rows - 1, self.cols - 1), self.vals)
        return out

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Sparse matrix-vector product."""
        out = np.zeros(self.shape[0], dtype=float)
        np.add.at(out, self.rows - 1, self.vals * x[self.cols - 1])
        return out

    def sorted_entries(self) -> list[list[int]]:
        order = np.lexsort((self.cols, self.rows))
        return [[int(self.rows[i]), int(self.cols[i]), int(self.vals[i])] for i in order]

    @classmethod
    def from_sparse(cls, m: SparseEquivariantMatrix) -> "SpanElement":
        return cls(shape=m.shape, rows=m.rows, cols=m.cols, vals=m.vals,
                   kind=m.kind, provenance=m.source.to_text())


@dataclass(frozen=True)
class SpanningSet:
    """Ordered spanning elements plus the metadata identifying the Hom-space.

    ``group``/``n``/``k``/``l`` are scalars for single-group sets and tuples
    (one entry per factor) for local-symmetry sets. Duplicate or linearly
    dependent elements are kept: the construction promises a spanning set,
    not a basis, and rank reporting belongs to the verifier.
    """

    group: str | tuple[str, ...]
    n: int | tuple[int, ...]
    k: int | tuple[int, ...]
    l: int | tuple[int, ...]
    d_k: int = 1
    d_l: int = 1
    elements: tuple[SpanElement, ...] = ()

    @property
    def is_local(self) -> bool:
        return isinstance(self.group, tuple)

    @property
    def factors(self) -> tuple[tuple[str, int, int, int], ...]:
        if self.is_local:
            return tuple(zip(self.group, self.n, self.k, self.l))
        return ((self.group, self.n, self.k, self.l),)

    @property
    def out_dim(self) -> int:
        dim = 1
        for _, n, _, l in self.factors:
            dim *= n ** l
        return dim * self.d_l

    @property
    def in_dim(self) -> int:
        dim = 1
        for _, n, k, _ in self.factors:
            dim *= n ** k
        return dim * self.d_k

    def __len__(self) -> int:
        return len(self.elements)


def _check_params(group: str, n: int, k: int, l: int):
    if group not in ("O", "SO", "Sp"):
        raise ValueError(f"unknown group tag {group!r}")
    if n < 1:
        raise ValueError("n must be positive")
    if group == "Sp" and n % 2 != 0:
        raise ValueError("Sp(n) needs even n")
    if k < 0 or l < 0:
        raise ValueError("k and l must be non-negative")


def spanning_set(group: str, n: int, k: int, l: int) -> SpanningSet:
    """All spanning elements for Hom((R^n)^k, (R^n)^l) under the given group."""
    _check_params(group, n, k, l)
    elements: list[SpanElement] = []
    if group == "Sp":
        for d in enumerate_brauer(k, l):
            elements.append(SpanElement.from_sparse(build_F(d, n)))
    else:
        for d in enumerate_brauer(k, l):
            elements.append(SpanElement.from_sparse(build_E(d, n)))
        if group == "SO" and n <= l + k and (l + k - n) % 2 == 0:
            for d in enumerate_grood(k, l, n):
                elements.append(SpanElement.from_sparse(build_H(d, n)))
    return SpanningSet(group=group, n=n, k=k, l=l, elements=tuple(elements))


def bias_set(group: str, n: int, l: int) -> SpanningSet:
    """Equivariant bias columns for an order-l output space (the k = 0 set)."""
    return spanning_set(group, n, 0, l)


def with_features(base: SpanningSet, d_k: int, d_l: int) -> SpanningSet:
    """Tensor each element with every d_l x d_k feature-space matrix unit.

    The group does not act on feature indices, so this takes the size from
    |base| to |base| * d_l * d_k without affecting equivariance. Index layout
    is tensor-major: row -> (row-1)*d_l + i, col -> (col-1)*d_k + j.
    """
    if d_k < 1 or d_l < 1:
        raise ValueError("feature dimensions must be positive")
    if base.d_k != 1 or base.d_l != 1:
        raise ValueError("base set already has features attached")
    if d_k == 1 and d_l == 1:
        return base
    elements = []
    for e in base.elements:
        R, C = e.shape
        for i in range(1, d_l + 1):
            for j in range(1, d_k + 1):
                elements.append(SpanElement(
                    shape=(R * d_l, C * d_k),
                    rows=(e.rows - 1) * d_l + i,
                    cols=(e.cols - 1) * d_k + j,
                    vals=e.vals.copy(),
                    kind=e.kind,
                    provenance=e.provenance,
                    feature=(i, j),
                ))
    return SpanningSet(group=base.group, n=base.n, k=base.k, l=base.l,
                       d_k=d_k, d_l=d_l, elements=tuple(elements))


def _kron_pair(a: SpanElement, b: SpanElement) -> SpanElement:
    Ra, Ca = a.shape
    Rb, Cb = b.shape
    rows = ((a.rows - 1)[:, None] * Rb + (b.rows - 1)[None, :]).ravel() + 1
    cols = ((a.cols - 1)[:, None] * Cb + (b.cols - 1)[None, :]).ravel() + 1
    vals = (a.vals[:, None] * b.vals[None, :]).ravel()
    return SpanElement(shape=(Ra * Rb, Ca * Cb), rows=rows, cols=cols, vals=vals,
                       kind=f"{a.kind}*{b.kind}",
                       provenance=f"{a.provenance} | {b.provenance}")


def local_spanning_set(factors: Sequence[tuple[str, int, int, int]]) -> SpanningSet:
    """Kronecker products of per-factor spanning elements, one per index tuple."""
    if not factors:
        raise ValueError("need at least one factor")
    sets = [spanning_set(*f) for f in factors]
    elements = []
    for combo in iproduct(*[s.elements for s in sets]):
        e = combo[0]
        for other in combo[1:]:
            e = _kron_pair(e, other)
        elements.append(e)
    return SpanningSet(
        group=tuple(s.group for s in sets),
        n=tuple(s.n for s in sets),
        k=tuple(s.k for s in sets),
        l=tuple(s.l for s in sets),
        elements=tuple(elements),
    )


@dataclass
class LayerSpec:
    """A weighted spanning set plus optional bias and a pointwise activation."""

    spanning_set: SpanningSet
    weights: np.ndarray
    bias_set: SpanningSet | None = None
    bias_weights: np.ndarray | None = None
    activation: str = "identity"

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        if self.weights.shape != (len(self.spanning_set),):
            raise ValueError(
                f"weight length {self.weights.shape} != element count {len(self.spanning_set)}")
        if self.bias_set is not None:
            if self.bias_weights is None:
                raise ValueError("bias_set given without bias_weights")
            self.bias_weights = np.asarray(self.bias_weights, dtype=float)
            if self.bias_weights.shape != (len(self.bias_set),):
                raise ValueError("bias weight length mismatch")
            if self.bias_set.out_dim != self.spanning_set.out_dim:
                raise ValueError("bias output dimension mismatch")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")


def assemble_layer(spec: LayerSpec) -> np.ndarray:
    """Dense weighted sum of the spanning elements."""
    s = spec.spanning_set
    out = np.zeros((s.out_dim, s.in_dim))
    for w, e in zip(spec.weights, s.elements):
        if w != 0.0:
            np.add.at(out, (e.rows - 1, e.cols - 1), w * e.vals)
    return out


def assemble_bias(spec: LayerSpec) -> np.ndarray | None:
    """Dense bias column, or None when the layer has no bias."""
    if spec.bias_set is None:
        return None
    out = np.zeros(spec.bias_set.out_dim)
    for w, e in zip(spec.bias_weights, spec.bias_set.elements):
        if w != 0.0:
            np.add.at(out, e.rows - 1, w * e.vals)
    return out


def forward(network: Sequence[LayerSpec], x: np.ndarray) -> np.ndarray:
    """Evaluate the layer stack: assembled map, bias, pointwise activation."""
    y = np.asarray(x, dtype=float)
    for spec in network:
        s = spec.spanning_set
        if y.shape != (s.in_dim,):
            raise ValueError(f"input shape {y.shape} != expected ({s.in_dim},)")
        C = assemble_layer(spec)
        y = C @ y
        b = assemble_bias(spec)
        if b is not None:
            y = y + b
        y = ACTIVATIONS[spec.activation](y)
    return y


def _meta_value(v):
    return list(v) if isinstance(v, tuple) else v


def to_json_dict(s: SpanningSet) -> dict:
    elements = []
    for e in s.elements:
        item = {"diagram": e.provenance, "kind": e.kind, "entries": e.sorted_entries()}
        if e.feature is not None:
            item["feature"] = [e.feature[0], e.feature[1]]
        elements.append(item)
    return {
        "format_version": FORMAT_VERSION,
        "group": _meta_value(s.group),
        "n": _meta_value(s.n),
        "k": _meta_value(s.k),
        "l": _meta_value(s.l),
        "d_k": s.d_k,
        "d_l": s.d_l,
        "rows": s.out_dim,
        "cols": s.in_dim,
        "ordering": ORDERING_CONTRACT,
        "elements": elements,
    }


def export_json(s: SpanningSet) -> str:
    """Deterministic JSON text for the spanning set (byte-stable)."""
    return json.dumps(to_json_dict(s), indent=1, sort_keys=True) + "\n"


def export_text(s: SpanningSet) -> str:
    """Human-readable rendering of the spanning set."""
    lines = [
        f"group={_meta_value(s.group)} n={_meta_value(s.n)} "
        f"k={_meta_value(s.k)} l={_meta_value(s.l)} d_k={s.d_k} d_l={s.d_l}",
        f"shape {s.out_dim} x {s.in_dim}, {len(s)} element(s)",
    ]
    for idx, e in enumerate(s.elements):
        feat = f" feature={e.feature}" if e.feature else ""
        lines.append(f"[{idx}] kind={e.kind}{feat} {e.provenance}")
        lines.append("    " + " ".join(f"({r},{c})={v}" for r, c, v in e.sorted_entries()))
    return "\n".join(lines) + "\n"


def _as_meta_tuple(v):
    return tuple(v) if isinstance(v, list) else v


def load_spanning_set(path) -> SpanningSet:
    """Load an exported JSON file back into a SpanningSet.

    Entries are taken verbatim from the file (1-based, exact integers); the
    diagram strings are carried as provenance only.
    """
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return spanning_set_from_dict(data)


def spanning_set_from_dict(data: dict) -> SpanningSet:
    if data.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {data.get('format_version')!r}")
    rows_dim, cols_dim = int(data["rows"]), int(data["cols"])
    d_k, d_l = int(data["d_k"]), int(data["d_l"])
    elements = []
    for item in data["elements"]:
        entries = item["entries"]
        rows = np.array([e[0] for e in entries], dtype=np.int64)
        cols = np.array([e[1] for e in entries], dtype=np.int64)
        vals = np.array([e[2] for e in entries], dtype=np.int64)
        if len(rows) and (rows.min() < 1 or rows.max() > rows_dim
                          or cols.min() < 1 or cols.max() > cols_dim):
            raise ValueError("entry index out of declared shape")
        feature = tuple(item["feature"]) if "feature" in item else None
        elements.append(SpanElement(shape=(rows_dim, cols_dim), rows=rows, cols=cols,
                                    vals=vals, kind=item["kind"],
                                    provenance=item["diagram"], feature=feature))
    s = SpanningSet(
        group=_as_meta_tuple(data["group"]),
        n=_as_meta_tuple(data["n"]),
        k=_as_meta_tuple(data["k"]),
        l=_as_meta_tuple(data["l"]),
        d_k=d_k, d_l=d_l, elements=tuple(elements),
    )
    if s.out_dim != rows_dim or s.in_dim != cols_dim:
        raise ValueError("declared shape inconsistent with group metadata")
    return s
