"""Sparse integer matrices attached to pairing diagrams.

Each diagram maps to a matrix on flattened tensor multi-indices:

* ``build_E`` (orthogonal case): entry (I, J) is 1 iff every block of the
  diagram connects two vertices carrying equal index values.
* ``build_F`` (symplectic case): cross-row blocks contribute a Kronecker
  delta, same-row blocks contribute the skew symbol ``epsilon`` with the
  smaller vertex label taken first.
* ``build_H`` (special-orthogonal extras): free vertices carry the sign
  ``chi`` of the permutation formed by their index values, matched vertices
  contribute deltas as in ``build_E``.

Construction iterates one value per block (plus one permutation over the free
vertices for ``build_H``) and never materialises the full [n]^(l+k) index
grid. Entries are exact signed integers; row/column indices are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Sequence

import numpy as np

from .diagrams import BrauerDiagram, Diagram, GroodDiagram


def flatten_index(tup: Sequence[int], n: int) -> int:
    """1-based lexicographic flattening, first component most significant."""
    idx = 0
    for t, component in enumerate(tup):
        if not 1 <= component <= n:
            raise ValueError(f"component {component} out of range [1, {n}]")
        idx = idx * n + (component - 1)
    return idx + 1


def unflatten_index(idx: int, n: int, length: int) -> tuple[int, ...]:
    """Inverse of ``flatten_index``."""
    if not 1 <= idx <= n ** length:
        raise ValueError(f"index {idx} out of range [1, {n ** length}]")
    rem = idx - 1
    out = []
    for _ in range(length):
        rem, r = divmod(rem, n)
        out.append(r + 1)
    return tuple(reversed(out))


@dataclass(frozen=True)
class SymplecticIndex:
    """A symplectic basis label a or a' with its ordinal 2a-1 or 2a in [n]."""

    label: str
    ordinal: int

    @classmethod
    def from_label(cls, label: str) -> "SymplecticIndex":
        if label.endswith("'"):
            a = int(label[:-1])
            return cls(label=label, ordinal=2 * a)
        a = int(label)
        return cls(label=label, ordinal=2 * a - 1)

    @classmethod
    def from_ordinal(cls, ordinal: int) -> "SymplecticIndex":
        if ordinal < 1:
            raise ValueError("ordinal must be positive")
        a = (ordinal + 1) // 2
        label = f"{a}'" if ordinal % 2 == 0 else str(a)
        return cls(label=label, ordinal=ordinal)

    @property
    def primed(self) -> bool:
        return self.ordinal % 2 == 0


def _epsilon_ordinals(p: int, q: int) -> int:
    # epsilon on ordinals: pairs (2a-1, 2a) -> +1, (2a, 2a-1) -> -1, else 0.
    if (p + 1) // 2 != (q + 1) // 2:
        return 0
    if p % 2 == 1 and q % 2 == 0:
        return 1
    if p % 2 == 0 and q % 2 == 1:
        return -1
    return 0


def epsilon(i: SymplecticIndex | int, j: SymplecticIndex | int) -> int:
    """Skew-form symbol: epsilon(a, b') = -epsilon(a', b) = delta(a, b), else 0."""
    p = i.ordinal if isinstance(i, SymplecticIndex) else i
    q = j.ordinal if isinstance(j, SymplecticIndex) else j
    return _epsilon_ordinals(p, q)


def chi(assignment: Sequence[int]) -> int:
    """Sign of the permutation of [n] given by the values, 0 if not distinct."""
    n = len(assignment)
    if sorted(assignment) != list(range(1, n + 1)):
        return 0
    seen = [False] * n
    sign = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = assignment[v] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class SparseEquivariantMatrix:
    """COO matrix of shape n^l x n^k with entries in {-1, +1}, 1-based indices."""

    n: int
    k: int
    l: int
    kind: str  # "E", "F", or "H"
    source: Diagram
    rows: np.ndarray = field(repr=False)
    cols: np.ndarray = field(repr=False)
    vals: np.ndarray = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n ** self.l, self.n ** self.k)

    @property
    def nnz(self) -> int:
        return len(self.vals)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        out[self.rows - 1, self.cols - 1] = self.vals
        return out


def _entry_from_vertex_values(value_of: dict[int, int], k: int, l: int, n: int) -> tuple[int, int]:
    top = tuple(value_of[t] for t in range(1, l + 1))
    bottom = tuple(value_of[l + r] for r in range(1, k + 1))
    return flatten_index(top, n), flatten_index(bottom, n)


def _as_coo(entries: list[tuple[int, int, int]]):
    rows = np.array([e[0] for e in entries], dtype=np.int64)
    cols = np.array([e[1] for e in entries], dtype=np.int64)
    vals = np.array([e[2] for e in entries], dtype=np.int64)
    return rows, cols, vals


def build_E(d: BrauerDiagram, n: int) -> SparseEquivariantMatrix:
    """Delta-product matrix of a Brauer diagram: one free value per block."""
    if n < 1:
        raise ValueError("n must be positive")
    entries = []
    nblocks = len(d.blocks)
    for values in product(range(1, n + 1), repeat=nblocks):
        value_of = {}
        for (a, b), v in zip(d.blocks, values):
            value_of[a] = v
            value_of[b] = v
        row, col = _entry_from_vertex_values(value_of, d.k, d.l, n)
        entries.append((row, col, 1))
    rows, cols, vals = _as_coo(entries)
    return SparseEquivariantMatrix(n=n, k=d.k, l=d.l, kind="E", source=d,
                                   rows=rows, cols=cols, vals=vals)


def build_F(d: BrauerDiagram, n: int) -> SparseEquivariantMatrix:
    """Symplectic matrix of a Brauer diagram in the ordered symplectic basis.

    Cross-row blocks force equal ordinals (delta); same-row blocks range over
    the pairs (a, a') with sign +1 and (a', a) with sign -1, the smaller
    vertex label taking the first epsilon slot.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError("symplectic construction needs even n >= 2")
    m = n // 2
    per_block = []
    for a, b in d.blocks:
        if d.is_cross_row((a, b)):
            per_block.append([(v, v, 1) for v in range(1, n + 1)])
        else:
            choices = []
            for c in range(1, m + 1):
                choices.append((2 * c - 1, 2 * c, 1))   # (a, a') -> +1
                choices.append((2 * c, 2 * c - 1, -1))  # (a', a) -> -1
            per_block.append(choices)
    entries = []
    for combo in product(*per_block):
        value_of = {}
        sign = 1
        for (a, b), (va, vb, s) in zip(d.blocks, combo):
            value_of[a] = va
            value_of[b] = vb
            sign *= s
        row, col = _entry_from_vertex_values(value_of, d.k, d.l, n)
        entries.append((row, col, sign))
    rows, cols, vals = _as_coo(entries)
    return SparseEquivariantMatrix(n=n, k=d.k, l=d.l, kind="F", source=d,
                                   rows=rows, cols=cols, vals=vals)


def build_H(d: GroodDiagram, n: int) -> SparseEquivariantMatrix:
    """Sign-weighted matrix of an (l+k)\\n-diagram.

    Free vertices (top row left to right, then bottom row left to right) take
    the values of a permutation of [n], weighted by its sign; blocks
    contribute deltas exactly as in ``build_E``.
    """
    if n != d.n:
        raise ValueError(f"diagram has n={d.n}, requested n={n}")
    if n > d.l + d.k or (d.l + d.k - n) % 2 != 0:
        raise ValueError("free vertex count incompatible with l+k parity")
    free = d.free
    entries = []
    nblocks = len(d.blocks)
    for perm in permutations(range(1, n + 1)):
        sign = chi(perm)
        for values in product(range(1, n + 1), repeat=nblocks):
            value_of = dict(zip(free, perm))
            for (a, b), v in zip(d.blocks, values):
                value_of[a] = v
                value_of[b] = v
            row, col = _entry_from_vertex_values(value_of, d.k, d.l, n)
            entries.append((row, col, sign))
    rows, cols, vals = _as_coo(entries)
    return SparseEquivariantMatrix(n=n, k=d.k, l=d.l, kind="H", source=d,
                                   rows=rows, cols=cols, vals=vals)


def build_matrix(d: Diagram, n: int, group: str) -> SparseEquivariantMatrix:
    """Dispatch on diagram type and group tag."""
    if isinstance(d, GroodDiagram):
        return build_H(d, n)
    if group == "Sp":
        return build_F(d, n)
    return build_E(d, n)
