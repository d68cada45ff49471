"""Elements and Lie generators of O(n), SO(n), Sp(n), plus tensor-power actions.

Conventions: the symplectic form matrix Omega is block diagonal with 2x2
blocks [[0, 1], [-1, 0]], matching the ordered symplectic basis in which the
label a sits at ordinal 2a-1 and a' at 2a.

Sp(n, R) is non-compact and carries no Haar probability measure; its sampler
draws scaled Lie-algebra elements and exponentiates, which is all the
numerical verification needs (generic elements, not a distribution).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

GROUPS = ("O", "SO", "Sp")

ORTHOGONALITY_TOL = 1e-12
DETERMINANT_TOL = 1e-10
SYMPLECTIC_TOL = 1e-8


def omega(n: int) -> np.ndarray:
    """Symplectic form matrix: block diagonal [[0, 1], [-1, 0]]."""
    if n < 2 or n % 2 != 0:
        raise ValueError("omega needs even n >= 2")
    J = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((n, n))
    for i in range(0, n, 2):
        out[i:i + 2, i:i + 2] = J
    return out


def _check_group_tag(group: str):
    if group not in GROUPS:
        raise ValueError(f"unknown group tag {group!r}, expected one of {GROUPS}")


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An n x n matrix known to preserve the group's bilinear form."""

    group: str
    n: int
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_group_tag(self.group)
        g = np.asarray(self.mat, dtype=float)
        if g.shape != (self.n, self.n):
            raise ValueError(f"matrix shape {g.shape} != ({self.n}, {self.n})")
        object.__setattr__(self, "mat", g)
        if self.group in ("O", "SO"):
            defect = np.max(np.abs(g.T @ g - np.eye(self.n)))
            if defect > ORTHOGONALITY_TOL:
                raise ValueError(f"not orthogonal: |g^T g - I| = {defect:.3e}")
            if self.group == "SO":
                det = np.linalg.det(g)
                if abs(det - 1.0) > DETERMINANT_TOL:
                    raise ValueError(f"det(g) = {det} != 1")
        else:
            if self.n % 2 != 0:
                raise ValueError("Sp(n) needs even n")
            Om = omega(self.n)
            defect = np.max(np.abs(g.T @ Om @ g - Om))
            if defect > SYMPLECTIC_TOL:
                raise ValueError(f"not symplectic: |g^T Om g - Om| = {defect:.3e}")


@dataclass(frozen=True, eq=False)
class LieGenerator:
    """An n x n matrix in the Lie algebra of the tagged group (exact integers)."""

    group: str
    n: int
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_group_tag(self.group)
        X = np.asarray(self.mat, dtype=float)
        object.__setattr__(self, "mat", X)
        if self.group in ("O", "SO"):
            if np.any(X + X.T != 0.0):
                raise ValueError("orthogonal generator must be antisymmetric")
        else:
            Om = omega(self.n)
            if np.any(X.T @ Om + Om @ X != 0.0):
                raise ValueError("symplectic generator must satisfy X^T Om + Om X = 0")


def sample(group: str, n: int, rng_seed) -> GroupElement:
    """Draw a test element: Haar for O/SO, scaled exponential for Sp."""
    _check_group_tag(group)
    if n < 1:
        raise ValueError("n must be positive")
    if group == "Sp" and n % 2 != 0:
        raise ValueError("Sp(n) needs even n")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    if group in ("O", "SO"):
        z = rng.standard_normal((n, n))
        q, r = np.linalg.qr(z)
        signs = np.sign(np.diag(r))
        signs[signs == 0] = 1.0
        g = q * signs  # absorb the triangular factor's diagonal signs
        if group == "SO" and np.linalg.det(g) < 0:
            g = g.copy()
            g[:, 0] = -g[:, 0]
        return GroupElement(group=group, n=n, mat=g)
    S = rng.standard_normal((n, n))
    S = 0.1 * (S + S.T)  # mild scaling keeps exp(Om S) well conditioned
    g = expm(omega(n) @ S)
    return GroupElement(group="Sp", n=n, mat=g)


def lie_basis(group: str, n: int) -> list[LieGenerator]:
    """Elementary generators: antisymmetric E_ab - E_ba, or Om S for symmetric S."""
    _check_group_tag(group)
    if group == "Sp" and n % 2 != 0:
        raise ValueError("Sp(n) needs even n")
    out = []
    if group in ("O", "SO"):
        for a in range(n):
            for b in range(a + 1, n):
                X = np.zeros((n, n))
                X[a, b] = 1.0
                X[b, a] = -1.0
                out.append(LieGenerator(group=group, n=n, mat=X))
        return out
    Om = omega(n)
    for a in range(n):
        S = np.zeros((n, n))
        S[a, a] = 1.0
        out.append(LieGenerator(group="Sp", n=n, mat=Om @ S))
    for a in range(n):
        for b in range(a + 1, n):
            S = np.zeros((n, n))
            S[a, b] = 1.0
            S[b, a] = 1.0
            out.append(LieGenerator(group="Sp", n=n, mat=Om @ S))
    return out


def component_reps(group: str, n: int) -> list[GroupElement]:
    """Representatives of non-identity connected components (O(n) only)."""
    _check_group_tag(group)
    if group != "O":
        return []
    r = np.eye(n)
    r[0, 0] = -1.0
    return [GroupElement(group="O", n=n, mat=r)]


def tensor_power_block_apply(g: np.ndarray, k: int, X: np.ndarray) -> np.ndarray:
    """Apply g^(tensor k) to each column of X (shape n^k x m) without forming it."""
    g = np.asarray(g, dtype=float)
    n = g.shape[0]
    X = np.asarray(X, dtype=float)
    if X.shape[0] != n ** k:
        raise ValueError(f"leading dimension {X.shape[0]} != {n}^{k}")
    if k == 0:
        return X.copy()
    V = X.reshape((n,) * k + (-1,))
    for _ in range(k):
        V = np.tensordot(g, V, axes=(1, 0))
        V = np.moveaxis(V, 0, k - 1)
    return V.reshape(n ** k, -1)


def tensor_power_apply(g: np.ndarray, k: int, x: np.ndarray) -> np.ndarray:
    """Apply g along each of the k tensor modes of x; cost O(k n^(k+1))."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("x must be a flat vector")
    return tensor_power_block_apply(g, k, x[:, None])[:, 0]
