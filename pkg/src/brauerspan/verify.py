"""Numerical verification: equivariance residuals, span ranks, dimension oracle.

The oracle is independent of the diagram constructions: it characterises an
equivariant map C by the exact linear constraints

    drho_l(X) C - C drho_k(X) = 0   for every Lie-algebra generator X,
    rho_l(r) C - C rho_k(r) = 0     for the reflection representative r
                                    (O(n) only, which is disconnected),

where drho_k(X) = sum_i I x ... x X x ... x I, and returns the null-space
dimension of the stacked constraint system by singular-value rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .groups import component_reps, lie_basis, sample, tensor_power_block_apply
from .layers import SpanningSet, spanning_set

DEFAULT_TOLERANCES = {"O": 1e-9, "SO": 1e-9, "Sp": 1e-7}
PROBES_PER_TRIAL = 8
ORACLE_MAX_DIM = 4096


class OracleSizeError(ValueError):
    """The requested Hom-space exceeds the dense-linear-algebra guard."""


class DimensionMismatchError(RuntimeError):
    """A span rank disagreed with the oracle or a basis-regime count."""


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    trials: int
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


@dataclass(frozen=True)
class DimensionReport:
    group: str
    n: int
    k: int
    l: int
    span_count: int
    span_rank: int
    oracle_dim: int
    basis_regime: bool

    @property
    def consistent(self) -> bool:
        ok = self.span_rank == self.oracle_dim
        if self.basis_regime:
            ok = ok and self.span_rank == self.span_count
        return ok


def default_tolerance(groups) -> float:
    if isinstance(groups, str):
        groups = (groups,)
    return max(DEFAULT_TOLERANCES[g] for g in groups)


def _apply_block_diag(gs, orders, X, feature_dim):
    """Apply g_r^(tensor orders_r) per factor (identity on features) to columns of X."""
    dims = [g.shape[0] ** o for g, o in zip(gs, orders)]
    m = X.shape[1]
    V = X.reshape(tuple(dims) + (feature_dim * m,))
    for r, (g, o) in enumerate(zip(gs, orders)):
        if o == 0:
            continue
        moved = np.moveaxis(V, r, 0)
        rest_shape = moved.shape[1:]
        flat = moved.reshape(dims[r], -1)
        flat = tensor_power_block_apply(g, o, flat)
        V = np.moveaxis(flat.reshape((dims[r],) + rest_shape), 0, r)
    return V.reshape(-1, m)


def check_equivariance_product(C: np.ndarray,
                               factors: Sequence[tuple[str, int, int, int]],
                               d_k: int = 1, d_l: int = 1,
                               trials: int = 20, tol: float | None = None,
                               seed: int = 0, subject: str = "") -> VerificationReport:
    """Residual of rho_out(g) C - C rho_in(g) on random probes, product groups."""
    C = np.asarray(C, dtype=float)
    in_dim = int(np.prod([n ** k for _, n, k, _ in factors])) * d_k
    out_dim = int(np.prod([n ** l for _, n, _, l in factors])) * d_l
    if C.shape != (out_dim, in_dim):
        raise ValueError(f"C has shape {C.shape}, expected ({out_dim}, {in_dim})")
    if tol is None:
        tol = default_tolerance([f[0] for f in factors])
    rng = np.random.default_rng(seed)
    scale = np.max(np.abs(C)) if C.size and np.any(C) else 1.0
    ks = [k for _, _, k, _ in factors]
    ls = [l for _, _, _, l in factors]
    max_residual = 0.0
    for _ in range(trials):
        gs = [sample(group, n, rng).mat for group, n, _, _ in factors]
        probes = rng.standard_normal((in_dim, PROBES_PER_TRIAL))
        lhs = _apply_block_diag(gs, ls, C @ probes, d_l)
        rhs = C @ _apply_block_diag(gs, ks, probes, d_k)
        residual = np.max(np.abs(lhs - rhs)) / scale
        max_residual = max(max_residual, float(residual))
    return VerificationReport(subject=subject, trials=trials,
                              max_residual=max_residual, tolerance=tol)


def check_equivariance(C: np.ndarray, group: str, n: int, k: int, l: int,
                       trials: int = 20, tol: float | None = None,
                       seed: int = 0, subject: str = "") -> VerificationReport:
    """Residual of rho_l(g) C - C rho_k(g) over sampled g and random probes."""
    return check_equivariance_product(C, [(group, n, k, l)], trials=trials,
                                      tol=tol, seed=seed, subject=subject)


def _element_matrix(s: SpanningSet) -> np.ndarray:
    """Flattened elements as columns of a dense float matrix."""
    dim = s.out_dim * s.in_dim
    M = np.zeros((dim, len(s)))
    for j, e in enumerate(s.elements):
        flat = (e.rows - 1) * s.in_dim + (e.cols - 1)
        np.add.at(M[:, j], flat, e.vals.astype(float))
    return M


def span_rank(s: SpanningSet, tol_policy: str = "svd") -> int:
    """Numerical rank of the element span.

    ``tol_policy="svd"`` thresholds singular values at max_dim * eps * sigma_max;
    ``tol_policy="exact"`` runs fraction-free integer elimination instead.
    """
    if len(s) == 0:
        return 0
    if tol_policy == "exact":
        return exact_integer_rank(s)
    if tol_policy != "svd":
        raise ValueError(f"unknown tol_policy {tol_policy!r}")
    M = _element_matrix(s)
    sigma = np.linalg.svd(M, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    threshold = max(M.shape) * np.finfo(float).eps * sigma[0]
    return int(np.sum(sigma > threshold))


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Rank by fraction-free (exact integer) Gaussian elimination."""
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivot_val = rows[r][c]
        for i in range(r + 1, nrows):
            row_i, row_r = rows[i], rows[r]
            f = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (pivot_val * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot_val
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def exact_integer_rank(s: SpanningSet) -> int:
    """Exact rank of the integer element span (cross-check for span_rank)."""
    in_dim = s.in_dim
    rows = []
    for e in s.elements:
        row = [0] * (s.out_dim * in_dim)
        for rr, cc, vv in zip(e.rows, e.cols, e.vals):
            row[(int(rr) - 1) * in_dim + (int(cc) - 1)] += int(vv)
        rows.append(row)
    return _bareiss_rank(rows)


def _drho(X: np.ndarray, k: int) -> sp.csr_matrix:
    """Derivative of the k-th tensor power: sum_i I x .. x X x .. x I (sparse)."""
    n = X.shape[0]
    Xs = sp.csr_matrix(X)
    out = sp.csr_matrix((n ** k, n ** k)) if k > 0 else sp.csr_matrix((1, 1))
    for i in range(k):
        term = sp.kron(sp.identity(n ** i, format="csr"), Xs, format="csr")
        term = sp.kron(term, sp.identity(n ** (k - i - 1), format="csr"), format="csr")
        out = out + term
    return out


def _rho_power(g: np.ndarray, k: int) -> sp.csr_matrix:
    gs = sp.csr_matrix(g)
    out = sp.identity(1, format="csr")
    for _ in range(k):
        out = sp.kron(out, gs, format="csr")
    return sp.csr_matrix(out)


def oracle_dimension(group: str, n: int, k: int, l: int,
                     max_dim: int = ORACLE_MAX_DIM) -> int:
    """Dimension of the equivariant Hom-space from the exact constraint system."""
    D = n ** (l + k)
    if D > max_dim:
        raise OracleSizeError(f"n^(l+k) = {D} exceeds guard {max_dim}")
    constraint_pairs = [(_drho(X.mat, l), _drho(X.mat, k)) for X in lie_basis(group, n)]
    constraint_pairs += [(_rho_power(r.mat, l), _rho_power(r.mat, k))
                         for r in component_reps(group, n)]
    Il = sp.identity(n ** l, format="csr")
    Ik = sp.identity(n ** k, format="csr")
    A = sp.csr_matrix((D, D))
    for P, Q in constraint_pairs:
        # Gram of K = P x I - I x Q^T acting on the row-major vec of C
        A = A + sp.kron(P.T @ P, Ik) - sp.kron(P.T, Q.T) - sp.kron(P, Q) \
            + sp.kron(Il, Q @ Q.T)
    eigenvalues = np.linalg.eigvalsh(np.asarray(A.todense()))
    lam_max = max(float(eigenvalues[-1]), 1.0) if eigenvalues.size else 1.0
    threshold = D * np.finfo(float).eps * lam_max
    return int(np.sum(eigenvalues <= threshold))


def basis_regime(group: str, n: int, k: int, l: int) -> bool:
    """Whether the generated set is guaranteed linearly independent."""
    if group == "O":
        return 2 * n >= l + k
    if group == "Sp":
        return n >= l + k
    return False  # no independence guarantee is claimed for SO(n)


def dims_table(grid: Iterable[tuple[str, int, int, int]],
               strict: bool = True) -> list[DimensionReport]:
    """One DimensionReport per grid entry; optionally assert consistency."""
    reports = []
    for group, n, k, l in grid:
        s = spanning_set(group, n, k, l)
        rank = span_rank(s)
        oracle = oracle_dimension(group, n, k, l)
        reports.append(DimensionReport(group=group, n=n, k=k, l=l,
                                       span_count=len(s), span_rank=rank,
                                       oracle_dim=oracle,
                                       basis_regime=basis_regime(group, n, k, l)))
    if strict:
        bad = [r for r in reports if not r.consistent]
        if bad:
            raise DimensionMismatchError(
                "; ".join(f"{r.group} n={r.n} k={r.k} l={r.l}: "
                          f"count={r.span_count} rank={r.span_rank} oracle={r.oracle_dim}"
                          for r in bad))
    return reports


def report_to_dict(report) -> dict:
    """JSON-ready rendering for CI consumption."""
    if isinstance(report, VerificationReport):
        return {"subject": report.subject, "trials": report.trials,
                "max_residual": report.max_residual,
                "tolerance": report.tolerance, "passed": report.passed}
    return {"group": report.group, "n": report.n, "k": report.k, "l": report.l,
            "span_count": report.span_count, "span_rank": report.span_rank,
            "oracle_dim": report.oracle_dim, "basis_regime": report.basis_regime,
            "consistent": report.consistent}
