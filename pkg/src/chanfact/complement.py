"""Complementary channels and the kernel of their adjoint.

For a channel with Kraus operators {K_i}_{i=1..p}, the complementary channel
sends X to the p x p matrix with (a, b) entry Tr(K_b* K_a X); its adjoint
sends Y to sum_ij y_ij K_i* K_j. The kernel of that adjoint drives the
extremality test and the LMI system built in :mod:`chanfact.lmi`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import KrausChannel, channel_checks
from .errors import DimensionMismatch, NotTracePreserving
from .linalg import DEFAULT_TOL, Tolerance, kernel_basis, rank_tol, unvec, vec


@dataclass
class ComplementData:
    """Materialized adjoint of the complementary channel.

    ``adjoint_operator_matrix`` is n^2 x p^2 with columns vec(K_i* K_j) in
    lexicographic (i, j) order; ``kernel_dim`` is p^2 minus its rank.
    """

    source: KrausChannel
    adjoint_operator_matrix: np.ndarray = field(repr=False)
    kernel_dim: int


def complement_data(k: KrausChannel, tol: Tolerance = DEFAULT_TOL) -> ComplementData:
    """Build the operator matrix of the complement adjoint and its kernel size."""
    p = k.num_kraus
    cols = []
    for i in range(p):
        left = k.operators[i].conj().T
        for j in range(p):
            cols.append(vec(left @ k.operators[j]))
    mat = np.column_stack(cols)
    d = p * p - rank_tol(mat, tol)
    return ComplementData(k, mat, d)


def apply_complement(k: KrausChannel, x: np.ndarray) -> np.ndarray:
    """Complementary channel: (a, b) entry Tr(K_b* K_a X) for n x n input X."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (k.dim_in, k.dim_in):
        raise DimensionMismatch(f"input must be {k.dim_in}x{k.dim_in}, got {x.shape}")
    p = k.num_kraus
    kx = [op @ x for op in k.operators]
    out = np.empty((p, p), dtype=complex)
    for a in range(p):
        for b in range(p):
            out[a, b] = np.vdot(k.operators[b], kx[a])
    return out


def apply_complement_adjoint(k: KrausChannel, y: np.ndarray) -> np.ndarray:
    """Adjoint of the complement: sum_ij y_ij K_i* K_j for p x p input Y."""
    y = np.asarray(y, dtype=complex)
    p = k.num_kraus
    if y.shape != (p, p):
        raise DimensionMismatch(f"input must be {p}x{p}, got {y.shape}")
    out = np.zeros((k.dim_in, k.dim_in), dtype=complex)
    for i in range(p):
        left = k.operators[i].conj().T
        for j in range(p):
            if y[i, j] != 0:
                out += y[i, j] * (left @ k.operators[j])
    return out


def _real_vector(h: np.ndarray) -> np.ndarray:
    return np.concatenate([h.real.ravel(), h.imag.ravel()])


def _real_rank(columns: list[np.ndarray], tol: Tolerance) -> int:
    if not columns:
        return 0
    s = np.linalg.svd(np.column_stack(columns), compute_uv=False)
    if s.size == 0 or s[0] <= 0.0:
        return 0
    return int(np.sum(s > tol.rel_rank_tol * s[0]))


def selfadjoint_kernel_basis(
    k: KrausChannel, tol: Tolerance = DEFAULT_TOL
) -> list[np.ndarray]:
    """Hermitian basis of the kernel of the complement adjoint.

    Starting from a complex orthonormal kernel basis {B}, the candidates
    (B + B*)/2 and (B - B*)/(2i) are filtered by a greedy real-linear rank
    test and then orthonormalized in the Hilbert-Schmidt inner product. The
    kernel is closed under adjoints, so the result has kernel_dim elements.
    Requires a trace-preserving channel.
    """
    if not channel_checks(k, tol).trace_preserving:
        raise NotTracePreserving("kernel basis requires a trace-preserving channel")
    data = complement_data(k, tol)
    p = k.num_kraus
    raw = kernel_basis(data.adjoint_operator_matrix, tol)
    candidates = []
    for c in raw:
        y = c.reshape(p, p)
        candidates.append((y + y.conj().T) / 2.0)
        candidates.append((y - y.conj().T) / 2.0j)
    selected: list[np.ndarray] = []
    vectors: list[np.ndarray] = []
    for cand in candidates:
        if np.linalg.norm(cand) <= tol.abs_tol:
            continue
        rv = _real_vector(cand)
        if _real_rank(vectors + [rv], tol) > len(vectors):
            selected.append(cand)
            vectors.append(rv)
    if not selected:
        return []
    q, r = np.linalg.qr(np.column_stack(vectors))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    q = q * signs
    half = p * p
    basis = []
    for j in range(q.shape[1]):
        h = q[:half, j].reshape(p, p) + 1j * q[half:, j].reshape(p, p)
        basis.append((h + h.conj().T) / 2.0)
    return basis


def complement_range_basis(
    k: KrausChannel, tol: Tolerance = DEFAULT_TOL
) -> list[np.ndarray]:
    """HS-orthonormal basis of span{Phi^C(E_ab)} inside M_p.

    Together with :func:`selfadjoint_kernel_basis` this decomposes M_p: the
    dimensions add up to p^2.
    """
    n, p = k.dim_in, k.num_kraus
    cols = []
    for a in range(n):
        for b in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[a, b] = 1.0
            cols.append(vec(apply_complement(k, e)))
    mat = np.column_stack(cols)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    smax = float(s[0]) if s.size else 0.0
    r = int(np.sum(s > tol.rel_rank_tol * smax)) if smax > 0.0 else 0
    basis = []
    for j in range(r):
        col = np.array(u[:, j])
        idx = np.flatnonzero(np.abs(col) > tol.rel_rank_tol)
        if idx.size:
            phase = col[idx[0]]
            col = col * (phase.conjugate() / abs(phase))
        basis.append(unvec(col, p, p))
    return basis


def is_extreme_channel(k: KrausChannel, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Extreme point test: the complement adjoint is injective on M_p.

    Tests the Kraus family as given; a linearly dependent family always
    reports False, so pass a minimal (Choi-derived) family to test the map
    itself. Requires a trace-preserving channel.
    """
    if not channel_checks(k, tol).trace_preserving:
        raise NotTracePreserving("extremality test requires a trace-preserving channel")
    return complement_data(k, tol).kernel_dim == 0
