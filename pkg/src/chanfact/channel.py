"""Quantum channels in Kraus form, Choi matrices, and Stinespring dilations.

A channel Phi: M_n -> M_m is stored through its Kraus operators
Phi(X) = sum_i K_i X K_i*. The Choi matrix is assembled in the left-factor
major layout C = sum_ij E_ij (x) Phi(E_ij) with E_ij in M_n, so C equals
K @ K* where K has the column-stacked Kraus operators as columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    NotPSD,
    NotTracePreserving,
    NotUnitary,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    complete_isometry,
    frob,
    kron,
    psd_factor,
    unvec,
    vec,
)


@dataclass
class KrausChannel:
    """A channel given by one or more Kraus operators of a common shape."""

    operators: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        ops = tuple(np.asarray(op, dtype=complex) for op in self.operators)
        if len(ops) == 0:
            raise DimensionMismatch("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        if len(shape) != 2:
            raise DimensionMismatch("Kraus operators must be matrices")
        for op in ops:
            if op.shape != shape:
                raise DimensionMismatch("Kraus operators must share one shape")
        self.operators = ops

    @property
    def dim_in(self) -> int:
        return self.operators[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.operators[0].shape[0]

    @property
    def num_kraus(self) -> int:
        return len(self.operators)


@dataclass
class ChoiMatrix:
    """Choi matrix of a map M_n -> M_m, an (n*m) x (n*m) matrix."""

    dim_in: int
    dim_out: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.matrix = np.asarray(self.matrix, dtype=complex)
        size = self.dim_in * self.dim_out
        if self.matrix.shape != (size, size):
            raise DimensionMismatch(
                f"Choi matrix must be {size}x{size}, got {self.matrix.shape}"
            )


@dataclass(frozen=True)
class ChannelChecks:
    trace_preserving: bool
    unital: bool
    completely_positive: bool


def choi_from_kraus(k: KrausChannel) -> ChoiMatrix:
    """Choi matrix sum_ij E_ij (x) Phi(E_ij) of a Kraus-form channel."""
    kmat = np.column_stack([vec(op) for op in k.operators])
    return ChoiMatrix(k.dim_in, k.dim_out, kmat @ kmat.conj().T)


def kraus_from_choi(c: ChoiMatrix, tol: Tolerance = DEFAULT_TOL) -> KrausChannel:
    """Recover a canonical Kraus family from a PSD Choi matrix.

    The operators are the scaled eigenvectors of the Choi matrix, so the
    family is minimal (one operator per nonzero eigenvalue) and deterministic.
    Raises NotPSD when the matrix is not positive semidefinite, which signals
    that the map is not completely positive.
    """
    b = psd_factor(c.matrix, tol)
    m, n = c.dim_out, c.dim_in
    if b.shape[0] == 0:
        return KrausChannel((np.zeros((m, n), dtype=complex),))
    ops = tuple(unvec(b[i].conj(), m, n) for i in range(b.shape[0]))
    return KrausChannel(ops)


def apply_channel(k: KrausChannel, x: np.ndarray) -> np.ndarray:
    """Evaluate sum_i K_i X K_i* on an n x n input."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (k.dim_in, k.dim_in):
        raise DimensionMismatch(f"input must be {k.dim_in}x{k.dim_in}, got {x.shape}")
    out = np.zeros((k.dim_out, k.dim_out), dtype=complex)
    for op in k.operators:
        out += op @ x @ op.conj().T
    return out


def apply_adjoint(k: KrausChannel, y: np.ndarray) -> np.ndarray:
    """Evaluate the Hilbert-Schmidt adjoint sum_i K_i* Y K_i on an m x m input."""
    y = np.asarray(y, dtype=complex)
    if y.shape != (k.dim_out, k.dim_out):
        raise DimensionMismatch(f"input must be {k.dim_out}x{k.dim_out}, got {y.shape}")
    out = np.zeros((k.dim_in, k.dim_in), dtype=complex)
    for op in k.operators:
        out += op.conj().T @ y @ op
    return out


def channel_checks(k: KrausChannel, tol: Tolerance = DEFAULT_TOL) -> ChannelChecks:
    """Report trace preservation, unitality, and complete positivity.

    Complete positivity is true by construction for Kraus form; the field is
    reported so Choi-derived channels carry the full record.
    """
    n, m = k.dim_in, k.dim_out
    s_in = sum(op.conj().T @ op for op in k.operators)
    s_out = sum(op @ op.conj().T for op in k.operators)
    tp = frob(s_in - np.eye(n)) <= tol.abs_tol * np.sqrt(n)
    unital = frob(s_out - np.eye(m)) <= tol.abs_tol * np.sqrt(m)
    return ChannelChecks(bool(tp), bool(unital), True)


def stinespring_dilation(
    k: KrausChannel, tol: Tolerance = DEFAULT_TOL
) -> tuple[np.ndarray, int]:
    """Dilate a trace-preserving channel to a unitary on C^m (x) C^p.

    Returns ``(u, p)`` where ``p`` is the Kraus count and ``u`` is an
    (m*p) x (m*p) unitary, in the system-major layout, satisfying
    (id (x) Tr)(u (X (x) E_11) u*) = Phi(X) for n x n inputs X embedded in
    the top-left corner of M_m.
    """
    if not channel_checks(k, tol).trace_preserving:
        raise NotTracePreserving("stinespring_dilation requires a trace-preserving channel")
    m, n, p = k.dim_out, k.dim_in, k.num_kraus
    v = np.zeros((m * p, n), dtype=complex)
    for i, op in enumerate(k.operators):
        e = np.zeros((p, 1), dtype=complex)
        e[i, 0] = 1.0
        v += kron(op, e)
    u0 = complete_isometry(v, tol)
    # route column b of v to position (b, environment index 1) so that the
    # reconstruction identity holds in the kron layout
    size = m * p
    positions = [b * p for b in range(n)]
    taken = set(positions)
    rest = [j for j in range(size) if j not in taken]
    u = np.zeros_like(u0)
    u[:, positions] = u0[:, :n]
    u[:, rest] = u0[:, n:]
    return u, p


def channel_from_dilation(
    w: np.ndarray, n: int, k: int, tol: Tolerance = DEFAULT_TOL
) -> KrausChannel:
    """Channel X -> (id (x) tau_k)(w (X (x) I_k) w*) from a unitary w on C^n (x) C^k.

    The Kraus operators are K_ab = k^(-1/2) (I (x) e_a*) w (I (x) e_b) in
    lexicographic (a, b) order; numerically zero operators are dropped. The
    result is trace preserving by construction.
    """
    w = np.asarray(w, dtype=complex)
    if w.shape != (n * k, n * k):
        raise DimensionMismatch(f"dilation unitary must be {n * k}x{n * k}, got {w.shape}")
    scale = max(1.0, frob(w))
    if frob(w.conj().T @ w - np.eye(n * k)) > tol.abs_tol * scale:
        raise NotUnitary("dilation matrix is not unitary within tolerance")
    blocks = w.reshape(n, k, n, k)
    root = 1.0 / np.sqrt(k)
    ops = []
    for a in range(k):
        for b in range(k):
            op = root * blocks[:, a, :, b]
            if frob(op) > tol.abs_tol:
                ops.append(op)
    if not ops:
        ops = [root * blocks[:, 0, :, 0]]
    return KrausChannel(tuple(ops))


def convex_combine_channels(
    k1: KrausChannel, k2: KrausChannel, t: float
) -> KrausChannel:
    """Kraus form of t*Phi_1 + (1-t)*Phi_2 for t strictly between 0 and 1."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"mixing weight must lie strictly in (0, 1), got {t!r}")
    if (k1.dim_in, k1.dim_out) != (k2.dim_in, k2.dim_out):
        raise DimensionMismatch("channels must share input and output dimensions")
    ops = tuple(np.sqrt(t) * op for op in k1.operators) + tuple(
        np.sqrt(1.0 - t) * op for op in k2.operators
    )
    return KrausChannel(ops)
