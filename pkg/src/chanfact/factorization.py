"""Factorization certificates over finite direct sums of matrix algebras.

A certificate for a channel with Kraus operators {K_i}_{i=1..p} over the
algebra N = (+)_k (M_{i_k}, q_k) holds one block V_i^(k) per Kraus index and
factor. It is valid when the V_i are orthonormal in the normalized tracial
state tau((+)_k A_k) = sum_k q_k Tr(A_k)/i_k and U = sum_i K_i (x) V_i is
unitary factor by factor; equivalently, sum_ij x_ij V_j* V_i = Tr(X) I for
every X in the range of the complementary channel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import (
    KrausChannel,
    channel_from_dilation,
    convex_combine_channels,
)
from .complement import apply_complement
from .errors import (
    CertificateInvalid,
    DimensionMismatch,
    NotPSD,
    RankTooHigh,
    TraceNotZero,
)
from .linalg import DEFAULT_TOL, Tolerance, frob, kron, psd_factor
from .lmi import LmiPoint, LmiSystem, extract_blocks, lmi_membership

WEIGHT_SUM_TOL = 1e-12


@dataclass
class FactorAlgebra:
    """A direct sum (+)_k M_{i_k} with tracial weights q_k summing to 1."""

    factors: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        factors = tuple((int(d), float(q)) for d, q in self.factors)
        if not factors:
            raise DimensionMismatch("algebra needs at least one factor")
        for d, q in factors:
            if d < 1:
                raise DimensionMismatch(f"factor dimension must be positive, got {d}")
            if not np.isfinite(q) or q <= 0.0:
                raise ValueError(f"factor weight must be positive and finite, got {q!r}")
        total = sum(q for _, q in factors)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"factor weights sum to {total!r}, expected 1")
        self.factors = factors

    @property
    def num_factors(self) -> int:
        return len(self.factors)

    def trace(self, blocks: tuple[np.ndarray, ...]) -> complex:
        """Normalized tracial state of a block element of the algebra."""
        return sum(
            q * np.trace(blk) / d for (d, q), blk in zip(self.factors, blocks)
        )


@dataclass
class FactorizationCertificate:
    """Per-Kraus-index block elements of a factor algebra."""

    algebra: FactorAlgebra
    elements: tuple[tuple[np.ndarray, ...], ...] = field(repr=False)

    def __post_init__(self) -> None:
        rows = []
        for element in self.elements:
            blocks = tuple(np.asarray(blk, dtype=complex) for blk in element)
            if len(blocks) != self.algebra.num_factors:
                raise DimensionMismatch("each element needs one block per factor")
            for (d, _), blk in zip(self.algebra.factors, blocks):
                if blk.shape != (d, d):
                    raise DimensionMismatch(
                        f"block of shape {blk.shape} does not fit factor M_{d}"
                    )
            rows.append(blocks)
        if not rows:
            raise DimensionMismatch("certificate needs at least one element")
        self.elements = tuple(rows)

    @property
    def num_elements(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class CertificateReport:
    orthonormality_residual: float
    complement_residual: float
    unitarity_residual: float
    passed: bool


def verify_certificate(
    k: KrausChannel, cert: FactorizationCertificate, tol: Tolerance = DEFAULT_TOL
) -> CertificateReport:
    """Check orthonormality, the complement-range identity, and unitarity.

    The three residuals are reported unconditionally; ``passed`` is true when
    all of them are at most ``abs_tol``.
    """
    n = k.dim_in
    if k.dim_out != n:
        raise DimensionMismatch("factorization certificates require square channels")
    p = k.num_kraus
    if cert.num_elements != p:
        raise DimensionMismatch(
            f"certificate has {cert.num_elements} elements for {p} Kraus operators"
        )
    algebra = cert.algebra

    orth = 0.0
    for i in range(p):
        for j in range(p):
            inner = algebra.trace(
                tuple(
                    vi.conj().T @ vj
                    for vi, vj in zip(cert.elements[i], cert.elements[j])
                )
            )
            orth = max(orth, abs(inner - (1.0 if i == j else 0.0)))

    compl = 0.0
    for a in range(n):
        for b in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[a, b] = 1.0
            x = apply_complement(k, e)
            tr = np.trace(x)
            for f, (d, _) in enumerate(algebra.factors):
                r = -tr * np.eye(d, dtype=complex)
                for i in range(p):
                    for j in range(p):
                        if x[i, j] != 0:
                            r += x[i, j] * (
                                cert.elements[j][f].conj().T @ cert.elements[i][f]
                            )
                compl = max(compl, frob(r))

    unit_sq = 0.0
    for f, (d, _) in enumerate(algebra.factors):
        u = np.zeros((n * d, n * d), dtype=complex)
        for i in range(p):
            u += kron(k.operators[i], cert.elements[i][f])
        unit_sq += frob(u.conj().T @ u - np.eye(n * d)) ** 2
    unit = float(np.sqrt(unit_sq))

    passed = max(orth, compl, unit) <= tol.abs_tol
    return CertificateReport(float(orth), float(compl), unit, bool(passed))


def certificate_from_point(
    k: KrausChannel, s: LmiSystem, point: LmiPoint, tol: Tolerance = DEFAULT_TOL
) -> FactorizationCertificate:
    """Single-factor M_k certificate from a traceless rank-at-most-k solution.

    The extracted blocks already satisfy tau_k(V_i* V_j) = delta_ij because
    the pencil's diagonal blocks have trace k when the coefficient traces
    vanish; they are used as-is.
    """
    mem = lmi_membership(s, point, tol)
    if not mem.psd:
        raise NotPSD("point is not in the solution set")
    if mem.rank > point.k:
        raise RankTooHigh(f"solution has rank {mem.rank} > {point.k}")
    trace_norm = max((abs(t) for t in mem.traces), default=0.0)
    if trace_norm > tol.abs_tol:
        raise TraceNotZero(f"coefficient traces reach {trace_norm:.3e}")
    blocks = extract_blocks(s, point, tol)
    algebra = FactorAlgebra(((point.k, 1.0),))
    return FactorizationCertificate(algebra, tuple((blk,) for blk in blocks))


def combine_certificates(
    k1: KrausChannel,
    cert1: FactorizationCertificate,
    k2: KrausChannel,
    cert2: FactorizationCertificate,
    t: float,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[KrausChannel, FactorizationCertificate]:
    """Certificate for t*Phi_1 + (1-t)*Phi_2 over the direct sum algebra.

    Elements are (t^-1/2 V_i) (+) 0 for the first channel and
    0 (+) ((1-t)^-1/2 W_j) for the second, with factor weights rescaled by t
    and 1-t. Both inputs must verify; t must lie strictly in (0, 1).
    """
    if not 0.0 < t < 1.0:
        raise ValueError(f"mixing weight must lie strictly in (0, 1), got {t!r}")
    for kk, cc, label in ((k1, cert1, "first"), (k2, cert2, "second")):
        if not verify_certificate(kk, cc, tol).passed:
            raise CertificateInvalid(f"{label} certificate does not verify")
    channel = convex_combine_channels(k1, k2, t)
    factors = tuple((d, t * q) for d, q in cert1.algebra.factors) + tuple(
        (d, (1.0 - t) * q) for d, q in cert2.algebra.factors
    )
    algebra = FactorAlgebra(factors)
    zeros1 = tuple(np.zeros((d, d), dtype=complex) for d, _ in cert1.algebra.factors)
    zeros2 = tuple(np.zeros((d, d), dtype=complex) for d, _ in cert2.algebra.factors)
    s1 = 1.0 / np.sqrt(t)
    s2 = 1.0 / np.sqrt(1.0 - t)
    elements = [
        tuple(s1 * blk for blk in element) + zeros2 for element in cert1.elements
    ] + [
        zeros1 + tuple(s2 * blk for blk in element) for element in cert2.elements
    ]
    return channel, FactorizationCertificate(algebra, tuple(elements))


@dataclass(frozen=True)
class FactorComponent:
    weight: float
    channel: KrausChannel
    certificate: FactorizationCertificate
    gram: np.ndarray = field(repr=False)


def decompose_by_factors(
    k: KrausChannel, cert: FactorizationCertificate, tol: Tolerance = DEFAULT_TOL
) -> list[FactorComponent]:
    """Split a channel along the factors of its certificate's algebra.

    For factor k the p x p Gram matrix Q_k* Q_k = (id (x) tau)(sum E_ij (x)
    V_i* V_j) is factored; the component channel has Kraus operators
    sum_j (Q_k)_mj K_j and a single-factor certificate with elements
    transferred through the pseudoinverse of Q_k. The weighted Gram matrices
    sum to I_p and the weighted Choi matrices sum to the input's.
    """
    report = verify_certificate(k, cert, tol)
    if not report.passed:
        raise CertificateInvalid("cannot decompose along a failing certificate")
    p = k.num_kraus
    components = []
    for f, (d, q) in enumerate(cert.algebra.factors):
        blocks = [cert.elements[i][f] for i in range(p)]
        gram = np.empty((p, p), dtype=complex)
        for i in range(p):
            for j in range(p):
                gram[i, j] = np.trace(blocks[i].conj().T @ blocks[j]) / d
        qmat = psd_factor(gram, tol)
        if qmat.shape[0] == 0:
            raise CertificateInvalid(f"factor {f} carries no weight in the certificate")
        ops = tuple(
            sum(qmat[m, j] * k.operators[j] for j in range(p))
            for m in range(qmat.shape[0])
        )
        qpinv = np.linalg.pinv(qmat)
        new_elements = tuple(
            (sum(qpinv[j, m] * blocks[j] for j in range(p)),)
            for m in range(qmat.shape[0])
        )
        sub_cert = FactorizationCertificate(FactorAlgebra(((d, 1.0),)), new_elements)
        components.append(FactorComponent(q, KrausChannel(ops), sub_cert, gram))
    return components


@dataclass(frozen=True)
class CandidateReport:
    in_solution_set: bool
    rank: int
    trace_norm: float
    consistent_with_extremality: bool


@dataclass(frozen=True)
class ExtremalityReport:
    candidates: tuple[CandidateReport, ...]
    all_consistent: bool


def extremality_check(
    k: KrausChannel,
    s: LmiSystem,
    candidates: list[LmiPoint],
    tol: Tolerance = DEFAULT_TOL,
) -> ExtremalityReport:
    """Certificate-style check of the trace condition on candidate solutions.

    A candidate is consistent with extremality when it is outside the
    solution set, has rank above its level k, or has all coefficient traces
    at most abs_tol. This is evidence over the supplied candidates only, not
    a decision procedure for extremality.
    """
    del k  # the channel fixes the system; kept for signature symmetry
    reports = []
    for point in candidates:
        mem = lmi_membership(s, point, tol)
        trace_norm = max((abs(t) for t in mem.traces), default=0.0)
        consistent = (not mem.psd) or (mem.rank > point.k) or (trace_norm <= tol.abs_tol)
        reports.append(
            CandidateReport(mem.psd, mem.rank, float(trace_norm), bool(consistent))
        )
    return ExtremalityReport(
        tuple(reports), all(r.consistent_with_extremality for r in reports)
    )


def hm_equation_residuals(
    a1: np.ndarray, a2: np.ndarray, a3: np.ndarray
) -> tuple[float, float, float]:
    """Residuals of the three Haagerup-Musat equations at A = A_2 + i A_3.

    Returns Frobenius norms of A*A - I - sqrt(2) A_1, A A* - I + sqrt(2) A_1,
    and A^2; a solution makes all three vanish.
    """
    a1 = np.asarray(a1, dtype=complex)
    a2 = np.asarray(a2, dtype=complex)
    a3 = np.asarray(a3, dtype=complex)
    if not (a1.shape == a2.shape == a3.shape) or a1.ndim != 2 or a1.shape[0] != a1.shape[1]:
        raise DimensionMismatch("expected three square matrices of one shape")
    a = a2 + 1j * a3
    eye = np.eye(a1.shape[0], dtype=complex)
    s2 = np.sqrt(2.0)
    r1 = frob(a.conj().T @ a - eye - s2 * a1)
    r2 = frob(a @ a.conj().T - eye + s2 * a1)
    r3 = frob(a @ a)
    return r1, r2, r3


def dilation_certificate(
    w: np.ndarray, n: int, k: int, tol: Tolerance = DEFAULT_TOL
) -> tuple[KrausChannel, FactorizationCertificate]:
    """Channel and M_k certificate read off a unitary dilation on C^n (x) C^k.

    Expanding w = sum_ab K_ab (x) sqrt(k) E_ab over the tau_k-orthonormal
    matrix units gives Kraus operators K_ab and certificate elements
    sqrt(k) E_ab directly; indices whose Kraus operator is numerically zero
    are dropped from both lists.
    """
    channel = channel_from_dilation(w, n, k, tol)
    blocks = np.asarray(w, dtype=complex).reshape(n, k, n, k)
    root = 1.0 / np.sqrt(k)
    elements = []
    for a in range(k):
        for b in range(k):
            if frob(root * blocks[:, a, :, b]) > tol.abs_tol:
                unit = np.zeros((k, k), dtype=complex)
                unit[a, b] = np.sqrt(k)
                elements.append((unit,))
    cert = FactorizationCertificate(FactorAlgebra(((k, 1.0),)), tuple(elements))
    return channel, cert
