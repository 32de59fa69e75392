import numpy as np
import pytest

from chanfact import (
    DimensionMismatch,
    LmiPoint,
    LmiSystem,
    NotInSpan,
    NotInSpectrahedron,
    NotPSD,
    RankTooHigh,
    apply_channel,
    build_lmi,
    channel_checks,
    extract_blocks,
    face_channel,
    frob,
    hm_derived_point,
    hm_example,
    kron,
    lmi_eval,
    lmi_membership,
    point_from_blocks,
    schur_channel_from_gram,
)
from helpers import random_hermitian, random_tp_channel


def scalar_system():
    return LmiSystem(2, (np.diag([1.0, -1.0]).astype(complex),))


def hm_setup():
    hm = hm_example()
    k = schur_channel_from_gram(hm.w)
    system = LmiSystem(k.num_kraus, hm.z, source=k)
    point = LmiPoint(2, hm_derived_point())
    return k, system, point


def test_system_and_point_validation():
    with pytest.raises(DimensionMismatch):
        LmiSystem(2, (np.eye(3),))
    with pytest.raises(DimensionMismatch):
        LmiPoint(2, (np.eye(3),))
    s = scalar_system()
    with pytest.raises(DimensionMismatch):
        lmi_eval(s, LmiPoint(1, ()))


def test_build_lmi_from_channel():
    rng = np.random.default_rng(40)
    k = random_tp_channel(rng, 3, 2)
    s = build_lmi(k)
    assert s.p == 2 and s.source is k
    hm_k = schur_channel_from_gram(hm_example().w)
    assert build_lmi(hm_k).d == 3


def test_lmi_eval_at_zero_point_is_identity():
    s = scalar_system()
    point = LmiPoint(3, (np.zeros((3, 3)),))
    assert np.array_equal(lmi_eval(s, point), np.eye(6, dtype=complex))
    mem = lmi_membership(s, point)
    assert mem.psd and mem.rank == 6 and mem.traces == (0.0,)


def test_scalar_membership_boundary():
    s = scalar_system()
    inside = lmi_membership(s, LmiPoint(1, (np.array([[0.5]]),)))
    assert inside.psd and inside.rank == 2
    boundary = lmi_membership(s, LmiPoint(1, (np.array([[1.0]]),)))
    assert boundary.psd and boundary.rank == 1
    outside = lmi_membership(s, LmiPoint(1, (np.array([[1.5]]),)))
    assert not outside.psd
    assert outside.traces == (1.5,)


def test_extract_blocks_scalar_boundary():
    s = scalar_system()
    blocks = extract_blocks(s, LmiPoint(1, (np.array([[1.0]]),)))
    assert len(blocks) == 2
    value = np.array([[blocks[0][0, 0]], [blocks[1][0, 0]]])
    gram = value.conj() @ value.T
    assert frob(gram - np.diag([2.0, 0.0])) < 1e-12


def test_extract_blocks_errors():
    s = scalar_system()
    with pytest.raises(NotPSD):
        extract_blocks(s, LmiPoint(1, (np.array([[2.0]]),)))
    with pytest.raises(RankTooHigh):
        extract_blocks(s, LmiPoint(1, (np.array([[0.5]]),)))


def test_hm_membership_and_blocks():
    k, system, point = hm_setup()
    mem = lmi_membership(system, point)
    assert mem.psd and mem.rank == 2
    assert max(abs(t) for t in mem.traces) < 1e-12
    value = lmi_eval(system, point)
    w = np.linalg.eigvalsh(value)
    assert np.allclose(sorted(w), [0, 0, 0, 0, 3, 3], atol=1e-9)
    blocks = extract_blocks(system, point)
    rebuilt = np.zeros_like(value)
    for i in range(system.p):
        for j in range(system.p):
            e = np.zeros((system.p, system.p), dtype=complex)
            e[i, j] = 1.0
            rebuilt += kron(e, blocks[i].conj().T @ blocks[j])
    assert frob(rebuilt - value) < 1e-9


def test_point_from_blocks_roundtrip():
    _, system, point = hm_setup()
    blocks = extract_blocks(system, point)
    recovered = point_from_blocks(system, blocks)
    assert recovered.k == 2
    for a, b in zip(recovered.a, point.a):
        assert frob(a - b) < 1e-9


def test_point_from_blocks_rejects_outside_span():
    s = LmiSystem(3, (np.diag([1.0, -1.0, 0.0]).astype(complex),))
    blocks = [np.array([[1.0]]), np.array([[1.0]]), np.array([[np.sqrt(2.0)]])]
    with pytest.raises(NotInSpan):
        point_from_blocks(s, blocks)
    with pytest.raises(DimensionMismatch):
        point_from_blocks(s, blocks[:2])


def test_face_channel_identity_face():
    k, system, _ = hm_setup()
    same = face_channel(k, np.zeros(system.d), system=system)
    assert same.num_kraus == k.num_kraus
    rng = np.random.default_rng(41)
    x = random_hermitian(rng, 6)
    assert frob(apply_channel(same, x) - apply_channel(k, x)) < 1e-9


def test_face_channel_moves_along_kernel():
    k, system, _ = hm_setup()
    x = np.array([0.3, 0.0, 0.0])
    faced = face_channel(k, x, system=system)
    assert channel_checks(faced).trace_preserving
    with pytest.raises(NotInSpectrahedron):
        face_channel(k, np.array([9.0, 0.0, 0.0]), system=system)
    with pytest.raises(DimensionMismatch):
        face_channel(k, np.zeros(2), system=system)
