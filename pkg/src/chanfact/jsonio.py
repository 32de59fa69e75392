"""JSON schemas for the CLI: deterministic, 17-significant-digit output.

Complex scalars are encoded as [re, im]; a matrix is
{"rows": r, "cols": c, "data": [[[re, im], ...], ...]} in row-major order.
Serialization then parsing reproduces every value bit-exactly.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .channel import ChoiMatrix, KrausChannel
from .errors import SchemaError
from .factorization import FactorAlgebra, FactorizationCertificate
from .lmi import LmiPoint, LmiSystem
from .schur import GramVectors


def dumps(doc) -> str:
    """Serialize a document with floats at 17 significant digits."""
    if isinstance(doc, bool):
        return "true" if doc else "false"
    if doc is None:
        return "null"
    if isinstance(doc, (int, np.integer)):
        return str(int(doc))
    if isinstance(doc, (float, np.floating)):
        value = float(doc)
        if not math.isfinite(value):
            raise ValueError("cannot serialize non-finite numbers")
        return format(value, ".17g")
    if isinstance(doc, str):
        return json.dumps(doc)
    if isinstance(doc, (list, tuple)):
        return "[" + ",".join(dumps(item) for item in doc) + "]"
    if isinstance(doc, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{dumps(v)}" for k, v in doc.items()) + "}"
    raise TypeError(f"cannot serialize {type(doc).__name__}")


def _expect_dict(obj, keys: tuple[str, ...], where: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise SchemaError(f"{where}: missing keys {missing}")
    return obj


def _expect_int(value, where: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: expected an integer")
    if value < minimum:
        raise SchemaError(f"{where}: must be at least {minimum}")
    return value


def _expect_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a number")
    if not math.isfinite(value):
        raise SchemaError(f"{where}: must be finite")
    return float(value)


def _complex_from(obj, where: str) -> complex:
    if not isinstance(obj, list) or len(obj) != 2:
        raise SchemaError(f"{where}: complex scalars are [re, im] pairs")
    return complex(_expect_number(obj[0], where), _expect_number(obj[1], where))


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[complex_to_json(z) for z in row] for row in m],
    }


def matrix_from_json(obj, where: str = "matrix") -> np.ndarray:
    obj = _expect_dict(obj, ("rows", "cols", "data"), where)
    rows = _expect_int(obj["rows"], f"{where}.rows", minimum=1)
    cols = _expect_int(obj["cols"], f"{where}.cols", minimum=1)
    data = obj["data"]
    if not isinstance(data, list) or len(data) != rows:
        raise SchemaError(f"{where}.data: expected {rows} rows")
    out = np.empty((rows, cols), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"{where}.data[{i}]: expected {cols} entries")
        for j, entry in enumerate(row):
            out[i, j] = _complex_from(entry, f"{where}.data[{i}][{j}]")
    return out


def vector_to_json(v: np.ndarray) -> list:
    return [complex_to_json(z) for z in np.asarray(v, dtype=complex).reshape(-1)]


def vector_from_json(obj, where: str = "vector") -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise SchemaError(f"{where}: expected a nonempty list")
    return np.array([_complex_from(entry, f"{where}[{i}]") for i, entry in enumerate(obj)])


def channel_to_json(k: KrausChannel) -> dict:
    return {
        "dim_in": k.dim_in,
        "dim_out": k.dim_out,
        "kraus": [matrix_to_json(op) for op in k.operators],
    }


def channel_from_json(obj, where: str = "channel") -> KrausChannel:
    obj = _expect_dict(obj, ("dim_in", "dim_out", "kraus"), where)
    n = _expect_int(obj["dim_in"], f"{where}.dim_in", minimum=1)
    m = _expect_int(obj["dim_out"], f"{where}.dim_out", minimum=1)
    kraus = obj["kraus"]
    if not isinstance(kraus, list) or not kraus:
        raise SchemaError(f"{where}.kraus: expected a nonempty list")
    ops = [matrix_from_json(item, f"{where}.kraus[{i}]") for i, item in enumerate(kraus)]
    for i, op in enumerate(ops):
        if op.shape != (m, n):
            raise SchemaError(f"{where}.kraus[{i}]: expected shape {(m, n)}, got {op.shape}")
    return KrausChannel(tuple(ops))


def choi_to_json(c: ChoiMatrix) -> dict:
    return {
        "dim_in": c.dim_in,
        "dim_out": c.dim_out,
        "matrix": matrix_to_json(c.matrix),
    }


def choi_from_json(obj, where: str = "choi") -> ChoiMatrix:
    obj = _expect_dict(obj, ("dim_in", "dim_out", "matrix"), where)
    n = _expect_int(obj["dim_in"], f"{where}.dim_in", minimum=1)
    m = _expect_int(obj["dim_out"], f"{where}.dim_out", minimum=1)
    mat = matrix_from_json(obj["matrix"], f"{where}.matrix")
    if mat.shape != (n * m, n * m):
        raise SchemaError(f"{where}.matrix: expected shape {(n * m, n * m)}, got {mat.shape}")
    return ChoiMatrix(n, m, mat)


def correlation_to_json(matrix: np.ndarray) -> dict:
    return {"matrix": matrix_to_json(matrix)}


def correlation_matrix_from_json(obj, where: str = "correlation") -> np.ndarray:
    obj = _expect_dict(obj, ("matrix",), where)
    mat = matrix_from_json(obj["matrix"], f"{where}.matrix")
    if mat.shape[0] != mat.shape[1]:
        raise SchemaError(f"{where}.matrix: must be square")
    return mat


def gram_to_json(w: GramVectors) -> dict:
    return {
        "n": w.n,
        "p": w.p,
        "vectors": [vector_to_json(v) for v in w.vectors],
    }


def lmi_to_json(s: LmiSystem) -> dict:
    return {"p": s.p, "z": [matrix_to_json(zi) for zi in s.z]}


def lmi_from_json(obj, where: str = "lmi") -> LmiSystem:
    obj = _expect_dict(obj, ("p", "z"), where)
    p = _expect_int(obj["p"], f"{where}.p", minimum=1)
    zs = obj["z"]
    if not isinstance(zs, list):
        raise SchemaError(f"{where}.z: expected a list")
    mats = [matrix_from_json(item, f"{where}.z[{i}]") for i, item in enumerate(zs)]
    for i, zi in enumerate(mats):
        if zi.shape != (p, p):
            raise SchemaError(f"{where}.z[{i}]: expected shape {(p, p)}")
        if np.linalg.norm(zi - zi.conj().T) > 1e-9 * max(1.0, np.linalg.norm(zi)):
            raise SchemaError(f"{where}.z[{i}]: must be Hermitian")
    return LmiSystem(p, tuple(mats))


def point_to_json(point: LmiPoint) -> dict:
    return {"k": point.k, "a": [matrix_to_json(ai) for ai in point.a]}


def point_from_json(obj, where: str = "point") -> LmiPoint:
    obj = _expect_dict(obj, ("k", "a"), where)
    k = _expect_int(obj["k"], f"{where}.k", minimum=1)
    items = obj["a"]
    if not isinstance(items, list):
        raise SchemaError(f"{where}.a: expected a list")
    mats = [matrix_from_json(item, f"{where}.a[{i}]") for i, item in enumerate(items)]
    for i, ai in enumerate(mats):
        if ai.shape != (k, k):
            raise SchemaError(f"{where}.a[{i}]: expected shape {(k, k)}")
        if np.linalg.norm(ai - ai.conj().T) > 1e-9 * max(1.0, np.linalg.norm(ai)):
            raise SchemaError(f"{where}.a[{i}]: must be Hermitian")
    return LmiPoint(k, tuple(mats))


def algebra_to_json(algebra: FactorAlgebra) -> dict:
    return {"factors": [{"dim": d, "weight": q} for d, q in algebra.factors]}


def algebra_from_json(obj, where: str = "algebra") -> FactorAlgebra:
    obj = _expect_dict(obj, ("factors",), where)
    items = obj["factors"]
    if not isinstance(items, list) or not items:
        raise SchemaError(f"{where}.factors: expected a nonempty list")
    factors = []
    for i, item in enumerate(items):
        item = _expect_dict(item, ("dim", "weight"), f"{where}.factors[{i}]")
        d = _expect_int(item["dim"], f"{where}.factors[{i}].dim", minimum=1)
        q = _expect_number(item["weight"], f"{where}.factors[{i}].weight")
        if q <= 0.0:
            raise SchemaError(f"{where}.factors[{i}].weight: must be positive")
        factors.append((d, q))
    total = sum(q for _, q in factors)
    if abs(total - 1.0) > 1e-12:
        raise SchemaError(f"{where}.factors: weights sum to {total!r}, expected 1")
    return FactorAlgebra(tuple(factors))


def certificate_to_json(cert: FactorizationCertificate) -> dict:
    return {
        "algebra": algebra_to_json(cert.algebra),
        "v": [
            [matrix_to_json(blk) for blk in element] for element in cert.elements
        ],
    }


def certificate_from_json(obj, where: str = "certificate") -> FactorizationCertificate:
    obj = _expect_dict(obj, ("algebra", "v"), where)
    algebra = algebra_from_json(obj["algebra"], f"{where}.algebra")
    items = obj["v"]
    if not isinstance(items, list) or not items:
        raise SchemaError(f"{where}.v: expected a nonempty list")
    elements = []
    for i, element in enumerate(items):
        if not isinstance(element, list) or len(element) != algebra.num_factors:
            raise SchemaError(f"{where}.v[{i}]: expected {algebra.num_factors} blocks")
        blocks = tuple(
            matrix_from_json(blk, f"{where}.v[{i}][{f}]") for f, blk in enumerate(element)
        )
        for (d, _), blk in zip(algebra.factors, blocks):
            if blk.shape != (d, d):
                raise SchemaError(f"{where}.v[{i}]: block shape {blk.shape} does not fit M_{d}")
        elements.append(blocks)
    return FactorizationCertificate(algebra, tuple(elements))
