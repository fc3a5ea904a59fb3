"""Vectorized subspace arithmetic used by the verifiers.

A normalized vector v of F_q^n is coded as sum(v_i * q**(n-1-i)), so
integer order is lexicographic order.  A 2-subspace is keyed by
``c2 * q**n + c1`` where (c1, c2) are the codes of its RREF rows; these
are also its two least normalized points (c2 < c1).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .gf import FieldSpec
from .linalg import Subspace, all_points, enumerate_subspaces

WORKERS_ENV = "QFANO_WORKERS"
CHUNK = 1 << 15


def worker_count(explicit: int | None = None) -> int:
    if explicit is not None:
        return max(1, explicit)
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def tables(F: FieldSpec):
    return (np.asarray(F.add_table, dtype=np.int64), np.asarray(F.mul_table, dtype=np.int64))


def vector_code(F: FieldSpec, v) -> int:
    c = 0
    for x in v:
        c = c * F.q + x
    return c


def code_to_vector(F: FieldSpec, c: int, n: int):
    out = []
    for _ in range(n):
        c, r = divmod(c, F.q)
        out.append(r)
    return tuple(reversed(out))


def line_key(F: FieldSpec, S: Subspace) -> int:
    """Key of a 2-subspace (see module docstring)."""
    r1, r2 = S.basis
    return vector_code(F, r2) * F.q**S.n + vector_code(F, r1)


def key_to_subspace(F: FieldSpec, key: int, n: int) -> Subspace:
    c2, c1 = divmod(key, F.q**n)
    return Subspace((code_to_vector(F, c1, n), code_to_vector(F, c2, n)), n, F)


def _coefficient_lines(F: FieldSpec, k: int):
    pts = all_points(F, k)
    index = {p: i for i, p in enumerate(pts)}
    lines = []
    for L in enumerate_subspaces(F, k, 2):
        lines.append([index[p] for p in L.points()])
    return np.asarray(pts, dtype=np.int64), np.asarray(lines, dtype=np.int64)


def basis_array(blocks, n: int, k: int) -> np.ndarray:
    """(N, k, n) array of RREF bases."""
    arr = np.zeros((len(blocks), k, n), dtype=np.int64)
    for i, B in enumerate(blocks):
        arr[i] = B.basis
    return arr


def point_codes(F: FieldSpec, bases: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Codes of sum_i c_i b_i for every block and every coefficient vector.

    With RREF bases and normalized coefficients the combinations are
    normalized already.
    """
    add, mul = tables(F)
    N, k, n = bases.shape
    weights = F.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    out = np.empty((N, len(coeffs)), dtype=np.int64)
    for j, c in enumerate(coeffs):
        acc = np.zeros((N, n), dtype=np.int64)
        for i in range(k):
            if c[i]:
                acc = add[acc, mul[c[i], bases[:, i, :]]]
        out[:, j] = acc @ weights
    return out


def _chunk_keys(F, bases, coeffs, lines, n):
    codes = point_codes(F, bases, coeffs)
    Q = np.int64(F.q) ** n
    keys = np.empty((len(bases), len(lines)), dtype=np.int64)
    for j, L in enumerate(lines):
        two = np.sort(codes[:, L], axis=1)[:, :2]
        keys[:, j] = two[:, 0] * Q + two[:, 1]
    return keys.ravel()


def contained_line_counts(F: FieldSpec, blocks, n: int, k: int, workers: int | None = None):
    """(keys, counts): every 2-subspace lying in some block, with multiplicity.

    Blocks are processed in chunks; chunk results are merged by key so the
    output does not depend on the chunking or the worker count.
    """
    if k < 2 or not blocks:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    coeffs, lines = _coefficient_lines(F, k)
    spans = [(s, min(s + CHUNK, len(blocks))) for s in range(0, len(blocks), CHUNK)]

    def work(span):
        a, b = span
        keys = _chunk_keys(F, basis_array(blocks[a:b], n, k), coeffs, lines, n)
        return np.unique(keys, return_counts=True)

    nw = worker_count(workers)
    if nw > 1 and len(spans) > 1:
        with ThreadPoolExecutor(nw) as pool:
            parts = list(pool.map(work, spans))
    else:
        parts = [work(s) for s in spans]
    if len(parts) == 1:
        return parts[0]
    keys = np.concatenate([p[0] for p in parts])
    counts = np.concatenate([p[1] for p in parts])
    uk, inv = np.unique(keys, return_inverse=True)
    return uk, np.bincount(inv, weights=counts).astype(np.int64)


def keys_of(F: FieldSpec, lines) -> np.ndarray:
    return np.asarray(sorted(line_key(F, L) for L in lines), dtype=np.int64)

