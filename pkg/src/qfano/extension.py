"""The extension space, the extension code and its cosets, and E(M, u).

Matrices here are stored column-wise: a tuple of column tuples.  An
extension matrix has q+1 columns of length 2 with

    col_i = alpha**(i-3) * col_1 + col_2,   3 <= i <= q+1   (1-based)

so it is fixed by its first two columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .gf import FieldSpec
from .linalg import Vector, vec_add, vec_axpy, vec_to_str, vec_from_str

Columns = tuple[Vector, ...]
ExtMatrix = Columns


class ExtensionError(RuntimeError):
    pass


def ext_matrix(F: FieldSpec, col1: Sequence[int], col2: Sequence[int]) -> ExtMatrix:
    """Complete two leading columns by the column recurrence."""
    col1, col2 = tuple(col1), tuple(col2)
    cols = [col1, col2]
    for e in range(F.q - 1):
        cols.append(vec_axpy(F, F.alpha_pow(e), col1, col2))
    return tuple(cols)


def satisfies_recurrence(F: FieldSpec, M: Columns) -> bool:
    if len(M) != F.q + 1:
        return False
    return all(M[2 + e] == vec_axpy(F, F.alpha_pow(e), M[0], M[1]) for e in range(F.q - 1))


def mat_add(F: FieldSpec, A: Columns, B: Columns) -> Columns:
    return tuple(vec_add(F, a, b) for a, b in zip(A, B))


def mat_scale(F: FieldSpec, c: int, A: Columns) -> Columns:
    row = F.mul_table[c]
    return tuple(tuple(row[x] for x in col) for col in A)


def rows_of(M: Columns) -> list[Vector]:
    return [tuple(col[i] for col in M) for i in range(len(M[0]))]


def from_rows(rows: Sequence[Sequence[int]]) -> Columns:
    return tuple(zip(*rows))


def matrix_to_str(M: Columns) -> str:
    """Rows as digit strings joined by ``/``, e.g. ``011/110``."""
    return "/".join(vec_to_str(r) for r in rows_of(M))


def matrix_from_str(text: str) -> Columns:
    rows = [vec_from_str(r) for r in text.strip().split("/")]
    if len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix literal %r" % text)
    return from_rows(rows)


def extension_space(F: FieldSpec) -> list[ExtMatrix]:
    """All q**4 extension matrices, ordered by (col_1, col_2)."""
    pairs = list(itertools.product(F.elements, repeat=2))
    return [ext_matrix(F, c1, c2) for c1 in pairs for c2 in pairs]


def _independent(F: FieldSpec, u: Vector, v: Vector) -> bool:
    return F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])) != 0


@dataclass(frozen=True)
class ExtensionCode:
    members: tuple[ExtMatrix, ...]
    generators: tuple[ExtMatrix, ExtMatrix]
    beta: int

    def __contains__(self, M) -> bool:
        return M in set(self.members)


def extension_code(F: FieldSpec) -> ExtensionCode:
    """span{M1, M2} with M1 = [e1 | e2 | ...] and M2 = [e2 | (1, beta) | ...].

    beta is the first element, in code order, for which every column of
    M2 is independent of the matching column of M1.
    """
    M1 = ext_matrix(F, (1, 0), (0, 1))
    for beta in F.elements:
        M2 = ext_matrix(F, (0, 1), (1, beta))
        if all(_independent(F, a, b) for a, b in zip(M1, M2)):
            break
    else:  # pragma: no cover - a valid beta always exists
        raise ExtensionError("no valid second generator over %s" % F)
    members = set()
    for a, b in itertools.product(F.elements, repeat=2):
        members.add(mat_add(F, mat_scale(F, a, M1), mat_scale(F, b, M2)))
    return ExtensionCode(tuple(sorted(members)), (M1, M2), beta)


def _coset_key(M: ExtMatrix):
    # last column most significant, then backwards
    return M[::-1]


@dataclass(frozen=True)
class CosetPartition:
    """Nonzero cosets of the code grouped into q+1 parts of q-1 cosets."""

    cosets: tuple[tuple[ExtMatrix, ...], ...]
    parts: tuple[tuple[ExtMatrix, ...], ...]

    @property
    def representatives(self) -> tuple[ExtMatrix, ...]:
        return tuple(c[0] for c in self.cosets)


def coset_partition(F: FieldSpec, code: ExtensionCode,
                    order: Sequence[int] | None = None) -> CosetPartition:
    """Split the q**2 - 1 nonzero cosets into C_1 .. C_{q+1}.

    Each coset is represented by its least member when columns are read
    from the last one backwards; cosets are sorted by representative and
    consecutive runs of q - 1 form the parts.  `order` optionally permutes
    the sorted cosets first.  Each coset lists rep + c for c in the code,
    in code order.
    """
    q = F.q
    in_code = set(code.members)
    seen = set(in_code)
    cosets = []
    for Z in sorted(extension_space(F), key=_coset_key):
        if Z in seen:
            continue
        members = tuple(mat_add(F, Z, c) for c in code.members)
        seen.update(members)
        cosets.append(members)
    if order is not None:
        if sorted(order) != list(range(len(cosets))):
            raise ValueError("coset order must permute range(%d)" % len(cosets))
        cosets = [cosets[i] for i in order]
    parts = []
    for j in range(q + 1):
        chunk = cosets[j * (q - 1):(j + 1) * (q - 1)]
        parts.append(tuple(M for c in chunk for M in c))
    return CosetPartition(tuple(cosets), tuple(parts))


def expand(F: FieldSpec, M: Columns, u: Sequence[int]) -> Columns:
    """E(M, u): [M | u | alpha^0 u + M | ... | alpha^(q-2) u + M]."""
    u = tuple(u)
    if len(M) != F.q + 1:
        raise ValueError("expected %d columns, got %d" % (F.q + 1, len(M)))
    if any(len(c) != len(u) for c in M):
        raise ValueError("column length mismatch in expansion")
    out = list(M)
    out.append(u)
    for e in range(F.q - 1):
        a = F.alpha_pow(e)
        out.extend(vec_axpy(F, a, u, c) for c in M)
    return tuple(out)


def stack(top: Columns, bottom: Columns) -> Columns:
    """Vertical concatenation of two column-stored matrices."""
    if len(top) != len(bottom):
        raise ValueError("column count mismatch %d vs %d" % (len(top), len(bottom)))
    return tuple(a + b for a, b in zip(top, bottom))
