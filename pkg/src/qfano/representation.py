"""Column-matrix representations of 2- and 3-subspaces.

A 2-subspace X (ambient 4 or 6) whose first four coordinates are
injective on X is written as its q+1 normalized vectors v_1..v_{q+1},
where v_1 < v_2 are the two least of them (comparing four-coordinate
prefixes) and v_i = alpha**(i-3) v_1 + v_2.

A 3-subspace Y is written as E(rep2(X), u): X is the 2-subspace of Y
lying over a member of the spread A, u the least normalized vector of
Y outside X.
"""

from __future__ import annotations

import itertools

from .extension import Columns, expand
from .gf import FieldSpec
from .linalg import (
    Subspace, Vector, all_points, canonicalize, is_subspace, join,
    normalize_rep, project, vec_axpy,
)


class RepresentationError(ValueError):
    """The subspace has no representation of the requested kind."""


def rep2(S: Subspace) -> Columns:
    if S.dim != 2:
        raise RepresentationError("rep2 needs a 2-subspace, got dim %d" % S.dim)
    if S.n < 4 or project(S, 4).dim != 2:
        raise RepresentationError("%s: first four coordinates degenerate" % S)
    F = S.field
    pts = sorted(S.points(), key=lambda v: v[:4])
    v1, v2 = pts[0], pts[1]
    cols = [v1, v2]
    for e in range(F.q - 1):
        v = vec_axpy(F, F.alpha_pow(e), v1, v2)
        assert v[:4] == normalize_rep(F, v[:4])
        cols.append(v)
    return tuple(cols)


def representation_basis(S: Subspace) -> tuple[Vector, Vector]:
    """(v_1, v_2) of rep2(S)."""
    cols = rep2(S)
    return cols[0], cols[1]


def a_member(Y: Subspace, A) -> Subspace:
    """The single member of spread A inside the 3-subspace Y of F_q^4."""
    hits = [X for X in A if is_subspace(X, Y)]
    if len(hits) != 1:
        raise RepresentationError(
            "%s contains %d members of the spread, expected 1" % (Y, len(hits)))
    return hits[0]


def expansions_of(X: Subspace) -> list[tuple[Vector, Subspace]]:
    """The q+1 3-subspaces of F_q^4 through X, each with its expansion vector.

    The expansion vector is the least normalized vector of Y outside X;
    the list is sorted by it.
    """
    covered = set(X.points())
    out = []
    for p in all_points(X.field, X.n):
        if p in covered:
            continue
        Y = join(X, p)
        covered.update(Y.points())
        out.append((p, Y))
    return out


def rep3(Y: Subspace, A) -> Columns:
    """Representation of a 3-subspace whose first four coordinates span 3 dims."""
    if Y.dim != 3:
        raise RepresentationError("rep3 needs a 3-subspace, got dim %d" % Y.dim)
    if Y.n < 4:
        raise RepresentationError("ambient too small")
    F = Y.field
    head = project(Y, 4)
    if head.dim != 3:
        raise RepresentationError("%s: projection to F_q^4 is not 3-dimensional" % Y)
    X4 = a_member(head, A)
    pts = Y.points()
    over = [v for v in pts if v[:4] in X4]
    X = canonicalize(F, over, Y.n)
    u = min(v for v in pts if v not in X)
    return expand(F, rep2(X), u)


def _coefficient_columns(F: FieldSpec) -> list[Vector]:
    # columns of any rep3 matrix as coordinates w.r.t. (col_1, col_2, col_{q+2})
    base = [(1, 0, 0), (0, 1, 0)]
    base += [(F.alpha_pow(e), 1, 0) for e in range(F.q - 1)]
    cols = list(base) + [(0, 0, 1)]
    for e in range(F.q - 1):
        a = F.alpha_pow(e)
        cols.extend((c[0], c[1], a) for c in base)
    return cols


def column_support(F: FieldSpec) -> list[frozenset[int]]:
    """Index sets (1-based) of the columns lying in each 2-subspace of a rep3 matrix.

    All rep3 matrices share the same linear relations among columns, so the
    family is computed once on coordinates relative to columns 1, 2, q+2.
    """
    cols = _coefficient_columns(F)
    family = []
    seen = set()
    for i, j in itertools.combinations(range(len(cols)), 2):
        plane = canonicalize(F, [cols[i], cols[j]], 3)
        if plane in seen:
            continue
        seen.add(plane)
        family.append(frozenset(k + 1 for k, c in enumerate(cols) if c in plane))
    family.sort(key=sorted)
    return family
