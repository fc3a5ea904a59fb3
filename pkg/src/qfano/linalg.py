"""Vectors and subspaces of F_q^n.

Vectors are plain tuples of element codes, coordinate 1 first.  Python
tuple comparison is then exactly the lexicographic order used throughout
(coordinate 1 most significant, elements compared by code).

A :class:`Subspace` is identified by its reduced row echelon basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .gf import FieldSpec

Vector = tuple[int, ...]

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class LinalgError(ValueError):
    """Dimension mismatches and other malformed linear-algebra input."""


# -- vectors -----------------------------------------------------------------

def vec_add(F: FieldSpec, u: Vector, v: Vector) -> Vector:
    add = F.add_table
    return tuple(add[a][b] for a, b in zip(u, v))


def vec_scale(F: FieldSpec, c: int, v: Vector) -> Vector:
    row = F.mul_table[c]
    return tuple(row[a] for a in v)


def vec_axpy(F: FieldSpec, c: int, u: Vector, v: Vector) -> Vector:
    """c*u + v."""
    add, row = F.add_table, F.mul_table[c]
    return tuple(add[row[a]][b] for a, b in zip(u, v))


def dot(F: FieldSpec, u: Vector, v: Vector) -> int:
    add, mul = F.add_table, F.mul_table
    s = 0
    for a, b in zip(u, v):
        s = add[s][mul[a][b]]
    return s


def normalize_rep(F: FieldSpec, v: Vector) -> Vector:
    """Scale v so that its first nonzero coordinate is 1."""
    for c in v:
        if c:
            if c == 1:
                return tuple(v)
            return vec_scale(F, F.inv_table[c], v)
    raise LinalgError("cannot normalize the zero vector")


def lex_less(u: Vector, v: Vector) -> bool:
    return tuple(u) < tuple(v)


def vec_to_str(v: Vector) -> str:
    return "".join(DIGITS[c] for c in v)


def vec_from_str(text: str) -> Vector:
    try:
        return tuple(DIGITS.index(ch) for ch in text.strip())
    except ValueError:
        raise LinalgError("bad vector literal %r" % text) from None


def unit(n: int, i: int) -> Vector:
    """e_i with coordinates counted from 1."""
    return tuple(1 if j == i - 1 else 0 for j in range(n))


# -- row reduction -----------------------------------------------------------

def rref(F: FieldSpec, rows: Iterable[Sequence[int]], n: int) -> tuple[Vector, ...]:
    """Reduced row echelon basis of the row span; zero rows dropped."""
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    work = [list(r) for r in rows]
    for r in work:
        if len(r) != n:
            raise LinalgError("row of length %d in ambient %d" % (len(r), n))
    rank = 0
    nrows = len(work)
    for col in range(n):
        piv = None
        for i in range(rank, nrows):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        c = prow[col]
        if c != 1:
            s = mul[inv[c]]
            prow = [s[a] for a in prow]
            work[rank] = prow
        for i in range(nrows):
            if i != rank:
                r = work[i]
                c = r[col]
                if c:
                    s = mul[neg[c]]
                    work[i] = [add[a][s[b]] for a, b in zip(r, prow)]
        rank += 1
        if rank == nrows:
            break
    return tuple(tuple(r) for r in work[:rank])


@dataclass(frozen=True, order=True)
class Subspace:
    """A subspace of F_q^n held in canonical (RREF) form."""

    basis: tuple[Vector, ...]
    n: int
    field: FieldSpec = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, c in enumerate(r) if c) for r in self.basis)

    def reduce(self, v: Sequence[int]) -> Vector:
        if len(v) != self.n:
            raise LinalgError("vector of length %d vs ambient %d" % (len(v), self.n))
        F = self.field
        add, mul, neg = F.add_table, F.mul_table, F.neg_table
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c:
                s = mul[neg[c]]
                w = [add[a][s[b]] for a, b in zip(w, row)]
        return tuple(w)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def vectors(self) -> Iterator[Vector]:
        """All q**dim vectors."""
        F = self.field
        for coeffs in itertools.product(F.elements, repeat=self.dim):
            v = (0,) * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = vec_axpy(F, c, row, v)
            yield v

    def points(self) -> list[Vector]:
        """The normalized nonzero vectors, in lexicographic order."""
        F = self.field
        out = []
        basis = self.basis
        for lead in range(self.dim):
            # vectors whose first nonzero coefficient (w.r.t. the RREF basis) is 1 at `lead`
            for tail in itertools.product(F.elements, repeat=self.dim - lead - 1):
                v = basis[lead]
                for c, row in zip(tail, basis[lead + 1:]):
                    if c:
                        v = vec_axpy(F, c, row, v)
                out.append(v)
        out.sort()
        return out

    def to_str(self) -> str:
        return ";".join(vec_to_str(r) for r in self.basis)

    def __str__(self):
        return "<%s>" % (self.to_str() or "0^%d" % self.n)


def canonicalize(F: FieldSpec, gens: Iterable[Sequence[int]], n: int | None = None) -> Subspace:
    gens = [tuple(g) for g in gens]
    if n is None:
        if not gens:
            raise LinalgError("ambient dimension needed for an empty generator set")
        n = len(gens[0])
    return Subspace(rref(F, gens, n), n, F)


def subspace_from_str(F: FieldSpec, text: str, n: int | None = None) -> Subspace:
    text = text.strip()
    gens = [vec_from_str(t) for t in text.split(";")] if text else []
    if any(c >= F.q for g in gens for c in g):
        raise LinalgError("element code out of range for GF(%d) in %r" % (F.q, text))
    return canonicalize(F, gens, n)


def contains(U: Subspace, v: Sequence[int]) -> bool:
    return v in U


def is_subspace(U: Subspace, W: Subspace) -> bool:
    """U <= W."""
    if U.n != W.n:
        raise LinalgError("ambient mismatch %d vs %d" % (U.n, W.n))
    return all(r in W for r in U.basis)


def join(U: Subspace, *more) -> Subspace:
    """Span of U together with further subspaces or vectors."""
    rows = list(U.basis)
    for x in more:
        rows.extend(x.basis if isinstance(x, Subspace) else [tuple(x)])
    return canonicalize(U.field, rows, U.n)


def intersection_dim(U: Subspace, W: Subspace) -> int:
    return U.dim + W.dim - join(U, W).dim


def project(S: Subspace, coords: int) -> Subspace:
    """Image under keeping the first `coords` coordinates."""
    return canonicalize(S.field, [r[:coords] for r in S.basis], coords)


def orthogonal_complement(S: Subspace) -> Subspace:
    """Complement under the standard dot product."""
    F = S.field
    n = S.n
    piv = S.pivots
    free = [j for j in range(n) if j not in piv]
    rows = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, p in zip(S.basis, piv):
            v[p] = F.neg_table[row[f]]
        rows.append(v)
    return canonicalize(F, rows, n)


# -- enumeration and counting -------------------------------------------------

def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-subspaces of F_q^n."""
    if not 0 <= k <= n:
        raise LinalgError("need 0 <= k <= n, got n=%d k=%d" % (n, k))
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def count_by_profiles(n: int, k: int, q: int) -> int:
    """Count RREF k x n matrices pivot profile by pivot profile."""
    total = 0
    for piv in itertools.combinations(range(n), k):
        free = sum(n - p - 1 - (k - i - 1) for i, p in enumerate(piv))
        total += q**free
    return total


def enumerate_subspaces(F: FieldSpec, n: int, k: int) -> Iterator[Subspace]:
    """Every k-subspace of F_q^n once, in lex order of the flattened RREF basis."""
    if not 0 <= k <= n:
        raise LinalgError("need 0 <= k <= n, got n=%d k=%d" % (n, k))
    elems = F.elements

    def rows_from(start, k, forbidden):
        # rows with pivots >= start, pivots avoiding `forbidden` columns
        # (where an earlier row is nonzero); lexicographic order of the
        # concatenated rows.
        if k == 0:
            yield ()
            return
        for p in range(n - k, start - 1, -1):
            if p in forbidden:
                continue
            tail_len = n - p - 1
            for tail in itertools.product(elems, repeat=tail_len):
                row = (0,) * p + (1,) + tail
                nz = forbidden | {j for j in range(p + 1, n) if row[j]}
                for rest in rows_from(p + 1, k - 1, nz):
                    yield (row,) + rest

    for basis in rows_from(0, k, frozenset()):
        yield Subspace(basis, n, F)


def all_points(F: FieldSpec, n: int) -> list[Vector]:
    """Normalized nonzero vectors of F_q^n, lexicographically."""
    return [v for v in itertools.product(F.elements, repeat=n)
            if any(v) and next(c for c in v if c) == 1]
