"""Spreads and parallelisms of F_q^4 and their split into A, B, C.

Two deterministic searches are provided:

* ``lex``: take the least line not yet covered, try the spreads through
  it among the remaining lines in lexicographic order, recurse, and
  backtrack on failure.  Fast for q <= 3.
* ``cyclic``: fix the cyclic group G generated by diag(T, 1), where T has
  order (q^2+q+1)/s on F_q^3 (s = 3 if q = 1 mod 3, else 1).  G acts
  semiregularly on lines, so s regular spreads that together meet every
  G-orbit of lines exactly once generate a parallelism.  Regular spreads
  are read off the Klein quadric: for an anisotropic 2-subspace of F_q^6
  the lines whose Pluecker points are orthogonal to it form one.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .gf import FieldSpec
from .linalg import (
    Subspace, all_points, canonicalize, enumerate_subspaces, gaussian_binomial,
    subspace_from_str, vec_to_str,
)

log = logging.getLogger(__name__)

Spread = tuple[Subspace, ...]
Parallelism = tuple[Spread, ...]


class SpreadError(ValueError):
    pass


# -- validation ----------------------------------------------------------------

def spread_defects(lines: Iterable[Subspace], n: int = 4) -> list[str]:
    """Reasons why `lines` is not a spread of F_q^n (empty if it is one)."""
    lines = list(lines)
    if not lines:
        return ["empty candidate"]
    F = lines[0].field
    problems = []
    cover: dict = {}
    for L in lines:
        if L.n != n or L.dim != 2:
            problems.append("%s is not a 2-subspace of F_q^%d" % (L, n))
            continue
        for p in L.points():
            cover[p] = cover.get(p, 0) + 1
    if problems:
        return problems
    for p, c in sorted(cover.items()):
        if c > 1:
            problems.append("point %s covered %d times" % ("".join(map(str, p)), c))
    missing = (F.q**n - 1) // (F.q - 1) - len(cover)
    if missing:
        problems.append("%d points uncovered" % missing)
    return problems


def verify_spread(lines: Iterable[Subspace], n: int = 4) -> bool:
    problems = spread_defects(lines, n)
    for msg in problems[:5]:
        log.debug("spread check: %s", msg)
    return not problems


def parallelism_defects(par: Sequence[Sequence[Subspace]]) -> list[str]:
    problems = []
    if not par or not par[0]:
        return ["empty parallelism"]
    F = par[0][0].field
    q = F.q
    seen = set()
    for i, spread in enumerate(par):
        for msg in spread_defects(spread):
            problems.append("spread %d: %s" % (i, msg))
        for L in spread:
            if L in seen:
                problems.append("line %s in two spreads" % L)
            seen.add(L)
    if len(par) != q * q + q + 1:
        problems.append("%d spreads, expected %d" % (len(par), q * q + q + 1))
    total = gaussian_binomial(4, 2, q)
    if len(seen) != total:
        problems.append("%d distinct lines, expected %d" % (len(seen), total))
    return problems


def verify_parallelism(par: Sequence[Sequence[Subspace]]) -> bool:
    problems = parallelism_defects(par)
    for msg in problems[:5]:
        log.debug("parallelism check: %s", msg)
    return not problems


# -- exact cover -------------------------------------------------------------------

def exact_covers(columns: dict, rows: dict, partial=()):
    """Knuth's Algorithm X over dicts; deterministic for sortable keys.

    `columns` maps column -> set of row keys, `rows` maps row key -> list of
    columns.  Both are mutated during the search and restored on exit.
    """
    if not columns:
        yield list(partial)
        return
    col = min(columns, key=lambda c: (len(columns[c]), c))
    for r in sorted(columns[col]):
        removed = _select(columns, rows, r)
        yield from exact_covers(columns, rows, partial + (r,))
        _deselect(columns, rows, r, removed)


def _select(X, Y, r):
    removed = []
    for j in Y[r]:
        for i in X[j]:
            for k in Y[i]:
                if k != j:
                    X[k].discard(i)
        removed.append(X.pop(j))
    return removed


def _deselect(X, Y, r, removed):
    for j in reversed(Y[r]):
        X[j] = removed.pop()
        for i in X[j]:
            for k in Y[i]:
                if k != j:
                    X[k].add(i)


def _cover_problem(rows: dict):
    cols: dict = {}
    for r, cs in rows.items():
        for c in cs:
            cols.setdefault(c, set()).add(r)
    return cols


def find_spread(F: FieldSpec) -> Spread:
    """The first spread of F_q^4 in exact-cover search order."""
    lines = list(enumerate_subspaces(F, 4, 2))
    index = {p: i for i, p in enumerate(all_points(F, 4))}
    rows = {i: [index[p] for p in L.points()] for i, L in enumerate(lines)}
    sol = next(exact_covers(_cover_problem(rows), rows))
    return tuple(lines[i] for i in sorted(sol))


# -- lexicographic backtracking ------------------------------------------------

def _lex_search(F: FieldSpec) -> Parallelism:
    lines = list(enumerate_subspaces(F, 4, 2))
    index = {p: i for i, p in enumerate(all_points(F, 4))}
    npts = len(index)
    line_pts = [[index[p] for p in L.points()] for L in lines]

    def spreads_through(first, remaining):
        rows = {i: line_pts[i] for i in remaining}
        cols = _cover_problem(rows)
        if len(cols) < npts:
            return
        _select(cols, rows, first)
        for sol in exact_covers(cols, rows, (first,)):
            yield sorted(sol)

    def search(remaining, acc):
        if not remaining:
            return acc
        first = min(remaining)
        for spread in spreads_through(first, remaining):
            found = search(remaining.difference(spread), acc + [spread])
            if found:
                return found
        return None

    result = search(frozenset(range(len(lines))), [])
    if result is None:  # pragma: no cover
        raise SpreadError("no parallelism of F_%d^4 found" % F.q)
    return tuple(tuple(lines[i] for i in s) for s in result)


# -- cyclic search over regular spreads ------------------------------------------

def _mat_mul(F, A, B):
    add, mul = F.add_table, F.mul_table
    out = []
    for row in A:
        new = []
        for j in range(len(B[0])):
            s = 0
            for k, a in enumerate(row):
                s = add[s][mul[a][B[k][j]]]
            new.append(s)
        out.append(new)
    return out


def _mat_pow(F, A, e):
    n = len(A)
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    while e:
        if e & 1:
            R = _mat_mul(F, R, A)
        A = _mat_mul(F, A, A)
        e >>= 1
    return R


def _mat_order(F, A, bound):
    n = len(A)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    B, k = A, 1
    while B != ident:
        B = _mat_mul(F, B, A)
        k += 1
        if k > bound:
            return None
    return k


def cyclic_generator(F: FieldSpec):
    """(T, d, s): T on F_q^3 of order d = (q^2+q+1)/s."""
    q = F.q
    neg = F.neg_table
    for a, b, c in itertools.product(F.elements, repeat=3):
        if c == 0:
            continue
        companion = [[0, 0, neg[c]], [1, 0, neg[b]], [0, 1, neg[a]]]
        if _mat_order(F, companion, q**3 - 1) == q**3 - 1:
            break
    else:  # pragma: no cover
        raise SpreadError("no primitive cubic over %s" % F)
    s = 3 if q % 3 == 1 else 1
    T = _mat_pow(F, companion, (q - 1) * s)
    return T, (q * q + q + 1) // s, s


def _apply(F, T, v):
    add, mul = F.add_table, F.mul_table
    head = []
    for row in T:
        acc = 0
        for a, x in zip(row, v):
            acc = add[acc][mul[a][x]]
        head.append(acc)
    return tuple(head) + tuple(v[3:])


_PLUCKER_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def _plucker(F, L):
    u, v = L.basis
    return tuple(F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i])) for i, j in _PLUCKER_PAIRS)


def _klein_zero_matrix(F, plucker, points):
    """Boolean (lines x points): polar form of the Klein quadric vanishes."""
    add, mul, neg = (np.asarray(t, dtype=np.int64) for t in
                     (F.add_table, F.mul_table, F.neg_table))
    P = np.asarray(plucker, dtype=np.int64)
    A = np.asarray(points, dtype=np.int64)
    # B(p, a) = p01 a23 + p23 a01 - p02 a13 - p13 a02 + p03 a12 + p12 a03
    terms = [(0, 5, False), (5, 0, False), (1, 4, True), (4, 1, True), (2, 3, False), (3, 2, False)]
    acc = np.zeros((len(P), len(A)), dtype=np.int64)
    for i, j, negate in terms:
        t = mul[P[:, i][:, None], A[:, j][None, :]]
        if negate:
            t = neg[t]
        acc = add[acc, t]
    return acc == 0


def _cyclic_search(F: FieldSpec) -> Parallelism:
    q = F.q
    T, d, s = cyclic_generator(F)
    lines = list(enumerate_subspaces(F, 4, 2))
    idx = {L: i for i, L in enumerate(lines)}
    orbit = [-1] * len(lines)
    n_orbits = 0
    for i, L in enumerate(lines):
        if orbit[i] >= 0:
            continue
        cur, size = L, 0
        while orbit[idx[cur]] < 0:
            orbit[idx[cur]] = n_orbits
            cur = canonicalize(F, [_apply(F, T, v) for v in cur.basis], 4)
            size += 1
        if size != d:  # pragma: no cover - semiregularity is a theorem
            raise SpreadError("line orbit of size %d, expected %d" % (size, d))
        n_orbits += 1

    base = _regular_bases(F, lines, orbit, n_orbits, s)
    if base is None:
        log.debug("no regular cyclic parallelism over %s; trying arbitrary spreads", F)
        base = _general_bases(F, lines, orbit, s)
    if base is None:
        raise SpreadError("no cyclic parallelism over %s" % F)

    spreads = []
    for members in base:
        spread = [lines[i] for i in members]
        for _ in range(d):
            spreads.append(tuple(sorted(spread)))
            spread = [canonicalize(F, [_apply(F, T, v) for v in L.basis], 4) for L in spread]
    return tuple(spreads)


def _regular_bases(F, lines, orbit, n_orbits, s):
    q = F.q
    pts6 = all_points(F, 6)
    pindex = {p: i for i, p in enumerate(pts6)}
    zero = _klein_zero_matrix(F, [_plucker(F, L) for L in lines], pts6)
    masks = [int.from_bytes(np.packbits(col, bitorder="little").tobytes(), "little")
             for col in zero.T]
    orbit_arr = np.asarray(orbit)
    target = q * q + 1

    candidates = {}
    for ell in enumerate_subspaces(F, 6, 2):
        a, b = ell.basis
        m = masks[pindex[a]] & masks[pindex[b]]
        if bin(m).count("1") != target:
            continue
        members = tuple(i for i in range(len(lines)) if m >> i & 1)
        orbs = set(orbit_arr[list(members)].tolist())
        if len(orbs) != target or members in candidates:
            continue
        candidates[members] = sorted(orbs)
        if s == 1:
            break
    log.debug("%d orbit-transversal regular spreads over %s", len(candidates), F)
    cols = _cover_problem(candidates)
    if len(cols) < n_orbits:
        return None
    return next(exact_covers(cols, dict(candidates)), None)


def _general_bases(F, lines, orbit, s):
    # s copies of the point set plus one column per line orbit; the first
    # copy is pinned to line 0 on orbit 0 (any base spread can be moved
    # there by G).
    pts = {p: i for i, p in enumerate(all_points(F, 4))}
    rows = {}
    for c in range(s):
        for i, L in enumerate(lines):
            if orbit[i] == 0 and (c, i) != (0, 0):
                continue
            rows[(c, i)] = [("P", c, pts[p]) for p in L.points()] + [("O", orbit[i])]
    sol = next(exact_covers(_cover_problem(rows), rows), None)
    if sol is None:
        return None
    return [sorted(i for c2, i in sol if c2 == c) for c in range(s)]


def find_parallelism(F: FieldSpec, method: str = "auto") -> Parallelism:
    """A deterministic parallelism of F_q^4; spreads sorted by least member."""
    if method == "auto":
        method = "lex" if F.q <= 3 else "cyclic"
    if method == "lex":
        par = _lex_search(F)
    elif method == "cyclic":
        par = _cyclic_search(F)
    else:
        raise ValueError("unknown parallelism method %r" % method)
    par = tuple(sorted((tuple(sorted(s)) for s in par), key=lambda s: s[0]))
    problems = parallelism_defects(par)
    if problems:  # pragma: no cover
        raise SpreadError("internal error, search returned an invalid parallelism: %s" % problems[0])
    return par


# -- A / B / C split --------------------------------------------------------------

@dataclass(frozen=True)
class PartitionABC:
    A: Spread
    B: tuple[Spread, ...]
    C: tuple[Spread, ...]
    C_xi: dict

    @property
    def spreads(self) -> Parallelism:
        return (self.A,) + self.B + self.C

    def role_of(self) -> dict:
        """Map each line of F_q^4 to 'A', 'B' or 'C'."""
        out = {L: "A" for L in self.A}
        out.update({L: "B" for s in self.B for L in s})
        out.update({L: "C" for s in self.C for L in s})
        return out


def partition_abc(par: Sequence[Sequence[Subspace]], order: Sequence[int] | None = None,
                  check: bool = True) -> PartitionABC:
    """Positional split: spread 0 is A, the next q are B, the rest C.

    C_xi takes consecutive runs of q spreads of C, xi in code order.
    `order` permutes the spreads before the split.
    """
    par = [tuple(s) for s in par]
    if check:
        problems = parallelism_defects(par)
        if problems:
            raise SpreadError("not a parallelism: %s" % problems[0])
    if order is not None:
        if sorted(order) != list(range(len(par))):
            raise ValueError("spread order must permute range(%d)" % len(par))
        par = [par[i] for i in order]
    q = par[0][0].field.q
    A, B, C = par[0], tuple(par[1:q + 1]), tuple(par[q + 1:])
    C_xi = {xi: C[xi * q:(xi + 1) * q] for xi in range(q)}
    return PartitionABC(A, B, C, C_xi)


# -- file format ---------------------------------------------------------------

def format_parallelism(par: Sequence[Sequence[Subspace]]) -> str:
    """One spread per line; members ';'-separated as 'v1,v2' basis pairs."""
    return "".join(";".join(",".join(_vec(v) for v in L.basis) for L in s) + "\n" for s in par)


def _vec(v):
    return vec_to_str(v)


def parse_parallelism(F: FieldSpec, text: str) -> Parallelism:
    spreads = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        raw = raw.split("#", 1)[0].strip()
        if not raw:
            continue
        spread = []
        for member in raw.split(";"):
            try:
                L = subspace_from_str(F, member.replace(",", ";"), 4)
            except ValueError as exc:
                raise SpreadError("line %d: %s" % (lineno, exc)) from None
            if L.dim != 2:
                raise SpreadError("line %d: member %r is not 2-dimensional" % (lineno, member))
            spread.append(L)
        spreads.append(tuple(spread))
    return tuple(spreads)
