"""Exhaustive checks on designs of 2- and 3-subspaces.

Coverage counts, for every 2-subspace T of the ambient space, the blocks
containing T.  It is computed from the blocks' own 2-subspaces (each
block contributes [k,2]_q keys); the number of 2-subspaces met by no block
is the ambient total minus the number of distinct keys, and
``uncovered()`` enumerates them when a listing is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .construction import ConstructionResult
from .designfile import Design
from .gf import FieldSpec
from .linalg import (
    LinalgError, Subspace, all_points, canonicalize, enumerate_subspaces,
    gaussian_binomial, orthogonal_complement, unit,
)
from .representation import representation_basis
from .spreads import spread_defects

SAMPLE = 10


@dataclass
class CoverageReport:
    q: int
    n: int
    k: int
    blocks: int
    histogram: dict[int, int]
    target: int | None = None
    offenders: list[tuple[Subspace, int]] = field(default_factory=list)
    keys: np.ndarray = field(default=None, repr=False)
    counts: np.ndarray = field(default=None, repr=False)
    field_: FieldSpec = field(default=None, repr=False)
    t: int = 2

    @property
    def total(self) -> int:
        return gaussian_binomial(self.n, 2, self.q)

    def invariants_hold(self) -> bool:
        incid = sum(m * c for m, c in self.histogram.items())
        return (sum(self.histogram.values()) == self.total
                and incid == self.blocks * gaussian_binomial(self.k, 2, self.q))

    def multiplicity(self, T: Subspace) -> int:
        key = K.line_key(self.field_, T)
        i = np.searchsorted(self.keys, key)
        if i < len(self.keys) and self.keys[i] == key:
            return int(self.counts[i])
        return 0

    def uncovered(self, limit: int | None = None) -> list[Subspace]:
        """2-subspaces at multiplicity 0, in lexicographic order."""
        out = []
        present = set(self.keys.tolist())
        want = self.histogram.get(0, 0) if limit is None else min(limit, self.histogram.get(0, 0))
        if want == 0:
            return out
        for T in enumerate_subspaces(self.field_, self.n, 2):
            if K.line_key(self.field_, T) not in present:
                out.append(T)
                if len(out) >= want:
                    break
        return out

    def summary(self) -> dict:
        return {
            "q": self.q, "n": self.n, "k": self.k, "blocks": self.blocks,
            "histogram": {str(m): c for m, c in sorted(self.histogram.items())},
            "target": self.target,
            "offenders": [[T.to_str(), m] for T, m in self.offenders],
            "double_count_ok": self.invariants_hold(),
        }


def coverage(D: Design, target: int | None = None, workers: int | None = None) -> CoverageReport:
    if D.k < 2:
        raise LinalgError("coverage of 2-subspaces needs blocks of dimension >= 2")
    F = D.field
    keys, counts = K.contained_line_counts(F, D.blocks, D.n, D.k, workers)
    hist: dict[int, int] = {}
    if len(counts):
        vals, freq = np.unique(counts, return_counts=True)
        hist = {int(v): int(f) for v, f in zip(vals, freq)}
    zero = gaussian_binomial(D.n, 2, F.q) - len(keys)
    if zero:
        hist[0] = zero
    hist = dict(sorted(hist.items()))
    rep = CoverageReport(F.q, D.n, D.k, len(D), hist, target, keys=keys, counts=counts, field_=F)
    if target is not None:
        bad = np.nonzero(counts != target)[0][:SAMPLE]
        rep.offenders = [(K.key_to_subspace(F, int(keys[i]), D.n), int(counts[i])) for i in bad]
        if target != 0 and zero and len(rep.offenders) < SAMPLE:
            rep.offenders += [(T, 0) for T in rep.uncovered(SAMPLE - len(rep.offenders))]
    return rep


# -- derived / residual pair ----------------------------------------------------

@dataclass
class PairReport:
    passed: bool
    checks: dict[str, bool]
    coverage: CoverageReport | None
    messages: list[str]
    offenders: list[tuple[Subspace, int]]

    def summary(self) -> dict:
        return {
            "passed": self.passed,
            "checks": self.checks,
            "messages": self.messages,
            "offenders": [[T.to_str(), m] for T, m in self.offenders],
            "coverage": self.coverage.summary() if self.coverage else None,
        }


def verify_pair(derived: Design, residual: Design, workers: int | None = None) -> PairReport:
    """Derived spread plus residual design covering everything else q^2 times."""
    if derived.n != residual.n:
        raise LinalgError("ambient mismatch: derived n=%d, residual n=%d" % (derived.n, residual.n))
    if derived.field.q != residual.field.q:
        raise LinalgError("field mismatch")
    if derived.k != 2 or residual.k != 3:
        raise LinalgError("expected derived 2-subspaces and residual 3-subspaces, got k=%d, k=%d"
                          % (derived.k, residual.k))
    F, n, q = residual.field, residual.n, residual.field.q
    lam = q * q
    messages: list[str] = []
    offenders: list[tuple[Subspace, int]] = []

    problems = spread_defects(derived.blocks, n)
    checks = {"derived_is_spread": not problems}
    messages += ["derived: " + p for p in problems[:SAMPLE]]

    rep = coverage(residual, workers=workers)
    dkeys = np.unique(K.keys_of(F, derived.blocks))
    pos = np.searchsorted(rep.keys, dkeys)
    pos_ok = pos < len(rep.keys)
    hit = np.zeros(len(dkeys), dtype=bool)
    hit[pos_ok] = rep.keys[pos[pos_ok]] == dkeys[pos_ok]
    checks["derived_uncovered"] = not hit.any()
    for key in dkeys[hit][:SAMPLE]:
        T = K.key_to_subspace(F, int(key), n)
        offenders.append((T, rep.multiplicity(T)))
        messages.append("derived member %s lies in %d residual blocks" % (T, offenders[-1][1]))

    bad = np.nonzero(rep.counts != lam)[0]
    bad = bad[~np.isin(rep.keys[bad], dkeys)]
    missing = rep.total - len(rep.keys) - (len(dkeys) - int(hit.sum()))
    checks["others_at_lambda"] = len(bad) == 0 and missing == 0
    for i in bad[:SAMPLE]:
        T = K.key_to_subspace(F, int(rep.keys[i]), n)
        offenders.append((T, int(rep.counts[i])))
        messages.append("%s lies in %d residual blocks, expected %d" % (T, rep.counts[i], lam))
    if missing:
        dset = set(dkeys.tolist())
        listed = 0
        for T in rep.uncovered():
            if K.line_key(F, T) in dset:
                continue
            offenders.append((T, 0))
            messages.append("%s lies in no residual block, expected %d" % (T, lam))
            listed += 1
            if listed >= SAMPLE:
                break

    dups = residual.duplicates()
    checks["residual_distinct"] = not dups
    messages += ["repeated residual block %s" % B for B in dups[:SAMPLE]]
    rep.target = lam
    return PairReport(all(checks.values()), checks, rep, messages, offenders)


# -- puncturing ------------------------------------------------------------------

def _drop_last(F, rows, n):
    return canonicalize(F, [r[:-1] for r in rows], n - 1)


def _meet_last_hyperplane(B: Subspace):
    """Basis of B intersected with {x_n = 0}."""
    F = B.field
    rows = list(B.basis)
    for i, r in enumerate(rows):
        if r[-1]:
            inv = F.inv(r[-1])
            out = []
            for j, s in enumerate(rows):
                if j != i and s[-1]:
                    c = F.neg(F.mul(s[-1], inv))
                    s = tuple(F.add(a, F.mul(c, b)) for a, b in zip(s, r))
                if j != i:
                    out.append(s)
            return out
    return rows


def punct_der(S: Design) -> Design:
    """{Z(B & V) : u in B} with u = e_n, V = {x_n = 0}, Z dropping x_n."""
    F, n = S.field, S.n
    u = unit(n, n)
    out = Design(F, n - 1, S.k - 1)
    for B, tag in S:
        if u in B:
            out.add(_drop_last(F, _meet_last_hyperplane(B), n), tag)
    return out


def punct_res(S: Design) -> Design:
    """{Z(B) : u not in B}."""
    F, n = S.field, S.n
    u = unit(n, n)
    out = Design(F, n - 1, S.k)
    for B, tag in S:
        if u not in B:
            out.add(_drop_last(F, B.basis, n), tag)
    return out


# -- divisibility ---------------------------------------------------------------

def divisibility(t: int, k: int, n: int, q: int) -> tuple[bool, list[Fraction]]:
    """[n-i, t-i]_q / [k-i, t-i]_q for i = 0 .. t-1; true iff all integral."""
    if not 0 <= t <= k <= n:
        raise ValueError("need 0 <= t <= k <= n")
    ratios = [Fraction(gaussian_binomial(n - i, t - i, q), gaussian_binomial(k - i, t - i, q))
              for i in range(t)]
    return all(r.denominator == 1 for r in ratios), ratios


# -- duality -------------------------------------------------------------------

def dual(S: Design) -> Design:
    out = Design(S.field, S.n, S.n - S.k)
    for B, tag in S:
        out.add(orthogonal_complement(B), tag)
    return out


@dataclass
class DualReport:
    passed: bool
    checks: dict[str, bool]
    complement: PairReport
    direct: CoverageReport
    direct_zero_is_spread: bool
    messages: list[str]

    def summary(self) -> dict:
        return {
            "passed": self.passed,
            "checks": self.checks,
            "messages": self.messages,
            "complement": self.complement.summary(),
            "direct_histogram": {str(m): c for m, c in self.direct.histogram.items()},
            "direct_zero_is_spread": self.direct_zero_is_spread,
        }


def verify_dual(derived: Design, residual: Design, workers: int | None = None) -> DualReport:
    """Check the dual residual against the dual derived spread.

    Complement check: dual blocks are 3-subspaces and dual spread members
    4-subspaces of F_q^n.  A 4-subspace W must contain no dual block when it
    is a dual spread member and exactly q^2 of them otherwise, and every
    hyperplane must contain exactly one dual spread member.  Containment
    E <= W is counted as W^perp <= E^perp, with both complements taken
    afresh from the dual side.

    The direct 2-subspace coverage of the dual blocks is reported as well.
    """
    F, n = residual.field, residual.n
    dres, dder = dual(residual), dual(derived)
    messages = []
    checks = {"dual_dims": dres.k == n - 3 and dder.k == n - 2}
    back_res, back_der = dual(dres), dual(dder)
    hyper_ok = not spread_defects(back_der.blocks, n)
    checks["dual_spread"] = hyper_ok
    if not hyper_ok:
        messages.append("dual spread: some hyperplane holds a number of members other than one")
    comp = verify_pair(back_der, back_res, workers)
    checks["complement_coverage"] = comp.passed
    messages += ["complement: " + m for m in comp.messages]

    direct = coverage(dres, workers=workers)
    zero = direct.uncovered()
    zero_spread = len(zero) == (F.q**n - 1) // (F.q**2 - 1) and not spread_defects(zero, n)
    others = {m for m in direct.histogram if m != 0}
    checks["involution"] = back_res.sorted().blocks == residual.sorted().blocks
    passed = all(checks.values())
    if not (zero_spread and others == {F.q**2}):
        messages.append("direct coverage of dual blocks: %s" % direct.histogram)
    return DualReport(passed, checks, comp, direct, zero_spread and others == {F.q**2}, messages)


# -- per-source multiplicities -------------------------------------------------

def lifts(X: Subspace) -> list[Subspace]:
    """The q^4 2-subspaces of F_q^6 whose first four coordinates give X."""
    F = X.field
    v1, v2 = representation_basis(X)
    out = []
    for a, b in itertools.product(itertools.product(F.elements, repeat=2), repeat=2):
        out.append(canonicalize(F, [v1 + a, v2 + b], 6))
    return out


def _through(F, p):
    # 2-subspaces meeting span{e5, e6} exactly in the point p
    return [canonicalize(F, [p, w + (0, 0)], 6) for w in all_points(F, 4)]


@dataclass
class LemmaCheck:
    name: str
    expected: int
    checked: int
    passed: bool
    observed: dict[int, int]


def _counts_for(rep: CoverageReport, F, lines) -> np.ndarray:
    keys = K.keys_of(F, lines)
    pos = np.searchsorted(rep.keys, keys)
    pos = np.minimum(pos, max(len(rep.keys) - 1, 0))
    if not len(rep.keys):
        return np.zeros(len(keys), dtype=np.int64)
    return np.where(rep.keys[pos] == keys, rep.counts[pos], 0)


def _check(name, expected, counts) -> LemmaCheck:
    vals, freq = np.unique(counts, return_counts=True)
    observed = {int(v): int(f) for v, f in zip(vals, freq)}
    return LemmaCheck(name, expected, int(len(counts)), set(observed) == {expected}, observed)


def source_multiplicities(result: ConstructionResult, sample: int | None = None,
                          seed: int = 0, workers: int | None = None) -> list[LemmaCheck]:
    """Per-source coverage of the construction's 2-subspace classes.

    With `sample`, at most that many members of A, B and C each are
    checked (chosen by a seeded RNG); otherwise all of them.
    """
    F = result.derived.field
    q = F.q
    part = result.partition
    rng = np.random.default_rng(seed)

    def pick(members):
        members = list(members)
        if sample is None or len(members) <= sample:
            return members
        idx = sorted(rng.choice(len(members), size=sample, replace=False).tolist())
        return [members[i] for i in idx]

    res = result.residual
    srcs = {t: Design(F, 6, 3, res.with_tag(t), [t] * len(res.with_tag(t))) for t in "BCD"}
    cov = {t: coverage(d, workers=workers) for t, d in srcs.items()}
    spread_keys = set(K.keys_of(F, result.derived.blocks).tolist())

    A = pick(part.A)
    B = pick([X for s in part.B for X in s])
    C = pick([X for s in part.C for X in s])
    a_lines = [T for X in A for T in lifts(X) if K.line_key(F, T) not in spread_keys]
    b_lines = [T for X in B for T in lifts(X)]
    c_lines = [T for X in C for T in lifts(X)]
    five = [T for T in _through(F, unit(6, 6))]
    four = [T for xi in F.elements for T in _through(F, (0, 0, 0, 0, 1, xi))]

    out = [
        _check("A-lifts in S_D", q * q, _counts_for(cov["D"], F, a_lines)),
        _check("B-lifts in S_B", 1, _counts_for(cov["B"], F, b_lines)),
        _check("C-lifts in S_C", 1, _counts_for(cov["C"], F, c_lines)),
        _check("B-lifts in S_D", q * q - 1, _counts_for(cov["D"], F, b_lines)),
        _check("C-lifts in S_D", q * q - 1, _counts_for(cov["D"], F, c_lines)),
        _check("five leading zeros in S_B", q * q, _counts_for(cov["B"], F, five)),
        _check("four leading zeros in S_C", q * q, _counts_for(cov["C"], F, four)),
    ]
    return out
