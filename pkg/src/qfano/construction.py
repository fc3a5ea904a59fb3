"""Derived and residual planes: S_0 and the extensions of types A-D.

Blocks live in F_q^6.  A member X of the parallelism is written through
its representation basis (v_1, v_2); lifts append two coordinates.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

from .designfile import Design
from .extension import (
    CosetPartition, ExtensionCode, coset_partition, expand, extension_code, stack,
)
from .gf import FieldSpec
from .linalg import Subspace, canonicalize, gaussian_binomial, unit
from .representation import expansions_of, rep3, representation_basis
from .spreads import Parallelism, PartitionABC, find_parallelism, partition_abc

log = logging.getLogger(__name__)


class ConstructionError(RuntimeError):
    pass


@dataclass
class ConstructionOptions:
    """Choices left open by the construction.

    parallelism: explicit parallelism; searched for when None.
    method: search method passed to find_parallelism.
    matchings: per A-member index, a permutation pi of range(q+1) so that
        Y_j is matched with C_{pi[j]}; identity when absent.
    coset_order / spread_order: permutations applied before the positional
        splits into C_1..C_{q+1} and A/B/C.
    """

    parallelism: Parallelism | None = None
    method: str = "auto"
    matchings: dict[int, Sequence[int]] = field(default_factory=dict)
    coset_order: Sequence[int] | None = None
    spread_order: Sequence[int] | None = None


@dataclass
class ConstructionResult:
    derived: Design
    residual: Design
    partition: PartitionABC
    code: ExtensionCode
    cosets: CosetPartition

    @property
    def derived_spread(self) -> list[Subspace]:
        return self.derived.blocks


def block_s0(F: FieldSpec) -> Subspace:
    return canonicalize(F, [unit(6, 5), unit(6, 6)], 6)


def type_a(A: Sequence[Subspace], code: ExtensionCode) -> list[Subspace]:
    F = A[0].field
    out = []
    for X in A:
        v1, v2 = representation_basis(X)
        for Z in code.members:
            out.append(canonicalize(F, [v1 + Z[0], v2 + Z[1]], 6))
    return out


def type_b(B: Sequence[Sequence[Subspace]]) -> list[Subspace]:
    F = B[0][0].field
    e6 = unit(6, 6)
    out = []
    for spread in B:
        for X in spread:
            v1, v2 = representation_basis(X)
            for a, b in itertools.product(F.elements, repeat=2):
                out.append(canonicalize(F, [v1 + (a, 0), v2 + (b, 0), e6], 6))
    return out


def type_c(part: PartitionABC) -> list[Subspace]:
    F = part.A[0].field
    out = []
    for xi in F.elements:
        w = (0, 0, 0, 0, 1, xi)
        for spread in part.C_xi[xi]:
            for X in spread:
                v1, v2 = representation_basis(X)
                for c1, c2 in itertools.product(F.elements, repeat=2):
                    out.append(canonicalize(F, [v1 + (0, c1), v2 + (0, c2), w], 6))
    return out


def type_d_matrices(A: Sequence[Subspace], cosets: CosetPartition, x: int,
                    matching: Sequence[int] | None = None):
    """Yield (j, stacked 6-row matrix) for A-member x, in construction order.

    j is 0-based: Y_{j+1} is matched with part C_{matching[j]+1}.
    """
    X = A[x]
    F = X.field
    q = F.q
    if matching is None:
        matching = range(q + 1)
    matching = list(matching)
    if sorted(matching) != list(range(q + 1)):
        raise ConstructionError("matching for A-member %d is not a permutation of range(%d)"
                                % (x, q + 1))
    vs = list(itertools.product(F.elements, repeat=2))
    for j, (u, Y) in enumerate(expansions_of(X)):
        R = rep3(Y, A)
        for Z in cosets.parts[matching[j]]:
            for v in vs:
                yield j, stack(R, expand(F, Z, v))


def type_d(A: Sequence[Subspace], cosets: CosetPartition,
           matchings: dict[int, Sequence[int]] | None = None) -> list[Subspace]:
    F = A[0].field
    q = F.q
    matchings = matchings or {}
    out = []
    for x in range(len(A)):
        for _, M in type_d_matrices(A, cosets, x, matchings.get(x)):
            # columns 1, 2 and q+2 are independent and span the block
            out.append(canonicalize(F, [M[0], M[1], M[q + 1]], 6))
    return out


def expected_sizes(q: int) -> dict[str, int]:
    return {
        "S0": 1,
        "A": q**4 + q**2,
        "B": q**3 * (q**2 + 1),
        "C": q**4 * (q**2 + 1),
        "D": q**4 * (q**4 - 1),
    }


def construct(F: FieldSpec, opts: ConstructionOptions | None = None) -> ConstructionResult:
    opts = opts or ConstructionOptions()
    par = opts.parallelism
    if par is None:
        par = find_parallelism(F, opts.method)
    part = partition_abc(par, opts.spread_order)
    code = extension_code(F)
    cosets = coset_partition(F, code, opts.coset_order)

    derived = Design(F, 6, 2)
    derived.add(block_s0(F), "S0")
    derived.extend(type_a(part.A, code), "A")

    residual = Design(F, 6, 3)
    residual.extend(type_b(part.B), "B")
    residual.extend(type_c(part), "C")
    residual.extend(type_d(part.A, cosets, opts.matchings), "D")

    sizes = {**derived.tag_counts(), **residual.tag_counts()}
    if sizes != expected_sizes(F.q):
        raise ConstructionError("component sizes %r differ from %r" % (sizes, expected_sizes(F.q)))
    total = gaussian_binomial(7, 2, F.q) // gaussian_binomial(3, 2, F.q)
    if len(derived) + len(residual) != total:  # pragma: no cover
        raise ConstructionError("block total %d, expected %d" % (len(derived) + len(residual), total))
    for D in (derived, residual):
        if len(set(D.blocks)) != len(D):
            raise ConstructionError("repeated blocks among %s" % sorted(set(D.tags)))
    log.info("constructed q=%d: derived %d, residual %d", F.q, len(derived), len(residual))
    return ConstructionResult(derived, residual, part, code, cosets)
