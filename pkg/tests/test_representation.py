import itertools

import pytest

from conftest import fixture_rows, reference_parallelism, reference_three_spaces
from qfano.extension import matrix_to_str
from qfano.gf import gf
from qfano.linalg import (
    all_points, canonicalize, enumerate_subspaces, is_subspace, rref, unit, vec_axpy,
)
from qfano.representation import (
    RepresentationError, a_member, column_support, expansions_of, rep2, rep3,
)
from qfano.spreads import find_parallelism, find_spread, verify_spread


def _spread_a(q):
    return reference_parallelism()[0] if q == 2 else find_parallelism(gf(q))[0]


@pytest.mark.parametrize("q", [4, 5])
def test_unique_a_member_sampled(q):
    F = gf(q)
    A = find_spread(F)
    for Y in itertools.islice(enumerate_subspaces(F, 4, 3), 0, None, 13):
        assert is_subspace(a_member(Y, A), Y)


def test_rep2_reference():
    X = reference_parallelism()[0][0]
    assert [''.join(map(str, c)) for c in rep2(X)] == ["0001", "0110", "0111"]


def test_rep2_unrepresentable():
    F = gf(2)
    with pytest.raises(RepresentationError):
        rep2(canonicalize(F, [unit(6, 5), unit(6, 6)], 6))
    with pytest.raises(RepresentationError):
        rep2(canonicalize(F, [unit(4, 1)], 4))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_rep2_recurrence_and_normalization(q):
    F = gf(q)
    for X in itertools.islice(enumerate_subspaces(F, 4, 2), 0, None, 7):
        cols = rep2(X)
        assert sorted(cols) == X.points()
        assert cols[0] < cols[1] == min(cols[1:])
        for i in range(2, q + 1):
            assert cols[i] == vec_axpy(F, F.alpha_pow(i - 2), cols[0], cols[1])


@pytest.mark.parametrize("q", [2, 3])
def test_unique_a_member_exhaustive(q):
    F = gf(q)
    A = _spread_a(q)
    hits = {X: 0 for X in A}
    for Y in enumerate_subspaces(F, 4, 3):
        hits[a_member(Y, A)] += 1
    assert set(hits.values()) == {q + 1}
    assert (q * q + 1) * (q + 1) == (q**4 - 1) // (q - 1)


def test_a_member_rejects_non_spread():
    F = gf(2)
    lines = list(enumerate_subspaces(F, 4, 2))
    Y = next(enumerate_subspaces(F, 4, 3))
    with pytest.raises(RepresentationError):
        a_member(Y, lines)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_expansions(q):
    F = gf(q)
    for X in itertools.islice(enumerate_subspaces(F, 4, 2), 0, None, 11):
        ex = expansions_of(X)
        assert len(ex) == q + 1 == len({Y for _, Y in ex})
        assert [u for u, _ in ex] == sorted(u for u, _ in ex)
        for u, Y in ex:
            assert Y.dim == 3 and is_subspace(X, Y) and u in Y and u not in X
            assert u == min(p for p in Y.points() if p not in X)


def test_reference_first_x():
    A = reference_parallelism()[0]
    X = A[0]
    rows = fixture_rows("q2_first_x.txt")
    ex = expansions_of(X)
    assert [''.join(map(str, u)) for u, _ in ex] == ["0010", "1000", "1010"]
    ys = [canonicalize(X.field, [tuple(map(int, v)) for v in m.split(";")], 4)
          for lab, m in rows if lab == "Y"]
    assert [Y for _, Y in ex] == ys == reference_three_spaces()[:3]
    reps = [m for lab, m in rows if lab == "R"]
    assert [matrix_to_str(rep3(Y, A)) for _, Y in ex] == reps
    assert reps[0] == "0000000/0110011/0111100/1010101"
    assert reps[1] == "0001111/0110011/0110011/1010101"


def _rank(F, vecs):
    return len(rref(F, vecs, len(vecs[0])))


@pytest.mark.parametrize("q", [2, 3])
def test_rep3_lemmas_exhaustive(q):
    """Independence of columns 1, 2, q+2; the support family; 2-in-3 structure."""
    F = gf(q)
    A = _spread_a(q)
    P = column_support(F)
    assert len(P) == q * q + q + 1 and all(len(s) == q + 1 for s in P)
    assert frozenset(range(1, q + 2)) in P
    first = set(range(1, q + 2))
    for Y in enumerate_subspaces(F, 4, 3):
        R = rep3(Y, A)
        assert len(R) == q * q + q + 1
        assert _rank(F, [R[0], R[1], R[q + 1]]) == 3
        assert {canonicalize(F, [c], 4) for c in R} == {canonicalize(F, [p], 4) for p in Y.points()}
        planes = {}
        for idx in P:
            cols = [R[i - 1] for i in idx]
            plane = canonicalize(F, cols, 4)
            assert plane.dim == 2
            # all columns of the plane are listed in idx
            assert {i for i in range(1, len(R) + 1) if R[i - 1] in plane} == set(idx)
            planes[plane] = idx
            assert len(set(idx) & first) in (1, q + 1)
        assert len(planes) == q * q + q + 1
        assert set(planes) == {S for S in enumerate_subspaces(F, 4, 2) if is_subspace(S, Y)}


def test_rep3_six_rows_requires_full_projection():
    F = gf(2)
    A = reference_parallelism()[0]
    Y = canonicalize(F, [unit(6, 1), unit(6, 2), unit(6, 6)], 6)
    with pytest.raises(RepresentationError):
        rep3(Y, A)
    with pytest.raises(RepresentationError):
        rep3(canonicalize(F, [unit(4, 1), unit(4, 2)], 4), A)


@pytest.mark.parametrize("q", [4, 5])
def test_lemma_relations_transfer_sampled(q):
    F = gf(q)
    A = find_spread(F)
    assert verify_spread(A)
    P = column_support(F)
    for Y in itertools.islice(enumerate_subspaces(F, 4, 3), 0, None, 17):
        R = rep3(Y, A)
        for idx in P[:: max(1, len(P) // 6)]:
            assert canonicalize(F, [R[i - 1] for i in idx], 4).dim == 2


def test_all_points_helper():
    assert len(all_points(gf(3), 4)) == 40
