import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qfano.gf import gf
from qfano.linalg import (
    LinalgError, all_points, canonicalize, count_by_profiles, dot, enumerate_subspaces,
    gaussian_binomial, intersection_dim, is_subspace, join, orthogonal_complement, project,
    subspace_from_str, unit,
)

ENUM_LIMIT = 200_000


def test_gaussian_known_values():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(6, 2, 2) == 651
    assert gaussian_binomial(7, 2, 3) == 99463
    assert gaussian_binomial(4, 2, 3) == 130
    assert gaussian_binomial(5, 0, 7) == 1


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_matches_counts(q, n):
    F = gf(q)
    for k in range(0, min(n, 3) + 1):
        expected = gaussian_binomial(n, k, q)
        assert count_by_profiles(n, k, q) == expected
        if expected > ENUM_LIMIT:
            continue
        subs = list(enumerate_subspaces(F, n, k))
        assert len(subs) == expected
        assert subs == sorted(subs)
        assert len(set(subs)) == expected


def test_enumeration_order_is_flattened_basis_order():
    F = gf(3)
    subs = list(enumerate_subspaces(F, 4, 2))
    flat = [sum(S.basis, ()) for S in subs]
    assert flat == sorted(flat)


def test_points_are_normalized_and_sorted():
    F = gf(4)
    S = subspace_from_str(F, "1023;0132", 4)
    pts = S.points()
    assert len(pts) == 5 and pts == sorted(pts)
    assert all(next(c for c in p if c) == 1 for p in pts)
    assert all(p in S for p in pts)


def _random_subspace(F, n, data):
    k = data.draw(st.integers(0, n))
    rows = [tuple(data.draw(st.integers(0, F.q - 1)) for _ in range(n)) for _ in range(k)]
    return canonicalize(F, rows, n)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 6), st.data())
def test_rref_properties(q, n, data):
    F = gf(q)
    S = _random_subspace(F, n, data)
    # canonical form is idempotent and independent of the spanning set
    assert canonicalize(F, list(S.vectors()), n) == S
    assert canonicalize(F, S.basis[::-1], n) == S
    # complement
    P = orthogonal_complement(S)
    assert P.dim == n - S.dim
    assert all(dot(F, u, v) == 0 for u in S.basis for v in P.basis)
    assert orthogonal_complement(P) == S


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.data())
def test_join_and_intersection(q, data):
    F = gf(q)
    U, W = _random_subspace(F, 5, data), _random_subspace(F, 5, data)
    J = join(U, W)
    assert is_subspace(U, J) and is_subspace(W, J)
    brute = sum(1 for v in U.vectors() if v in W)
    assert q ** intersection_dim(U, W) == brute


def test_project_and_units():
    F = gf(2)
    S = canonicalize(F, [unit(6, 5), unit(6, 6)], 6)
    assert project(S, 4).dim == 0
    assert (0, 0, 0, 0, 1, 1) in S


def test_all_points_count():
    for q, n in itertools.product([2, 3, 4], [2, 3, 4]):
        assert len(all_points(gf(q), n)) == (q**n - 1) // (q - 1)


def test_errors():
    F = gf(2)
    with pytest.raises(LinalgError):
        canonicalize(F, [(1, 0)], 3)
    with pytest.raises(LinalgError):
        gaussian_binomial(2, 3, 2)
    with pytest.raises(LinalgError):
        is_subspace(canonicalize(F, [(1, 0)]), canonicalize(F, [(1, 0, 0)]))
