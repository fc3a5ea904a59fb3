import itertools

import pytest

from conftest import fixture_rows
from qfano.extension import (
    coset_partition, expand, ext_matrix, extension_code, extension_space, mat_add,
    mat_scale, matrix_from_str, matrix_to_str, satisfies_recurrence, stack,
)
from qfano.gf import gf

QS = [2, 3, 4, 5]


@pytest.mark.parametrize("q", QS)
def test_extension_space(q):
    F = gf(q)
    space = extension_space(F)
    assert len(space) == q**4 == len(set(space))
    assert all(satisfies_recurrence(F, M) for M in space)
    assert ((0, 0),) * (q + 1) in space
    assert space == sorted(space, key=lambda M: (M[0], M[1]))
    members = set(space)
    for A, B in itertools.islice(itertools.product(space, repeat=2), 0, None, max(1, q**5)):
        assert mat_add(F, A, B) in members


def _columns_distinct(F, mats):
    return all(len({M[i] for M in mats}) == len(mats) for i in range(F.q + 1))


@pytest.mark.parametrize("q", QS)
def test_code_properties(q):
    F = gf(q)
    code = extension_code(F)
    M1, M2 = code.generators
    assert M1[:2] == ((1, 0), (0, 1))
    assert M2[:2] == ((0, 1), (1, code.beta))
    members = set(code.members)
    assert len(members) == q * q
    # linear: closed under addition and scaling
    for A in code.members:
        for c in F.elements:
            assert mat_scale(F, c, A) in members
        for B in code.members:
            assert mat_add(F, A, B) in members
    # every column position shows all q^2 vectors
    assert _columns_distinct(F, code.members)
    assert {M[0] for M in code.members} == set(itertools.product(F.elements, repeat=2))


def test_beta_is_first_valid():
    F = gf(3)
    code = extension_code(F)
    for beta in range(code.beta):
        M2 = ext_matrix(F, (0, 1), (1, beta))
        M1 = code.generators[0]
        assert any(F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0])) == 0 for a, b in zip(M1, M2))


@pytest.mark.parametrize("q", QS)
def test_coset_partition(q):
    F = gf(q)
    code = extension_code(F)
    cp = coset_partition(F, code)
    assert len(cp.cosets) == q * q - 1 and len(cp.parts) == q + 1
    flat = [M for part in cp.parts for M in part]
    assert len(flat) == len(set(flat)) == q**4 - q**2
    assert set(flat) | set(code.members) == set(extension_space(F))
    for coset in cp.cosets:
        assert _columns_distinct(F, coset)
    assert all(len(part) == q * q * (q - 1) for part in cp.parts)


def test_coset_partition_order_option():
    F = gf(3)
    code = extension_code(F)
    base = coset_partition(F, code)
    order = list(range(8))[::-1]
    flipped = coset_partition(F, code, order)
    assert flipped.cosets == base.cosets[::-1]
    with pytest.raises(ValueError):
        coset_partition(F, code, [0] * 8)


def test_reference_code_and_cosets():
    F = gf(2)
    code = extension_code(F)
    cp = coset_partition(F, code)
    rows = fixture_rows("q2_extension_space.txt")
    want = {label: [m for lab, m in rows if lab == label] for label in ("C", "C1", "C2", "C3")}
    assert [matrix_to_str(M) for M in code.members] == want["C"]
    for j in range(3):
        assert [matrix_to_str(M) for M in cp.parts[j]] == want["C%d" % (j + 1)]
    assert [matrix_to_str(M) for M in cp.representatives] == ["000/110", "110/000", "110/110"]


def test_expand_examples():
    F = gf(2)
    M = matrix_from_str("011/110")
    assert matrix_to_str(expand(F, M, (1, 0))) == "0111100/1100110"
    Z = matrix_from_str("000/110")
    assert matrix_to_str(expand(F, Z, (0, 0))) == "0000000/1100110"


@pytest.mark.parametrize("q", [3, 4])
def test_expand_shape(q):
    F = gf(q)
    M = ext_matrix(F, (1, 0), (0, 1))
    E = expand(F, M, (1, 1))
    assert len(E) == q * q + q + 1 and E[:q + 1] == M
    Z = expand(F, M, (0, 0))
    assert Z[q + 1] == (0, 0) and all(Z[q + 2 + i * (q + 1):q + 2 + (i + 1) * (q + 1)] == M
                                      for i in range(q - 1))


def test_expand_errors():
    F = gf(2)
    with pytest.raises(ValueError):
        expand(F, ((0, 1),), (1, 0))
    with pytest.raises(ValueError):
        expand(F, matrix_from_str("011/110"), (1, 0, 0))
    with pytest.raises(ValueError):
        stack(matrix_from_str("011"), matrix_from_str("01"))
    with pytest.raises(ValueError):
        matrix_from_str("011/11")
