import pytest

from conftest import reference_parallelism
from qfano.gf import gf
from qfano.linalg import enumerate_subspaces, gaussian_binomial
from qfano.spreads import (
    SpreadError, cyclic_generator, exact_covers, find_parallelism, format_parallelism,
    parallelism_defects, parse_parallelism, partition_abc, verify_parallelism, verify_spread,
)


def test_reference_parallelism_is_valid():
    par = reference_parallelism()
    assert len(par) == 7 and all(len(s) == 5 for s in par)
    assert verify_parallelism(par)


def test_spread_checks():
    A = reference_parallelism()[0]
    assert verify_spread(A)
    assert not verify_spread(A[1:])
    assert not verify_spread(list(enumerate_subspaces(gf(2), 4, 2)))
    assert not verify_spread([])


@pytest.mark.parametrize("q,method", [(2, "lex"), (3, "lex"), (2, "cyclic"), (5, "cyclic")])
def test_find_parallelism(q, method):
    par = find_parallelism(gf(q), method)
    assert len(par) == q * q + q + 1
    assert sum(len(s) for s in par) == (q * q + 1) * (q * q + q + 1) == gaussian_binomial(4, 2, q)
    assert not parallelism_defects(par)
    # spreads ordered by their least line; the first holds the least line overall
    assert [s[0] for s in par] == sorted(s[0] for s in par)
    assert par[0][0] == next(enumerate_subspaces(gf(q), 4, 2))


def test_deterministic():
    F = gf(3)
    assert format_parallelism(find_parallelism(F)) == format_parallelism(find_parallelism(F))


@pytest.mark.slow
def test_find_parallelism_gf4():
    par = find_parallelism(gf(4))
    assert len(par) == 21 and verify_parallelism(par)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_cyclic_generator_order(q):
    T, d, s = cyclic_generator(gf(q))
    assert d * s == q * q + q + 1
    assert s == (3 if q % 3 == 1 else 1)


def test_bad_method():
    with pytest.raises(ValueError):
        find_parallelism(gf(2), "random")


def test_partition_reference():
    par = reference_parallelism()
    part = partition_abc(par)
    assert part.A == par[0]
    assert sum(len(s) for s in part.B) == 10 and len(part.B) == 2
    assert sum(len(s) for s in part.C) == 20 and len(part.C) == 4
    assert part.C_xi[0] == par[3:5] and part.C_xi[1] == par[5:7]
    assert part.spreads == par


def test_partition_q3():
    part = partition_abc(find_parallelism(gf(3)))
    assert len(part.C) == 9
    assert [len(part.C_xi[x]) for x in range(3)] == [3, 3, 3]
    roles = part.role_of()
    assert len(roles) == 130 and sorted(set(roles.values())) == ["A", "B", "C"]


def test_partition_rejects_invalid():
    par = list(reference_parallelism())
    par[1] = par[0]
    with pytest.raises(SpreadError):
        partition_abc(par)


def test_partition_order_permutes():
    par = reference_parallelism()
    part = partition_abc(par, order=[6, 5, 4, 3, 2, 1, 0])
    assert part.A == par[6]
    with pytest.raises(ValueError):
        partition_abc(par, order=[0, 0, 1, 2, 3, 4, 5])


def test_file_round_trip():
    F = gf(3)
    par = find_parallelism(F)
    text = format_parallelism(par)
    assert parse_parallelism(F, text) == par
    assert len(text.splitlines()) == 13


def test_file_errors():
    with pytest.raises(SpreadError):
        parse_parallelism(gf(2), "0001,0002\n")
    with pytest.raises(SpreadError):
        parse_parallelism(gf(2), "0001,0001\n")


def test_exact_cover_small():
    rows = {"a": [1, 4, 7], "b": [1, 4], "c": [4, 5, 7], "d": [3, 5, 6],
            "e": [2, 3, 6, 7], "f": [2, 7]}
    cols = {}
    for r, cs in rows.items():
        for c in cs:
            cols.setdefault(c, set()).add(r)
    assert [sorted(s) for s in exact_covers(cols, rows)] == [["b", "d", "f"]]
