import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from satogr import linalg
from satogr.errors import AmbientMismatchError, FieldMismatchError, NotInvertibleError
from satogr.field import GF, QQ
from satogr.linalg import ExactMatrix


def M(field, rows, ncols=None):
    return ExactMatrix.from_rows(field, rows, ncols)


def test_rref_identity():
    red, r, piv = linalg.rref(ExactMatrix.identity(QQ, 2))
    assert red == ExactMatrix.identity(QQ, 2)
    assert (r, piv) == (2, [0, 1])


def test_rref_proportional_rows():
    red, r, piv = linalg.rref(M(QQ, [[1, 2], [2, 4]]))
    assert red.tolist() == [[1, 2], [0, 0]]
    assert r == 1 and piv == [0]


def test_rank_gf2_unimodular():
    assert linalg.rank(M(GF(2), [[1, 1], [1, 2]])) == 2
    assert linalg.det(M(GF(2), [[1, 1], [1, 2]])) == 1


def test_rref_pivots_normalized():
    red, r, piv = linalg.rref(M(QQ, [[0, 3, 6], [2, 4, 0]]))
    assert red.tolist() == [[1, 0, -4], [0, 1, 2]]
    assert piv == [0, 1]


def test_mixed_field_entries_rejected():
    bad = ExactMatrix(QQ, ((Fraction(1), GF(3)(1)),), 2)
    with pytest.raises(FieldMismatchError):
        linalg.rref(bad)


def test_sum_intersect_basic():
    a = M(QQ, [[1, 0]])
    b = M(QQ, [[0, 1]])
    assert linalg.subspace_sum(a, b) == ExactMatrix.identity(QQ, 2)
    assert linalg.subspace_intersect(a, b).nrows == 0
    c = M(QQ, [[2, 0], [0, 3]])
    assert linalg.subspace_sum(c, c) == linalg.subspace_intersect(c, c) == linalg.rowspace(c)


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatchError):
        linalg.subspace_sum(M(QQ, [[1, 0]]), M(QQ, [[1, 0, 0]]))


def test_two_planes_in_gf2_cube():
    f = GF(2)
    a = M(f, [[1, 0, 0], [0, 1, 0]])
    b = M(f, [[1, 0, 0], [0, 0, 1]])
    assert linalg.subspace_intersect(a, b).nrows == 1


def test_kernel_and_inverse():
    m = M(QQ, [[1, 2, 3], [4, 5, 6]])
    k = linalg.kernel(m)
    assert k.nrows == 1
    assert (m @ k.T).is_zero()
    g = M(QQ, [[2, 1], [1, 1]])
    assert g @ linalg.inverse(g) == ExactMatrix.identity(QQ, 2)
    with pytest.raises(NotInvertibleError):
        linalg.inverse(M(QQ, [[1, 2], [2, 4]]))


def test_bareiss_matches_fraction_det(rng):
    for _ in range(30):
        n = rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        m = M(QQ, rows)
        # Cofactor expansion as an independent oracle.
        def cof(a):
            if len(a) == 1:
                return a[0][0]
            return sum((-1) ** j * a[0][j] * cof([r[:j] + r[j + 1:] for r in a[1:]]) for j in range(len(a)))
        assert linalg.det(m) == cof(rows)


def test_gaussian_binomial_counts():
    f = GF(2)
    for n in range(1, 5):
        for d in range(n + 1):
            subs = list(linalg.enumerate_subspaces(f, n, d))
            assert len(subs) == linalg.count_subspaces(2, n, d)
            assert len(set(subs)) == len(subs)
    assert linalg.count_subspaces(2, 4, 2) == 35


def test_modular_law_exhaustive_gf2():
    f = GF(2)
    for n in range(1, 5):
        subs = [s for d in range(n + 1) for s in linalg.enumerate_subspaces(f, n, d)]
        for a, b in itertools.product(subs, repeat=2):
            s = linalg.subspace_sum(a, b)
            i = linalg.subspace_intersect(a, b)
            assert s.nrows + i.nrows == a.nrows + b.nrows
            assert linalg.contains(a, i) and linalg.contains(b, i)
            assert linalg.contains(s, a) and linalg.contains(s, b)


small_q = st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5)


@given(small_q)
def test_row_rank_equals_column_rank(rows):
    m = M(QQ, rows)
    assert linalg.rank(m) == linalg.rank(m.T)
    assert linalg.rref(m)[1] == linalg.rank(m.T)


@given(small_q, st.integers(0, 10**6))
@settings(max_examples=50)
def test_canonical_rref(rows, seed):
    m = M(QQ, rows)
    r = random.Random(seed)
    k = len(rows)
    while True:
        g = M(QQ, [[r.randint(-3, 3) for _ in range(k)] for _ in range(k)])
        if linalg.rank(g) == k:
            break
    assert linalg.rowspace(g @ m) == linalg.rowspace(m)


@given(st.lists(st.lists(st.integers(0, 6), min_size=5, max_size=5), min_size=1, max_size=5))
def test_gf7_rank_matches_fraction_elimination(rows):
    f = GF(7)
    m = M(f, rows)
    red, r, piv = linalg.rref(m)
    assert r == len(piv)
    assert linalg.rank(m) == linalg.rank(m.T)
    assert all(not any(row) for row in red.rows[r:])


def test_zero_row_matrices():
    z = ExactMatrix(QQ, (), 3)
    assert linalg.rank(z) == 0
    assert linalg.kernel(z) == ExactMatrix.identity(QQ, 3)
    assert linalg.subspace_sum(z, z).nrows == 0
