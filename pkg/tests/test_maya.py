import itertools
from math import comb

import pytest

from satogr.errors import ChargeError
from satogr.maya import (
    IndexSet,
    MayaDiagram,
    between_levels,
    charge,
    complement,
    enumerate_level,
    iter_diagrams,
    pad,
    restrict_level,
    sign_normalize,
    truncate,
)

from conftest import S


def D(J=(), K=()):
    return MayaDiagram(frozenset(J), frozenset(K))


def test_charge_examples():
    assert charge(D()) == 0
    assert charge(D([-1], [0])) == 0
    assert charge(D([-2, -1], [3])) == 1


def test_truncate_examples():
    assert truncate(D(), 2) == S(0, 1)
    assert truncate(D([-1], [0]), 1) == S(-1)
    assert truncate(D([-3], [0]), 2) is None
    with pytest.raises(ChargeError):
        truncate(D([-1]), 2)


def test_pad_examples():
    assert pad(S(0, 1)) == D()
    assert pad(S(-1, 0)) == D([-1], [1])
    assert pad(S(-2, -1)) == D([-2, -1], [0, 1])


def test_enumerate_counts_and_order():
    assert enumerate_level(1) == (S(-1), S(0))
    for i in range(1, 6):
        sets = enumerate_level(i)
        assert len(sets) == comb(2 * i, i)
        assert list(sets) == sorted(sets, key=lambda t: t.elements)
    assert len(enumerate_level(4)) == 70


def test_between_and_restrict_examples():
    assert between_levels(S(-1), 2) == S(-1, 1)
    assert between_levels(S(0, 1), 3) == S(0, 1, 2)
    assert restrict_level(S(-2, 0, 1), 2) is None


def test_sign_normalize_examples():
    assert sign_normalize([0, -1]) == (S(-1, 0), -1)
    assert sign_normalize([-1, -1]) == (None, 0)
    assert sign_normalize([1, -2, 0], 3) == (S(-2, 0, 1), 1)
    assert sign_normalize([2, 0]) == (None, 0)


def test_sign_normalize_matches_permutation_parity():
    for perm in itertools.permutations(range(-2, 2)):
        t, sign = sign_normalize(list(perm))
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        assert t == S(-2, -1, 0, 1) and sign == (-1) ** inv
    for t in enumerate_level(3):
        assert sign_normalize(list(t.elements)) == (t, 1)


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_section_identity_exhaustive(i):
    for t in enumerate_level(i):
        s = pad(t)
        assert charge(s) == 0
        assert truncate(s, i) == t


def test_pad_of_truncate_iff_stable():
    for s in iter_diagrams(3, 6):
        for i in range(1, 7):
            t = truncate(s, i)
            if t is None:
                continue
            stable = all(s.terms(i + 8)[j] == j for j in range(i, i + 8))
            assert (pad(t) == s) == stable


def test_system_compatibility():
    for i in range(1, 4):
        for j in range(i, 5):
            for t in enumerate_level(i):
                assert restrict_level(between_levels(t, j), i) == t
                for k in range(j, 5):
                    assert between_levels(between_levels(t, j), k) == between_levels(t, k)
                    assert between_levels(t, j) == truncate(pad(t), j)
    for t in enumerate_level(4):
        for j in range(1, 5):
            for i in range(1, j + 1):
                a = restrict_level(t, j)
                expected = None if a is None else restrict_level(a, i)
                assert restrict_level(t, i) == expected


def test_index_set_validation_and_text():
    with pytest.raises(ValueError):
        IndexSet(2, (0, 0))
    with pytest.raises(ValueError):
        IndexSet(2, (-3, 0))
    with pytest.raises(ValueError):
        IndexSet(2, (0,))
    t = S(-2, 0, 1)
    assert str(t) == "[-2,0,1]"
    assert IndexSet.parse(" [ -2, 0,1 ] ") == t


def test_complement():
    assert complement(S(-1, 0)) == S(-2, 1)
    for t in enumerate_level(3):
        assert complement(complement(t)) == t


def test_diagram_helpers():
    s = MayaDiagram.from_prefix([-3, 1], 4)
    assert s.J == {-3} and s.K == {0, 2, 3}
    assert s.terms(3) == [-3, 1, 4]
    assert D().stable_from() == 0
    assert D([-2, -1]).stable_from() == -2
    assert str(D([-1], [0])) == "{-1,1,...}"
