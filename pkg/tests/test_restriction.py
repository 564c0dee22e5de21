import itertools

import pytest

from satogr.errors import ChargeError
from satogr.field import QQ
from satogr.maya import MayaDiagram, enumerate_level, iter_diagrams, pad, truncate
from satogr.points import PluckerVector, from_maya, plucker_vector, random_point
from satogr.restriction import (
    WindowPair,
    check_embedding_diagram,
    embedding_sign,
    inner_contraction,
    preimages,
    pullback_coords,
    pushforward_coords,
    restrict_section,
    restrict_section_standard,
)

from conftest import S


def test_window_pair_validation():
    WindowPair.standard(2)
    with pytest.raises(ValueError):
        WindowPair(WindowPair.standard(2).inner, WindowPair.standard(2).outer)
    assert WindowPair.standard(3).quotient_dim() == 6


def test_restrict_section_examples():
    assert restrict_section_standard(MayaDiagram(), 2) == S(0, 1)
    assert restrict_section_standard(MayaDiagram(frozenset({-3}), frozenset({0})), 2) is None
    same = WindowPair(MayaDiagram(), MayaDiagram())
    assert restrict_section(MayaDiagram(), same) == ()
    with pytest.raises(ChargeError):
        restrict_section(MayaDiagram(frozenset({-1})), same)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_restrict_section_agrees_with_truncate(i):
    for s in iter_diagrams(i, i):
        assert restrict_section_standard(s, i) == truncate(s, i)
    for t in enumerate_level(i):
        assert restrict_section_standard(pad(t), i) == t


def test_inner_contraction_examples():
    assert inner_contraction([2, 4], 0) == (2, 4)
    assert inner_contraction([1, 2, 5, 7], 2) == (5, 7)
    assert inner_contraction([1, 3, 5], 2) is None
    with pytest.raises(ValueError):
        inner_contraction([3, 1], 1)


def test_inner_contraction_composes():
    for d in range(1, 8):
        for r in range(d + 1):
            for js in itertools.combinations(range(1, d + 1), r):
                for d1 in range(d + 1):
                    for d2 in range(d - d1 + 1):
                        once = inner_contraction(js, d1 + d2)
                        first = inner_contraction(js, d1)
                        twice = None if first is None else inner_contraction(first, d2, start=d1 + 1)
                        assert once == twice


def test_push_pull_examples():
    v = plucker_vector(from_maya(S(-1, 0)))
    assert pushforward_coords(v, 3).coords == {S(-1, 0, 2): 1}
    assert pullback_coords(PluckerVector(3, QQ, {S(0, 1, 2): 1}), 2).coords == {S(0, 1): 1}
    assert pullback_coords(PluckerVector(3, QQ, {S(-3, 0, 1): 1}), 2) is None


def test_push_pull_system_laws(rng):
    for _ in range(20):
        v = plucker_vector(random_point(QQ, 2, rng))
        assert pullback_coords(pushforward_coords(v, 4), 2) == v
        assert pushforward_coords(pushforward_coords(v, 3), 4) == pushforward_coords(v, 4)
        w = plucker_vector(random_point(QQ, 4, rng))
        mid = pullback_coords(w, 3)
        direct = pullback_coords(w, 2)
        assert direct == (None if mid is None else pullback_coords(mid, 2))


def test_surjectivity_shadow():
    for j in range(2, 5):
        for i in range(1, j):
            for t in enumerate_level(i):
                assert preimages(t, j)


def test_embedding_diagram(worked_point, rng):
    for i in range(1, 4):
        for j in range(i + 1, 5):
            assert embedding_sign(i, j) == 1
            for t in enumerate_level(i):
                assert check_embedding_diagram(from_maya(t), j)
    assert check_embedding_diagram(worked_point, 3)
    for _ in range(100):
        assert check_embedding_diagram(random_point(QQ, 2, rng), 4)
