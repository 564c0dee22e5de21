import pytest

from satogr.errors import NotInvertibleError, WindowOverflowError, WrongComponentError
from satogr.field import GF, QQ
from satogr.laurent import LaurentVector
from satogr.plucker import satisfies_all
from satogr.points import GrassPoint, from_maya, index_of, plucker_vector, random_point, vacuum
from satogr.operators import (
    BandOperator,
    MulOperator,
    act,
    act_on_plucker,
    is_glC,
    leading_rows,
    random_band,
    random_unit,
)

from conftest import S


def test_multiplication_by_one_is_identity(worked_point):
    one = MulOperator.scalar(QQ, 1)
    assert act(one, worked_point) == worked_point
    v = plucker_vector(worked_point)
    assert act_on_plucker(one, v) == v


def test_multiplication_by_z_on_vacuum():
    q = act(MulOperator.monomial(QQ, 1), vacuum(2))
    assert q == GrassPoint.spanned_by(3, QQ, [{1: 1}, {2: 1}])
    assert index_of(q) == -1


def test_banded_example(worked_point):
    g = BandOperator.from_block(QQ, [-1, 0], [[1, 1], [0, 1]])
    q = act(g, from_maya(S(-1, 1)))
    assert q == GrassPoint.spanned_by(3, QQ, [{-1: 1}, {1: 1}, {2: 1}])
    assert satisfies_all(plucker_vector(q))
    lhs = act_on_plucker(g, plucker_vector(worked_point))
    assert lhs.is_proportional(plucker_vector(act(g, worked_point)))


def test_diagonal_scales_delta():
    g = BandOperator.diagonal(QQ, {0: 5})
    w = act_on_plucker(g, plucker_vector(from_maya(S(0, 1))))
    assert w.coords == {S(0, 1): 5}


def test_glc_examples():
    u = MulOperator(LaurentVector.from_dict(QQ, {3: 1, 4: 1}))
    assert is_glC(u)
    assert leading_rows(u, range(-3, 3)) == {j: j + 3 for j in range(-3, 3)}
    assert is_glC(BandOperator.from_block(QQ, [-1, 0], [[0, 1], [1, 0]]))
    singular = BandOperator.from_block(QQ, [-1, 0], [[0, 1], [0, 0]])
    assert not is_glC(singular)
    with pytest.raises(NotInvertibleError):
        act(singular, vacuum(1))
    with pytest.raises(NotInvertibleError):
        singular.inverse()


def test_bandwidth_validated():
    with pytest.raises(ValueError):
        BandOperator(QQ, {(0, 3): 1}, bandwidth=1)


def test_window_overflow_reports_level():
    with pytest.raises(WindowOverflowError) as info:
        act(MulOperator.monomial(QQ, 2), vacuum(2), level=3)
    assert info.value.required == 4


def test_nonzero_order_leaves_component(worked_point):
    with pytest.raises(WrongComponentError):
        act_on_plucker(MulOperator.monomial(QQ, 1), plucker_vector(worked_point))


@pytest.mark.parametrize("m", [-2, -1, 0, 1, 2])
def test_index_shift(m, rng):
    for i in (1, 2, 3):
        for _ in range(3):
            u = random_unit(QQ, m, rng)
            for p in (vacuum(i), from_maya(S(*range(-i, 0)))):
                assert index_of(act(u, p)) == index_of(p) - m


def test_equivariance_and_preservation(rng):
    for _ in range(40):
        i = rng.randint(1, 3)
        f = rng.choice([QQ, GF(5)])
        g = random_band(f, i, rng, bandwidth=rng.randint(0, 2), size=rng.randint(1, 2 * i))
        p = random_point(f, i, rng)
        q = act(g, p)
        assert satisfies_all(plucker_vector(q))
        assert act_on_plucker(g, plucker_vector(p)).is_proportional(plucker_vector(q))


def test_group_laws(rng):
    for _ in range(30):
        i = rng.randint(1, 3)
        g = random_band(QQ, i, rng, bandwidth=1)
        h = random_band(QQ, i, rng, bandwidth=1)
        p = random_point(QQ, i, rng)
        gh = g.compose(h)
        lhs = act(gh, p)
        rhs = act(g, act(h, p))
        top = max(lhs.level, rhs.level)
        assert lhs.at_level(top) == rhs.at_level(top)
        back = act(g.inverse(), act(g, p))
        assert back == p.at_level(back.level)


def test_unit_group_laws(rng):
    for _ in range(20):
        i = rng.randint(1, 3)
        u = random_unit(QQ, rng.randint(-2, 2), rng)
        w = random_unit(QQ, rng.randint(-2, 2), rng)
        p = random_point(QQ, i, rng)
        lhs = act(u.compose(w), p)
        rhs = act(u, act(w, p))
        top = max(lhs.level, rhs.level)
        assert lhs.at_level(top) == rhs.at_level(top)
        back = act(u.inverse(4 * (i + 4)), act(u, p))
        assert back == p.at_level(back.level)


def test_scalars_act_trivially(rng):
    for _ in range(20):
        lam = rng.choice([-3, -1, 2, 5])
        p = random_point(QQ, rng.randint(1, 3), rng)
        assert act(MulOperator.scalar(QQ, lam), p) == p
        assert act(BandOperator.diagonal(QQ, {a: lam for a in range(-p.level, p.level)}), p) == p


def test_order_zero_window_matrix_matches_act(rng):
    for _ in range(10):
        u = random_unit(QQ, 0, rng)
        p = random_point(QQ, 2, rng)
        assert act_on_plucker(u, plucker_vector(p)).is_proportional(plucker_vector(act(u, p)))
