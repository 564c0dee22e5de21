import pickle
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from satogr.errors import FieldMismatchError, InvalidModulusError
from satogr.field import GF, QQ, Fp, field_from_name, is_prime


def test_prime_field_validation():
    for bad in (0, 1, 4, 9, 2**31 + 11, -7):
        with pytest.raises(InvalidModulusError):
            GF(bad)
    assert GF(2147483647).p == 2**31 - 1


def test_residues_reduced():
    f = GF(7)
    assert f(10) == f(3)
    assert f(-1).value == 6
    assert int(f(3) * f(5)) == 1


def test_inverse_and_division():
    f = GF(13)
    for a in range(1, 13):
        assert f(a) * f(a).inverse() == f.one
        assert f(1) / f(a) == f(a).inverse()
    with pytest.raises(ZeroDivisionError):
        f(0).inverse()


def test_moduli_never_mix():
    with pytest.raises(FieldMismatchError):
        GF(5)(1) + GF(7)(1)
    with pytest.raises(FieldMismatchError):
        QQ(GF(5)(1))
    with pytest.raises(FieldMismatchError):
        GF(5)(Fraction(1, 2))


def test_rational_canonical_form():
    assert QQ("6/-4") == Fraction(-3, 2)
    assert QQ.format(QQ("6/4")) == "3/2"
    assert QQ.format(QQ(4)) == "4"
    with pytest.raises(ValueError):
        QQ.parse(0.5)


def test_field_names():
    assert field_from_name("Q") is QQ
    assert field_from_name("GF(7)") == GF(7)
    assert field_from_name("F7") == GF(7)
    with pytest.raises(ValueError):
        field_from_name("R")


def test_pickle_round_trip():
    x = GF(11)(4)
    assert pickle.loads(pickle.dumps(x)) == x
    assert pickle.loads(pickle.dumps(GF(11))) == GF(11)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(st.integers(), st.integers(), st.integers())
def test_gf_ring_laws(a, b, c):
    f = GF(101)
    x, y, z = f(a), f(b), f(c)
    assert (x + y) * z == x * z + y * z
    assert x - y == -(y - x)
    assert (x * y) * z == x * (y * z)


def test_fp_equality_with_int():
    assert Fp(8, 7) == 1
    assert hash(Fp(8, 7)) == hash(Fp(1, 7))
