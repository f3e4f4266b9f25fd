from fractions import Fraction

import pytest

from forestalg.rings import GF2, QQ, ZMOD4, ZZ, CoefficientRing


def test_tags_and_identity():
    assert CoefficientRing("Z") is ZZ
    assert CoefficientRing("GF2") is GF2
    with pytest.raises(ValueError):
        CoefficientRing("GF3")


def test_normalization():
    assert GF2.normalize(5) == 1 and GF2.normalize(-2) == 0
    assert ZMOD4.normalize(7) == 3 and ZMOD4.normalize(-1) == 3
    assert QQ.normalize(3) == Fraction(3)
    assert ZZ.normalize(Fraction(4)) == 4


def test_arithmetic_and_inverses():
    assert ZMOD4.mul(3, 3) == 1
    assert ZMOD4.invert(3) == 3
    with pytest.raises(ZeroDivisionError):
        ZMOD4.invert(2)
    assert GF2.invert(1) == 1
    assert QQ.invert(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        ZZ.invert(2)
    assert ZZ.divide_exact(6, 3) == 2
    with pytest.raises(ArithmeticError):
        ZZ.divide_exact(5, 3)


def test_fields():
    assert QQ.is_field and GF2.is_field
    assert not ZZ.is_field and not ZMOD4.is_field
