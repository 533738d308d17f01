from fractions import Fraction

import pytest

from rbx.errors import CharacteristicError, InputError
from rbx.fields import (F2, F3, F5, FpElement, PrimeField, QQ,
                        field_from_name, field_to_name)


def test_fp_canonical_representatives():
    x = FpElement(7, 5)
    assert x.val == 2
    assert (-x).val == 3
    assert (x + 4).val == 1
    assert (x * x).val == 4
    assert (x / FpElement(3, 5)).val == 4  # 2 * 3^{-1} = 2*2 = 4


def test_fp_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        F5.one / F5.zero


def test_fp_modulus_mixing_rejected():
    with pytest.raises(InputError):
        F2.one + F3.one


def test_fp_foreign_types_rejected():
    with pytest.raises(TypeError):
        F5.one + Fraction(1, 2)


def test_prime_validation():
    with pytest.raises(InputError):
        PrimeField(4)
    with pytest.raises(InputError):
        PrimeField(1)


def test_inverse_int():
    assert QQ.inverse_int(6) == Fraction(1, 6)
    assert F5.inverse_int(2) == FpElement(3, 5)
    with pytest.raises(CharacteristicError):
        F3.inverse_int(6)


def test_parse_format_roundtrip_q():
    for raw in [3, -2, "5/3", "-7/2", "4"]:
        x = QQ.parse(raw)
        again = QQ.parse(QQ.format(x))
        assert again == x
    assert QQ.format(Fraction(4, 2)) == 2
    assert QQ.format(Fraction(-1, 3)) == "-1/3"


def test_parse_fp():
    assert F5.parse(7) == FpElement(2, 5)
    assert F5.parse("1/2") == FpElement(3, 5)
    with pytest.raises(InputError):
        QQ.parse(None)
    with pytest.raises(InputError):
        QQ.parse(True)


def test_field_names():
    assert field_from_name("Q") is not None and field_from_name("Q").char == 0
    assert field_from_name({"Fp": 3}).char == 3
    assert field_to_name(QQ) == "Q"
    assert field_to_name(F2) == {"Fp": 2}
    with pytest.raises(InputError):
        field_from_name("R")


def test_elements_enumeration_order():
    assert [x.val for x in F3.elements()] == [0, 1, 2]
    with pytest.raises(InputError):
        QQ.elements()
