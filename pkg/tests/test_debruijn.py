import pytest

from ppmlab.debruijn import (DeBruijnString, ResourceLimitError, martin_db, shift,
                             verify_db)
from ppmlab.oracle import all_db_strings, exhaustive_db_check

DB6 = "0000001000011000101000111001001011001101001111010101110110111111"
DB6_SHIFT1 = "0000010000110001010001110010010110011010011110101011101101111110"


def test_small_orders():
    assert martin_db(1).data == "01"
    assert martin_db(2).data == "0011"
    # least de Bruijn string of order 3; 00011101 is de Bruijn but not least
    assert martin_db(3).data == "00010111"
    assert martin_db(4).data == "0000100110101111"


def test_order_six_matches_reference_row():
    assert martin_db(6).data == DB6


def test_shift_order_six():
    assert shift(martin_db(6), 1).data == DB6_SHIFT1


def test_shift_basics():
    db = martin_db(3)
    assert shift(db, 0).data == db.data
    assert shift(db, 1).data == "00101110"
    assert shift(db, 5).shift == 5
    with pytest.raises(ValueError):
        shift(db, 8)
    with pytest.raises(ValueError):
        shift(db, -1)


def test_shift_inverse():
    db = martin_db(5)
    for i in range(1, 32):
        assert shift(shift(db, i), 32 - i).data == db.data


def test_verify_db():
    assert verify_db("00011101", 3)
    assert not verify_db("00000000", 3)
    with pytest.raises(ValueError):
        verify_db("0001", 3)


@pytest.mark.parametrize("n", range(1, 15))
def test_martin_is_de_bruijn(n):
    db = martin_db(n).data
    assert len(db) == 1 << n
    assert verify_db(db, n)
    if n >= 3:
        assert db[:2 * n + 1] == "0" * n + "1" + "0" * (n - 2) + "11"
        assert db.endswith("1" * n)


@pytest.mark.parametrize("n", range(1, 6))
def test_exhaustive_minimum(n):
    assert exhaustive_db_check(n, martin_db(n).data)


def test_exhaustive_enumeration_counts():
    # number of binary de Bruijn strings of order n is 2^(2^(n-1))
    for n in range(1, 5):
        assert len(all_db_strings(n)) == 2 ** (2 ** (n - 1))
    assert min(all_db_strings(1)) == "01"


def test_bad_orders():
    with pytest.raises(ValueError):
        martin_db(0)
    with pytest.raises(ResourceLimitError):
        martin_db(25)
    with pytest.raises(ResourceLimitError):
        martin_db(10, max_order=8)


def test_dataclass_validates_length():
    with pytest.raises(ValueError):
        DeBruijnString(3, "0101")
