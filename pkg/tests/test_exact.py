from fractions import Fraction as F

import pytest

from mvqj.errors import SingularMatrix, SizeMismatch
from mvqj.exact import I_UNIT, ONE, GaussRat, Mat, gr, nullspace, solve


@pytest.mark.parametrize("text, re, im", [
    ("3/8", F(3, 8), 0),
    ("-2", -2, 0),
    ("i", 0, 1),
    ("-i", 0, -1),
    ("1/2+3/4i", F(1, 2), F(3, 4)),
    ("1/2-3/4i", F(1, 2), F(-3, 4)),
    ("-1/3-i", F(-1, 3), -1),
    ("2/5i", 0, F(2, 5)),
])
def test_parse(text, re, im):
    assert GaussRat.parse(text) == GaussRat(re, im)


def test_str_parse_roundtrip():
    for z in (GaussRat(F(1, 2), F(-3, 7)), GaussRat(0, 5), GaussRat(F(-9, 4)), GaussRat(0, -1)):
        assert GaussRat.parse(str(z)) == z


def test_field_operations():
    z = GaussRat(F(1, 2), F(1, 3))
    assert z * z.conj() == z.abs2()
    assert z / z == ONE
    assert z ** -2 * z ** 2 == ONE
    assert I_UNIT * I_UNIT == -1
    with pytest.raises(ZeroDivisionError):
        z / 0


def test_real_values_mix_with_fractions():
    assert gr(F(3, 8)) == F(3, 8)
    assert hash(gr(F(3, 8))) == hash(F(3, 8))
    assert gr(F(1, 3)) < F(1, 2)


def test_inverse_and_det():
    m = Mat([[2, GaussRat(1, 1)], [GaussRat(0, -1), F(1, 3)]])
    assert m @ m.inv() == Mat.identity(2)
    assert m.det() == F(2, 3) - GaussRat(1, 1) * GaussRat(0, -1)
    big = Mat([[1, 2, 3], [0, 1, 4], [5, 6, 0]])
    assert big.det() == 1
    assert big @ big.inv() == Mat.identity(3)


def test_singular():
    with pytest.raises(SingularMatrix):
        Mat([[1, 2], [2, 4]]).inv()
    with pytest.raises(SingularMatrix):
        solve(Mat([[1, 2], [2, 4]]), Mat([[1], [1]]))


def test_solve_and_nullspace():
    a = Mat([[1, 2, 0], [0, 1, 1], [1, 0, 1]])
    x = Mat([[1, F(1, 2)], [GaussRat(0, 1), 2], [3, -1]])
    assert solve(a, a @ x) == x
    k = nullspace(Mat([[1, 2], [2, 4]]))
    assert len(k) == 1 and (Mat([[1, 2], [2, 4]]) @ k[0]).is_zero()


def test_positive_definite():
    assert Mat([[2, GaussRat(0, 1)], [GaussRat(0, -1), 1]]).is_positive_definite()
    assert not Mat([[1, 2], [2, 1]]).is_positive_definite()
    assert not Mat([[1, 1], [0, 1]]).is_positive_definite()  # not Hermitian


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        Mat.identity(2) @ Mat.identity(3)
