import random
from fractions import Fraction

import pytest

from hciz.scalars import GaussianRational, RadicalScalar, QQI_I, QQI_ONE, QQI_ZERO


def rand_gr(rng):
    return GaussianRational(
        Fraction(rng.randint(-20, 20), rng.randint(1, 7)),
        Fraction(rng.randint(-20, 20), rng.randint(1, 7)),
    )


class TestGaussianRational:
    def test_basic_arithmetic(self):
        a = GaussianRational(Fraction(1, 2), Fraction(3, 4))
        b = GaussianRational(2, -1)
        assert a + b == GaussianRational(Fraction(5, 2), Fraction(-1, 4))
        assert a - a == QQI_ZERO
        assert QQI_I * QQI_I == GaussianRational(-1)

    def test_multiplication_against_complex(self):
        rng = random.Random(5)
        for _ in range(50):
            a, b = rand_gr(rng), rand_gr(rng)
            got = (a * b).to_complex()
            want = a.to_complex() * b.to_complex()
            assert abs(got - want) < 1e-9

    def test_division_roundtrip(self):
        rng = random.Random(6)
        for _ in range(50):
            a, b = rand_gr(rng), rand_gr(rng)
            if b.is_zero:
                continue
            assert (a / b) * b == a

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            QQI_ONE / QQI_ZERO

    def test_conjugation(self):
        a = GaussianRational(1, 2)
        assert a.conjugate() == GaussianRational(1, -2)
        assert a.conjugate().conjugate() == a
        assert (a * a.conjugate()).is_real
        assert a.norm2() == Fraction(5)

    def test_coercion_and_equality(self):
        assert GaussianRational(3) == 3
        assert GaussianRational(Fraction(1, 2)) == Fraction(1, 2)
        assert GaussianRational(0, 1) != 1

    def test_real_values_hash_like_fractions(self):
        assert hash(GaussianRational(Fraction(3, 2))) == hash(GaussianRational(Fraction(3, 2), 0))
        d = {GaussianRational(2): "x"}
        assert d[GaussianRational(2, 0)] == "x"

    def test_immutability(self):
        a = GaussianRational(1)
        with pytest.raises(AttributeError):
            a.re = Fraction(2)

    def test_str_forms(self):
        assert str(GaussianRational(Fraction(3, 2))) == "3/2"
        assert str(GaussianRational(0, 1)) == "i"
        assert str(GaussianRational(1, Fraction(-1, 2))) == "1-1/2i"
        assert GaussianRational(Fraction(3, 2), 0).pair_str() == "(3/2, 0)"


class TestRadicalScalar:
    def test_square_extraction(self):
        # 12 = 2^2 * 3, so sqrt(12) normalizes to 2 sqrt(3)
        r = RadicalScalar(1, 12)
        assert r.coeff == GaussianRational(2) and r.radicand == 3

    def test_sqrt_of_rational(self):
        r = RadicalScalar.sqrt_of(Fraction(9, 4))
        assert r.is_rational and r.as_gaussian() == Fraction(3, 2)
        r = RadicalScalar.sqrt_of(Fraction(1, 2))
        assert r.squared() == GaussianRational(Fraction(1, 2))

    def test_inv_sqrt(self):
        r = RadicalScalar.inv_sqrt_of(12)
        assert r.squared() == GaussianRational(Fraction(1, 12))

    def test_product_and_inverse(self):
        rng = random.Random(7)
        for _ in range(30):
            q1 = Fraction(rng.randint(1, 50), rng.randint(1, 10))
            q2 = Fraction(rng.randint(1, 50), rng.randint(1, 10))
            a, b = RadicalScalar.sqrt_of(q1), RadicalScalar.sqrt_of(q2)
            assert (a * b).squared() == GaussianRational(q1 * q2)
            assert a * a.inverse() == RadicalScalar(1)

    def test_equality_needs_matching_radicand(self):
        assert RadicalScalar(2, 3) != RadicalScalar(2, 5)
        assert RadicalScalar(2, 3) == RadicalScalar(1, 12)
        assert RadicalScalar(5) == 5

    def test_as_gaussian_rejects_irrational(self):
        with pytest.raises(ValueError):
            RadicalScalar(1, 2).as_gaussian()

    def test_to_complex(self):
        assert abs(RadicalScalar(1, 2).to_complex() - 2**0.5) < 1e-15

    def test_zero_normalization(self):
        z = RadicalScalar(0, 7)
        assert z.is_zero and z.radicand == 1 and not z
