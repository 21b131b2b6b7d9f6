"""Exactness tests for the integer and mod-1 layer."""

import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kfractions.arith import (
    FactoredInteger,
    Mod1Fraction,
    crt_combine,
    divisors,
    egcd,
    euler_phi,
    factorize,
    gcd_infty,
    is_prime,
    jacobi,
    mod_inverse,
    moebius,
    reciprocity_three_term,
    reciprocity_two_term,
    split_denominator,
    squarefull_split,
    tau,
)


class TestEgcd:
    def test_examples(self):
        assert egcd(3, 7) == (1, -2, 1)
        assert egcd(0, 5) == (5, 0, 1)
        g, x, y = egcd(12, 18)
        assert g == 6 and 12 * x + 18 * y == 6

    def test_both_zero_rejected(self):
        with pytest.raises(ValueError):
            egcd(0, 0)

    @given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
    def test_bezout_identity(self, a, b):
        if a == 0 and b == 0:
            return
        g, x, y = egcd(a, b)
        assert g == gcd(a, b) > 0
        assert a * x + b * y == g


class TestModInverse:
    def test_examples(self):
        assert mod_inverse(3, 7) == 5
        assert mod_inverse(1, 97) == 1
        assert mod_inverse(123456, 1) == 0

    def test_non_coprime_rejected(self):
        with pytest.raises(ValueError):
            mod_inverse(6, 9)

    @given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
    def test_inverse_property(self, a, n):
        if gcd(a, n) != 1:
            return
        inv = mod_inverse(a, n)
        assert 0 <= inv < max(n, 1)
        assert (a * inv) % n == 1 % n


class TestCrt:
    def test_examples(self):
        assert crt_combine([(1, 2), (2, 3)]) == (5, 6)
        assert crt_combine([(0, 7)]) == (0, 7)
        assert crt_combine([(2, 5), (3, 7)]) == (17, 35)

    def test_non_coprime_rejected(self):
        with pytest.raises(ValueError):
            crt_combine([(0, 4), (1, 6)])

    def test_roundtrip_sweep(self):
        rng = random.Random(42)
        for _ in range(300):
            moduli, prod = [], 1
            for _ in range(rng.randint(1, 4)):
                m = rng.randint(1, 60)
                if all(gcd(m, q) == 1 for q in moduli) and prod * m <= 10**6:
                    moduli.append(m)
                    prod *= m
            pairs = [(rng.randrange(m), m) for m in moduli]
            res, mod = crt_combine(pairs)
            assert mod == prod
            assert all(res % m == r for r, m in pairs)


class TestJacobi:
    def test_examples(self):
        assert jacobi(2, 15) == 1
        assert jacobi(1, 9999) == 1
        assert jacobi(6, 9) == 0

    def test_even_modulus_rejected(self):
        with pytest.raises(ValueError):
            jacobi(1, 10)
        with pytest.raises(ValueError):
            jacobi(1, -3)

    @given(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4), st.integers(0, 5000))
    @settings(max_examples=200)
    def test_multiplicative(self, a, b, k):
        n = 2 * k + 1
        assert jacobi(a, n) * jacobi(b, n) == jacobi(a * b, n)

    def test_quadratic_reciprocity(self):
        rng = random.Random(7)
        for _ in range(500):
            m = rng.randrange(1, 2000, 2)
            n = rng.randrange(1, 2000, 2)
            if gcd(m, n) != 1:
                continue
            sign = (-1) ** (((m - 1) // 2) * ((n - 1) // 2))
            assert jacobi(m, n) * jacobi(n, m) == sign

    def test_zero_iff_common_factor(self):
        rng = random.Random(5)
        for _ in range(300):
            n = rng.randrange(1, 5000, 2)
            a = rng.randint(-5000, 5000)
            assert (jacobi(a, n) == 0) == (gcd(a, n) > 1)


class TestFactorize:
    def test_examples(self):
        assert factorize(12).factors == ((2, 2), (3, 1))
        assert factorize(1).factors == ()
        assert factorize(97).factors == ((97, 1),)

    def test_multiply_back_and_primality(self):
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randint(1, 10**12)
            f = factorize(n)
            prod = 1
            for p, e in f.factors:
                assert is_prime(p)
                prod *= p**e
            assert prod == n

    def test_large_semiprime(self):
        p, q = 1000003, 1000033
        assert factorize(p * q).factors == ((p, 1), (q, 1))

    def test_limit(self):
        with pytest.raises(ValueError):
            factorize(2**63 + 1)
        with pytest.raises(ValueError):
            factorize(0)

    def test_validation(self):
        with pytest.raises(ValueError):
            FactoredInteger(12, ((3, 1), (2, 2)))  # wrong order
        with pytest.raises(ValueError):
            FactoredInteger(12, ((2, 1), (3, 1)))  # wrong product

    def test_arithmetic_functions(self):
        assert tau(12) == 6
        assert moebius(30) == -1
        assert moebius(12) == 0
        assert euler_phi(12) == 4
        assert divisors(12) == [1, 2, 3, 4, 6, 12]


class TestSquarefullSplit:
    def test_examples(self):
        assert squarefull_split(12) == (4, 3)
        assert squarefull_split(30) == (1, 30)
        assert squarefull_split(72) == (72, 1)

    def test_sweep(self):
        rng = random.Random(3)
        for _ in range(400):
            n = rng.randint(1, 10**6)
            b, nprime = squarefull_split(n)
            assert b * nprime == n
            assert gcd(b, nprime) == 1
            assert moebius(nprime) != 0
            assert all(e >= 2 for _, e in factorize(b).factors)


class TestGcdInfty:
    def test_examples(self):
        assert gcd_infty(2, 24) == 8
        assert gcd_infty(1, 12345) == 1
        assert gcd_infty(6, 36) == 36

    def test_against_power_stabilization(self):
        rng = random.Random(9)
        for _ in range(300):
            m = rng.randint(0, 4000)
            n = rng.randint(1, 4000)
            r = max(1, n.bit_length())
            assert gcd_infty(m, n) == gcd(m**r, n)

    def test_largest_admissible_divisor(self):
        rng = random.Random(10)
        for _ in range(100):
            m = rng.randint(1, 300)
            n = rng.randint(1, 300)
            best = max(d for d in divisors(n) if gcd(m**9, d) == d)  # 2^9 > 300
            assert gcd_infty(m, n) == best


class TestMod1Fraction:
    def test_canonical_form(self):
        f = Mod1Fraction(7, 6)
        assert (f.numerator, f.denominator) == (1, 6)
        assert Mod1Fraction(0, 5) == Mod1Fraction(0, 1)
        assert Mod1Fraction(-1, 6) == Mod1Fraction(5, 6)

    def test_add_neg(self):
        assert Mod1Fraction(2, 3) + Mod1Fraction(1, 2) == Mod1Fraction(1, 6)
        assert -Mod1Fraction(1, 4) == Mod1Fraction(3, 4)
        assert Mod1Fraction(1, 3).scaled(3) == Mod1Fraction(0, 1)

    def test_invalid(self):
        with pytest.raises(ValueError):
            Mod1Fraction(1, 0)

    @given(st.integers(-10**6, 10**6), st.integers(1, 10**6),
           st.integers(-10**6, 10**6), st.integers(1, 10**6))
    @settings(max_examples=200)
    def test_group_laws(self, a, b, c, d):
        x, y = Mod1Fraction(a, b), Mod1Fraction(c, d)
        assert x + y == y + x
        assert (x + y) + (-y) == x


class TestReciprocity:
    def test_two_term_examples(self):
        lhs, rhs = reciprocity_two_term(2, 3)
        assert lhs == rhs == Mod1Fraction(1, 6)
        lhs, rhs = reciprocity_two_term(1, 9)
        assert lhs == rhs == Mod1Fraction(1, 9)
        lhs, rhs = reciprocity_two_term(5, 7)
        assert lhs == rhs == Mod1Fraction(1, 35)

    def test_three_term_examples(self):
        lhs, rhs = reciprocity_three_term(2, 3, 5)
        assert lhs == rhs == Mod1Fraction(1, 30)
        lhs, rhs = reciprocity_three_term(1, 1, 11)
        assert lhs == rhs == Mod1Fraction(1, 11)

    def test_split_examples(self):
        lhs, rhs = split_denominator(1, 2, 3)
        assert lhs == rhs == Mod1Fraction(1, 6)
        lhs, rhs = split_denominator(5, 1, 9)
        assert lhs == rhs == Mod1Fraction(mod_inverse(5, 9), 9)

    def test_rejections(self):
        with pytest.raises(ValueError):
            reciprocity_two_term(6, 9)
        with pytest.raises(ValueError):
            reciprocity_three_term(2, 4, 5)
        with pytest.raises(ValueError):
            split_denominator(3, 6, 5)

    def test_500_random_triples(self):
        rng = random.Random(2026)
        done = 0
        while done < 500:
            a, b, c = (rng.randint(1, 10**4) for _ in range(3))
            if gcd(a, b) == gcd(a, c) == gcd(b, c) == 1:
                lhs, rhs = reciprocity_three_term(a, b, c)
                assert lhs == rhs
                done += 1

    def test_500_random_splits(self):
        rng = random.Random(2027)
        done = 0
        while done < 500:
            b, c = rng.randint(1, 10**3), rng.randint(1, 10**3)
            a = rng.randint(-10**6, 10**6)
            if gcd(b, c) == 1 and a != 0 and gcd(a, b * c) == 1:
                lhs, rhs = split_denominator(a, b, c)
                assert lhs == rhs
                done += 1
