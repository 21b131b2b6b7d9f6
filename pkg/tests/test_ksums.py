"""Complete Kloosterman sums: brute oracle, fast path, Ramanujan, Weil."""

import cmath
import random
from math import gcd, sqrt

import pytest

from kfractions.arith import euler_phi, tau
from kfractions.ksums import (
    KloostermanParams,
    kloosterman_brute,
    kloosterman_fast,
    ramanujan,
    weil_bound,
)


def slow_reference(a: int, b: int, c: int) -> complex:
    """Pure-python reference, independent of the numpy brute path."""
    if c == 1:
        return 1.0
    total = 0.0 + 0.0j
    for x in range(1, c):
        if gcd(x, c) != 1:
            continue
        total += cmath.exp(2j * cmath.pi * ((a * pow(x, -1, c) + b * x) % c) / c)
    return total


class TestBrute:
    def test_modulus_one(self):
        assert kloosterman_brute(KloostermanParams(5, -3, 1)).value == 1.0

    def test_zero_zero_is_phi(self):
        for c in (2, 6, 12, 97):
            assert kloosterman_brute(KloostermanParams(0, 0, c)).value == pytest.approx(euler_phi(c))

    def test_s113(self):
        assert kloosterman_brute(KloostermanParams(1, 1, 3)).value == pytest.approx(-1.0)

    def test_against_python_reference(self):
        rng = random.Random(1)
        for _ in range(60):
            c = rng.randint(1, 300)
            a, b = rng.randint(-2 * c, 2 * c), rng.randint(-2 * c, 2 * c)
            ref = slow_reference(a, b, c)
            assert abs(ref.imag) < 1e-9
            got = kloosterman_brute(KloostermanParams(a, b, c)).value
            assert got == pytest.approx(ref.real, abs=1e-9)

    def test_symmetry(self):
        rng = random.Random(2)
        for _ in range(60):
            c = rng.randint(1, 400)
            a, b = rng.randint(-c, c), rng.randint(-c, c)
            v1 = kloosterman_brute(KloostermanParams(a, b, c)).value
            v2 = kloosterman_brute(KloostermanParams(b, a, c)).value
            assert v1 == pytest.approx(v2, abs=1e-9)

    def test_guard(self):
        with pytest.raises(ValueError):
            kloosterman_brute(KloostermanParams(1, 1, 10**7 + 1))
        with pytest.raises(ValueError):
            KloostermanParams(1, 1, 0)


class TestRamanujan:
    def test_examples(self):
        assert ramanujan(1, 3) == -1
        assert ramanujan(2, 4) == -2
        for c in (1, 2, 9, 30):
            assert ramanujan(0, c) == euler_phi(c)

    def test_matches_brute_and_gcd_bound(self):
        rng = random.Random(3)
        for _ in range(120):
            c = rng.randint(1, 500)
            a = rng.randint(-3 * c, 3 * c)
            r = ramanujan(a, c)
            brute = kloosterman_brute(KloostermanParams(a, 0, c)).value
            assert brute == pytest.approx(r, abs=1e-9)
            assert abs(r) <= gcd(a, c)


class TestFast:
    def test_dispatch_method(self):
        assert kloosterman_fast(KloostermanParams(1, 1, 97)).method == "brute"
        assert kloosterman_fast(KloostermanParams(1, 1, 6)).method == "crt_salie"
        assert kloosterman_fast(KloostermanParams(1, 1, 625)).method == "crt_salie"

    def test_salie_closed_form_matches_brute(self):
        for p in (3, 5, 7, 11, 13):
            for alpha in (2, 3, 4):
                c = p**alpha
                if c > 30000:
                    continue
                rng = random.Random(c)
                for _ in range(10):
                    a = rng.randint(1, c - 1)
                    b = rng.randint(1, c - 1)
                    if a % p == 0 or b % p == 0:
                        continue
                    brute = kloosterman_brute(KloostermanParams(a, b, c)).value
                    fast = kloosterman_fast(KloostermanParams(a, b, c))
                    assert fast.value == pytest.approx(brute, abs=1e-6 * max(1, abs(brute)))
                    assert fast.method == "crt_salie"

    def test_vanishing_nonresidue_case(self):
        # a*inverse(b) a non-residue mod p forces S(a,b;p^alpha) = 0
        hits = 0
        for b in range(1, 25):
            if b % 5 == 0:
                continue
            val = kloosterman_fast(KloostermanParams(2, b, 25)).value
            brute = kloosterman_brute(KloostermanParams(2, b, 25)).value
            assert val == pytest.approx(brute, abs=1e-9)
            if val == 0.0:
                hits += 1
        assert hits > 0

    def test_oracle_equivalence_sweep(self):
        rng = random.Random(4)
        for c in range(1, 250):
            for _ in range(4):
                a, b = rng.randint(-2 * c, 2 * c), rng.randint(-2 * c, 2 * c)
                brute = kloosterman_brute(KloostermanParams(a, b, c)).value
                fast = kloosterman_fast(KloostermanParams(a, b, c)).value
                assert fast == pytest.approx(brute, abs=1e-6 * max(1, abs(brute)))

    def test_mixed_blocks(self):
        # square-full odd part with closed form, power of two by brute
        for c in (8 * 27, 16 * 125, 9 * 25 * 4):
            brute = kloosterman_brute(KloostermanParams(1, 1, c)).value
            fast = kloosterman_fast(KloostermanParams(1, 1, c)).value
            assert fast == pytest.approx(brute, abs=1e-9 * max(1, abs(brute)))

    def test_oversized_block_rejected(self):
        with pytest.raises(ValueError):
            kloosterman_fast(KloostermanParams(1, 1, 10**13))
        # prime block above brute cap, no closed form available
        with pytest.raises(ValueError):
            kloosterman_fast(KloostermanParams(1, 1, 10000019 * 2))


class TestWeil:
    def test_examples(self):
        p = 101
        assert weil_bound(KloostermanParams(1, 1, p)) == pytest.approx(2 * sqrt(p))
        c = 12
        assert weil_bound(KloostermanParams(1, 1, c)) == pytest.approx(tau(c) * sqrt(c))
        assert weil_bound(KloostermanParams(0, 0, c)) == pytest.approx(tau(c) * c)
        assert euler_phi(c) <= tau(c) * c

    def test_prime_sweep_exhaustive(self):
        # |S(1,1;p)| <= 2 sqrt(p) for every prime p <= 1e4
        from kfractions.arith import _small_primes

        for p in _small_primes():
            if p > 10**4:
                break
            v = kloosterman_brute(KloostermanParams(1, 1, p)).value
            assert abs(v) <= 2 * sqrt(p) * (1 + 1e-12)

    def test_random_grid(self):
        rng = random.Random(6)
        for _ in range(200):
            c = rng.randint(1, 600)
            a, b = rng.randint(-2 * c, 2 * c), rng.randint(-2 * c, 2 * c)
            v = kloosterman_brute(KloostermanParams(a, b, c)).value
            assert abs(v) <= weil_bound(KloostermanParams(a, b, c)) * (1 + 1e-9)
