"""Incomplete sums: brute evaluation, lemma bookkeeping, envelopes, majorants."""

import cmath
import random
from math import gcd, sqrt

import numpy as np
import pytest

from kfractions.characters import characters_mod
from kfractions.incomplete import (
    IncompleteSpec,
    bound_plain,
    bound_filtered,
    envelope_sharpness_sweep,
    erdos_turan_majorant,
    erdos_turan_majorant_symmetrized,
    erdos_turan_sweep,
    incomplete_brute,
    lemma_params,
)
from kfractions.ksums import KloostermanParams, kloosterman_brute, ramanujan


class TestBrute:
    def test_full_period_is_ramanujan(self):
        rng = random.Random(1)
        for _ in range(40):
            g = rng.randint(1, 200)
            alpha = rng.randint(-2 * g, 2 * g)
            spec = IncompleteSpec(gamma=g, x_start=1, x_len=g - 1, alpha=alpha)
            val = incomplete_brute(spec)
            assert val.imag == pytest.approx(0.0, abs=1e-9)
            assert val.real == pytest.approx(ramanujan(alpha, g), abs=1e-9)

    def test_empty_interval(self):
        spec = IncompleteSpec(gamma=7, k=5, v=4, x_start=0, x_len=2, alpha=1)
        assert incomplete_brute(spec) == 0

    def test_three_term_example(self):
        spec = IncompleteSpec(gamma=5, x_start=1, x_len=2, alpha=1)
        expect = sum(cmath.exp(2j * cmath.pi * t / 5) for t in (1, 3, 2))
        assert incomplete_brute(spec) == pytest.approx(expect)

    def test_character_twist(self):
        g = 7
        chi = characters_mod(g)[1]
        spec = IncompleteSpec(gamma=g, x_start=1, x_len=g - 1, alpha=2, character=chi)
        direct = sum(
            complex(chi(x)) * cmath.exp(2j * cmath.pi * ((2 * pow(x, -1, g)) % g) / g)
            for x in range(1, g)
        )
        assert incomplete_brute(spec) == pytest.approx(direct, abs=1e-12)

    def test_linear_twist_and_coprimality(self):
        spec = IncompleteSpec(gamma=6, delta=5, x_start=-10, x_len=25, alpha=1, beta=2)
        total = 0j
        for x in range(-10, 16):
            if gcd(x, 30) != 1:
                continue
            total += cmath.exp(2j * cmath.pi * (((pow(x % 6, -1, 6) + 2 * x) % 6) / 6))
        assert incomplete_brute(spec) == pytest.approx(total, abs=1e-12)

    def test_gcd_condition_paths(self):
        rng = random.Random(2)
        from kfractions.arith import divisors

        for _ in range(40):
            g = rng.randint(1, 60)
            c = rng.randint(1, 20)
            d = rng.choice(divisors(c))
            spec = IncompleteSpec(
                gamma=g, k=rng.randint(1, 4), v=0,
                x_start=rng.randint(-g, g), x_len=rng.randint(0, 2 * g),
                alpha=rng.randint(-g, g),
                gcd_cond=(rng.randint(-4, 4), rng.randint(-4, 4), c, d),
            )
            a, b, cc, dd = spec.gcd_cond
            total = 0j
            for x in spec.interval():
                if gcd(x, g) == 1 and gcd(a * x + b, cc) == dd:
                    xbar = pow(x % g, -1, g) if g > 1 else 0
                    total += cmath.exp(2j * cmath.pi * (((spec.alpha * xbar) % g) / g if g > 1 else 0))
            assert incomplete_brute(spec) == pytest.approx(total, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            IncompleteSpec(gamma=0)
        with pytest.raises(ValueError):
            IncompleteSpec(gamma=5, gcd_cond=(1, 0, 6, 4))  # d does not divide c
        chi = characters_mod(5)[0]
        with pytest.raises(ValueError):
            IncompleteSpec(gamma=7, character=chi)
        with pytest.raises(ValueError):
            incomplete_brute(IncompleteSpec(gamma=2, x_len=10**8))


class TestLemmaParams:
    def test_examples(self):
        lp = lemma_params(IncompleteSpec(gamma=24, k=2))
        assert (lp.h, lp.h1, lp.gamma1) == (2, 8, 3)
        lp = lemma_params(IncompleteSpec(gamma=77, k=1))
        assert (lp.h, lp.h1, lp.gamma1) == (1, 1, 77)
        lp = lemma_params(IncompleteSpec(gamma=12, k=6))
        assert (lp.h, lp.h1, lp.gamma1) == (6, 12, 1)

    def test_divisibility_chain(self):
        rng = random.Random(3)
        for _ in range(200):
            spec = IncompleteSpec(gamma=rng.randint(1, 1000), k=rng.randint(1, 60))
            lp = lemma_params(spec)
            assert lp.h1 % lp.h == 0
            assert spec.gamma % lp.h1 == 0
            assert lp.h1 * lp.gamma1 == spec.gamma


class TestEnvelopes:
    def test_plain_envelope_collapse(self):
        # k=1, delta=1, gcd(alpha,gamma)=1, C=1, eps=0 -> sqrt(gamma) + X/gamma
        spec = IncompleteSpec(gamma=97, x_len=500, alpha=3)
        assert bound_plain(spec) == pytest.approx(sqrt(97) + 500 / 97)

    def test_plain_envelope_worked_example(self):
        spec = IncompleteSpec(gamma=24, k=2, x_len=100, alpha=1)
        assert bound_plain(spec) == pytest.approx(4 * sqrt(3) + 100 / 6)

    def test_filtered_envelope_collapse(self):
        spec = IncompleteSpec(gamma=97, x_len=500, alpha=3)
        assert bound_filtered(spec) == pytest.approx(sqrt(97) + sqrt(1) * 500 / (sqrt(97) * 1))

    def test_eps_and_c_dependence(self):
        spec = IncompleteSpec(gamma=24, k=2, x_len=100, alpha=1, delta=2,
                              gcd_cond=(1, 0, 6, 1))
        assert bound_filtered(spec, C=2.0, eps=0.1) == pytest.approx(2 * bound_filtered(spec, C=1.0, eps=0.1))
        assert bound_filtered(spec, eps=0.2) > bound_filtered(spec, eps=0.0)
        with pytest.raises(ValueError):
            bound_plain(spec, C=0.0)

    def test_sharpness_sweep_finite(self):
        samples = envelope_sharpness_sweep(100, 120, seed=5)
        assert all(np.isfinite(s.ratio) for s in samples)


class TestCompletionMajorant:
    def test_small_example_dominates(self):
        spec = IncompleteSpec(gamma=5, x_start=1, x_len=2, alpha=1)
        assert abs(incomplete_brute(spec)) <= erdos_turan_majorant(spec)

    def test_alpha_divisible_first_term(self):
        g = 11
        spec = IncompleteSpec(gamma=g, x_start=0, x_len=30, alpha=0, k=1)
        maj = erdos_turan_majorant(spec)
        first = (30 + 1) / g * abs(kloosterman_brute(KloostermanParams(0, 0, g)).value)
        assert maj >= first
        assert abs(incomplete_brute(spec)) <= maj

    def test_preconditions(self):
        with pytest.raises(ValueError):
            erdos_turan_majorant(IncompleteSpec(gamma=24, k=2, alpha=1))
        with pytest.raises(ValueError):
            erdos_turan_majorant(IncompleteSpec(gamma=5, delta=2, alpha=1))
        with pytest.raises(ValueError):
            erdos_turan_majorant(IncompleteSpec(gamma=5, beta=1, alpha=1))

    def test_symmetrized_bound_is_exact_sweep(self):
        # the both-signs completion bound is a theorem: no violations, ever
        violations = erdos_turan_sweep(300, 300, seed=20260809)
        # sweep raises if the symmetrized bound fails; the return value only
        # reports printed-display violations, which exist and are flagged
        assert isinstance(violations, list)

    def test_known_counterexample_to_printed_display(self):
        # gamma divisible by a square: one-signed r-sum misses half the mass
        spec = IncompleteSpec(gamma=72, k=13, v=3, x_start=102, x_len=163, alpha=17)
        lhs = abs(incomplete_brute(spec))
        printed = erdos_turan_majorant(spec)
        exact = erdos_turan_majorant_symmetrized(spec)
        assert lhs > printed * (1 + 1e-9)   # the printed display fails here
        assert lhs <= exact * (1 + 1e-12)   # the exact form holds comfortably
        assert exact > printed

    def test_symmetrized_dominates_on_squarefree_and_prime_moduli(self):
        rng = random.Random(17)
        for _ in range(80):
            g = rng.choice([2, 3, 5, 7, 11, 13, 101, 103, 30, 42, 105])
            k = rng.choice([kk for kk in range(1, 12) if gcd(kk, g) == 1])
            spec = IncompleteSpec(
                gamma=g, k=k, v=rng.randrange(k),
                x_start=rng.randint(-g, g), x_len=rng.randint(0, 3 * g),
                alpha=rng.randint(-g, g),
            )
            lhs = abs(incomplete_brute(spec))
            assert lhs <= erdos_turan_majorant_symmetrized(spec) * (1 + 1e-9)
