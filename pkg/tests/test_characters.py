"""Dirichlet character construction, orthogonality, multiplicativity."""

import random
from math import gcd

import numpy as np
import pytest

from kfractions.arith import euler_phi
from kfractions.characters import character_group, characters_mod


class TestGroupStructure:
    def test_counts(self):
        for q in (1, 2, 3, 4, 5, 8, 12, 16, 24, 36, 60, 97):
            assert len(characters_mod(q)) == euler_phi(q)

    def test_modulus_one(self):
        (chi,) = characters_mod(1)
        assert chi.is_principal
        assert chi(0) == 1.0 and chi(17) == 1.0

    def test_two_generator_structure_mod_8(self):
        chars = characters_mod(8)
        assert len(chars) == 4
        group = character_group(8)
        assert sorted(c.order for c in group.components) == [2, 2]

    def test_limit(self):
        with pytest.raises(ValueError):
            characters_mod(10**4 + 1)


class TestValues:
    def test_principal(self):
        for q in (5, 8, 12):
            chi0 = next(c for c in characters_mod(q) if c.is_principal)
            for x in range(q):
                expect = 1.0 if gcd(x, q) == 1 else 0.0
                assert chi0(x) == pytest.approx(expect)

    def test_unit_values_on_units_zero_elsewhere(self):
        for q in (5, 8, 45):
            for chi in characters_mod(q):
                assert chi(1) == pytest.approx(1.0)
                table = chi.value_table
                for x in range(q):
                    if gcd(x, q) == 1:
                        assert abs(table[x]) == pytest.approx(1.0)
                    else:
                        assert table[x] == 0.0

    def test_complete_multiplicativity(self):
        rng = random.Random(8)
        for q in (5, 8, 12, 21, 40):
            for chi in characters_mod(q):
                for _ in range(10):
                    x, y = rng.randrange(q), rng.randrange(q)
                    assert chi(x * y) == pytest.approx(chi(x) * chi(y), abs=1e-9)


class TestOrthogonality:
    @pytest.mark.parametrize("q", [1, 2, 5, 8, 9, 12, 24, 35, 72])
    def test_gram_matrix(self, q):
        chars = characters_mod(q)
        tables = np.array([chi.value_table for chi in chars])
        gram = tables @ tables.conj().T
        target = euler_phi(q) * np.eye(len(chars))
        assert np.max(np.abs(gram - target)) < 1e-6

    def test_values_at_vectorized(self):
        chi = characters_mod(7)[2]
        xs = [0, 1, 8, -1, 13]
        vals = chi.values_at(xs)
        for x, v in zip(xs, vals):
            assert v == pytest.approx(chi(x % 7), abs=1e-12)
