"""Dirichlet characters modulo q from the unit-group decomposition.

(Z/q)* splits into cyclic components: one per odd prime power p^e (generated
by a primitive root), and for the 2-part either nothing (2^0, 2^1), a single
order-2 component (2^2), or the pair <-1> x <5> (2^e, e >= 3).  A character
is a choice of exponent index per component; values are exact roots of unity
evaluated from discrete-log tables, which are cheap to build at desk-scale
moduli (q <= 1e4).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, cached_property
from math import gcd
from typing import Sequence

import numpy as np

from .arith import factorize

__all__ = ["DirichletCharacter", "CharacterGroup", "character_group", "characters_mod"]

CHARACTER_MODULUS_LIMIT = 10**4


def _primitive_root_mod_prime(p: int) -> int:
    if p == 2:
        return 1
    prime_parts = [q for q, _ in factorize(p - 1).factors]
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in prime_parts):
            return g
        g += 1


def _primitive_root_mod_prime_power(p: int, e: int) -> int:
    g = _primitive_root_mod_prime(p)
    if e == 1:
        return g
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


@dataclass(frozen=True)
class _Component:
    modulus: int       # the prime-power piece this component lives in
    order: int
    log: dict[int, int]  # residue mod `modulus` -> exponent of the generator


def _cyclic_component(modulus: int, generator: int, order: int) -> _Component:
    log = {}
    x = 1
    for k in range(order):
        log[x] = k
        x = x * generator % modulus
    return _Component(modulus, order, log)


def _two_part_components(e: int) -> list[_Component]:
    if e <= 1:
        return []
    q = 2**e
    if e == 2:
        return [_cyclic_component(4, 3, 2)]
    # (Z/2^e)* = <-1> x <5>
    sign = _Component(q, 2, {})
    five = _Component(q, 2 ** (e - 2), {})
    log_sign: dict[int, int] = {}
    log_five: dict[int, int] = {}
    for s in range(2):
        x = pow(q - 1, s, q)
        for t in range(2 ** (e - 2)):
            r = x * pow(5, t, q) % q
            log_sign[r] = s
            log_five[r] = t
    return [
        _Component(q, 2, log_sign),
        _Component(q, 2 ** (e - 2), log_five),
    ]


class CharacterGroup:
    """All Dirichlet characters modulo q, sharing one set of log tables."""

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        if modulus > CHARACTER_MODULUS_LIMIT:
            raise ValueError(f"character groups capped at modulus {CHARACTER_MODULUS_LIMIT}")
        self.modulus = modulus
        comps: list[_Component] = []
        for p, e in factorize(modulus).factors:
            if p == 2:
                comps.extend(_two_part_components(e))
            else:
                q = p**e
                order = (p - 1) * p ** (e - 1)
                comps.append(_cyclic_component(q, _primitive_root_mod_prime_power(p, e), order))
        self.components = tuple(comps)
        self.order = 1
        for comp in comps:
            self.order *= comp.order

    def log_vector(self, x: int) -> tuple[int, ...] | None:
        """Component exponents of x, or None when gcd(x, q) > 1."""
        if gcd(x, self.modulus) != 1:
            return None
        return tuple(comp.log[x % comp.modulus] for comp in self.components)

    def characters(self) -> list["DirichletCharacter"]:
        out: list[DirichletCharacter] = []
        indices = [0] * len(self.components)
        while True:
            out.append(DirichletCharacter(self, tuple(indices)))
            for j in range(len(indices) - 1, -1, -1):
                indices[j] += 1
                if indices[j] < self.components[j].order:
                    break
                indices[j] = 0
            else:
                return out


@lru_cache(maxsize=256)
def character_group(modulus: int) -> CharacterGroup:
    return CharacterGroup(modulus)


@dataclass(frozen=True)
class DirichletCharacter:
    """chi(x) = e(sum_j indices[j] * log_j(x) / order_j) on units, 0 elsewhere."""

    group: CharacterGroup
    indices: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.group.modulus

    @property
    def is_principal(self) -> bool:
        return all(i == 0 for i in self.indices)

    def __call__(self, x: int) -> complex:
        logs = self.group.log_vector(x)
        if logs is None:
            return 0.0 + 0.0j
        phase = 0.0
        for idx, lg, comp in zip(self.indices, logs, self.group.components):
            phase += idx * lg / comp.order
        return complex(np.exp(2j * np.pi * (phase % 1.0)))

    @cached_property
    def value_table(self) -> np.ndarray:
        """chi on 0..q-1 as a complex array (zeros at non-units)."""
        q = self.modulus
        out = np.zeros(max(q, 1), dtype=np.complex128)
        for x in range(max(q, 1)):
            out[x] = self(x)
        return out

    def values_at(self, xs: Sequence[int]) -> np.ndarray:
        q = max(self.modulus, 1)
        table = self.value_table
        return table[np.asarray(xs, dtype=np.int64) % q]


def characters_mod(modulus: int) -> list[DirichletCharacter]:
    """All phi(q) Dirichlet characters modulo q (q <= 1e4)."""
    return character_group(modulus).characters()
