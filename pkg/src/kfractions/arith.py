"""Exact integer and rational-mod-1 arithmetic.

Everything in this module is exact: Euclidean machinery, modular inverses,
CRT, Jacobi symbols, deterministic factorization, the square-full/square-free
splitting, and the elementary reciprocity identities for residues of the form
a*inverse(m)/n taken modulo 1.

The reciprocity operations return BOTH sides of each identity as canonical
``Mod1Fraction`` values and raise if the claimed equality ever fails, so the
experiment suites can assert them with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable

__all__ = [
    "Mod1Fraction",
    "FactoredInteger",
    "egcd",
    "mod_inverse",
    "crt_combine",
    "jacobi",
    "is_prime",
    "factorize",
    "divisors",
    "tau",
    "moebius",
    "euler_phi",
    "squarefull_split",
    "gcd_infty",
    "reciprocity_two_term",
    "reciprocity_three_term",
    "split_denominator",
]

FACTORIZE_LIMIT = 2**63
_TRIAL_LIMIT = 10**6


# ---------------------------------------------------------------------------
# mod-1 fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mod1Fraction:
    """A rational residue modulo 1 in canonical form.

    Invariants: 0 <= numerator < denominator and gcd(numerator, denominator)=1,
    restored eagerly on construction so equality is structural.
    """

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        den = self.denominator
        if den <= 0:
            raise ValueError("denominator must be positive")
        num = self.numerator % den
        g = gcd(num, den)
        object.__setattr__(self, "numerator", num // g)
        object.__setattr__(self, "denominator", den // g)

    def __add__(self, other: "Mod1Fraction") -> "Mod1Fraction":
        return Mod1Fraction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __neg__(self) -> "Mod1Fraction":
        return Mod1Fraction(-self.numerator, self.denominator)

    def __sub__(self, other: "Mod1Fraction") -> "Mod1Fraction":
        return self + (-other)

    def scaled(self, k: int) -> "Mod1Fraction":
        """k * self mod 1 for an integer k."""
        return Mod1Fraction(k * self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def mod1(numerator: int, denominator: int) -> Mod1Fraction:
    """Shorthand constructor for a canonical mod-1 fraction."""
    return Mod1Fraction(numerator, denominator)


# ---------------------------------------------------------------------------
# Euclidean machinery
# ---------------------------------------------------------------------------

def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a,b) > 0."""
    if a == 0 and b == 0:
        raise ValueError("egcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def mod_inverse(a: int, n: int) -> int:
    """Multiplicative inverse of a modulo n, in [0, n-1]; 0 for n = 1."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    if n == 1:
        return 0
    a %= n
    g, x, _ = egcd(a, n)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {n} (gcd={g})")
    return x % n


def crt_combine(pairs: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Combine congruences x = r_i (mod m_i) with pairwise coprime moduli.

    Returns (residue, product of moduli); the empty system yields (0, 1).
    """
    res, mod = 0, 1
    for r, m in pairs:
        if m < 1:
            raise ValueError("moduli must be >= 1")
        if gcd(mod, m) != 1:
            raise ValueError(f"moduli are not pairwise coprime: gcd({mod},{m})>1")
        # x = res + mod*t with res + mod*t = r (mod m)
        t = ((r - res) * mod_inverse(mod, m)) % m
        res += mod * t
        mod *= m
    return res % mod, mod


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1; 0 iff gcd(a,n) > 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs odd positive n")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# ---------------------------------------------------------------------------
# deterministic factorization
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray(b"\x01") * (_TRIAL_LIMIT + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, isqrt(_TRIAL_LIMIT) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * ((_TRIAL_LIMIT - start) // p + 1)
    return tuple(i for i, v in enumerate(sieve) if v)


# Deterministic Miller-Rabin base set, valid for n < 3.3e24 (covers 2^63).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n below the factorization limit."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Deterministic Brent cycle-finding; returns a nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, r, q, g, m = 2, 1, 1, 1, 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # unreachable for n <= 2^63


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its exact prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError("factors must have strictly increasing primes, exponents >= 1")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError("factorization does not multiply back to value")

    @property
    def tau(self) -> int:
        """Number of divisors."""
        out = 1
        for _, e in self.factors:
            out *= e + 1
        return out

    @property
    def moebius(self) -> int:
        if any(e > 1 for _, e in self.factors):
            return 0
        return -1 if len(self.factors) % 2 else 1

    @property
    def euler_phi(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= (p - 1) * p ** (e - 1)
        return out


@lru_cache(maxsize=65536)
def factorize(n: int) -> FactoredInteger:
    """Exact deterministic factorization for 1 <= n <= 2^63.

    Trial division by primes up to 1e6, then Brent rho with deterministic
    parameters and Miller-Rabin certification on every remaining cofactor.
    """
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    if n > FACTORIZE_LIMIT:
        raise ValueError(f"factorize supports n <= 2^63, got {n}")
    value = n
    factors: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _brent_rho(m)
        stack.extend((d, m // d))
    return FactoredInteger(value, tuple(sorted(factors.items())))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted."""
    out = [1]
    for p, e in factorize(n).factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def tau(n: int) -> int:
    return factorize(n).tau


def moebius(n: int) -> int:
    return factorize(n).moebius


def euler_phi(n: int) -> int:
    return factorize(n).euler_phi


def squarefull_split(n: int) -> tuple[int, int]:
    """Split n = b * n' with b square-full, n' square-free, gcd(b, n') = 1.

    (Square-full: every prime of b has exponent >= 2; the splitting is unique.)
    """
    if n < 1:
        raise ValueError("squarefull_split needs a positive integer")
    b = 1
    nprime = 1
    for p, e in factorize(n).factors:
        if e >= 2:
            b *= p**e
        else:
            nprime *= p
    return b, nprime


def gcd_infty(m: int, n: int) -> int:
    """(m^infinity, n): the largest divisor of n all of whose primes divide m.

    Equals the stable value of gcd(m^r, n); computed by repeated extraction,
    no factorization needed.
    """
    if n < 1:
        raise ValueError("gcd_infty needs n >= 1")
    out = 1
    while True:
        d = gcd(m, n)
        if d == 1:
            return out
        out *= d
        n //= d
        m = d  # only d's primes can still divide the remaining part of interest


# ---------------------------------------------------------------------------
# elementary reciprocity identities
# ---------------------------------------------------------------------------

def _checked_pair(lhs: Mod1Fraction, rhs: Mod1Fraction, name: str) -> tuple[Mod1Fraction, Mod1Fraction]:
    if lhs != rhs:
        raise ArithmeticError(f"{name} identity failed: {lhs} != {rhs}")
    return lhs, rhs


def reciprocity_two_term(m: int, n: int) -> tuple[Mod1Fraction, Mod1Fraction]:
    """inverse(m)/n + inverse(n)/m = 1/(mn) mod 1, for coprime m, n >= 1."""
    if m < 1 or n < 1:
        raise ValueError("m, n must be positive")
    if gcd(m, n) != 1:
        raise ValueError(f"m, n must be coprime, gcd={gcd(m, n)}")
    lhs = mod1(mod_inverse(m, n), n) + mod1(mod_inverse(n, m), m)
    rhs = mod1(1, m * n)
    return _checked_pair(lhs, rhs, "two-term reciprocity")


def reciprocity_three_term(a: int, b: int, c: int) -> tuple[Mod1Fraction, Mod1Fraction]:
    """inverse(bc)/a + inverse(ac)/b + inverse(ab)/c = 1/(abc) mod 1.

    Requires a, b, c >= 1 pairwise coprime.
    """
    for x in (a, b, c):
        if x < 1:
            raise ValueError("arguments must be positive")
    if gcd(a, b) != 1 or gcd(a, c) != 1 or gcd(b, c) != 1:
        raise ValueError("arguments must be pairwise coprime")
    lhs = (
        mod1(mod_inverse(b * c, a), a)
        + mod1(mod_inverse(a * c, b), b)
        + mod1(mod_inverse(a * b, c), c)
    )
    rhs = mod1(1, a * b * c)
    return _checked_pair(lhs, rhs, "three-term reciprocity")


def split_denominator(a: int, b: int, c: int) -> tuple[Mod1Fraction, Mod1Fraction]:
    """inverse(a)/(bc) = inverse(ab)/c + inverse(ac)/b mod 1.

    Requires b, c >= 1 with gcd(b,c) = 1 and gcd(a, bc) = 1 (a may be any
    integer satisfying the coprimality).
    """
    if b < 1 or c < 1:
        raise ValueError("b, c must be positive")
    if gcd(b, c) != 1:
        raise ValueError("b, c must be coprime")
    if gcd(a, b * c) != 1:
        raise ValueError("a must be coprime to b*c")
    lhs = mod1(mod_inverse(a, b * c), b * c)
    rhs = mod1(mod_inverse(a * b, c), c) + mod1(mod_inverse(a * c, b), b)
    return _checked_pair(lhs, rhs, "denominator splitting")
