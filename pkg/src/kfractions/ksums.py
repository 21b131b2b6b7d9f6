"""Complete Kloosterman sums S(a,b;c) = sum over units x mod c of e((a*xbar + b*x)/c).

Two evaluation routes with disjoint internals:

* ``kloosterman_brute`` -- the oracle: direct summation over reduced residues,
  with the phase (a*xbar + b*x)/c reduced into [0,1) in exact integer
  arithmetic before the single complex exponential per term.
* ``kloosterman_fast`` -- twisted multiplicativity across prime-power blocks,
  S(a,b;mn) = S(a*nbar, b*nbar; m) * S(a*mbar, b*mbar; n) for coprime m,n,
  with the stationary-phase closed form at odd prime powers p^alpha, alpha >= 2,
  p coprime to ab (the sum collapses to at most 2p explicit cosine terms, or
  vanishes when a*bbar is a quadratic non-residue).  Blocks without a closed
  form fall back to brute summation.

Plus the Ramanujan sum S(a,0;c) in exact integer arithmetic and the explicit
Weil bound tau(c) * gcd(a,b,c)^(1/2) * c^(1/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, sqrt

import numpy as np

from .arith import divisors, factorize, moebius

__all__ = [
    "KloostermanParams",
    "KloostermanResult",
    "kloosterman_brute",
    "kloosterman_fast",
    "ramanujan",
    "weil_bound",
    "BRUTE_LIMIT",
    "FAST_LIMIT",
]

BRUTE_LIMIT = 10**7
FAST_LIMIT = 10**12
_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class KloostermanParams:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError("modulus c must be >= 1")


@dataclass(frozen=True)
class KloostermanResult:
    value: float
    method: str  # "brute" or "crt_salie"
    modulus: int


@lru_cache(maxsize=512)
def _unit_inverse_table(c: int) -> tuple[np.ndarray, np.ndarray]:
    """Units mod c and their inverses, as int64 arrays (cached for small c)."""
    xs = np.arange(1, c, dtype=np.int64)
    xs = xs[np.gcd(xs, c) == 1]
    inv = np.fromiter((pow(int(x), -1, c) for x in xs), dtype=np.int64, count=len(xs))
    return xs, inv


def _brute_value(a: int, b: int, c: int) -> float:
    if c == 1:
        return 1.0
    if c <= 4096:
        xs, inv = _unit_inverse_table(c)
    else:
        xs = np.arange(1, c, dtype=np.int64)
        xs = xs[np.gcd(xs, c) == 1]
        inv = np.fromiter((pow(int(x), -1, c) for x in xs), dtype=np.int64, count=len(xs))
    t = (a % c * inv + b % c * xs) % c
    total = np.exp(2j * np.pi * (t / c)).sum()
    phi_c = len(xs)
    if abs(total.imag) > _IMAG_TOL * max(1, phi_c):
        raise ArithmeticError(
            f"S({a},{b};{c}) lost realness: imag={total.imag:.3e}, phi={phi_c}"
        )
    return float(total.real)


def kloosterman_brute(params: KloostermanParams) -> KloostermanResult:
    """Direct sum over reduced residues; the oracle for everything else."""
    a, b, c = params.a, params.b, params.c
    if c > BRUTE_LIMIT:
        raise ValueError(f"brute evaluation capped at c <= {BRUTE_LIMIT}, got {c}")
    return KloostermanResult(_brute_value(a, b, c), "brute", c)


def ramanujan(a: int, c: int) -> int:
    """Ramanujan sum S(a,0;c) = sum_{d | gcd(a,c)} d * mu(c/d), exactly."""
    if c < 1:
        raise ValueError("modulus c must be >= 1")
    g = gcd(a, c)  # a = 0 gives g = c
    return sum(d * moebius(c // d) for d in divisors(g))


# ---------------------------------------------------------------------------
# fast route: CRT blocks + stationary-phase closed form
# ---------------------------------------------------------------------------

def _sqrt_mod_prime(t: int, p: int) -> int | None:
    """Square root of t mod odd prime p (Tonelli-Shanks); None for non-residues."""
    t %= p
    if t == 0:
        return 0
    if pow(t, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(t, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, tt, r = s, pow(z, q, p), pow(t, q, p), pow(t, (q + 1) // 2, p)
    while tt != 1:
        i, t2 = 0, tt
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, tt, r = i, b * b % p, tt * b * b % p, r * b % p
    return r


def _sqrt_mod_odd_prime_power(t: int, p: int, e: int) -> int | None:
    """Square root of a unit t mod p^e (p odd, e >= 1) via Hensel lifting."""
    r = _sqrt_mod_prime(t, p)
    if r is None:
        return None
    pe = p
    for _ in range(e - 1):
        pe_next = pe * p
        r = (r - (r * r - t) * pow(2 * r, -1, pe_next)) % pe_next
        pe = pe_next
    return r % pe


def _salie_block(a: int, b: int, p: int, alpha: int) -> float:
    """S(a,b;p^alpha) for odd p, alpha >= 2, p coprime to a*b.

    Stationary phase: with m = ceil(alpha/2) and h = alpha - m,
      S = p^h * sum over units u mod p^m with b*u^2 = a (mod p^h)
              of e((a*ubar + b*u) / p^alpha).
    The solution set is empty (non-residue), giving 0, or consists of the
    lifts of +-u0 for a square root u0 of a*inverse(b) mod p^h.
    """
    q = p**alpha
    m = (alpha + 1) // 2
    h = alpha - m
    ph = p**h
    t = a * pow(b, -1, ph) % ph
    u0 = _sqrt_mod_odd_prime_power(t, p, h)
    if u0 is None:
        return 0.0
    total = 0.0 + 0.0j
    lifts = p ** (2 * m - alpha)  # 1 for even alpha, p for odd
    for base in {u0 % ph, (-u0) % ph}:
        for j in range(lifts):
            u = base + ph * j
            phase = (a * pow(u, -1, q) + b * u) % q
            total += np.exp(2j * np.pi * (phase / q))
    return float(p ** (alpha - m) * total.real)


def kloosterman_fast(params: KloostermanParams) -> KloostermanResult:
    """Twisted multiplicativity over prime-power blocks with Salie closed forms.

    Supports c <= 1e12 provided every block that has to fall back to brute
    summation (alpha = 1, p = 2, or p | ab) is at most the brute cap.
    """
    a, b, c = params.a, params.b, params.c
    if c > FAST_LIMIT:
        raise ValueError(f"fast evaluation capped at c <= {FAST_LIMIT}, got {c}")
    if c == 1:
        return KloostermanResult(1.0, "brute", 1)
    blocks = factorize(c).factors
    value = 1.0
    brute_only = True
    for p, alpha in blocks:
        q = p**alpha
        w = c // q
        wbar = pow(w % q, -1, q) if q > 1 else 0
        a_blk = a % q * wbar % q
        b_blk = b % q * wbar % q
        if alpha >= 2 and p != 2 and a_blk % p != 0 and b_blk % p != 0:
            value *= _salie_block(a_blk, b_blk, p, alpha)
            brute_only = False
        else:
            if q > BRUTE_LIMIT:
                raise ValueError(
                    f"block {p}^{alpha} of c={c} has no closed form and exceeds "
                    f"the brute cap {BRUTE_LIMIT}"
                )
            value *= _brute_value(a_blk, b_blk, q)
    method = "brute" if brute_only and len(blocks) == 1 else "crt_salie"
    return KloostermanResult(value, method, c)


def weil_bound(params: KloostermanParams) -> float:
    """Explicit Weil envelope tau(c) * gcd(a,b,c)^(1/2) * c^(1/2)."""
    a, b, c = params.a, params.b, params.c
    g = gcd(gcd(abs(a), abs(b)), c)  # gcd(0,0,c) = c
    return factorize(c).tau * sqrt(g) * sqrt(c)
