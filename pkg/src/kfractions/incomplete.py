"""Incomplete Kloosterman sums over an interval with side conditions.

The object is

    sum over x in I = {x in [X', X'+X] : x = v (mod k)}
        with gcd(x, gamma*delta) = 1  (and optionally gcd(a*x+b, c) = d)
        of chi(x) * e((alpha*xbar + beta*x) / gamma),

evaluated by direct summation, together with the two explicit bound envelopes
built from the bookkeeping quantities h = (k, gamma), h1 = (k^inf, gamma),
gamma1 = gamma/h1, and the completion majorant

    (X+k)/(gamma*k) * |S(alpha,0;gamma)|
        + sum_{1 <= r <= gamma/2} |S(alpha, r*kbar; gamma)| / r

in the reduced case gcd(k, gamma) = 1.  The majorant is evaluated exactly as
printed (constant 1, one-signed r sum); `erdos_turan_sweep` flags any spec
where the actual sum exceeds it instead of silently asserting a different
constant.  (Such specs exist: the one-signed sum can miss half the completion
mass when gamma has a square factor, e.g. gamma=72, k=13, alpha=17,
I=[102,265], v=3.)
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

import numpy as np

from .arith import gcd_infty, mod_inverse
from .characters import DirichletCharacter, characters_mod
from .ksums import KloostermanParams, kloosterman_brute

__all__ = [
    "IncompleteSpec",
    "LemmaParams",
    "DirichletCharacter",
    "characters_mod",
    "incomplete_brute",
    "lemma_params",
    "bound_plain",
    "bound_filtered",
    "erdos_turan_majorant",
    "erdos_turan_majorant_symmetrized",
    "erdos_turan_sweep",
    "EnvelopeSample",
    "envelope_sharpness_sweep",
    "INTERVAL_LIMIT",
]

INTERVAL_LIMIT = 10**7


@dataclass(frozen=True)
class IncompleteSpec:
    """Parameters of one incomplete sum.

    gcd_cond, when present, is a tuple (a, b, c, d) encoding the side
    condition gcd(a*x + b, c) = d; the character, when present, must live
    modulo gamma.
    """

    gamma: int
    delta: int = 1
    k: int = 1
    v: int = 0
    x_start: int = 0
    x_len: int = 0
    alpha: int = 0
    beta: int = 0
    gcd_cond: tuple[int, int, int, int] | None = None
    character: DirichletCharacter | None = None

    def __post_init__(self) -> None:
        if self.gamma < 1 or self.delta < 1 or self.k < 1:
            raise ValueError("gamma, delta, k must be >= 1")
        if self.x_len < 0:
            raise ValueError("x_len must be >= 0")
        if self.gcd_cond is not None:
            _, _, c, d = self.gcd_cond
            if c < 1 or d < 1 or c % d != 0:
                raise ValueError("gcd condition needs d | c with c, d >= 1")
        if self.character is not None and self.character.modulus != self.gamma:
            raise ValueError("character modulus must equal gamma")

    def interval(self) -> range:
        """The x values of I, as a range with step k."""
        first = self.x_start + ((self.v - self.x_start) % self.k)
        return range(first, self.x_start + self.x_len + 1, self.k)


def incomplete_brute(spec: IncompleteSpec) -> complex:
    """Direct evaluation of the incomplete sum."""
    size = spec.x_len // spec.k + 1
    if size > INTERVAL_LIMIT:
        raise ValueError(f"interval has ~{size} admissible points, cap is {INTERVAL_LIMIT}")
    g = spec.gamma
    gd = g * spec.delta
    chi = spec.character
    cond = spec.gcd_cond
    total = 0.0 + 0.0j
    for x in spec.interval():
        if gcd(x, gd) != 1:
            continue
        if cond is not None:
            a, b, c, d = cond
            if gcd(a * x + b, c) != d:
                continue
        if g == 1:
            term = 1.0 + 0.0j
        else:
            xbar = pow(x % g, -1, g)
            term = np.exp(2j * np.pi * (((spec.alpha * xbar + spec.beta * x) % g) / g))
        if chi is not None:
            term *= chi(x % g if g > 1 else 0)
        total += term
    return complex(total)


@dataclass(frozen=True)
class LemmaParams:
    h: int
    h1: int
    gamma1: int


def lemma_params(spec: IncompleteSpec) -> LemmaParams:
    """h = (k, gamma), h1 = (k^inf, gamma), gamma1 = gamma / h1."""
    h = gcd(spec.k, spec.gamma)
    h1 = gcd_infty(spec.k, spec.gamma)
    return LemmaParams(h, h1, spec.gamma // h1)


def _alpha_gcd(alpha: int, gamma1: int) -> int:
    return gcd(alpha, gamma1)  # alpha = 0 gives gamma1


def bound_plain(spec: IncompleteSpec, C: float = 1.0, eps: float = 0.0) -> float:
    """C * [ (gamma*delta)^eps * (h1/h) * (gamma1/(alpha,gamma1))^(1/2)
             + (alpha,gamma1) * X * delta^eps / (gamma1 * k) ]."""
    if C <= 0 or eps < 0:
        raise ValueError("need C > 0 and eps >= 0")
    lp = lemma_params(spec)
    g1 = lp.gamma1
    ag = _alpha_gcd(spec.alpha, g1)
    first = (spec.gamma * spec.delta) ** eps * (lp.h1 / lp.h) * (g1 / ag) ** 0.5
    second = ag * spec.x_len * spec.delta**eps / (g1 * spec.k)
    return C * (first + second)


def bound_filtered(spec: IncompleteSpec, C: float = 1.0, eps: float = 0.0) -> float:
    """Envelope for the twisted/filtered variant: the first term gains the
    (c*gamma*delta)^eps factor and the second becomes
    (alpha,gamma1)^(1/2) * gamma1^(1/2+eps) * X * (c*delta)^eps / (gamma1*k)."""
    if C <= 0 or eps < 0:
        raise ValueError("need C > 0 and eps >= 0")
    lp = lemma_params(spec)
    g1 = lp.gamma1
    ag = _alpha_gcd(spec.alpha, g1)
    c = spec.gcd_cond[2] if spec.gcd_cond is not None else 1
    first = (c * spec.gamma * spec.delta) ** eps * (lp.h1 / lp.h) * (g1 / ag) ** 0.5
    second = ag**0.5 * g1 ** (0.5 + eps) * spec.x_len * (c * spec.delta) ** eps / (g1 * spec.k)
    return C * (first + second)


def _majorant_preconditions(spec: IncompleteSpec) -> None:
    if gcd(spec.k, spec.gamma) != 1:
        raise ValueError("majorant requires gcd(k, gamma) = 1")
    if spec.delta != 1 or spec.beta != 0 or spec.gcd_cond is not None:
        raise ValueError("majorant requires delta = 1, beta = 0, no gcd condition")
    if spec.character is not None and not spec.character.is_principal:
        raise ValueError("majorant requires a trivial character")


def erdos_turan_majorant(spec: IncompleteSpec) -> float:
    """The completion majorant, exactly as printed (constant 1, one-signed).

    Only defined in the reduced case: gcd(k, gamma) = 1, delta = 1, beta = 0,
    no character twist, no gcd side condition.  NOTE: the one-signed r sum is
    not a theorem; see `erdos_turan_majorant_symmetrized` for the exact form
    and `erdos_turan_sweep` for the violation flagging.
    """
    _majorant_preconditions(spec)
    g, k, alpha = spec.gamma, spec.k, spec.alpha
    out = (spec.x_len + k) / (g * k) * abs(kloosterman_brute(KloostermanParams(alpha, 0, g)).value)
    if g > 1:
        kbar = mod_inverse(k, g)
        for r in range(1, g // 2 + 1):
            s = kloosterman_brute(KloostermanParams(alpha, r * kbar % g, g)).value
            out += abs(s) / r
    return out


def erdos_turan_majorant_symmetrized(spec: IncompleteSpec) -> float:
    """The exact completion bound: both signs of the twist, half weight each.

    (X+k)/(gamma k) |S(alpha,0;gamma)|
        + sum_{1<=r<=gamma/2} (|S(alpha,r*kbar)| + |S(alpha,-r*kbar)|) / (2r).

    This follows from completing the sum with the geometric-series estimate
    |sum_{t in J} e(rt/gamma)| <= 1/(2 |r/gamma|_near) and folding r with
    gamma - r, so it holds for EVERY admissible spec with constant 1; the
    one-signed printed form can undercount when S(alpha, b; gamma) vanishes
    asymmetrically in b -> -b (square factors of gamma).
    """
    _majorant_preconditions(spec)
    g, k, alpha = spec.gamma, spec.k, spec.alpha
    out = (spec.x_len + k) / (g * k) * abs(kloosterman_brute(KloostermanParams(alpha, 0, g)).value)
    if g > 1:
        kbar = mod_inverse(k, g)
        for r in range(1, g // 2 + 1):
            plus = kloosterman_brute(KloostermanParams(alpha, r * kbar % g, g)).value
            minus = kloosterman_brute(KloostermanParams(alpha, (-r * kbar) % g, g)).value
            out += (abs(plus) + abs(minus)) / (2 * r)
    return out


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnvelopeSample:
    spec: IncompleteSpec
    abs_sum: float
    envelope: float

    @property
    def ratio(self) -> float:
        return self.abs_sum / self.envelope if self.envelope > 0 else float("inf")


def _random_reduced_spec(rng: random.Random, gamma_max: int) -> IncompleteSpec:
    gamma = rng.randint(1, gamma_max)
    k = rng.choice([kk for kk in range(1, 41) if gcd(kk, gamma) == 1])
    alpha = rng.choice([aa for aa in range(1, gamma + 1) if gcd(aa, gamma) == 1])
    alpha *= rng.choice([1, -1])
    return IncompleteSpec(
        gamma=gamma,
        k=k,
        v=rng.randrange(k),
        x_start=rng.randint(-2 * gamma, 2 * gamma),
        x_len=rng.randint(0, 3 * gamma),
        alpha=alpha,
    )


def erdos_turan_sweep(
    n_specs: int = 200, gamma_max: int = 300, seed: int = 7, slack: float = 1e-9
) -> list[EnvelopeSample]:
    """Random reduced specs; returns the samples that VIOLATE the printed
    majorant (an empty return means the display held on every sampled spec).

    The symmetrized bound is checked alongside: it is a theorem, so any
    violation of it indicates an implementation bug and raises immediately.
    """
    rng = random.Random(seed)
    violations = []
    for _ in range(n_specs):
        spec = _random_reduced_spec(rng, gamma_max)
        lhs = abs(incomplete_brute(spec))
        rhs = erdos_turan_majorant(spec)
        if lhs > rhs * (1 + slack):
            violations.append(EnvelopeSample(spec, lhs, rhs))
        exact = erdos_turan_majorant_symmetrized(spec)
        if lhs > exact * (1 + slack):
            raise ArithmeticError(
                f"symmetrized completion bound violated at {spec}: {lhs} > {exact}"
            )
    return violations


def envelope_sharpness_sweep(
    n_specs: int = 1000, gamma_max: int = 300, seed: int = 7, eps: float = 0.25
) -> list[EnvelopeSample]:
    """Calibration of the first envelope: ratio |sum| / bound_plain(spec, 1, eps).

    The envelope hides an implied constant, so nothing is asserted here
    beyond finiteness; callers report the ratio distribution.
    """
    rng = random.Random(seed)
    samples = []
    for _ in range(n_specs):
        gamma = rng.randint(1, gamma_max)
        k = rng.randint(1, 12)
        spec = IncompleteSpec(
            gamma=gamma,
            delta=rng.choice([1, 1, 1, 2, 3, 6]),
            k=k,
            v=rng.randrange(k),
            x_start=rng.randint(-gamma, gamma),
            x_len=rng.randint(0, 4 * gamma),
            alpha=rng.randint(-2 * gamma, 2 * gamma),
        )
        lhs = abs(incomplete_brute(spec))
        samples.append(EnvelopeSample(spec, lhs, bound_plain(spec, 1.0, eps)))
    return samples
