"""Two applications: weighted counts of determinant equations, and the
equidistribution of the fractions a0/m coming from smallest positive
solutions of a*m - b*n = 1.

Determinant side: the exact quadruple sum over m1*n2 - m2*n1 = Delta with
smooth bump weights in the m variables, its predicted main term (a gcd-
weighted correlation integral), and the explicit error envelopes for both
the new and the older comparison bound.

Equidistribution side: rho(m,n) = frac(a0/m) for the smallest positive
solution pair, the multiset of rho values over coprime pairs drawn from a
set of integers, and the exact star discrepancy of the resulting points.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from math import gcd

import numpy as np

from .arith import mod_inverse
from .forms import CoefficientVector, DyadicRange

__all__ = [
    "bump",
    "bump_weight",
    "indicator_weight",
    "DetSpec",
    "det_count",
    "det_main_term",
    "det_error_envelope",
    "det_error_envelope_comparison",
    "rho",
    "rho_solution",
    "FractionSet",
    "build_fraction_set",
    "star_discrepancy",
    "EquidistRow",
    "equidist_experiment",
    "DET_TUPLE_LIMIT",
]

DET_TUPLE_LIMIT = 10**8


# ---------------------------------------------------------------------------
# smooth weights
# ---------------------------------------------------------------------------

def bump(t: np.ndarray | float) -> np.ndarray | float:
    """exp(-1/(1-t^2)) on |t| < 1, zero outside; smooth and compactly supported."""
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1
    with np.errstate(divide="ignore", over="ignore"):
        out[inside] = np.exp(-1.0 / (1.0 - t[inside] ** 2))
    return out if out.ndim else float(out)


def bump_weight(m_scale: int):
    """Weight supported inside (M/2, M): bump((x - 3M/4)/(M/4))."""
    center = 3 * m_scale / 4
    width = m_scale / 4

    def w(x):
        return bump((np.asarray(x, dtype=np.float64) - center) / width)

    return w


def indicator_weight(m_scale: int):
    """Sharp-cutoff weight: 1 on the dyadic range [M/2, M], else 0.

    Not smooth; used only as a counting oracle against the bump family.
    """
    rng = DyadicRange(m_scale)

    def w(x):
        x = np.asarray(x, dtype=np.float64)
        return ((x >= rng.lo) & (x <= m_scale)).astype(np.float64)

    return w


@dataclass(frozen=True)
class DetSpec:
    """Parameters of one determinant-equation count.

    The m-weights default to the built-in bump family on (M/2, M); eta is
    the declared smoothness parameter entering only the error envelopes.
    Custom weights (e.g. indicators, for exact-counting oracles) can be
    supplied per side.
    """

    delta: int
    m1_scale: int
    m2_scale: int
    alpha: CoefficientVector  # over the N1 range
    beta: CoefficientVector   # over the N2 range
    eta: float = 2.0
    f_weight: object = None
    g_weight: object = None

    def __post_init__(self) -> None:
        if self.delta == 0:
            raise ValueError("Delta must be nonzero")
        if self.eta <= 1:
            raise ValueError("eta must exceed 1")

    @property
    def n1_scale(self) -> int:
        return self.alpha.range.scale

    @property
    def n2_scale(self) -> int:
        return self.beta.range.scale

    def weight_f(self):
        return self.f_weight if self.f_weight is not None else bump_weight(self.m1_scale)

    def weight_g(self):
        return self.g_weight if self.g_weight is not None else bump_weight(self.m2_scale)


def det_count(spec: DetSpec, order: int = 1) -> complex:
    """Exact sum of f(m1) g(m2) alpha_{n1} beta_{n2} over solutions of
    m1*n2 - m2*n1 = Delta inside the four dyadic ranges.

    order=1 enumerates (m1, n1, n2) and solves for m2; order=2 enumerates
    (m2, n1, n2) and solves for m1.  The two must agree to float accuracy.
    """
    m1r = DyadicRange(spec.m1_scale).members
    m2r = DyadicRange(spec.m2_scale).members
    n1r = spec.alpha.range.members
    n2r = spec.beta.range.members
    work = len(n1r) * len(n2r) * (len(m1r) if order == 1 else len(m2r))
    if work > DET_TUPLE_LIMIT:
        raise ValueError(f"enumeration would visit {work} tuples, cap is {DET_TUPLE_LIMIT}")
    f = spec.weight_f()
    g = spec.weight_g()
    m2_lo, m2_hi = int(m2r[0]), int(m2r[-1])
    m1_lo, m1_hi = int(m1r[0]), int(m1r[-1])
    total = 0.0 + 0.0j
    for i1, n1 in enumerate(n1r):
        n1 = int(n1)
        a1 = spec.alpha.values[i1]
        if a1 == 0:
            continue
        for i2, n2 in enumerate(n2r):
            n2 = int(n2)
            b2 = spec.beta.values[i2]
            if b2 == 0:
                continue
            if order == 1:
                num = m1r * n2 - spec.delta
                ok = num % n1 == 0
                m2 = num[ok] // n1
                keep = (m2 >= m2_lo) & (m2 <= m2_hi)
                if not keep.any():
                    continue
                total += a1 * b2 * np.sum(f(m1r[ok][keep]) * g(m2[keep]))
            else:
                num = m2r * n1 + spec.delta
                ok = num % n2 == 0
                m1 = num[ok] // n2
                keep = (m1 >= m1_lo) & (m1 <= m1_hi)
                if not keep.any():
                    continue
                total += a1 * b2 * np.sum(f(m1[keep]) * g(m2r[ok][keep]))
    return complex(total)


def _refined_integral(func, lo: float, hi: float, start_points: int, rel_tol: float = 1e-8) -> float:
    """Composite midpoint with dyadic refinement until relative stability."""
    if hi <= lo:
        return 0.0
    n = max(start_points, 64)
    prev = None
    for _ in range(22):
        xs = lo + (hi - lo) * (np.arange(n) + 0.5) / n
        val = float(np.sum(func(xs)) * (hi - lo) / n)
        if prev is not None:
            if abs(val - prev) <= rel_tol * max(abs(val), 1e-12):
                return val
        prev = val
        n *= 2
    return prev


def det_main_term(spec: DetSpec, quad_points: int = 256) -> complex:
    """sum over (n1,n2) with gcd(n1,n2) | Delta of
    gcd/(n1 n2) * alpha_{n1} beta_{n2} * integral of f((x+Delta)/n2) g(x/n1) dx."""
    if quad_points < 64:
        raise ValueError("quad_points must be >= 64")
    f = spec.weight_f()
    g = spec.weight_g()
    total = 0.0 + 0.0j
    for i1, n1 in enumerate(spec.alpha.range.members):
        n1 = int(n1)
        a1 = spec.alpha.values[i1]
        if a1 == 0:
            continue
        for i2, n2 in enumerate(spec.beta.range.members):
            n2 = int(n2)
            b2 = spec.beta.values[i2]
            if b2 == 0:
                continue
            gg = gcd(n1, n2)
            if spec.delta % gg != 0:
                continue
            # support: g(x/n1) lives on x in (n1 M2/2, n1 M2),
            #          f((x+Delta)/n2) on x in (n2 M1/2 - Delta, n2 M1 - Delta)
            lo = max(n1 * spec.m2_scale / 2, n2 * spec.m1_scale / 2 - spec.delta)
            hi = min(n1 * spec.m2_scale, n2 * spec.m1_scale - spec.delta)
            if hi <= lo:
                continue
            integral = _refined_integral(
                lambda x: f((x + spec.delta) / n2) * g(x / n1), lo, hi, quad_points
            )
            total += gg / (n1 * n2) * a1 * b2 * integral
    return complex(total)


def _ratio_r(spec: DetSpec) -> float:
    t = (spec.m1_scale * spec.n2_scale) / (spec.m2_scale * spec.n1_scale)
    return t + 1 / t


def det_error_envelope(spec: DetSpec, C: float = 1.0, eps: float = 0.05) -> float:
    """(eta R)^(3/2) ||alpha|| ||beta|| (N1 N2)^(7/20) (N1+N2)^(1/4+eps) (M1 M2)^eps."""
    r = _ratio_r(spec)
    n1, n2 = spec.n1_scale, spec.n2_scale
    return (
        C
        * (spec.eta * r) ** 1.5
        * spec.alpha.norm()
        * spec.beta.norm()
        * (n1 * n2) ** 0.35
        * (n1 + n2) ** (0.25 + eps)
        * (spec.m1_scale * spec.m2_scale) ** eps
    )


def det_error_envelope_comparison(spec: DetSpec, C: float = 1.0, eps: float = 0.05) -> float:
    """(eta R)^(19/8) ||alpha|| ||beta|| (N1 N2)^(3/8) (N1+N2)^(11/48+eps) (M1 M2)^eps."""
    r = _ratio_r(spec)
    n1, n2 = spec.n1_scale, spec.n2_scale
    return (
        C
        * (spec.eta * r) ** (19 / 8)
        * spec.alpha.norm()
        * spec.beta.norm()
        * (n1 * n2) ** 0.375
        * (n1 + n2) ** (11 / 48 + eps)
        * (spec.m1_scale * spec.m2_scale) ** eps
    )


# ---------------------------------------------------------------------------
# equidistribution of a0/m
# ---------------------------------------------------------------------------

def rho_solution(m: int, n: int) -> tuple[int, int]:
    """Smallest positive (a0, b0) with a0*m - b0*n = 1, for coprime m, n >= 1."""
    if m < 1 or n < 1:
        raise ValueError("m, n must be positive")
    if gcd(m, n) != 1:
        raise ValueError("m, n must be coprime")
    a0 = mod_inverse(m, n)
    if a0 == 0:
        a0 = n  # modulus 1: the inverse class is all integers; start positive
    while a0 * m - 1 < n:  # force b0 = (a0*m - 1)/n >= 1
        a0 += n
    return a0, (a0 * m - 1) // n


def rho(m: int, n: int) -> float:
    """Fractional part of a0/m.

    The raw ratio a0/m exceeds 1 whenever n > m, so the point recorded for
    discrepancy purposes is its fractional part; rho_solution exposes the
    raw pair for any other normalization.
    """
    a0, _ = rho_solution(m, n)
    return (a0 % m) / m if m > 1 else 0.0


@dataclass(frozen=True)
class FractionSet:
    """Multiset of rho values over ordered coprime pairs from a ground set."""

    n_scale: int
    members: tuple[int, ...]
    points: np.ndarray
    pairs: tuple[tuple[int, int, int], ...]  # (m, n, a0)

    @property
    def dedup_count(self) -> int:
        return len(set(np.round(self.points, 15)))


def build_fraction_set(n_scale: int, ground_set) -> FractionSet:
    members = sorted({x for x in ground_set if 0 <= x <= n_scale})
    pts = []
    pairs = []
    for m in members:
        if m < 1:
            continue
        for n in members:
            if n < 1 or gcd(m, n) != 1:
                continue
            a0, _ = rho_solution(m, n)
            pts.append((a0 % m) / m if m > 1 else 0.0)
            pairs.append((m, n, a0))
    return FractionSet(n_scale, tuple(members), np.array(pts, dtype=np.float64), tuple(pairs))


def star_discrepancy(points) -> float:
    """Exact D* of a finite point multiset in [0,1), by the sorted formula
    max_i max(i/K - x_(i), x_(i) - (i-1)/K)."""
    xs = np.sort(np.asarray(points, dtype=np.float64))
    k = len(xs)
    if k == 0:
        raise ValueError("star discrepancy needs at least one point")
    if xs[0] < 0 or xs[-1] >= 1:
        raise ValueError("points must lie in [0, 1)")
    idx = np.arange(1, k + 1)
    return float(np.max(np.maximum(idx / k - xs, xs - (idx - 1) / k)))


@dataclass(frozen=True)
class EquidistRow:
    n_scale: int
    set_size: int
    n_points: int
    dedup_points: int
    dstar: float | None  # None when the drawn set yields no coprime pairs


def equidist_experiment(
    n_list,
    density_exponent: float = 0.0,
    seed: int = 0,
    full_sets: bool = False,
) -> list[EquidistRow]:
    """Star discrepancy of the fraction multiset along a ladder of N values.

    full_sets=True uses X_N = [0, N] exactly; otherwise X_N is a uniform
    draw (deterministic in `seed`) of ceil(N^(1-density_exponent)) distinct
    integers from [0, N].
    """
    rows = []
    for i, n_scale in enumerate(n_list):
        if n_scale > 2**14:
            raise ValueError("pair enumeration is quadratic; capped at N <= 2^14")
        if full_sets:
            ground = range(n_scale + 1)
        else:
            size = min(math.ceil(n_scale ** (1 - density_exponent)), n_scale + 1)
            rng = random.Random(f"equidist-{seed}-{i}-{n_scale}")
            ground = rng.sample(range(n_scale + 1), size)
        fs = build_fraction_set(n_scale, ground)
        dstar = star_discrepancy(fs.points) if len(fs.points) else None
        rows.append(
            EquidistRow(n_scale, len(fs.members), len(fs.points), fs.dedup_count, dstar)
        )
    return rows
