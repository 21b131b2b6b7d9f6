"""Trilinear and bilinear forms with Kloosterman fractions.

The central objects: the phase tensor entry(a,m,n) = e(theta*a*mbar/n) on
coprime pairs (optionally Jacobi-twisted with odd support, optionally
perturbed by a smooth phase f(a,m,n)); streaming and dense evaluation of the
forms; an alternating extremal-coefficient search for the exact operator norm
the bounds dominate; explicit bound envelopes; the Cauchy-Schwarz step; the
character-amplified second moment with its exact inequality chain; and the
complementary-divisor bookkeeping check.

Coefficients live on dyadic ranges [X/2, X] and are always handled as unit-L2
vectors in the envelopes (the norms are folded in).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd
from typing import Callable, Sequence

import numpy as np

from .arith import is_prime, jacobi
from .characters import character_group

__all__ = [
    "DyadicRange",
    "CoefficientVector",
    "PerturbationSpec",
    "reciprocity_perturbation",
    "FormSpec",
    "FormTensor",
    "AmplifierSpec",
    "build_tensor",
    "eval_trilinear",
    "eval_bilinear",
    "ExtremalResult",
    "extremal_search",
    "gram_power_singular_value",
    "bound_trilinear",
    "bound_bilinear",
    "bound_twisted",
    "trivial_bound",
    "CauchyReport",
    "cauchy_step",
    "AmplifierReport",
    "amplifier_check",
    "CompDivReport",
    "complementary_divisor_check",
    "ScalingRecord",
    "scaling_experiment",
    "TENSOR_ENTRY_LIMIT",
]

TENSOR_ENTRY_LIMIT = 10**8
_PHASE_INT_GUARD = 2**60


# ---------------------------------------------------------------------------
# supports and coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DyadicRange:
    """Integers n with X/2 <= n <= X, both endpoints included when integral."""

    scale: int

    def __post_init__(self) -> None:
        if self.scale < 1:
            raise ValueError("scale must be >= 1")

    @property
    def lo(self) -> int:
        return (self.scale + 1) // 2

    @property
    def members(self) -> np.ndarray:
        return np.arange(self.lo, self.scale + 1, dtype=np.int64)

    def __len__(self) -> int:
        return self.scale - self.lo + 1

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.scale

    def index(self, n: int) -> int:
        if n not in self:
            raise ValueError(f"{n} is not in [{self.lo}, {self.scale}]")
        return n - self.lo


@dataclass
class CoefficientVector:
    """Complex coefficients supported on a dyadic range, stored densely."""

    range: DyadicRange
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (len(self.range),):
            raise ValueError("coefficient array does not match the range")

    @classmethod
    def zeros(cls, rng: DyadicRange) -> "CoefficientVector":
        return cls(rng, np.zeros(len(rng), dtype=np.complex128))

    @classmethod
    def unit(cls, rng: DyadicRange, member: int) -> "CoefficientVector":
        v = np.zeros(len(rng), dtype=np.complex128)
        v[rng.index(member)] = 1.0
        return cls(rng, v)

    @classmethod
    def from_dict(cls, rng: DyadicRange, coeffs: dict[int, complex]) -> "CoefficientVector":
        v = np.zeros(len(rng), dtype=np.complex128)
        for n, c in coeffs.items():
            v[rng.index(n)] = c
        return cls(rng, v)

    @classmethod
    def random_unit(cls, rng: DyadicRange, gen: np.random.Generator) -> "CoefficientVector":
        v = gen.standard_normal(len(rng)) + 1j * gen.standard_normal(len(rng))
        return cls(rng, v / np.linalg.norm(v))

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def normalized(self) -> "CoefficientVector":
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return CoefficientVector(self.range, self.values / n)


# ---------------------------------------------------------------------------
# form parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PerturbationSpec:
    """Smooth phase perturbation multiplying each entry by e(f(a,m,n)).

    kind "reciprocity": f = theta_f * a / (m*n), the shape used when the two
    support roles are exchanged (X_param = |theta_f| * A).  kind "custom":
    an arbitrary tabulated phase with its declared derivative-bound scale.
    """

    kind: str
    theta_f: int = 0
    x_param: float = 0.0
    func: Callable[[int, int, int], float] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("reciprocity", "custom"):
            raise ValueError("kind must be 'reciprocity' or 'custom'")
        if self.kind == "custom" and self.func is None:
            raise ValueError("custom perturbation needs a phase function")

    def phase(self, a: int, m: int, n: int) -> float:
        if self.kind == "reciprocity":
            return self.theta_f * a / (m * n)
        return self.func(a, m, n)


def reciprocity_perturbation(theta_f: int, a_scale: int) -> PerturbationSpec:
    return PerturbationSpec(kind="reciprocity", theta_f=theta_f, x_param=abs(theta_f) * a_scale)


@dataclass(frozen=True)
class FormSpec:
    """Scales (M, N, A), the integer angle coefficient theta != 0, and an
    optional perturbation."""

    m_scale: int
    n_scale: int
    a_scale: int
    theta: int = 1
    perturbation: PerturbationSpec | None = None

    def __post_init__(self) -> None:
        if self.theta == 0:
            raise ValueError("theta must be nonzero")
        if min(self.m_scale, self.n_scale, self.a_scale) < 1:
            raise ValueError("scales must be >= 1")
        if abs(self.theta) * self.a_scale * max(self.n_scale, self.m_scale) >= _PHASE_INT_GUARD:
            raise ValueError("theta*a*n exceeds the exact-phase integer guard")

    @property
    def m_range(self) -> DyadicRange:
        return DyadicRange(self.m_scale)

    @property
    def n_range(self) -> DyadicRange:
        return DyadicRange(self.n_scale)

    @property
    def a_range(self) -> DyadicRange:
        return DyadicRange(self.a_scale)


@dataclass(frozen=True)
class FormTensor:
    """Dense entry array indexed [a, m, n] over the three dyadic ranges."""

    spec: FormSpec
    twisted: bool
    entries: np.ndarray

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.entries.shape

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries.ravel()))


def _entry_matrix(spec: FormSpec, n: int, twisted: bool) -> np.ndarray:
    """entry(a, m, n) for fixed n, shape (|A|, |M|)."""
    ms = spec.m_range.members
    az = spec.a_range.members
    out = np.zeros((len(az), len(ms)), dtype=np.complex128)
    if twisted and n % 2 == 0:
        return out
    coprime = np.gcd(ms, n) == 1
    if not coprime.any():
        return out
    minv = np.array(
        [pow(int(m), -1, n) if ok else 0 for m, ok in zip(ms, coprime)], dtype=np.int64
    )
    # exact reduction of theta*a*mbar mod n before the transcendental call
    t = (spec.theta * az[:, None] * minv[None, :]) % n
    out = np.exp(2j * np.pi * (t / n))
    if spec.perturbation is not None:
        pert = np.array(
            [[spec.perturbation.phase(int(a), int(m), n) for m in ms] for a in az]
        )
        out = out * np.exp(2j * np.pi * pert)
    if twisted:
        jac = np.array(
            [jacobi(int(m), n) if m % 2 == 1 else 0 for m in ms], dtype=np.float64
        )
        out = out * jac[None, :]
    out[:, ~coprime] = 0.0
    return out


def build_tensor(spec: FormSpec, twisted: bool = False) -> FormTensor:
    """Materialize the full entry tensor (guarded at 1e8 entries)."""
    dims = (len(spec.a_range), len(spec.m_range), len(spec.n_range))
    if dims[0] * dims[1] * dims[2] > TENSOR_ENTRY_LIMIT:
        raise ValueError(f"tensor would have {dims[0]*dims[1]*dims[2]} entries, cap is {TENSOR_ENTRY_LIMIT}")
    entries = np.zeros(dims, dtype=np.complex128)
    for j, n in enumerate(spec.n_range.members):
        entries[:, :, j] = _entry_matrix(spec, int(n), twisted)
    return FormTensor(spec, twisted, entries)


def _check_ranges(spec: FormSpec, alpha: CoefficientVector, beta: CoefficientVector, nu: CoefficientVector) -> None:
    if alpha.range.scale != spec.m_scale or beta.range.scale != spec.n_scale or nu.range.scale != spec.a_scale:
        raise ValueError("coefficient ranges do not match the form scales")


def eval_trilinear(
    alpha: CoefficientVector,
    beta: CoefficientVector,
    nu: CoefficientVector,
    spec: FormSpec,
    twisted: bool = False,
) -> complex:
    """Streaming evaluation of sum alpha_m beta_n nu_a entry(a,m,n).

    Never materializes the tensor: one (|A| x |M|) slab per n.
    """
    _check_ranges(spec, alpha, beta, nu)
    total = 0.0 + 0.0j
    for j, n in enumerate(spec.n_range.members):
        slab = _entry_matrix(spec, int(n), twisted)
        total += beta.values[j] * (nu.values @ slab @ alpha.values)
    return complex(total)


def eval_bilinear(
    alpha: CoefficientVector,
    beta: CoefficientVector,
    a: int,
    m_scale: int,
    n_scale: int,
) -> complex:
    """The single-a form: sum over coprime (m,n) of alpha_m beta_n e(a*mbar/n)."""
    if a == 0:
        raise ValueError("a must be nonzero")
    spec = FormSpec(m_scale, n_scale, 1, theta=1)
    if alpha.range.scale != m_scale or beta.range.scale != n_scale:
        raise ValueError("coefficient ranges do not match the scales")
    ms = spec.m_range.members
    total = 0.0 + 0.0j
    for j, n in enumerate(spec.n_range.members):
        n = int(n)
        coprime = np.gcd(ms, n) == 1
        if not coprime.any():
            continue
        minv = np.array([pow(int(m), -1, n) if ok else 0 for m, ok in zip(ms, coprime)], dtype=object)
        t = np.array([(a * int(mi)) % n for mi in minv], dtype=np.float64)
        phases = np.exp(2j * np.pi * (t / n))
        phases[~coprime] = 0.0
        total += beta.values[j] * (phases @ alpha.values)
    return complex(total)


# ---------------------------------------------------------------------------
# extremal search (the exact quantity the bounds dominate)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtremalResult:
    value: float
    alpha: CoefficientVector
    beta: CoefficientVector
    nu: CoefficientVector
    restart_index: int
    iterations: int


def _unit_or_basis(d: np.ndarray) -> tuple[np.ndarray, float]:
    norm = float(np.linalg.norm(d))
    if norm == 0.0:
        e = np.zeros_like(d)
        e[0] = 1.0  # lowest-index tie-break for a vanishing contraction
        return e, 0.0
    return d.conj() / norm, norm


def extremal_search(
    spec: FormSpec,
    twisted: bool = False,
    restarts: int = 8,
    iters: int = 300,
    seed: int = 0,
) -> ExtremalResult:
    """Alternating maximization of |B| over unit coefficient vectors.

    Each half-step replaces one block with the normalized conjugate of its
    contraction, which is the exact maximizer given the other two blocks, so
    the objective is non-decreasing; this is asserted at every half-step.
    Restart r draws its start from SeedSequence([seed, r]); the best value
    wins with lowest-restart-index tie-breaking.
    """
    tensor = build_tensor(spec, twisted).entries
    best: tuple[float, int, int, np.ndarray, np.ndarray, np.ndarray] | None = None
    for r in range(restarts):
        gen = np.random.default_rng(np.random.SeedSequence([seed, r]))
        dims = tensor.shape
        vecs = []
        for dim in dims:
            v = gen.standard_normal(dim) + 1j * gen.standard_normal(dim)
            vecs.append(v / np.linalg.norm(v))
        nu_v, alpha_v, beta_v = vecs
        obj = abs(np.einsum("amn,a,m,n->", tensor, nu_v, alpha_v, beta_v))
        it = 0
        for it in range(1, iters + 1):
            cycle_start = obj
            prev = obj
            d = np.einsum("amn,a,n->m", tensor, nu_v, beta_v)
            alpha_v, obj = _unit_or_basis(d)
            _assert_monotone(prev, obj)
            prev = obj
            d = np.einsum("amn,a,m->n", tensor, nu_v, alpha_v)
            beta_v, obj = _unit_or_basis(d)
            _assert_monotone(prev, obj)
            prev = obj
            d = np.einsum("amn,m,n->a", tensor, alpha_v, beta_v)
            nu_v, obj = _unit_or_basis(d)
            _assert_monotone(prev, obj)
            if obj - cycle_start <= 1e-10 * max(obj, 1e-300) and it > 1:
                break
        if best is None or obj > best[0]:
            best = (obj, r, it, alpha_v, beta_v, nu_v)
    value, r, it, alpha_v, beta_v, nu_v = best
    return ExtremalResult(
        value,
        CoefficientVector(spec.m_range, alpha_v),
        CoefficientVector(spec.n_range, beta_v),
        CoefficientVector(spec.a_range, nu_v),
        r,
        it,
    )


def _assert_monotone(prev: float, new: float) -> None:
    if new < prev - 1e-9 * max(1.0, prev):
        raise ArithmeticError(f"alternating objective decreased: {prev} -> {new}")


def gram_power_singular_value(mat: np.ndarray, tol: float = 1e-13, max_iter: int = 100000) -> float:
    """Largest singular value via power iteration on the Gram operator.

    Deterministic start (constant vector plus a small ramp); independent of
    the alternating search so the two can cross-check each other.
    """
    mat = np.asarray(mat, dtype=np.complex128)
    n = mat.shape[1]
    v = np.ones(n, dtype=np.complex128) + 1e-3 * np.arange(n)
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(max_iter):
        w = mat @ v
        gv = mat.conj().T @ w
        norm = np.linalg.norm(gv)
        if norm == 0.0:
            return 0.0
        v = gv / norm
        new_sigma = math.sqrt(float(np.real(np.vdot(v, mat.conj().T @ (mat @ v)))))
        if abs(new_sigma - sigma) <= tol * max(1.0, new_sigma):
            return new_sigma
        sigma = new_sigma
    return sigma


# ---------------------------------------------------------------------------
# bound envelopes (C and eps explicit; nothing asserted against measurements)
# ---------------------------------------------------------------------------

def bound_trilinear(spec: FormSpec, C: float = 1.0, eps: float = 0.0) -> float:
    """(1 + (|theta|A + X)/(MN))^(1/2) *
    [ (AMN)^(7/20+eps) (M+N)^(1/4) + (AMN)^(3/8+eps) (AN+AM)^(1/8) ],
    scaled by C; X is the perturbation scale when present, else 0."""
    m, n, a, th = spec.m_scale, spec.n_scale, spec.a_scale, abs(spec.theta)
    x = spec.perturbation.x_param if spec.perturbation is not None else 0.0
    pref = (1 + (th * a + x) / (m * n)) ** 0.5
    amn = a * m * n
    env = amn ** (7 / 20 + eps) * (m + n) ** 0.25 + amn ** (3 / 8 + eps) * (a * n + a * m) ** 0.125
    return C * pref * env


def bound_bilinear(m_scale: int, n_scale: int, a: int, C: float = 1.0, eps: float = 0.0) -> float:
    """(a + MN)^(3/8) (M+N)^(11/48+eps), scaled by C."""
    return C * (abs(a) + m_scale * n_scale) ** (3 / 8) * (m_scale + n_scale) ** (11 / 48 + eps)


def bound_twisted(spec: FormSpec, C: float = 1.0, eps: float = 0.0) -> float:
    """(1 + |theta|A/(NM))^(1/2) *
    [ (MN)^(3/10) (AM+AN)^(7/20+eps) + A^(1/2) (N+M)^(7/8+eps) ], scaled by C."""
    m, n, a, th = spec.m_scale, spec.n_scale, spec.a_scale, abs(spec.theta)
    pref = (1 + th * a / (n * m)) ** 0.5
    env = (m * n) ** (3 / 10) * (a * m + a * n) ** (7 / 20 + eps) + a**0.5 * (n + m) ** (7 / 8 + eps)
    return C * pref * env


def trivial_bound(spec: FormSpec) -> float:
    """(AMN)^(1/2) under the unit-norm convention."""
    return math.sqrt(spec.a_scale * spec.m_scale * spec.n_scale)


# ---------------------------------------------------------------------------
# Cauchy-Schwarz step and the amplifier
# ---------------------------------------------------------------------------

def _inner_sums(spec: FormSpec, beta: CoefficientVector, nu: CoefficientVector, b: int) -> tuple[np.ndarray, np.ndarray]:
    """c_m = sum over a and n coprime to m of beta_n nu_a e(theta*a*mbar/(b*n)).

    Returns (members m with gcd(m,b)=1, their c_m values).  The perturbation
    phase is honored only at b=1, where it multiplies e(theta*a*mbar/n).
    """
    if spec.perturbation is not None and b != 1:
        raise ValueError("perturbed inner sums are only defined at b = 1")
    ms = [int(m) for m in spec.m_range.members if gcd(int(m), b) == 1]
    ns = [int(n) for n in spec.n_range.members]
    az = [int(a) for a in spec.a_range.members]
    beta_v, nu_v = beta.values, nu.values
    out = np.zeros(len(ms), dtype=np.complex128)
    for i, m in enumerate(ms):
        acc = 0.0 + 0.0j
        for j, n in enumerate(ns):
            if gcd(m, n) != 1:
                continue
            mod = b * n
            mbar = pow(m % mod, -1, mod)
            asum = 0.0 + 0.0j
            for t, a in enumerate(az):
                phase = (spec.theta * a * mbar) % mod / mod
                if spec.perturbation is not None:
                    phase += spec.perturbation.phase(a, m, n)
                asum += nu_v[t] * np.exp(2j * np.pi * phase)
            acc += beta_v[j] * asum
        out[i] = acc
    return np.array(ms, dtype=np.int64), out


@dataclass(frozen=True)
class CauchyReport:
    lhs: float          # |B|^2
    c1: float           # the inner second moment
    rhs: float          # ||alpha||^2 * c1
    holds: bool


def cauchy_step(
    spec: FormSpec,
    alpha: CoefficientVector,
    beta: CoefficientVector,
    nu: CoefficientVector,
) -> CauchyReport:
    """|B(alpha,beta,nu)|^2 <= ||alpha||^2 * C_1, with C_1 computed from its
    definitional double-absolute-value sum (exact Cauchy-Schwarz, constant 1)."""
    _check_ranges(spec, alpha, beta, nu)
    b_val = eval_trilinear(alpha, beta, nu, spec)
    _, inner = _inner_sums(spec, beta, nu, b=1)
    c1 = float(np.sum(np.abs(inner) ** 2))
    lhs = abs(b_val) ** 2
    rhs = alpha.norm() ** 2 * c1
    return CauchyReport(lhs, c1, rhs, lhs <= rhs + 1e-6)


@dataclass(frozen=True)
class AmplifierSpec:
    """Amplifier parameters: the auxiliary modulus b and the prime window
    L < ell < 2L."""

    b: int
    l_scale: float

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ValueError("b must be >= 1")
        if not self.primes:
            raise ValueError(f"no primes strictly between {self.l_scale} and {2*self.l_scale}")

    @property
    def primes(self) -> tuple[int, ...]:
        lo, hi = self.l_scale, 2 * self.l_scale
        return tuple(p for p in range(int(lo) + 1, math.ceil(hi)) if lo < p < hi and is_prime(p))


@dataclass(frozen=True)
class AmplifierReport:
    c_b: float
    d_b: float                  # character-sum form
    d_b_direct: float           # orthogonality-expanded congruence form
    diagonal: float             # products equal
    off_diagonal: float         # products distinct
    min_principal_count: int    # min over m of #{ell: (ell, theta*b*m)=1}
    bound: float                # (M / minP^2) * d_b
    ratio: float
    holds: bool
    partition_ok: bool
    forms_match: bool
    masked_beta_entries: int


def amplifier_check(
    spec: FormSpec,
    amp: AmplifierSpec,
    beta: CoefficientVector,
    nu: CoefficientVector,
) -> AmplifierReport:
    """Exact inequality chain C_b <= (M / min_m P_m^2) * D_b.

    P_m is the principal-character prime count #{ell in L: (ell, theta*b*m)=1}
    (the explicit stand-in for the asymptotic L/log L).  D_b is computed both
    from its character-sum definition and from the orthogonality-expanded
    seven-fold congruence sum split into diagonal (ell1*n1 = ell2*n2) and
    off-diagonal parts; the report records the agreement of the two routes
    and of the partition.

    beta is masked to multipliers n coprime to theta*b (the standing support
    assumption under which the two D_b forms coincide).
    """
    if spec.perturbation is not None:
        raise ValueError("amplifier check is defined for unperturbed specs")
    if spec.m_scale > 300:
        raise ValueError("amplifier check capped at M <= 300 (full character tables)")
    if gcd(spec.theta, amp.b) != 1:
        raise ValueError("need gcd(theta, b) = 1")
    if amp.l_scale <= 2 * math.log(amp.b * abs(spec.theta) * spec.m_scale):
        raise ValueError("need L > 2*log(b*theta*M) for the amplifier window")

    tb = abs(spec.theta) * amp.b
    mask = np.array([1.0 if gcd(int(n), tb) == 1 else 0.0 for n in spec.n_range.members])
    masked = int(np.sum((mask == 0) & (np.abs(beta.values) > 0)))
    beta = CoefficientVector(beta.range, beta.values * mask)

    ells = [ell for ell in amp.primes if gcd(ell, tb) == 1]
    ms, inner = _inner_sums(spec, beta, nu, amp.b)
    c_b = float(np.sum(np.abs(inner) ** 2))

    ns = [int(n) for n in spec.n_range.members]
    az = [int(a) for a in spec.a_range.members]
    d_char = 0.0
    d_direct = 0.0
    diag = 0.0
    min_p = None
    chi0_total = 0.0
    for i, m in enumerate(ms):
        m = int(m)
        group = character_group(m)
        # T(n) = beta_n * sum_a nu_a e(theta a mbar/(b n)) for n coprime to m
        t_vals: dict[int, complex] = {}
        for j, n in enumerate(ns):
            if gcd(m, n) != 1 or beta.values[j] == 0:
                continue
            mod = amp.b * n
            mbar = pow(m % mod, -1, mod)
            asum = sum(
                nu.values[t] * np.exp(2j * np.pi * ((spec.theta * a * mbar) % mod / mod))
                for t, a in enumerate(az)
            )
            t_vals[n] = beta.values[j] * asum
        adm_ells = [ell for ell in ells if gcd(ell, m) == 1]
        p_m = len(adm_ells)
        min_p = p_m if min_p is None else min(min_p, p_m)
        phi_m = group.order
        # character-sum form
        d_m = 0.0
        for chi in group.characters():
            a_chi = sum(chi(ell) for ell in ells)
            b_chi = sum(chi(n) * t for n, t in t_vals.items())
            term = (abs(a_chi) ** 2) * (abs(b_chi) ** 2)
            d_m += term
            if chi.is_principal:
                chi0_total += term / phi_m
        d_char += d_m / phi_m
        # orthogonality-expanded form, grouped by ell*n mod m / exact product
        by_residue: dict[int, complex] = {}
        by_product: dict[int, complex] = {}
        for ell in adm_ells:
            for n, t in t_vals.items():
                by_residue[ell * n % m] = by_residue.get(ell * n % m, 0.0) + t
                by_product[ell * n] = by_product.get(ell * n, 0.0) + t
        d_direct += sum(abs(s) ** 2 for s in by_residue.values())
        diag += sum(abs(s) ** 2 for s in by_product.values())

    if min_p is None:
        raise ValueError("no admissible moduli m with gcd(m, b) = 1")
    if min_p == 0:
        raise ValueError("some modulus m excludes every amplifier prime; widen the window")
    off = d_direct - diag
    bound = spec.m_scale / min_p**2 * d_char
    holds = (
        c_b <= spec.m_scale / min_p**2 * chi0_total * (1 + 1e-9)
        and chi0_total <= d_char * (1 + 1e-9)
    )
    return AmplifierReport(
        c_b=c_b,
        d_b=d_char,
        d_b_direct=d_direct,
        diagonal=diag,
        off_diagonal=off,
        min_principal_count=min_p,
        bound=bound,
        ratio=c_b / bound if bound > 0 else float("inf"),
        holds=holds,
        partition_ok=abs(diag + off - d_direct) <= 1e-6 * max(1.0, d_direct),
        forms_match=abs(d_char - d_direct) <= 1e-6 * max(1.0, d_direct),
        masked_beta_entries=masked,
    )


# ---------------------------------------------------------------------------
# complementary divisor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompDivReport:
    tuples_checked: int
    cap: float                  # D = 3NL/M
    violations: tuple
    bijection_ok: bool

    @property
    def ok(self) -> bool:
        return not self.violations and self.bijection_ok


def complementary_divisor_check(m_scale: int, n_scale: int, l_scale: float) -> CompDivReport:
    """Exhaustive check that the congruence ell1*n1 = ell2*n2 (mod m) with
    ell1*n1 != ell2*n2 switches to an integer complementary divisor
    d0 = (ell1*n1 - ell2*n2)/m with 0 < |d0| <= D := 3NL/M, and that for each
    fixed (ell1,n1,ell2,n2) the correspondence m <-> d0 is a bijection."""
    mrange = DyadicRange(m_scale).members
    nrange = DyadicRange(n_scale).members
    ells = AmplifierSpec(1, l_scale).primes
    cap = 3 * n_scale * l_scale / m_scale
    checked = 0
    violations = []
    bijection_ok = True
    for l1 in ells:
        for n1 in nrange:
            v1 = l1 * int(n1)
            for l2 in ells:
                for n2 in nrange:
                    diff = v1 - l2 * int(n2)
                    if diff == 0:
                        continue
                    seen_m: dict[int, int] = {}
                    for m in mrange:
                        m = int(m)
                        if diff % m != 0:
                            continue
                        checked += 1
                        d0 = diff // m
                        if d0 == 0 or m * d0 != diff:
                            violations.append((m, l1, int(n1), l2, int(n2), d0, "integrality"))
                            continue
                        if abs(d0) > cap:
                            violations.append((m, l1, int(n1), l2, int(n2), d0, "cap"))
                        if d0 in seen_m or diff // d0 != m:
                            bijection_ok = False
                        seen_m[d0] = m
    return CompDivReport(checked, cap, tuple(violations), bijection_ok)


# ---------------------------------------------------------------------------
# scaling sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalingRecord:
    spec: FormSpec
    twisted: bool
    extremal: float
    trivial: float
    envelope: float
    envelope_kind: str
    ratio_trivial: float
    ratio_envelope: float


@dataclass(frozen=True)
class ScalingResult:
    records: tuple[ScalingRecord, ...]
    fitted_exponent: float | None  # slope of log extremal vs log N on M=N=A rows


def scaling_experiment(
    grid: Sequence[FormSpec],
    restarts: int = 4,
    iters: int = 300,
    seed: int = 0,
    eps: float = 0.05,
    twisted: bool = False,
) -> ScalingResult:
    records = []
    for spec in grid:
        res = extremal_search(spec, twisted=twisted, restarts=restarts, iters=iters, seed=seed)
        triv = trivial_bound(spec)
        env = bound_trilinear(spec, C=1.0, eps=eps)
        kind = "shifted" if spec.perturbation is not None else "plain"
        records.append(
            ScalingRecord(
                spec, twisted, res.value, triv, env, kind,
                res.value / triv, res.value / env,
            )
        )
    diag = [r for r in records if r.spec.m_scale == r.spec.n_scale == r.spec.a_scale]
    exponent = None
    if len(diag) >= 2:
        xs = np.log([r.spec.n_scale for r in diag])
        ys = np.log([max(r.extremal, 1e-300) for r in diag])
        exponent = float(np.polyfit(xs, ys, 1)[0])
    return ScalingResult(tuple(records), exponent)
