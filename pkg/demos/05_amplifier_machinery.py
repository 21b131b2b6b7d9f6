"""The proof machinery at desk scale: Cauchy-Schwarz step, character
amplifier, and the complementary-divisor switch.

Chain:  |B|^2 <= ||alpha||^2 * C_1   (exact Cauchy-Schwarz, constant 1)
        C_b  <= (M / min_m P_m^2) * D_b   with P_m the amplifier prime count
                 (the principal character's contribution, explicit constant)
        D_b  splits into diagonal (l1 n1 = l2 n2) + off-diagonal parts, and
             the character-sum form equals the congruence-sum form exactly.

The complementary-divisor sweep checks that every congruence l1 n1 = l2 n2
(mod m) with unequal products factors through an integer divisor d0 with
|d0| <= 3NL/M, eliminating the modulus variable.
"""

import numpy as np

from kfractions.forms import (
    AmplifierSpec,
    CoefficientVector,
    FormSpec,
    amplifier_check,
    cauchy_step,
    complementary_divisor_check,
)

print("=== Cauchy-Schwarz step ===")
gen = np.random.default_rng(0)
spec = FormSpec(48, 24, 8, theta=1)
alpha = CoefficientVector.random_unit(spec.m_range, gen)
beta = CoefficientVector.random_unit(spec.n_range, gen)
nu = CoefficientVector.random_unit(spec.a_range, gen)
rep = cauchy_step(spec, alpha, beta, nu)
print(f"|B|^2 = {rep.lhs:.4f}  <=  ||alpha||^2 * C_1 = {rep.rhs:.4f}   "
      f"(slack factor {rep.rhs / max(rep.lhs, 1e-300):.1f})")

print("\n=== the amplifier chain ===")
spec = FormSpec(120, 16, 4, theta=3)
amp = AmplifierSpec(b=2, l_scale=14.0)
print(f"amplifier primes in (14, 28): {amp.primes}")
beta = CoefficientVector.random_unit(spec.n_range, gen)
nu = CoefficientVector.random_unit(spec.a_range, gen)
rep = amplifier_check(spec, amp, beta, nu)
print(f"C_b = {rep.c_b:.4f}")
print(f"D_b (character form)  = {rep.d_b:.4f}")
print(f"D_b (congruence form) = {rep.d_b_direct:.4f}   "
      f"diagonal {rep.diagonal:.4f} + off-diagonal {rep.off_diagonal:.4f}")
print(f"explicit inequality C_b <= (M/minP^2) D_b: "
      f"{rep.c_b:.4f} <= {rep.bound:.4f}  (ratio {rep.ratio:.4f}, minP = {rep.min_principal_count})")

print("\n=== complementary divisor sweep ===")
rep = complementary_divisor_check(64, 64, 8.0)
print(f"M=N=64, L=8: {rep.tuples_checked} admissible tuples, cap D = {rep.cap:.0f}, "
      f"violations: {len(rep.violations)}, divisor map bijective: {rep.bijection_ok}")
rep = complementary_divisor_check(128, 96, 11.0)
print(f"M=128, N=96, L=11: {rep.tuples_checked} tuples, cap {rep.cap:.1f}, "
      f"violations: {len(rep.violations)}")
