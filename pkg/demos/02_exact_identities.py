"""The exact mod-1 arithmetic layer: reciprocity identities with zero tolerance.

Everything here is integer arithmetic on canonical fractions mod 1, so
"approximately equal" never appears: each identity either holds structurally
or the operation raises.  These identities are the workhorses that move an
inverse from one denominator to another:

    two-term   :  inv(m)/n + inv(n)/m = 1/(mn)          (mod 1)
    three-term :  inv(bc)/a + inv(ac)/b + inv(ab)/c = 1/(abc)
    splitting  :  inv(a)/(bc) = inv(ab)/c + inv(ac)/b   for (b,c)=(a,bc)=1
"""

import random

from kfractions.arith import (
    Mod1Fraction,
    gcd_infty,
    reciprocity_three_term,
    reciprocity_two_term,
    split_denominator,
    squarefull_split,
)

print("=== worked identities ===")
lhs, rhs = reciprocity_two_term(2, 3)
print(f"inv(2)/3 + inv(3)/2 = {lhs}  =  1/(2*3) = {rhs}")
lhs, rhs = reciprocity_three_term(2, 3, 5)
print(f"three-term at (2,3,5): both sides {lhs}")
lhs, rhs = split_denominator(7, 4, 9)
print(f"splitting inv(7)/36 across 4 and 9: both sides {lhs}")

print("\n=== zero-tolerance sweeps ===")
rng = random.Random(0)
count = 0
while count < 2000:
    m, n = rng.randint(1, 10**6), rng.randint(1, 10**6)
    try:
        reciprocity_two_term(m, n)
    except ValueError:
        continue  # not coprime, resample
    count += 1
print(f"two-term reciprocity held exactly on {count} random coprime pairs up to 1e6")

print("\n=== fraction canonicalization ===")
x = Mod1Fraction(22, 12)
print(f"22/12 mod 1 canonicalizes to {x}")
print(f"{x} + 5/6 = {x + Mod1Fraction(5, 6)}   (sums stay canonical)")

print("\n=== the multiplicative bookkeeping behind the envelopes ===")
for n in (12, 72, 360, 9800):
    b, nprime = squarefull_split(n)
    print(f"{n} = {b} (square-full) * {nprime} (square-free), coprime parts")
for m, n in [(2, 24), (6, 36), (10, 13)]:
    print(f"(m^inf, n) for m={m}, n={n}: {gcd_infty(m, n)}")
