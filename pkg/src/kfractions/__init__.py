"""kfractions: a desk-scale laboratory for Kloosterman sums and the
trilinear/bilinear forms built from Kloosterman fractions a*mbar/n.

Submodules
----------
arith       exact integer and mod-1 rational arithmetic, reciprocity identities
ksums       complete Kloosterman sums: brute oracle, CRT/Salie fast path, Weil
characters  Dirichlet characters from the unit-group decomposition
incomplete  incomplete sums with side conditions, bound envelopes, completion majorant
forms       the phase tensor, extremal search, bound envelopes, amplifier machinery
apps        determinant-equation counts and equidistribution of a0/m fractions
verify      one verification suite per experiment subcommand
records     experiment records, CSV/JSON persistence, seed derivation
cli         the `kfractions` command-line runner
"""

from . import apps, arith, characters, forms, incomplete, ksums, records, verify
from .arith import Mod1Fraction, egcd, factorize, gcd_infty, jacobi, mod_inverse, squarefull_split
from .forms import CoefficientVector, DyadicRange, FormSpec, extremal_search
from .ksums import KloostermanParams, kloosterman_brute, kloosterman_fast, ramanujan, weil_bound

__version__ = "0.1.0"

__all__ = [
    "apps",
    "arith",
    "characters",
    "forms",
    "incomplete",
    "ksums",
    "records",
    "verify",
    "Mod1Fraction",
    "egcd",
    "factorize",
    "gcd_infty",
    "jacobi",
    "mod_inverse",
    "squarefull_split",
    "CoefficientVector",
    "DyadicRange",
    "FormSpec",
    "extremal_search",
    "KloostermanParams",
    "kloosterman_brute",
    "kloosterman_fast",
    "ramanujan",
    "weil_bound",
    "__version__",
]
