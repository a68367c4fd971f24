"""Poly-Bernoulli numbers, their zeta functions, and identity verification.

Exact families (B, C, multi-poly, multi-indexed) live in :mod:`polyzeta.polybern`,
certified double-precision multiple zeta values in :mod:`polyzeta.mzv`, closed
values of the eta/xi functions and the identity harness in :mod:`polyzeta.etaxi`,
and direct quadrature of the defining integrals in :mod:`polyzeta.quad`.
"""

from polyzeta.arith import DirichletPoly, MPoly, Series
from polyzeta.indices import Index, SignedIndex
from polyzeta.numvalue import NumValue

__version__ = "0.1.0"

__all__ = [
    "DirichletPoly",
    "Index",
    "MPoly",
    "NumValue",
    "Series",
    "SignedIndex",
]
