"""Exact symplectic Hodge theory on even-dimensional Lie algebras.

Computes Chevalley-Eilenberg, harmonic and coclosed-subcomplex cohomologies
of a Lie algebra with a symplectic form, determines how far the Lefschetz
maps stay surjective, where the dδ-identities hold, and where the natural map
from coclosed cohomology into ordinary cohomology is bijective — all in exact
rational arithmetic.
"""

__version__ = "0.1.0"
