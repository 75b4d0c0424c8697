"""Matrix factorizations of toric Landau-Ginzburg superpotentials.

Disk-counting data on toric Fano surfaces are turned into matrix
factorizations ``M**2 = (W - lambda) * Id`` of the mirror superpotential by
a fiberwise Fourier (SYZ) transform, and the identity is checked exactly
and numerically.
"""

from .kernels import BACKEND
from .ring import LaurentPoly, Monomial, const, monomial, one, qpow, var, zero

__version__ = "0.1.0"

__all__ = ["BACKEND", "LaurentPoly", "Monomial", "const", "monomial", "one", "qpow", "var", "zero", "__version__"]
