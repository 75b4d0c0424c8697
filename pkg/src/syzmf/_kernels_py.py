"""Pure-Python term kernels for sparse Laurent polynomials.

A polynomial is a dict mapping a monomial key to a nonzero coefficient.
Keys are int tuples ``(qnum, qden, e_1, ..., e_n)`` where ``qnum/qden`` is
the exponent of q in lowest terms with ``qden >= 1``.  Coefficients are
``int`` when integral and ``Fraction`` otherwise, so that the common
coefficients (all +-1 in practice) stay on the fast int path.
"""

from fractions import Fraction
from math import gcd

__all__ = ["normalize_coeff", "key_mul", "add_terms", "mul_terms", "scale_terms"]


def normalize_coeff(c):
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def key_mul(ka, kb):
    qn = ka[0] * kb[1] + kb[0] * ka[1]
    qd = ka[1] * kb[1]
    g = gcd(qn, qd)
    return (qn // g, qd // g) + tuple(x + y for x, y in zip(ka[2:], kb[2:]))


def add_terms(a, b, sign=1):
    """Return ``a + sign*b`` with zero coefficients purged."""
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + sign * c
        if v:
            out[k] = normalize_coeff(v)
        else:
            out.pop(k, None)
    return out


def mul_terms(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = key_mul(ka, kb)
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                del out[k]
    return {k: normalize_coeff(v) for k, v in out.items()}


def scale_terms(a, c):
    if not c:
        return {}
    return {k: normalize_coeff(v * c) for k, v in a.items()}
