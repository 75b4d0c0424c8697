# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernels; same contract as ``_kernels_py``.

q-exponent arithmetic runs on C ``long long``.  Inputs whose exponents are not
below 2**30 in absolute value raise ``OverflowError``; the dispatcher in ``kernels`` then retries
with the pure-Python implementation.
"""

from fractions import Fraction
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF


# operands below 2**30 keep qa*db + qb*da inside 63 bits
cdef enum:
    QLIM = 1 << 30


cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    while b:
        a, b = b, a % b
    return a


cdef inline tuple _key_mul(tuple ka, tuple kb):
    cdef Py_ssize_t n = len(ka)
    cdef Py_ssize_t i
    cdef long long qa = ka[0], da = ka[1], qb = kb[0], db = kb[1]
    cdef long long qn, qd, g
    if not (-QLIM < qa < QLIM and -QLIM < qb < QLIM and 0 < da < QLIM and 0 < db < QLIM):
        raise OverflowError("q-exponent too large for the compiled kernel")
    if da == db:
        qn = qa + qb
        qd = da
    else:
        qn = qa * db + qb * da
        qd = da * db
    g = _gcd(qn, qd)
    if g > 1:
        qn //= g
        qd //= g
    cdef tuple out = PyTuple_New(n)
    cdef object item
    item = qn
    Py_INCREF(item)
    PyTuple_SET_ITEM(out, 0, item)
    item = qd
    Py_INCREF(item)
    PyTuple_SET_ITEM(out, 1, item)
    cdef long long e
    for i in range(2, n):
        e = <long long>ka[i] + <long long>kb[i]
        item = e
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, i, item)
    return out


cdef inline object _norm(object c):
    if type(c) is int:
        return c
    if c.denominator == 1:
        return c.numerator
    return c


def normalize_coeff(c):
    if type(c) is int:
        return c
    return _norm(Fraction(c))


def key_mul(tuple ka, tuple kb):
    return _key_mul(ka, kb)


def add_terms(dict a, dict b, int sign=1):
    cdef dict out = dict(a)
    cdef object k, c, v
    for k, c in b.items():
        v = out.get(k, 0) + (c if sign == 1 else -c)
        if v:
            out[k] = _norm(v)
        else:
            out.pop(k, None)
    return out


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef list ia = list(a.items())
    cdef list ib = list(b.items())
    cdef Py_ssize_t i, j, na = len(ia), nb = len(ib)
    cdef tuple ka, kb, k
    cdef object ca, cb, v, prev
    for i in range(na):
        ka, ca = ia[i]
        for j in range(nb):
            kb, cb = ib[j]
            k = _key_mul(ka, kb)
            prev = out.get(k)
            if prev is None:
                out[k] = ca * cb
            else:
                v = prev + ca * cb
                if v:
                    out[k] = v
                else:
                    del out[k]
    for k in list(out):
        out[k] = _norm(out[k])
    return out


def scale_terms(dict a, object c):
    if not c:
        return {}
    return {k: _norm(v * c) for k, v in a.items()}
