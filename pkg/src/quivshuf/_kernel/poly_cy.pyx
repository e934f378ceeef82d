# cython: language_level=3
"""Compiled sparse polynomial kernel.

Mirror of poly_py: dicts map exponent tuples to nonzero Python ints.
Exponents fit machine words; coefficients stay arbitrary-precision
objects.  quivshuf._kernel imports this module when the build produced
it, unless QUIVSHUF_PURE=1 forces the fallback.
"""


cdef inline tuple _tadd(tuple ea, tuple eb):
    cdef Py_ssize_t n = len(ea)
    cdef list buf = [None] * n
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <long> ea[i] + <long> eb[i]
    return tuple(buf)


def dict_add(dict a, dict b):
    cdef dict out = dict(a)
    cdef object s
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def dict_sub(dict a, dict b):
    cdef dict out = dict(a)
    cdef object s
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = -c
        else:
            s = s - c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def dict_neg(dict a):
    cdef dict out = {}
    for e, c in a.items():
        out[e] = -c
    return out


def dict_mul(dict a, dict b):
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef tuple e
    cdef object s, term
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = _tadd(<tuple> ea, <tuple> eb)
            term = ca * cb
            s = out.get(e)
            if s is None:
                if term:
                    out[e] = term
            else:
                s = s + term
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def dict_term_mul(dict a, tuple exp, coeff):
    """Multiply by the single term coeff * x^exp."""
    if not coeff:
        return {}
    cdef dict out = {}
    for ea, ca in a.items():
        out[_tadd(<tuple> ea, exp)] = ca * coeff
    return out
