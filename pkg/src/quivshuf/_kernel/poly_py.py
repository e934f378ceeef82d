"""Pure-Python sparse polynomial kernel.

A polynomial is a dict mapping exponent tuples (fixed arity, possibly
negative entries) to nonzero Python ints.  These five functions are the
innermost loops of all parameter arithmetic; poly_cy.pyx holds the same
code compiled by Cython, and quivshuf._kernel picks one at import time.
"""


def dict_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def dict_sub(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def dict_neg(a):
    return {e: -c for e, c in a.items()}


def dict_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def dict_term_mul(a, exp, coeff):
    """Multiply by the single term coeff * x^exp."""
    if not coeff:
        return {}
    out = {}
    for ea, ca in a.items():
        out[tuple(x + y for x, y in zip(ea, exp))] = ca * coeff
    return out
