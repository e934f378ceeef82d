"""Kernel backend selection.

The compiled Cython backend is used when available; setting QUIVSHUF_PURE=1
forces the pure-Python fallback.  Both expose the same five functions on
int-coefficient exponent dicts, and tests assert they agree.
"""

import os

if os.environ.get("QUIVSHUF_PURE"):
    from . import poly_py as impl

    BACKEND = "python"
else:
    try:
        from . import poly_cy as impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import poly_py as impl

        BACKEND = "python"

dict_add = impl.dict_add
dict_sub = impl.dict_sub
dict_neg = impl.dict_neg
dict_mul = impl.dict_mul
dict_term_mul = impl.dict_term_mul
