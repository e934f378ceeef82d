"""Timing comparison of the polynomial kernel backends.

Micro section: the five dict kernels on random sparse Laurent data, both
backends imported side by side.  Macro section: a word product and a
small gram matrix, each run in a subprocess so the import-time backend
selection (QUIVSHUF_PURE) is exercised for real.

Run after installing the package:  python3 benchmarks/bench_kernel.py
"""

import os
import random
import subprocess
import sys
import time

from quivshuf._kernel import poly_py

try:
    from quivshuf._kernel import poly_cy
except ImportError:
    poly_cy = None


def random_poly(rng, nvars, nterms, coeff_bits):
    out = {}
    while len(out) < nterms:
        e = tuple(rng.randint(-6, 6) for _ in range(nvars))
        c = rng.getrandbits(coeff_bits) + 1
        if rng.random() < 0.5:
            c = -c
        out[e] = c
    return out


def bench_micro(impl, data, repeat):
    a, b = data
    times = {}
    for name, fn, args in (
        ("dict_add", impl.dict_add, (a, b)),
        ("dict_sub", impl.dict_sub, (a, b)),
        ("dict_neg", impl.dict_neg, (a,)),
        ("dict_mul", impl.dict_mul, (a, b)),
        ("dict_term_mul", impl.dict_term_mul, (a, next(iter(b)), 7)),
    ):
        best = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn(*args)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        times[name] = best
    return times


_MACRO = r"""
import time
from quivshuf.quiver import Quiver
from quivshuf.shuffle import ShuffleContext
from quivshuf.pairing import pair
from quivshuf.words import parse_word
from quivshuf._kernel import BACKEND

q = Quiver(["1"], [("1", "1", "1")])
ctx = ShuffleContext(q, "plain")
t0 = time.perf_counter()
R = ctx.word_product([("1", 0), ("1", 1), ("1", 2)])
t1 = time.perf_counter()
w = parse_word(q, "[1^2 1^1 1^0]")
pair(ctx, R, w)
t2 = time.perf_counter()
print("%s %.4f %.4f" % (BACKEND, t1 - t0, t2 - t1))
"""


def bench_macro(pure):
    env = dict(os.environ)
    if pure:
        env["QUIVSHUF_PURE"] = "1"
    else:
        env.pop("QUIVSHUF_PURE", None)
    out = subprocess.run(
        [sys.executable, "-c", _MACRO], env=env, capture_output=True, text=True
    )
    if out.returncode != 0:
        raise RuntimeError(out.stderr)
    return out.stdout.split()


def main():
    rng = random.Random(7)
    data = (random_poly(rng, 4, 400, 64), random_poly(rng, 4, 400, 64))

    print("micro (best of 5, 400-term operands, 4 variables)")
    py = bench_micro(poly_py, data, 5)
    cy = bench_micro(poly_cy, data, 5) if poly_cy else None
    for name in py:
        line = "  %-14s python %8.5fs" % (name, py[name])
        if cy:
            line += "   cython %8.5fs   speedup %.2fx" % (
                cy[name],
                py[name] / cy[name] if cy[name] else float("inf"),
            )
        print(line)
    if not cy:
        print("  (compiled backend not built; install with Cython to compare)")

    print("macro (word product of 3 generators, then one pairing)")
    for pure in (True, False):
        backend, t_prod, t_pair = bench_macro(pure)
        print("  backend %-7s product %ss   pairing %ss" % (backend, t_prod, t_pair))


if __name__ == "__main__":
    main()
