"""The twisted shuffle product and the wheel-condition membership tests.

The product of R (degree n) and R' (degree n') lives in degree n+n' and
is a sum over per-vertex splits of the combined slots: R gets one block,
R' the other, and every (first, second) variable pair contributes a zeta
factor.  Only the same-vertex zeta denominators (1 - z/w) produce poles;
the whole sum is accumulated over the common denominator
prod_{i} prod_{a<b} (z_{ia} - z_{ib}) and divided out exactly at the end.
A failed division means a bug, not bad input, and raises AssertionError.

Wheel checks come in two regimes: the generic three-variable conditions
(substitute q*s, t_e*s, s around an edge and demand zero) and the
restricted conditions used under specialization (substitute a geometric
progression in one vertex and demand divisibility by a product of linear
forms, with multiplicities merged after specialization).
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from fractions import Fraction
from math import lcm

from . import _kernel
from .errors import QuivshufError
from .field import ParamPoly, RatFunc
from .laurent import DegreeVector, GradedLaurent, ZPoly, divexact_binomial, divisible_by
from .quiver import ZetaKernel

WHEEL_REGIMES = ("three_variable", "restricted")


class ShuffleContext:
    """Quiver + twist + optional specialization + wheel regime.

    Holds the zeta kernel and a cache of word products; immutable in
    intent, the caches are the only mutable state.
    """

    def __init__(self, quiver, twist, specialization=None, wheel_regime="three_variable"):
        if wheel_regime not in WHEEL_REGIMES:
            raise ValueError("wheel_regime must be one of %s" % (WHEEL_REGIMES,))
        if wheel_regime == "restricted" and specialization is None:
            raise ValueError("restricted wheel regime requires a specialization")
        self.quiver = quiver
        self.twist = twist
        self.specialization = specialization
        self.wheel_regime = wheel_regime
        self.kernel = ZetaKernel(quiver, twist, specialization)
        self.ring = self.kernel.ring
        self._word_cache = {}
        self._cache_dir = os.environ.get("QUIVSHUF_CACHE_DIR") or None

    def describe(self):
        spec = self.specialization.describe() if self.specialization else "id"
        return "%s|%s|%s|%s" % (self.quiver.digest(), self.twist, spec, self.wheel_regime)

    def one(self):
        """The empty-degree unit."""
        deg = DegreeVector(self.quiver, {})
        return GradedLaurent(deg, self.twist, self.ring, {(): RatFunc.const(self.ring, 1)}, checked=True)

    def compatible(self, R):
        return R.twist == self.twist and R.ring == self.ring and R.degree.quiver == self.quiver

    # --- word products with memo / optional disk cache ---

    def _word_key(self, letters, side):
        return (tuple((str(v), int(d)) for v, d in letters), side)

    def word_product(self, letters, side="e"):
        """Iterated product of generators along a word; side f folds in the
        opposite algebra, so the underlying plain product is reversed."""
        letters = [(str(v), int(d)) for v, d in letters]
        if not letters:
            return self.one()
        key = self._word_key(letters, side)
        hit = self._word_cache.get(key)
        if hit is not None:
            return hit
        val = self._disk_get(key)
        if val is None:
            val = generator(self, letters[0][0], letters[0][1], side)
            for v, d in letters[1:]:
                val = shuffle_product(self, val, generator(self, v, d, side), side)
            self._disk_put(key, val)
        self._word_cache[key] = val
        return val

    def e_w(self, word):
        """e_w = e_{i_1,d_1} * ... * e_{i_n,d_n} for w = [i_1^(d_1) ...]."""
        return self.word_product([(l.vertex, l.exponent) for l in word], "e")

    def f_w(self, word):
        """f_w = f_{i_1,-d_1} * ... * f_{i_n,-d_n}, folded in the opposite
        algebra."""
        return self.word_product([(l.vertex, -l.exponent) for l in word], "f")

    def _disk_path(self, key):
        blob = json.dumps([self.describe(), key], sort_keys=True).encode()
        return os.path.join(self._cache_dir, hashlib.sha256(blob).hexdigest() + ".json")

    def _disk_get(self, key):
        if not self._cache_dir:
            return None
        path = self._disk_path(key)
        try:
            with open(path) as fh:
                return GradedLaurent.from_json_dict(self.quiver, json.load(fh), ring=self.ring)
        except (OSError, ValueError, QuivshufError):
            return None

    def _disk_put(self, key, val):
        if not self._cache_dir:
            return
        os.makedirs(self._cache_dir, exist_ok=True)
        path = self._disk_path(key)
        try:
            with open(path, "w") as fh:
                json.dump(val.to_json_dict(), fh, sort_keys=True)
        except OSError:
            pass


def generator(ctx, i, d, side="e"):
    """e_{i,d} (or f_{i,d}): the monomial z_{i,1}^d in degree with a single
    variable at vertex i.  Both sides are represented by the same element;
    the side only matters for how products are folded."""
    assert side in ("e", "f")
    i = ctx.quiver.check_vertex(i)
    deg = DegreeVector(ctx.quiver, {i: 1})
    return GradedLaurent(
        deg, ctx.twist, ctx.ring, {(int(d),): RatFunc.const(ctx.ring, 1)}, checked=True
    )


def shuffle_product(ctx, R, Rp, side="e"):
    """The twisted shuffle product; side f multiplies in the opposite
    algebra (arguments reversed)."""
    assert side in ("e", "f")
    if side == "f":
        return shuffle_product(ctx, Rp, R, "e")
    if not (ctx.compatible(R) and ctx.compatible(Rp)):
        raise ValueError("element does not match the shuffle context")
    if R.is_zero() or Rp.is_zero():
        deg = R.degree + Rp.degree
        return GradedLaurent(deg, ctx.twist, ctx.ring, {}, checked=True)
    if _flat_ok(ctx, R, Rp):
        return _shuffle_flat(ctx, R, Rp)
    return _shuffle_generic(ctx, R, Rp)


def _shuffle_generic(ctx, R, Rp):
    q = ctx.quiver
    deg = R.degree + Rp.degree
    out_tokens = deg.tokens()
    one = RatFunc.const(ctx.ring, 1)

    # per-vertex slot arithmetic
    verts = [v for v in q.vertices if deg.count(v)]
    n1 = {v: R.degree.count(v) for v in verts}
    total = {v: deg.count(v) for v in verts}
    vidx = {v: q.vertex_index(v) for v in verts}

    num = ZPoly(ctx.ring, out_tokens, {})
    choices = [
        list(itertools.combinations(range(1, total[v] + 1), n1[v])) for v in verts
    ]
    for split in itertools.product(*choices):
        first = {}
        second = {}
        for v, sel in zip(verts, split):
            sel = set(sel)
            first[v] = sorted(sel)
            second[v] = sorted(set(range(1, total[v] + 1)) - sel)
        term = _remap(R, first).on_vars(out_tokens) * _remap(Rp, second)
        # zeta factors over (first block var, second block var) pairs
        for i in verts:
            for j in verts:
                if not (first[i] and second[j]):
                    continue
                zf = ctx.kernel.zeta(i, j)
                assert all(f == {0: one, 1: -one} for f in zf.den_factors)
                for a in first[i]:
                    for b in second[j]:
                        ta = ("z", vidx[i], a)
                        tb = ("z", vidx[j], b)
                        for f in zf.num_factors:
                            term = term * _pair_poly(ctx.ring, f, ta, tb)
        # common-denominator bookkeeping inside each vertex block
        for v in verts:
            fs = set(first[v])
            for a in range(1, total[v] + 1):
                for b in range(a + 1, total[v] + 1):
                    sa, sb = a in fs, b in fs
                    if sa == sb:
                        za = ZPoly.var(ctx.ring, ("z", vidx[v], a))
                        zb = ZPoly.var(ctx.ring, ("z", vidx[v], b))
                        term = term * (za - zb)
                    elif sa:
                        # pole pair (a first, b second): 1/(1-z_a/z_b) = -z_b/(z_a-z_b)
                        term = term.term_shift(("z", vidx[v], b), 1).scale(-1)
                    else:
                        # pole pair (b first, a second): 1/(1-z_b/z_a) = +z_a/(a<b factor)
                        term = term.term_shift(("z", vidx[v], a), 1)
        num = num + term

    # divide by the common denominator, factor by factor
    from .laurent import divexact_binomial

    res = num
    for v in verts:
        for a in range(1, total[v] + 1):
            for b in range(a + 1, total[v] + 1):
                if res.is_zero():
                    break
                nxt = divexact_binomial(res, ("z", vidx[v], a), one, ("z", vidx[v], b))
                assert nxt is not None, "shuffle denominator failed to clear"
                res = nxt
    res = res.on_vars(out_tokens)
    return GradedLaurent(deg, ctx.twist, ctx.ring, dict(res.terms))


def _remap(R, slot_map):
    """R with vertex-v slot a sent to slot slot_map[v][a-1]."""
    q = R.degree.quiver
    perm = {}
    for v in R.degree.counts:
        vi = q.vertex_index(v)
        for a in range(1, R.degree.count(v) + 1):
            perm[("z", vi, a)] = ("z", vi, slot_map[v][a - 1])
    return R.as_zpoly().permute_slots(perm)


def _pair_poly(ring, f, ta, tb):
    """The Laurent polynomial f(z_a / z_b) for a one-variable factor f."""
    if ta == tb:
        raise AssertionError("zeta factor on a single variable")
    vs = sorted((ta, tb), key=lambda t: (t[1], t[2]))
    ia, ib = vs.index(ta), vs.index(tb)
    terms = {}
    for e, c in f.items():
        key = [0, 0]
        key[ia] = e
        key[ib] = -e
        terms[tuple(key)] = c
    return ZPoly(ring, tuple(vs), terms)


# --- flat fast path ---
#
# When every coefficient in sight is a Laurent polynomial with rational
# coefficients (constant denominator), the whole product runs on a single
# sparse dict keyed by (z exponents..., parameter exponents...) with
# int/Fraction values, so every bulk operation is one kernel dict op
# instead of nested field arithmetic.  Word products never leave this
# regime; arbitrary field coefficients fall back to the generic path.


def _den_const(c):
    """The denominator as a positive int when constant, else None."""
    if len(c.den.terms) != 1:
        return None
    ((e, v),) = c.den.terms.items()
    if any(e):
        return None
    return v


def _flat_ok(ctx, R, Rp):
    for el in (R, Rp):
        for c in el.terms.values():
            if _den_const(c) is None:
                return False
    q = ctx.quiver
    verts = [v for v in q.vertices if R.degree.count(v) + Rp.degree.count(v)]
    for i in verts:
        for j in verts:
            for f in ctx.kernel.zeta(i, j).num_factors:
                for c in f.values():
                    if _den_const(c) is None:
                        return False
    return True


def _flat_coeff_rows(c):
    """(parameter exponent, scalar) rows of a constant-denominator coeff."""
    d = _den_const(c)
    if d == 1:
        return list(c.num.terms.items())
    return [(pe, Fraction(ic, d)) for pe, ic in c.num.terms.items()]


def _flat_element(R, dest, width):
    """Flat dict of R with slot position m sent to exponent index dest[m]."""
    out = {}
    for e, c in R.terms.items():
        base = [0] * width
        for m, x in enumerate(e):
            base[dest[m]] = x
        zpart = tuple(base)
        for pe, val in _flat_coeff_rows(c):
            out[zpart + pe] = val
    return out


def _flat_div_binom(flat, ia, ib):
    """Exact quotient of a flat dict by (z_ia - z_ib), or None.

    Grouping by the invariant key with slots ia, ib replaced by their sum
    reduces to synthetic division by (u - 1) in u = z_ia / z_ib."""
    assert ia < ib
    classes = {}
    for e, c in flat.items():
        ck = e[:ia] + (e[ia] + e[ib],) + e[ia + 1:ib] + (0,) + e[ib + 1:]
        classes.setdefault(ck, {})[e[ia]] = c
    out = {}
    for ck, poly in classes.items():
        s = ck[ia]
        lo = min(poly)
        hi = max(poly)
        acc = 0
        for k in range(hi, lo, -1):
            acc = acc + poly.get(k, 0)
            if acc:
                e = list(ck)
                e[ia] = k - 1
                e[ib] = s - k
                out[tuple(e)] = acc
        if acc + poly[lo]:
            return None
    return out


def _flat_collect(ring, flat, width):
    """Regroup a flat dict into GradedLaurent terms over the field."""
    groups = {}
    for e, v in flat.items():
        groups.setdefault(e[:width], {})[e[width:]] = v
    terms = {}
    for ze, pd in groups.items():
        den = 1
        for v in pd.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        num = ParamPoly.make(ring, {pe: int(v * den) for pe, v in pd.items()})
        terms[ze] = RatFunc(ring, num, ParamPoly.const(ring, den))
    return terms


def _shuffle_flat(ctx, R, Rp):
    q = ctx.quiver
    ring = ctx.ring
    deg = R.degree + Rp.degree
    out_tokens = deg.tokens()
    width = len(out_tokens)
    pos = {t: m for m, t in enumerate(out_tokens)}
    pad = (0,) * ring.nvars
    one = RatFunc.const(ring, 1)

    verts = [v for v in q.vertices if deg.count(v)]
    n1 = {v: R.degree.count(v) for v in verts}
    total = {v: deg.count(v) for v in verts}
    vidx = {v: q.vertex_index(v) for v in verts}

    # zeta numerator factors per ordered vertex pair, as flat rows
    rows = {}
    for i in verts:
        for j in verts:
            zf = ctx.kernel.zeta(i, j)
            assert all(f == {0: one, 1: -one} for f in zf.den_factors)
            rows[(i, j)] = [
                [(e, pe, val) for e, c in f.items() for pe, val in _flat_coeff_rows(c)]
                for f in zf.num_factors
            ]

    posR = {t: m for m, t in enumerate(R.degree.tokens())}
    posP = {t: m for m, t in enumerate(Rp.degree.tokens())}
    num = {}
    choices = [
        list(itertools.combinations(range(1, total[v] + 1), n1[v])) for v in verts
    ]
    for split in itertools.product(*choices):
        first = {}
        second = {}
        destR = [0] * len(posR)
        destP = [0] * len(posP)
        for v, sel in zip(verts, split):
            sel = set(sel)
            first[v] = sorted(sel)
            second[v] = sorted(set(range(1, total[v] + 1)) - sel)
            for a, slot in enumerate(first[v], start=1):
                destR[posR[("z", vidx[v], a)]] = pos[("z", vidx[v], slot)]
            for a, slot in enumerate(second[v], start=1):
                destP[posP[("z", vidx[v], a)]] = pos[("z", vidx[v], slot)]
        term = _kernel.dict_mul(
            _flat_element(R, destR, width), _flat_element(Rp, destP, width)
        )
        for i in verts:
            for j in verts:
                if not (first[i] and second[j]):
                    continue
                for frows in rows[(i, j)]:
                    for a in first[i]:
                        ia = pos[("z", vidx[i], a)]
                        for b in second[j]:
                            ib = pos[("z", vidx[j], b)]
                            fac = {}
                            for e, pe, val in frows:
                                key = [0] * width
                                key[ia] = e
                                key[ib] = -e
                                k = tuple(key) + pe
                                fac[k] = fac.get(k, 0) + val
                            term = _kernel.dict_mul(term, fac)
        # same-block pole bookkeeping: multiply matched pairs by (z_a - z_b),
        # fold each pole pair into one shift-and-sign pass
        delta = [0] * width
        sign = 1
        for v in verts:
            fs = set(first[v])
            for a in range(1, total[v] + 1):
                for b in range(a + 1, total[v] + 1):
                    sa, sb = a in fs, b in fs
                    if sa == sb:
                        ka = [0] * width
                        ka[pos[("z", vidx[v], a)]] = 1
                        kb = [0] * width
                        kb[pos[("z", vidx[v], b)]] = 1
                        term = _kernel.dict_mul(
                            term, {tuple(ka) + pad: 1, tuple(kb) + pad: -1}
                        )
                    elif sa:
                        delta[pos[("z", vidx[v], b)]] += 1
                        sign = -sign
                    else:
                        delta[pos[("z", vidx[v], a)]] += 1
        if sign != 1 or any(delta):
            full = tuple(delta) + pad
            term = {
                tuple(x + y for x, y in zip(e, full)): (c if sign == 1 else -c)
                for e, c in term.items()
            }
        num = _kernel.dict_add(num, term)

    for v in verts:
        for a in range(1, total[v] + 1):
            for b in range(a + 1, total[v] + 1):
                if not num:
                    break
                num = _flat_div_binom(
                    num, pos[("z", vidx[v], a)], pos[("z", vidx[v], b)]
                )
                assert num is not None, "shuffle denominator failed to clear"
    return GradedLaurent(deg, ctx.twist, ring, _flat_collect(ring, num, width))


class _DegenerateImage(Exception):
    """Two bound variables collide under the substitution; the image of
    the clearing denominator vanishes and the direct formula fails."""


def shuffle_image(ctx, R, Rp, bindings, xtok=("x", 1)):
    """The substituted product: each bound token goes to scale * x.

    Computes the image of shuffle_product(ctx, R, Rp) under the
    substitution directly from the split formula, so the full product is
    never materialized.  The substitution is a ring map, so the cleared
    sum maps term by term and the common denominator divides out exactly
    as long as its image is nonzero; a collision of bound scales raises
    _DegenerateImage instead.  Returns a ZPoly on the free tokens and x.
    """
    if not (ctx.compatible(R) and ctx.compatible(Rp)):
        raise ValueError("element does not match the shuffle context")
    q = ctx.quiver
    ring = ctx.ring
    one = RatFunc.const(ring, 1)
    deg = R.degree + Rp.degree
    out_tokens = deg.tokens()
    bind = {}
    for tok, s in bindings:
        if tok not in out_tokens:
            raise ValueError("binding on unknown slot %r" % (tok,))
        bind[tok] = s
    free = [t for t in out_tokens if t not in bind]
    vars_out = tuple(free) + (xtok,)
    pos = {t: m for m, t in enumerate(vars_out)}
    xi = pos[xtok]
    if R.is_zero() or Rp.is_zero():
        return ZPoly(ring, vars_out, {})

    verts = [v for v in q.vertices if deg.count(v)]
    n1 = {v: R.degree.count(v) for v in verts}
    total = {v: deg.count(v) for v in verts}
    vidx = {v: q.vertex_index(v) for v in verts}

    def phi_element(el, dest):
        # dest: out token per slot position of el
        terms = {}
        for e, c in el.terms.items():
            exps = [0] * len(vars_out)
            coeff = c
            for m, k in enumerate(e):
                t = dest[m]
                s = bind.get(t)
                if s is None:
                    exps[pos[t]] += k
                elif k:
                    exps[xi] += k
                    coeff = coeff * s ** k
            key = tuple(exps)
            cur = terms.get(key)
            cur = coeff if cur is None else cur + coeff
            if cur.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = cur
        return ZPoly(ring, vars_out, terms)

    def phi_binom(ta, tb):
        # the image of (z_a - z_b); None marks a vanishing image
        sa, sb = bind.get(ta), bind.get(tb)
        terms = {}
        ea = [0] * len(vars_out)
        ea[pos[ta] if sa is None else xi] = 1
        terms[tuple(ea)] = one if sa is None else sa
        eb = [0] * len(vars_out)
        eb[pos[tb] if sb is None else xi] = 1
        key = tuple(eb)
        sub = one if sb is None else sb
        prev = terms.get(key)
        cur = -sub if prev is None else prev - sub
        if cur.is_zero():
            terms.pop(key, None)
        else:
            terms[key] = cur
        if not terms:
            return None
        return ZPoly(ring, vars_out, terms)

    def phi_pair_factor(f, ta, tb):
        # the image of f(z_a / z_b)
        sa, sb = bind.get(ta), bind.get(tb)
        terms = {}
        for e, c in f.items():
            exps = [0] * len(vars_out)
            coeff = c
            if sa is None:
                exps[pos[ta]] += e
            else:
                exps[xi] += e
                if e:
                    coeff = coeff * sa ** e
            if sb is None:
                exps[pos[tb]] -= e
            else:
                exps[xi] -= e
                if e:
                    coeff = coeff * sb ** (-e)
            key = tuple(exps)
            cur = terms.get(key)
            cur = coeff if cur is None else cur + coeff
            if cur.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = cur
        return ZPoly(ring, vars_out, terms)

    posR = {t: m for m, t in enumerate(R.degree.tokens())}
    posP = {t: m for m, t in enumerate(Rp.degree.tokens())}
    num = ZPoly(ring, vars_out, {})
    choices = [
        list(itertools.combinations(range(1, total[v] + 1), n1[v])) for v in verts
    ]
    for split in itertools.product(*choices):
        first = {}
        second = {}
        destR = [None] * len(posR)
        destP = [None] * len(posP)
        for v, sel in zip(verts, split):
            sel = set(sel)
            first[v] = sorted(sel)
            second[v] = sorted(set(range(1, total[v] + 1)) - sel)
            for a, slot in enumerate(first[v], start=1):
                destR[posR[("z", vidx[v], a)]] = ("z", vidx[v], slot)
            for a, slot in enumerate(second[v], start=1):
                destP[posP[("z", vidx[v], a)]] = ("z", vidx[v], slot)
        term = phi_element(R, destR) * phi_element(Rp, destP)
        for i in verts:
            for j in verts:
                if not (first[i] and second[j]):
                    continue
                zf = ctx.kernel.zeta(i, j)
                assert all(f == {0: one, 1: -one} for f in zf.den_factors)
                for a in first[i]:
                    ta = ("z", vidx[i], a)
                    for b in second[j]:
                        tb = ("z", vidx[j], b)
                        for f in zf.num_factors:
                            term = term * phi_pair_factor(f, ta, tb)
        for v in verts:
            fs = set(first[v])
            for a in range(1, total[v] + 1):
                ta = ("z", vidx[v], a)
                for b in range(a + 1, total[v] + 1):
                    tb = ("z", vidx[v], b)
                    sa, sb = a in fs, b in fs
                    if sa == sb:
                        fac = phi_binom(ta, tb)
                        if fac is None:
                            raise _DegenerateImage(ta, tb)
                        term = term * fac
                    elif sa:
                        s = bind.get(tb)
                        if s is None:
                            term = term.term_shift(tb, 1).scale(-1)
                        else:
                            term = term.term_shift(xtok, 1).scale(-s)
                    else:
                        s = bind.get(ta)
                        if s is None:
                            term = term.term_shift(ta, 1)
                        else:
                            term = term.term_shift(xtok, 1).scale(s)
        num = num + term

    for v in verts:
        for a in range(1, total[v] + 1):
            ta = ("z", vidx[v], a)
            for b in range(a + 1, total[v] + 1):
                tb = ("z", vidx[v], b)
                if num.is_zero():
                    break
                sa, sb = bind.get(ta), bind.get(tb)
                if sa is not None and sb is not None:
                    s = sa - sb
                    if s.is_zero():
                        raise _DegenerateImage(ta, tb)
                    num = num.term_shift(xtok, -1).scale(one / s)
                elif sa is not None:
                    nxt = divexact_binomial(num, tb, sa, xtok)
                    assert nxt is not None, "substituted denominator failed to clear"
                    num = nxt.scale(-1)
                elif sb is not None:
                    nxt = divexact_binomial(num, ta, sb, xtok)
                    assert nxt is not None, "substituted denominator failed to clear"
                    num = nxt
                else:
                    nxt = divexact_binomial(num, ta, one, tb)
                    assert nxt is not None, "substituted denominator failed to clear"
                    num = nxt
    return num.on_vars(vars_out)


def wheel_check_word(ctx, letters, paranoid=False):
    """Wheel membership for a product of generators.

    Same report as wheel_check on the full product, but each case pushes
    its substitution through the last product step via shuffle_image, so
    only the length n-1 prefix is ever built symbolically.
    """
    letters = [(str(v), int(d)) for v, d in letters]
    if len(letters) < 2:
        return wheel_check(ctx, ctx.word_product(letters, "e"), paranoid)
    counts = {}
    for v, _d in letters:
        counts[v] = counts.get(v, 0) + 1
    deg = DegreeVector(ctx.quiver, counts)
    W = ctx.word_product(letters[:-1], "e")
    g = generator(ctx, letters[-1][0], letters[-1][1])
    try:
        if ctx.wheel_regime == "restricted":
            for meta, bindings, factors in restricted_case_instances(ctx, deg):
                img = shuffle_image(ctx, W, g, bindings)
                for (tok, c, xt), mult in factors:
                    if not divisible_by(img, (tok, c, xt), mult):
                        fail = dict(meta)
                        fail.update(
                            slot=[tok[1], tok[2]], scale=str(c), multiplicity=mult
                        )
                        return {"passes": False, "first_failure": fail}
            return {"passes": True, "first_failure": None}
        for meta, bindings in wheel_case_instances(ctx, deg, paranoid):
            if not shuffle_image(ctx, W, g, bindings).is_zero():
                return {"passes": False, "first_failure": meta}
        return {"passes": True, "first_failure": None}
    except _DegenerateImage:
        return wheel_check(ctx, ctx.word_product(letters, "e"), paranoid)


# --- wheel conditions ---


def quadratic_instance(ctx, i, j, a, b):
    """One coefficient identity of the denominator-cleared exchange
    relation between the generating series of vertices i and j.

    Returns (lhs, rhs): lists of (coeff, (vertex, exp), (vertex, exp))
    whose side-by-side word products agree in degree s_i + s_j.  For
    i != j these are the coefficients of z^-a w^-b in the kernel-cleared
    series identity; for i == j both sides carry the extra (z - w)
    clearing the pole, and the coefficient taken is that of z^(1-a) w^-b,
    so the sides lead with e_{i,a} * e_{i,b} and -e_{i,b+1} * e_{i,a-1}.
    """
    i = ctx.quiver.check_vertex(i)
    j = ctx.quiver.check_vertex(j)
    Lk = ctx.kernel.zeta(j, i).num()
    Rk = ctx.kernel.zeta(i, j).num()
    if i != j:
        lhs = [(c, (i, a - k), (j, b + k)) for k, c in sorted(Lk.items())]
        rhs = [(c, (j, b - k), (i, a + k)) for k, c in sorted(Rk.items())]
    else:
        lhs = [(c, (i, a - k), (i, b + k)) for k, c in sorted(Lk.items())]
        rhs = [(-c, (i, b + 1 - k), (i, a - 1 + k)) for k, c in sorted(Rk.items())]
    return lhs, rhs


def instance_element(ctx, terms, side="e"):
    """Fold one side of a relation instance into an element."""
    total = None
    for c, first, second in terms:
        piece = ctx.word_product([first, second], side).scale(c)
        total = piece if total is None else total + piece
    return total


def wheel_check(ctx, R, paranoid=False):
    """Membership test for the wheel ideal in the context's regime.

    Returns {"passes": bool, "first_failure": None or a description dict}.
    """
    if not ctx.compatible(R):
        raise ValueError("element does not match the shuffle context")
    if ctx.wheel_regime == "restricted":
        return _wheel_restricted(ctx, R, paranoid)
    return _wheel_three_variable(ctx, R, paranoid)


def wheel_case_instances(ctx, degree, paranoid=False):
    """Three-variable wheel substitutions for elements of one degree.

    Yields (meta, bindings) with bindings a list of (token, scale); the
    substituted element, all listed tokens sent to scale * x, must vanish.
    One canonical slot triple per edge and case suffices for symmetric
    elements; paranoid mode yields every triple.
    """
    q = ctx.quiver
    base = q.ring
    sp = ctx.kernel._coeff
    qv = sp(RatFunc.var(base, "q"))
    one = RatFunc.const(ctx.ring, 1)
    for src, tgt, label in q.edges:
        te = sp(RatFunc.var(base, q.edge_param(label)))
        for case, (vi, vj, scales) in enumerate(
            [
                (src, tgt, (qv, te, one)),
                (tgt, src, (qv, qv / te, one)),
            ],
            start=1,
        ):
            # slots: a, c on vertex vi (a != c), b on vertex vj
            ni, nj = degree.count(vi), degree.count(vj)
            if vi == vj:
                triples = [
                    (a, b, c)
                    for a, b, c in itertools.permutations(range(1, ni + 1), 3)
                ]
            else:
                triples = [
                    (a, b, c)
                    for a, c in itertools.permutations(range(1, ni + 1), 2)
                    for b in range(1, nj + 1)
                ]
            if not triples:
                continue
            if not paranoid:
                triples = triples[:1]
            for a, b, c in triples:
                meta = {
                    "regime": "three_variable",
                    "edge": label,
                    "case": case,
                    "slots": {"a": [vi, a], "b": [vj, b], "c": [vi, c]},
                }
                bindings = [
                    (("z", q.vertex_index(vi), a), scales[0]),
                    (("z", q.vertex_index(vj), b), scales[1]),
                    (("z", q.vertex_index(vi), c), scales[2]),
                ]
                yield meta, bindings


def apply_bindings(zp, bindings):
    """Substitute each listed token by scale * x."""
    for tok, scale in bindings:
        zp = zp.subst_var(tok, scale, ("x", 1))
    return zp


def restricted_case_instances(ctx, degree):
    """Restricted wheel data per vertex j and prefix length k.

    Yields (meta, bindings, factors): after sending z_{j,1..k} to the
    geometric progression x, qx, ..., q^(k-1) x, the element must be
    divisible by (tok - c * x)^mult for every ((tok, c, x), mult) listed.
    """
    q = ctx.quiver
    base = q.ring
    sp = ctx.kernel._coeff
    qv = sp(RatFunc.var(base, "q"))
    xtok = ("x", 1)
    for j in q.vertices:
        nj = degree.count(j)
        for k in range(2, nj + 1):
            bindings = [
                (("z", q.vertex_index(j), a), qv ** (a - 1))
                for a in range(1, k + 1)
            ]
            # required linear factors on every remaining variable
            groups = {}
            for i in q.vertices:
                for a in range(1, degree.count(i) + 1):
                    if i == j and a <= k:
                        continue
                    tok = ("z", q.vertex_index(i), a)
                    for s in range(1, k):
                        for e in q.edges_between(i, j):
                            te = sp(RatFunc.var(base, q.edge_param(e[2])))
                            c = qv ** s / te
                            gk = (tok, str(c))
                            groups.setdefault(gk, [c, 0])[1] += 1
                        for e in q.edges_between(j, i):
                            te = sp(RatFunc.var(base, q.edge_param(e[2])))
                            c = qv ** (s - 1) * te
                            gk = (tok, str(c))
                            groups.setdefault(gk, [c, 0])[1] += 1
            if not groups:
                continue
            factors = [
                ((tok, c, xtok), mult)
                for (tok, _cs), (c, mult) in sorted(groups.items())
            ]
            meta = {"regime": "restricted", "vertex": j, "k": k}
            yield meta, bindings, factors


def _wheel_three_variable(ctx, R, paranoid):
    zp = R.as_zpoly()
    for meta, bindings in wheel_case_instances(ctx, R.degree, paranoid):
        if not apply_bindings(zp, bindings).is_zero():
            return {"passes": False, "first_failure": meta}
    return {"passes": True, "first_failure": None}


def _wheel_restricted(ctx, R, paranoid):
    zp = R.as_zpoly()
    for meta, bindings, factors in restricted_case_instances(ctx, R.degree):
        img = apply_bindings(zp, bindings)
        for (tok, c, xtok), mult in factors:
            if not divisible_by(img, (tok, c, xtok), mult):
                fail = dict(meta)
                fail.update(
                    slot=[tok[1], tok[2]], scale=str(c), multiplicity=mult
                )
                return {"passes": False, "first_failure": fail}
    return {"passes": True, "first_failure": None}


def is_spherical_witness(ctx, R, expression):
    """True iff the F-linear combination of words reproduces R.

    expression: iterable of (coeff, letters) with letters a sequence of
    (vertex, exponent) pairs; each word is evaluated by iterated e-side
    shuffle products.
    """
    total = None
    for coeff, letters in expression:
        if isinstance(coeff, int):
            coeff = RatFunc.const(ctx.ring, coeff)
        term = ctx.word_product(list(letters), "e").scale(coeff)
        total = term if total is None else total + term
    if total is None:
        return R.is_zero()
    if total.degree != R.degree:
        return False
    return total == R
