"""The bilinear pairing via exact constant-term extraction.

pair(R, w) integrates z_1^{-k_1}...z_n^{-k_n} R(z) / prod_{a<b} zeta(z_a/z_b)
over nested contours |z_1| << ... << |z_n|; pair_symmetric uses the
reversed nesting.  In both cases every 1/zeta factor expands as a power
series in the ratio small/large, so the integral is a constant term that
a finite computation extracts exactly.

The engine tracks, for each monomial, the moment sum(rank_a * exp_a)
where rank orders the contours by magnitude.  Ratio powers only lower
the moment, and the constant term needs moment zero, so monomials with
negative moment are pruned; this makes the truncation exact rather than
heuristic.  A slack re-run (keeping provably dead monomials five steps
longer) is available as a self-check.

The support predicate decides the necessary condition for a nonzero
pairing of e_v against f_w: some color-matching permutation plus bounded
integers on its inversion pairs must carry one exponent sequence to the
other.
"""

from __future__ import annotations

import itertools

from .field import RatFunc
from .laurent import DegreeVector
from .quiver import arrow_count, xpoly_mul, xseries_inv


def _word_positions(ctx, w):
    """Canonical slot for each word position: lowest unused slot of the
    letter's vertex.  Returns (degree, [token index into degree.slots()])."""
    counts = {}
    for l in w:
        counts[l.vertex] = counts.get(l.vertex, 0) + 1
    degree = DegreeVector(ctx.quiver, counts)
    index = {sl: i for i, sl in enumerate(degree.slots())}
    used = {}
    out = []
    for l in w:
        a = used.get(l.vertex, 0) + 1
        used[l.vertex] = a
        out.append(index[(l.vertex, a)])
    return degree, out


def _as_position_terms(R, posmap):
    """Re-key R's slot-exponent tuples by word position."""
    out = {}
    for e, c in R.terms.items():
        out[tuple(e[p] for p in posmap)] = c
    return out


def _constant_term(ring, n, terms, ranks, jobs, slack=0):
    """Coefficient of the zero exponent vector after multiplying the term
    dict by every job's series factor.

    jobs: list of (small, large, zeta) position triples; the factor is
    1/zeta evaluated at (var_small / var_large).  ranks must satisfy
    ranks[small] < ranks[large] for every job.
    """
    zero_c = RatFunc.const(ring, 0)
    if not terms:
        return zero_c

    def moment(e):
        return sum(r * x for r, x in zip(ranks, e))

    # the total z-degree is preserved by ratio factors, so only the
    # zero-sum part of the input can reach the constant term
    cur = {}
    for e, c in terms.items():
        if sum(e) == 0 and moment(e) >= -slack:
            cur[e] = c
    remaining = [0] * n
    for s, l, _z in jobs:
        remaining[s] += 1
        remaining[l] += 1
    for p in range(n):
        if remaining[p] == 0:
            cur = {e: c for e, c in cur.items() if e[p] == 0}

    for s, l, zf in jobs:
        if not cur:
            return zero_c
        wgt = ranks[l] - ranks[s]
        assert wgt > 0
        cap = max(moment(e) for e in cur) + slack
        kmax = cap // wgt
        if kmax < 0:
            return zero_c
        num = {0: RatFunc.const(ring, 1)}
        for f in zf.num_factors:
            num = xpoly_mul(num, f)
        series = xseries_inv(num, kmax)
        for f in zf.den_factors:
            series = xpoly_mul(series, f)
        assert all(k >= 0 for k in series), "ratio series has negative order"
        nxt = {}
        for e, c in cur.items():
            ecap = (moment(e) + slack) // wgt
            for k, fc in series.items():
                if k > ecap:
                    continue
                ne = list(e)
                ne[s] += k
                ne[l] -= k
                ne = tuple(ne)
                acc = nxt.get(ne)
                term = c * fc
                acc = term if acc is None else acc + term
                if acc.is_zero():
                    nxt.pop(ne, None)
                else:
                    nxt[ne] = acc
        cur = nxt
        remaining[s] -= 1
        remaining[l] -= 1
        for p in (s, l):
            if remaining[p] == 0:
                cur = {e: c for e, c in cur.items() if e[p] == 0}
    return cur.get((0,) * n, zero_c)


def pair(ctx, R, w, paranoid=False):
    """<R, f_w> with w = [j_1^(k_1) ... j_n^(k_n)] indexing
    f_{j_1,-k_1} * ... * f_{j_n,-k_n}; 0 on degree mismatch."""
    degree, posmap = _word_positions(ctx, w)
    if degree != R.degree or R.is_zero():
        return RatFunc.const(ctx.ring, 0)
    n = len(w)
    terms = {}
    for e, c in _as_position_terms(R, posmap).items():
        key = tuple(x - l.exponent for x, l in zip(e, w))
        terms[key] = terms.get(key, RatFunc.const(ctx.ring, 0)) + c
    ranks = list(range(n))
    jobs = [
        (a, b, ctx.kernel.zeta(w[a].vertex, w[b].vertex))
        for a in range(n)
        for b in range(a + 1, n)
    ]
    val = _constant_term(ctx.ring, n, terms, ranks, jobs)
    if paranoid:
        check = _constant_term(ctx.ring, n, terms, ranks, jobs, slack=5)
        assert val == check, "constant term unstable under slack"
    return val


def pair_symmetric(ctx, v, Rp, paranoid=False):
    """<e_v, Rp> computed on descending contours |y_1| >> ... >> |y_n|."""
    degree, posmap = _word_positions(ctx, v)
    if degree != Rp.degree or Rp.is_zero():
        return RatFunc.const(ctx.ring, 0)
    n = len(v)
    terms = {}
    for e, c in _as_position_terms(Rp, posmap).items():
        key = tuple(x + l.exponent for x, l in zip(e, v))
        terms[key] = terms.get(key, RatFunc.const(ctx.ring, 0)) + c
    ranks = [n - 1 - a for a in range(n)]
    jobs = [
        (b, a, ctx.kernel.zeta(v[b].vertex, v[a].vertex))
        for a in range(n)
        for b in range(a + 1, n)
    ]
    jobs.sort(key=lambda j: (ranks[j[0]], ranks[j[1]]))
    val = _constant_term(ctx.ring, n, terms, ranks, jobs)
    if paranoid:
        check = _constant_term(ctx.ring, n, terms, ranks, jobs, slack=5)
        assert val == check, "constant term unstable under slack"
    return val


# --- support predicate ---


def color_matchings(cv, cw):
    """All permutations sigma with cv[a] == cw[sigma[a]]."""
    if sorted(cv) != sorted(cw):
        return
    pos_by_color = {}
    for p, c in enumerate(cw):
        pos_by_color.setdefault(c, []).append(p)
    slots_by_color = {}
    for a, c in enumerate(cv):
        slots_by_color.setdefault(c, []).append(a)
    colors = sorted(pos_by_color)
    for combo in itertools.product(
        *[itertools.permutations(pos_by_color[c]) for c in colors]
    ):
        sigma = [None] * len(cv)
        for c, perm in zip(colors, combo):
            for a, p in zip(slots_by_color[c], perm):
                sigma[a] = p
        yield tuple(sigma)


def _nonneg_combo(resid, pairs, idx=0):
    """Can resid be written as a nonnegative integer combination of
    e_a - e_b over the listed position pairs (a < b)?"""
    V = sum(p * x for p, x in enumerate(resid))
    if V > 0:
        return False
    if V == 0:
        return all(x == 0 for x in resid)
    if idx == len(pairs):
        return False
    a, b = pairs[idx]
    cap = (-V) // (b - a)
    nr = list(resid)
    for c in range(cap + 1):
        if _nonneg_combo(nr, pairs, idx + 1):
            return True
        nr[a] -= 1
        nr[b] += 1
    return False


def cone_feasible(n, pairs, bounds, target):
    """Exists integers c_p >= bounds[p] with sum c_p (e_a - e_b) == target?"""
    r = list(target)
    for (a, b), L in zip(pairs, bounds):
        r[a] -= L
        r[b] += L
    if sum(r) != 0:
        return False
    return _nonneg_combo(r, list(pairs))


def support_edge(quiver, v, w, twist):
    """Necessary condition for <e_v, f_w> != 0.

    True iff some sigma with i_a = j_{sigma(a)} and integers c_{a,b} on its
    inversion pairs (bounded below by -#_{j_a j_b} for the plain twist, by
    0 for the prime twist) satisfy
    k = d o sigma^{-1} + sum c_{a,b} (e_a - e_b).
    """
    n = len(v)
    if n != len(w):
        return False
    cv = [l.vertex for l in v]
    cw = [l.vertex for l in w]
    dv = [l.exponent for l in v]
    kw = [l.exponent for l in w]
    if sum(dv) != sum(kw):
        return False
    for sigma in color_matchings(cv, cw):
        inv = [0] * n
        for a, p in enumerate(sigma):
            inv[p] = a
        target = [kw[a] - dv[inv[a]] for a in range(n)]
        pairs = []
        bounds = []
        for a in range(n):
            for b in range(a + 1, n):
                if inv[a] > inv[b]:
                    pairs.append((a, b))
                    if twist == "plain":
                        bounds.append(-arrow_count(quiver, cw[a], cw[b], directed=False))
                    else:
                        bounds.append(0)
        if cone_feasible(n, pairs, bounds, target):
            return True
    return False
