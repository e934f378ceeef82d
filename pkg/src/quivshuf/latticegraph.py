"""Lattice graph on integer tuples.

For a fixed even integer m, the graph G has as vertices all
non-decreasing n-tuples of integers and an edge d -> d' whenever

    d'_a = d_{sigma(a)} - sum_{s<a, sigma(s)>sigma(a)} c_{s,a}
                        + sum_{a<t, sigma(a)>sigma(t)} c_{a,t}

for some permutation sigma != Id and integers c_{s,t} >= -m indexed by
the inversion pairs of sigma.  Equivalently d' = d o sigma plus
sum c_{s,t} (e_s - e_t).  The variant Gprime relaxes the vertex
condition to d_a <= d_{a+1} + m and tightens the bounds to c >= 0.
The two graphs are isomorphic under the coordinate shift
d_a -> d_a + m(n - 2a + 1)/2, and all connected components of either
are finite.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceededError

VARIANTS = ("G", "Gprime")

DEFAULT_COMPONENT_CAP = 20000


def _check_variant(variant):
    if variant not in VARIANTS:
        raise ValueError("unknown variant %r" % (variant,))


def is_valid_vertex(values, m, variant):
    """Ordering condition: non-decreasing for G, d_a <= d_{a+1} + m for
    Gprime."""
    _check_variant(variant)
    gap = 0 if variant == "G" else m
    return all(values[a] <= values[a + 1] + gap for a in range(len(values) - 1))


def check_vertex(values, m, variant):
    values = tuple(int(x) for x in values)
    if not values:
        raise ValueError("vertex tuple must be non-empty")
    if m < 0 or m % 2 != 0:
        raise ValueError("m must be a non-negative even integer")
    if not is_valid_vertex(values, m, variant):
        raise ValueError(
            "tuple %r violates the %s ordering condition" % (values, variant)
        )
    return values


@dataclass(frozen=True)
class EdgeWitness:
    """One (sigma, c) pair realizing an edge.

    sigma maps target position a to source position sigma(a); pairs are
    the inversion pairs (s, t) of sigma and c the matching coefficients.
    """

    sigma: tuple
    pairs: tuple
    c: tuple

    def to_json_dict(self):
        return {
            "sigma": list(self.sigma),
            "c": [[s, t, x] for (s, t), x in zip(self.pairs, self.c)],
        }


def inversion_pairs(sigma):
    n = len(sigma)
    return tuple(
        (s, t)
        for s in range(n)
        for t in range(s + 1, n)
        if sigma[s] > sigma[t]
    )


def apply_edge(values, witness):
    """Target tuple produced by eqn edge 2 for the given witness."""
    out = [values[p] for p in witness.sigma]
    for (s, t), x in zip(witness.pairs, witness.c):
        out[s] += x
        out[t] -= x
    return tuple(out)


def _cone_solve(resid, pairs, lower):
    """First integers c_p >= lower with sum c_p (e_s - e_t) == resid,
    in lexicographic order over the pairs, or None."""
    r = list(resid)
    for s, t in pairs:
        r[s] -= lower
        r[t] += lower
    # nonneg combinations of e_s - e_t have every prefix sum >= 0
    run = 0
    for x in r[:-1]:
        run += x
        if run < 0:
            return None
    if run + r[-1] != 0:
        return None
    xs = _cached_combo(tuple(r), pairs)
    if xs is None:
        return None
    return tuple(x + lower for x in xs)


@lru_cache(maxsize=1 << 18)
def _cached_combo(resid, pairs):
    return _first_nonneg_combo(list(resid), pairs, 0)


def _first_nonneg_combo(resid, pairs, idx):
    # V = sum_a a*resid_a; each application of e_s - e_t (s < t) raises V
    # by s - t < 0 relative to the remaining residual, so V > 0 is dead
    # and V == 0 forces the residual to be zero already.
    V = sum(p * x for p, x in enumerate(resid))
    if V > 0:
        return None
    if V == 0:
        if all(x == 0 for x in resid):
            return (0,) * (len(pairs) - idx)
        return None
    if idx == len(pairs):
        return None
    s, t = pairs[idx]
    cap = (-V) // (t - s)
    nr = list(resid)
    for x in range(cap + 1):
        rest = _first_nonneg_combo(nr, pairs, idx + 1)
        if rest is not None:
            return (x,) + rest
        nr[s] -= 1
        nr[t] += 1
    return None


def _tuples_with_sum(n, lo, hi, total, floor, gap):
    """Tuples (v_1,...,v_n), each in [lo, hi], v_1 >= floor,
    v_{a+1} >= v_a - gap, with the given sum."""
    if n == 0:
        if total == 0:
            yield ()
        return
    start = max(lo, floor)
    for x in range(start, hi + 1):
        rest = total - x
        r = n - 1
        # remaining coords sit above x - gap, x - 2 gap, ...
        least = r * x - gap * r * (r + 1) // 2
        if rest < max(least, r * lo) or rest > r * hi:
            continue
        for tail in _tuples_with_sum(r, lo, hi, rest, x - gap, gap):
            yield (x,) + tail


def neighbors(v, m, variant="G"):
    """All one-edge targets of v, each with one witnessing (sigma, c).

    Candidates are enumerated inside the box [min(v) - B, max(v) + B].
    Every target fits in B = m(n-1): position 1 carries at most n-1
    inversion coefficients, each bounded below by -m, so the smallest
    coordinate drops by at most m(n-1), and symmetrically for the
    largest; the Gprime ordering gap adds nothing beyond the same slack.
    If a returned target nevertheless touches the boundary, the box is
    enlarged and the search re-run until no target does, asserting that
    the target set only grows.
    """
    v = check_vertex(v, m, variant)
    n = len(v)
    if n == 1:
        return {}
    lower = -m if variant == "G" else 0
    gap = 0 if variant == "G" else m
    total = sum(v)
    sigmas = [
        (s, inversion_pairs(s))
        for s in itertools.permutations(range(n))
        if s != tuple(range(n))
    ]
    B = max(m * (n - 1) + 1, 1)
    prev = None
    while True:
        lo, hi = min(v) - B, max(v) + B
        found = {}
        for cand in _tuples_with_sum(n, lo, hi, total, lo, gap):
            for sigma, pairs in sigmas:
                resid = tuple(cand[a] - v[sigma[a]] for a in range(n))
                c = _cone_solve(resid, pairs, lower)
                if c is not None:
                    found[cand] = EdgeWitness(sigma, pairs, c)
                    break
        if prev is not None:
            assert set(prev) <= set(found), "neighbor search lost targets"
        touches = any(min(t) == lo or max(t) == hi for t in found)
        if not touches:
            return found
        prev = found
        B *= 2


@dataclass(frozen=True)
class Component:
    """A finite connected component, as reached by BFS from seed."""

    variant: str
    m: int
    seed: tuple
    vertices: tuple
    edges: tuple

    @property
    def n(self):
        return len(self.seed)

    def to_json_dict(self):
        return {
            "n": self.n,
            "m": self.m,
            "variant": self.variant,
            "seed": list(self.seed),
            "vertices": [list(t) for t in self.vertices],
            "edge_count": len(self.edges),
        }


def component(v, m, variant="G", cap=DEFAULT_COMPONENT_CAP):
    """BFS closure of v under the edge relation.

    Raises CapExceededError as soon as more than cap vertices are seen;
    never silently truncates.
    """
    seed = check_vertex(v, m, variant)
    seen = {seed}
    frontier = [seed]
    edges = set()
    while frontier:
        frontier.sort()
        nxt = []
        for u in frontier:
            for t in sorted(neighbors(u, m, variant)):
                edges.add((min(u, t), max(u, t)))
                if t not in seen:
                    seen.add(t)
                    if len(seen) > cap:
                        raise CapExceededError(
                            "component of %r exceeds %d vertices" % (seed, cap)
                        )
                    nxt.append(t)
        frontier = nxt
    return Component(
        variant=variant,
        m=m,
        seed=seed,
        vertices=tuple(sorted(seen)),
        edges=tuple(sorted(edges)),
    )


def shift_iso(v, m, direction):
    """The vertex correspondence d_a -> d_a + m(n - 2a + 1)/2 between G
    and Gprime (GtoGprime adds the shift, GprimeToG subtracts it)."""
    if direction == "GtoGprime":
        src, tgt, sign = "G", "Gprime", 1
    elif direction == "GprimeToG":
        src, tgt, sign = "Gprime", "G", -1
    else:
        raise ValueError("direction must be GtoGprime or GprimeToG")
    v = check_vertex(v, m, src)
    n = len(v)
    half = m // 2
    out = tuple(v[a] + sign * half * (n - 2 * a - 1) for a in range(n))
    assert is_valid_vertex(out, m, tgt), "shift image left the target graph"
    return out
