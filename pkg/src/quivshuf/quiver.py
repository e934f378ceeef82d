"""Quivers and their zeta kernels.

A quiver is a finite oriented graph with ordered vertices; loops and
parallel edges are allowed.  Each edge carries a label, and the label
binds one field parameter t<label>.  The zeta kernel attached to a quiver
produces, for every ordered vertex pair, the rational function of one
formal variable x that twists the shuffle product; two twists exist
("plain" and "prime") differing in how the edge factors are written.
"""

from __future__ import annotations

import hashlib
import json
import re

from .errors import ParseError
from .field import ParamRing, RatFunc, Specialization

_LABEL_RE = re.compile(r"^[A-Za-z0-9]+$")


class Quiver:
    """Ordered vertex list plus labelled edges; immutable."""

    __slots__ = ("vertices", "edges", "_vindex", "ring")

    def __init__(self, vertices, edges):
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex identifiers")
        norm = []
        labels = set()
        for src, tgt, label in edges:
            src, tgt, label = str(src), str(tgt), str(label)
            if src not in vertices or tgt not in vertices:
                raise ValueError("edge %s->%s uses undeclared vertex" % (src, tgt))
            if not _LABEL_RE.match(label):
                raise ValueError("edge label %r must be alphanumeric" % label)
            if label in labels:
                raise ValueError("duplicate edge label %r" % label)
            labels.add(label)
            norm.append((src, tgt, label))
        self.vertices = vertices
        self.edges = tuple(sorted(norm, key=lambda e: (e[0], e[1], e[2])))
        self._vindex = {v: i for i, v in enumerate(vertices)}
        self.ring = ParamRing.canonical(["q"] + ["t" + e[2] for e in self.edges])

    def vertex_index(self, v):
        v = str(v)
        if v not in self._vindex:
            raise ValueError("unknown vertex %r" % v)
        return self._vindex[v]

    def check_vertex(self, v):
        self.vertex_index(v)
        return str(v)

    def edge_param(self, label):
        return "t" + label

    def edges_between(self, i, j):
        """Edges with source i and target j, in canonical order."""
        i, j = str(i), str(j)
        return tuple(e for e in self.edges if e[0] == i and e[1] == j)

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return "Quiver(vertices=%r, edges=%r)" % (list(self.vertices), list(self.edges))

    def to_json_dict(self):
        return {
            "vertices": list(self.vertices),
            "edges": [{"src": s, "tgt": t, "label": l} for s, t, l in self.edges],
        }

    @classmethod
    def from_json_dict(cls, d):
        try:
            vertices = d["vertices"]
            edges = [(e["src"], e["tgt"], e["label"]) for e in d["edges"]]
        except (KeyError, TypeError) as exc:
            raise ParseError("malformed quiver JSON: %s" % exc)
        try:
            return cls(vertices, edges)
        except ValueError as exc:
            raise ParseError(str(exc))

    def canonical_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    def digest(self):
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


def arrow_count(q, i, j, directed=True):
    """Number of edges i -> j, or total between i and j when not directed
    (a loop at i counts twice in the undirected total)."""
    i = q.check_vertex(i)
    j = q.check_vertex(j)
    n = sum(1 for e in q.edges if e[0] == i and e[1] == j)
    if directed:
        return n
    m = sum(1 for e in q.edges if e[0] == j and e[1] == i)
    return n + m


# One-variable Laurent polynomials over F are dicts {int exponent: RatFunc}.


def xpoly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            c = out.get(e)
            c = ca * cb if c is None else c + ca * cb
            if c.is_zero():
                out.pop(e, None)
            else:
                out[e] = c
    return out


def xpoly_invert_var(a):
    """Substitute x -> 1/x."""
    return {-e: c for e, c in a.items()}


def xseries_inv(p, hi):
    """Series of 1/p at x=0, up to and including x^hi.

    p must be a nonzero one-variable Laurent polynomial; the series starts
    at x^(-m) where m is p's lowest exponent.
    """
    assert p, "cannot invert the zero polynomial"
    m = min(p)
    c0 = p[m]
    # p = c0 x^m (1 + u) with u of strictly positive order
    u = {}
    for e, c in p.items():
        if e != m:
            u[e - m] = c / c0
    inv0 = 1 / c0
    out = {-m: inv0}
    if not u:
        return out
    # geometric series in -u, truncated: terms beyond x^hi never contribute
    span = hi + m
    power = {0: RatFunc.const(c0.ring, 1)}
    k = 0
    while True:
        k += 1
        if k * min(u) > span:
            break
        power = xpoly_mul(power, u)
        power = {e: c for e, c in power.items() if e - m <= hi}
        if not power:
            break
        sign = -1 if k % 2 else 1
        for e, c in power.items():
            key = e - m
            cur = out.get(key)
            term = sign * c * inv0
            cur = term if cur is None else cur + term
            if cur.is_zero():
                out.pop(key, None)
            else:
                out[key] = cur
    return out


class ZetaFunc:
    """A zeta value: factored numerator and denominator, one variable x.

    Both sides are tuples of one-variable Laurent polynomials over F; the
    expanded product is available but the factors are what the shuffle
    product and the series expansions consume.
    """

    __slots__ = ("ring", "num_factors", "den_factors")

    def __init__(self, ring, num_factors, den_factors):
        self.ring = ring
        self.num_factors = tuple(num_factors)
        self.den_factors = tuple(den_factors)

    def num(self):
        out = {0: RatFunc.const(self.ring, 1)}
        for f in self.num_factors:
            out = xpoly_mul(out, f)
        return out

    def den(self):
        out = {0: RatFunc.const(self.ring, 1)}
        for f in self.den_factors:
            out = xpoly_mul(out, f)
        return out

    def invert_var(self):
        return ZetaFunc(
            self.ring,
            [xpoly_invert_var(f) for f in self.num_factors],
            [xpoly_invert_var(f) for f in self.den_factors],
        )

    def value_at(self, x):
        """Exact value at x = a RatFunc (must avoid all poles)."""
        v = RatFunc.const(self.ring, 1)
        for f in self.num_factors:
            v = v * _eval_xpoly(f, x)
        for f in self.den_factors:
            v = v / _eval_xpoly(f, x)
        return v


def _eval_xpoly(f, x):
    ring = x.ring
    v = RatFunc.const(ring, 0)
    for e, c in f.items():
        v = v + c * x ** e
    return v


TWISTS = ("plain", "prime")


class ZetaKernel:
    """Factory for the zeta functions of one quiver under one twist.

    With a specialization attached, every coefficient is pushed through it,
    so the factors live over the specialization's target ring.
    """

    __slots__ = ("quiver", "twist", "specialization", "ring", "_cache")

    def __init__(self, quiver, twist, specialization=None):
        if twist not in TWISTS:
            raise ValueError("twist must be one of %s" % (TWISTS,))
        self.quiver = quiver
        self.twist = twist
        self.specialization = specialization
        if specialization is not None:
            assert specialization.source == quiver.ring
            self.ring = specialization.target
        else:
            self.ring = quiver.ring
        self._cache = {}

    def _coeff(self, x):
        if self.specialization is not None:
            return self.specialization.apply(x)
        return x

    def zeta(self, i, j):
        i = self.quiver.check_vertex(i)
        j = self.quiver.check_vertex(j)
        key = (i, j)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        base = self.quiver.ring
        one = RatFunc.const(self.ring, 1)
        sp = self._coeff
        num = []
        den = []
        if i == j:
            qv = sp(RatFunc.var(base, "q"))
            num.append({0: one, 1: -(1 / qv)})
            den.append({0: one, 1: -one})
        if self.twist == "plain":
            for e in self.quiver.edges_between(i, j):
                te = sp(RatFunc.var(base, self.quiver.edge_param(e[2])))
                num.append({0: one, 1: -te})
            for e in self.quiver.edges_between(j, i):
                te = sp(RatFunc.var(base, self.quiver.edge_param(e[2])))
                qv = sp(RatFunc.var(base, "q"))
                num.append({0: one, 1: -(qv / te)})
        else:
            for e in self.quiver.edges_between(i, j):
                te = sp(RatFunc.var(base, self.quiver.edge_param(e[2])))
                num.append({0: 1 / te, 1: -one})
            for e in self.quiver.edges_between(j, i):
                te = sp(RatFunc.var(base, self.quiver.edge_param(e[2])))
                qv = sp(RatFunc.var(base, "q"))
                num.append({0: one, -1: -(te / qv)})
        z = ZetaFunc(self.ring, num, den)
        self._cache[key] = z
        return z


def zeta(k, i, j):
    return k.zeta(i, j)


def zeta_ratio_series(k, i, j, order):
    """Expansion of zeta_ij(1/x) / zeta_ji(x) around x=0, keeping exponents
    up to and including the given order.  Exponents below 0 appear for the
    plain twist, never below -(undirected arrow count between i and j)."""
    assert order >= 0
    a = k.zeta(i, j).invert_var()
    b = k.zeta(j, i)
    num = {0: RatFunc.const(k.ring, 1)}
    for f in a.num_factors:
        num = xpoly_mul(num, f)
    for f in b.den_factors:
        num = xpoly_mul(num, f)
    out = num
    for f in a.den_factors:
        out = xpoly_mul(out, xseries_inv(f, order + _spread(out)))
    for f in b.num_factors:
        out = xpoly_mul(out, xseries_inv(f, order + _spread(out)))
    return {e: c for e, c in out.items() if e <= order and not c.is_zero()}


def _spread(p):
    """Inversion order headroom: the factors being inverted start at x^0 or
    lower, so any numerator term below x^0 needs extra series terms."""
    if not p:
        return 0
    return max(0, -min(p))
