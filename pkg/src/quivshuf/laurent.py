"""Symmetric Laurent polynomials in grouped variables z_{i,a}.

Each vertex i of the quiver owns a block of n_i interchangeable variables
(slots).  GradedLaurent values are symmetric within every block; ZPoly is
the raw, possibly non-symmetric workhorse underneath, which also hosts
fresh substitution variables x_k.  All coefficients are exact field
elements (RatFunc).

Variable tokens: ("z", vertex_index, slot) with slot 1-based, and
("x", k) for fresh variables; the token order fixes printing and the
monomial order (total degree, then lex on exponents).
"""

from __future__ import annotations

import itertools

from .errors import ParseError
from .field import RatFunc, parse_ratfunc


def _tok_key(tok):
    if tok[0] == "z":
        return (0, tok[1], tok[2])
    return (1, tok[1])


class ZPoly:
    """Sparse Laurent polynomial in z/x tokens over the field."""

    __slots__ = ("ring", "vars", "terms")

    def __init__(self, ring, zvars, terms):
        self.ring = ring
        self.vars = tuple(zvars)
        self.terms = terms

    @classmethod
    def make(cls, ring, zvars, terms):
        zvars = tuple(zvars)
        clean = {}
        for e, c in terms.items():
            if not c.is_zero():
                assert len(e) == len(zvars)
                clean[tuple(e)] = c
        return cls(ring, zvars, clean)

    @classmethod
    def zero(cls, ring):
        return cls(ring, (), {})

    @classmethod
    def const(cls, ring, c):
        if isinstance(c, int):
            c = RatFunc.const(ring, c)
        if c.is_zero():
            return cls(ring, (), {})
        return cls(ring, (), {(): c})

    @classmethod
    def var(cls, ring, tok, exp=1):
        return cls(ring, (tok,), {(exp,): RatFunc.const(ring, 1)})

    def is_zero(self):
        return not self.terms

    def on_vars(self, zvars):
        """Reindex onto a superset of variables (missing exponents 0)."""
        zvars = tuple(zvars)
        if zvars == self.vars:
            return self
        pos = {t: i for i, t in enumerate(zvars)}
        for t in self.vars:
            assert t in pos, "variable %r lost in reindexing" % (t,)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(zvars)
            for t, x in zip(self.vars, e):
                ne[pos[t]] = x
            out[tuple(ne)] = c
        return ZPoly(self.ring, zvars, out)

    def _aligned(self, other):
        if self.vars == other.vars:
            return self, other
        union = sorted(set(self.vars) | set(other.vars), key=_tok_key)
        return self.on_vars(union), other.on_vars(union)

    def __add__(self, other):
        a, b = self._aligned(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            cur = out.get(e)
            cur = c if cur is None else cur + c
            if cur.is_zero():
                out.pop(e, None)
            else:
                out[e] = cur
        return ZPoly(a.ring, a.vars, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ZPoly(self.ring, self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (RatFunc, int)):
            return self.scale(other)
        a, b = self._aligned(other)
        if len(b.terms) < len(a.terms):
            a, b = b, a
        out = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                cur = out.get(e)
                cur = c if cur is None else cur + c
                if cur.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = cur
        return ZPoly(a.ring, a.vars, out)

    __rmul__ = __mul__

    def scale(self, c):
        if isinstance(c, int):
            c = RatFunc.const(self.ring, c)
        if c.is_zero():
            return ZPoly(self.ring, self.vars, {})
        return ZPoly(self.ring, self.vars, {e: c * v for e, v in self.terms.items()})

    def term_shift(self, tok, k):
        """Multiply by tok^k."""
        if tok not in self.vars:
            p = self.on_vars(sorted(set(self.vars) | {tok}, key=_tok_key))
        else:
            p = self
        i = p.vars.index(tok)
        out = {}
        for e, c in p.terms.items():
            ne = list(e)
            ne[i] += k
            out[tuple(ne)] = c
        return ZPoly(p.ring, p.vars, out)

    def __eq__(self, other):
        if not isinstance(other, ZPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        raise TypeError("ZPoly is not hashable")

    def min_exp(self, tok):
        if tok not in self.vars:
            return 0
        i = self.vars.index(tok)
        return min((e[i] for e in self.terms), default=0)

    def max_exp(self, tok):
        if tok not in self.vars:
            return 0
        i = self.vars.index(tok)
        return max((e[i] for e in self.terms), default=0)

    def permute_slots(self, perm):
        """Apply a map token -> token (bijection on self.vars)."""
        newvars = tuple(perm.get(t, t) for t in self.vars)
        order = sorted(range(len(newvars)), key=lambda i: _tok_key(newvars[i]))
        vs = tuple(newvars[i] for i in order)
        out = {}
        for e, c in self.terms.items():
            out[tuple(e[i] for i in order)] = c
        return ZPoly(self.ring, vs, out)

    def subst_var(self, tok, c, xtok):
        """Replace tok by c * xtok; c must be invertible if negative
        exponents occur.  xtok may equal another existing variable."""
        if tok not in self.vars:
            return self
        i = self.vars.index(tok)
        out = ZPoly(self.ring, (), {})
        # group by exponent of tok to reuse the scalar powers
        by_exp = {}
        for e, coeff in self.terms.items():
            by_exp.setdefault(e[i], {})[e[:i] + e[i + 1:]] = coeff
        rest_vars = self.vars[:i] + self.vars[i + 1:]
        for k, terms in by_exp.items():
            piece = ZPoly(self.ring, rest_vars, dict(terms))
            piece = piece.scale(c ** k)
            if k:
                piece = piece.term_shift(xtok, k)
            out = out + piece
        return out

    def derivative(self, tok):
        """Formal partial derivative in tok (Laurent exponents allowed)."""
        if tok not in self.vars:
            return ZPoly(self.ring, self.vars, {})
        i = self.vars.index(tok)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            ne = list(e)
            ne[i] = k - 1
            ne = tuple(ne)
            nv = c * k
            if ne in out:
                nv = out[ne] + nv
            if nv.is_zero():
                out.pop(ne, None)
            else:
                out[ne] = nv
        return ZPoly(self.ring, self.vars, out)

    def evaluate(self, values, assignment):
        """Numeric value: values maps tokens to Fraction, assignment maps
        parameter names to Fraction."""
        from fractions import Fraction

        total = Fraction(0)
        for e, c in self.terms.items():
            v = c.evaluate({k: Fraction(x) for k, x in assignment.items()})
            for t, k in zip(self.vars, e):
                if k:
                    v *= Fraction(values[t]) ** k
            total += v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        def tokname(t):
            if t[0] == "z":
                return "z[%d,%d]" % (t[1], t[2])
            return "x%d" % t[1]
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            mono = "*".join(
                tokname(t) + ("^%d" % k if k != 1 else "")
                for t, k in zip(self.vars, e) if k
            )
            cs = str(c)
            if mono:
                parts.append("(%s)*%s" % (cs, mono))
            else:
                parts.append("(%s)" % cs)
        return " + ".join(parts)

    __repr__ = __str__


def divexact_binomial(p, main, c, aux=None):
    """Quotient of p by (main - c*aux), or None when not divisible.

    main and aux are variable tokens; aux=None divides by (main - c).
    Laurent exponents of main are allowed: a unit power of main is pulled
    off first and restored afterwards (the binomial is coprime to main).
    """
    lo = p.min_exp(main)
    work = p.term_shift(main, -lo) if lo else p
    if main not in work.vars:
        return None if not work.is_zero() else work
    i = work.vars.index(main)
    deg = max(e[i] for e in work.terms)
    if deg == 0:
        return None
    rest = work.vars[:i] + work.vars[i + 1:]
    layers = {}
    for e, coeff in work.terms.items():
        layers.setdefault(e[i], {})[e[:i] + e[i + 1:]] = coeff
    def layer(k):
        return ZPoly(work.ring, rest, dict(layers.get(k, {})))
    def times_u(poly):
        poly = poly.scale(c)
        if aux is not None:
            poly = poly.term_shift(aux, 1)
        return poly
    b = layer(deg)
    quot_layers = [(deg - 1, b)]
    for k in range(deg - 1, 0, -1):
        b = layer(k) + times_u(b)
        quot_layers.append((k - 1, b))
    rem = layer(0) + times_u(b)
    if not rem.is_zero():
        return None
    out = ZPoly(work.ring, (), {})
    for k, q in quot_layers:
        out = out + q.term_shift(main, k)
    if lo:
        out = out.term_shift(main, lo)
    return out


def divisible_by(p, factor, multiplicity=1):
    """True iff (main - c*aux)^multiplicity divides p exactly.

    factor is (main_token, c, aux_token_or_None).
    """
    assert multiplicity >= 1
    main, c, aux = factor
    cur = p
    for _ in range(multiplicity):
        if cur.is_zero():
            return True
        cur = divexact_binomial(cur, main, c, aux)
        if cur is None:
            return False
    return True


class DegreeVector:
    """Per-vertex variable counts n in N^I."""

    __slots__ = ("quiver", "counts")

    def __init__(self, quiver, counts):
        self.quiver = quiver
        clean = {}
        for v in quiver.vertices:
            n = int(counts.get(v, 0))
            assert n >= 0
            if n:
                clean[v] = n
        for v in counts:
            quiver.check_vertex(v)
        self.counts = clean

    def count(self, v):
        return self.counts.get(str(v), 0)

    @property
    def length(self):
        return sum(self.counts.values())

    def slots(self):
        """All (vertex, slot) pairs in canonical order."""
        out = []
        for v in self.quiver.vertices:
            for a in range(1, self.count(v) + 1):
                out.append((v, a))
        return out

    def tokens(self):
        return tuple(
            ("z", self.quiver.vertex_index(v), a) for v, a in self.slots()
        )

    def __eq__(self, other):
        return (
            isinstance(other, DegreeVector)
            and self.quiver == other.quiver
            and self.counts == other.counts
        )

    def __hash__(self):
        return hash((self.quiver, tuple(sorted(self.counts.items()))))

    def __add__(self, other):
        assert self.quiver == other.quiver
        merged = {v: self.count(v) + other.count(v) for v in self.quiver.vertices}
        return DegreeVector(self.quiver, merged)

    def to_json_dict(self):
        return {v: self.count(v) for v in self.quiver.vertices}

    def __repr__(self):
        return "DegreeVector(%r)" % (self.to_json_dict(),)


class GradedLaurent:
    """Element of V: symmetric in each vertex's slot block, graded by the
    degree vector and (when homogeneous) the total z-degree."""

    __slots__ = ("degree", "twist", "ring", "terms")

    def __init__(self, degree, twist, ring, terms, checked=False):
        self.degree = degree
        self.twist = twist
        self.ring = ring
        arity = degree.length
        clean = {}
        for e, c in terms.items():
            if isinstance(c, int):
                c = RatFunc.const(ring, c)
            if c.is_zero():
                continue
            if len(e) != arity:
                raise ValueError("exponent arity %d, expected %d" % (len(e), arity))
            clean[tuple(e)] = c
        self.terms = clean
        if not checked:
            self._check_symmetry()

    def _check_symmetry(self):
        # adjacent transpositions within each vertex block generate the group
        offset = 0
        for v in self.degree.quiver.vertices:
            n = self.degree.count(v)
            for a in range(n - 1):
                i, j = offset + a, offset + a + 1
                for e, c in self.terms.items():
                    se = list(e)
                    se[i], se[j] = se[j], se[i]
                    if self.terms.get(tuple(se)) != c:
                        raise ValueError(
                            "not symmetric under swapping slots %d,%d of vertex %s"
                            % (a + 1, a + 2, v)
                        )
            offset += n
        return True

    def is_zero(self):
        return not self.terms

    def as_zpoly(self):
        return ZPoly(self.ring, self.degree.tokens(), dict(self.terms))

    def homogeneous_zdegree(self):
        """Total z-degree if homogeneous, else None."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None if degs else 0

    def __eq__(self, other):
        return (
            isinstance(other, GradedLaurent)
            and self.degree == other.degree
            and self.twist == other.twist
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("GradedLaurent is not hashable")

    def __add__(self, other):
        self._compat(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            cur = c if cur is None else cur + c
            if cur.is_zero():
                out.pop(e, None)
            else:
                out[e] = cur
        return GradedLaurent(self.degree, self.twist, self.ring, out, checked=True)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if isinstance(c, int):
            c = RatFunc.const(self.ring, c)
        if c.is_zero():
            return GradedLaurent(self.degree, self.twist, self.ring, {}, checked=True)
        return GradedLaurent(
            self.degree, self.twist, self.ring,
            {e: c * v for e, v in self.terms.items()}, checked=True,
        )

    def __mul__(self, other):
        """Plain polynomial product inside one variable block (not the
        shuffle product); requires equal degree vectors."""
        self._compat(other)
        prod = self.as_zpoly() * other.as_zpoly()
        return GradedLaurent(
            self.degree, self.twist, self.ring, dict(prod.terms), checked=True
        )

    def _compat(self, other):
        if self.degree != other.degree:
            raise ValueError("degree vectors differ")
        if self.twist != other.twist:
            raise ValueError("twist tags differ")

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), RatFunc.const(self.ring, 0))

    def to_json_dict(self):
        deg = self.degree
        names = [v for v in deg.quiver.vertices if deg.count(v)]
        spans = {}
        pos = 0
        for v in deg.quiver.vertices:
            n = deg.count(v)
            if n:
                spans[v] = (pos, pos + n)
            pos += n
        terms = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            exp = {v: list(e[s:t]) for v, (s, t) in spans.items()}
            terms.append({"exp": exp, "coeff": str(self.terms[e])})
        return {
            "degree": deg.to_json_dict(),
            "twist": self.twist,
            "params": list(self.ring.names),
            "terms": terms,
        }

    @classmethod
    def from_json_dict(cls, quiver, d, ring=None):
        from .field import ParamRing

        try:
            degree = DegreeVector(quiver, {k: int(v) for k, v in d["degree"].items()})
            twist = d["twist"]
            if ring is None:
                ring = ParamRing(tuple(d.get("params", quiver.ring.names)))
            terms = {}
            for item in d["terms"]:
                e = []
                for v in quiver.vertices:
                    n = degree.count(v)
                    if not n:
                        continue
                    block = item["exp"].get(v)
                    if block is None or len(block) != n:
                        raise ParseError("bad exponent block for vertex %s" % v)
                    e.extend(int(x) for x in block)
                coeff = parse_ratfunc(ring, item["coeff"])
                key = tuple(e)
                terms[key] = terms.get(key, RatFunc.const(ring, 0)) + coeff
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("malformed element JSON: %s" % exc)
        return cls(degree, twist, ring, terms)


def symmetrize(raw, degree, twist="plain", ring=None):
    """Sum of raw over all products of per-vertex slot permutations.

    No stabilizer normalization: an input already symmetric in a block of
    size n comes out multiplied by n!.
    """
    if ring is None:
        ring = raw.ring
    tokens = degree.tokens()
    known = set(tokens)
    for t in raw.vars:
        if t not in known:
            raise ValueError("variable %r outside the declared degree" % (t,))
    raw = raw.on_vars(tokens)
    blocks = []
    pos = 0
    for v in degree.quiver.vertices:
        n = degree.count(v)
        if n:
            blocks.append(tokens[pos:pos + n])
        pos += n
    total = ZPoly(ring, tokens, {})
    for assignment in itertools.product(
        *[itertools.permutations(b) for b in blocks]
    ):
        perm = {}
        for orig, img in zip(blocks, assignment):
            perm.update(dict(zip(orig, img)))
        total = total + raw.permute_slots(perm)
    return GradedLaurent(degree, twist, ring, dict(total.on_vars(tokens).terms))


def substitute(p, bindings):
    """Exact image of p under slot bindings {(vertex, slot): (c, k)} sending
    z_{vertex,slot} to c * x_k.  Accepts GradedLaurent or ZPoly."""
    if isinstance(p, GradedLaurent):
        qv = p.degree.quiver
        out = p.as_zpoly()
        seen = set()
        for (v, a), (c, k) in bindings.items():
            tok = ("z", qv.vertex_index(v), a)
            if tok in seen:
                raise ValueError("slot (%s,%d) bound twice" % (v, a))
            seen.add(tok)
            out = out.subst_var(tok, c, ("x", k))
        return out
    out = p
    for tok, (c, k) in bindings.items():
        out = out.subst_var(tok, c, ("x", k))
    return out


def arith(op, a, b=None):
    """Dispatch wrapper: add | sub | scale | mul | neg."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    if op == "neg":
        return -a
    raise ValueError("unknown op %r" % op)
