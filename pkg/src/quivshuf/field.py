"""Exact arithmetic in the coefficient field.

The field is the fraction field of a Laurent polynomial ring over the
integers, with one variable per equivariant parameter: q, one t-variable
per quiver edge, and optional adjoined root variables (u2 with u2^2 = q,
and so on) used to express fractional powers of q.

Everything is exact: coefficients are arbitrary-precision ints, fractions
are kept gcd-reduced with a fixed sign convention on the denominator, so
equal field elements have identical representations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _int_gcd

from . import _kernel
from .errors import (
    EvaluationPoleError,
    FieldDivisionError,
    ParseError,
    SpecializationPoleError,
)


def _var_sort_key(name):
    # q first, then edge parameters by label, then adjoined roots
    if name == "q":
        return (0, "")
    if name.startswith("t"):
        return (1, name)
    return (2, name)


class ParamRing:
    """An ordered set of parameter variable names."""

    __slots__ = ("names", "index")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate parameter names: %r" % (names,))
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}

    @classmethod
    def canonical(cls, names):
        return cls(sorted(names, key=_var_sort_key))

    @property
    def nvars(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, ParamRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "ParamRing%r" % (self.names,)


class ParamPoly:
    """Sparse Laurent polynomial in the ring's parameters, int coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    @classmethod
    def make(cls, ring, terms):
        """Build from a possibly dirty dict, dropping zero coefficients."""
        clean = {}
        for e, c in terms.items():
            if c:
                assert len(e) == ring.nvars
                clean[tuple(e)] = c
        return cls(ring, clean)

    @classmethod
    def const(cls, ring, c):
        if not c:
            return cls(ring, {})
        return cls(ring, {(0,) * ring.nvars: int(c)})

    @classmethod
    def var(cls, ring, name, exp=1):
        e = [0] * ring.nvars
        e[ring.index[name]] = exp
        return cls(ring, {tuple(e): 1})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * self.ring.nvars: 1}

    def __eq__(self, other):
        return (
            isinstance(other, ParamPoly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        assert self.ring == other.ring
        return ParamPoly(self.ring, _kernel.dict_add(self.terms, other.terms))

    def __sub__(self, other):
        assert self.ring == other.ring
        return ParamPoly(self.ring, _kernel.dict_sub(self.terms, other.terms))

    def __neg__(self):
        return ParamPoly(self.ring, _kernel.dict_neg(self.terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return ParamPoly(self.ring, _kernel.dict_term_mul(self.terms, (0,) * self.ring.nvars, other))
        assert self.ring == other.ring
        return ParamPoly(self.ring, _kernel.dict_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n):
        assert n >= 0
        out = ParamPoly.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def term_mul(self, exp, coeff):
        return ParamPoly(self.ring, _kernel.dict_term_mul(self.terms, tuple(exp), coeff))

    def min_exponents(self):
        """Componentwise minimum exponent over all terms (zero poly gives zeros)."""
        if not self.terms:
            return (0,) * self.ring.nvars
        its = iter(self.terms)
        lo = list(next(its))
        for e in its:
            for i, x in enumerate(e):
                if x < lo[i]:
                    lo[i] = x
        return tuple(lo)

    def split_monomial(self):
        """Write self = x^m * p with p an ordinary polynomial whose per-variable
        minimum exponent is 0.  Returns (m, p)."""
        m = self.min_exponents()
        if not any(m):
            return m, self
        neg = tuple(-x for x in m)
        return m, self.term_mul(neg, 1)

    def int_content(self):
        g = 0
        for c in self.terms.values():
            g = _int_gcd(g, abs(c))
            if g == 1:
                return 1
        return g

    def max_var_index(self):
        """Largest variable index actually occurring, or -1."""
        top = -1
        for e in self.terms:
            for i in range(self.ring.nvars - 1, top, -1):
                if e[i]:
                    top = i
                    break
        return top

    def degree_in(self, v):
        return max((e[v] for e in self.terms), default=-1)

    def coeff_in(self, v, k):
        """Coefficient of x_v^k, as a polynomial with exponent 0 in slot v."""
        out = {}
        for e, c in self.terms.items():
            if e[v] == k:
                out[e[:v] + (0,) + e[v + 1:]] = c
        return ParamPoly(self.ring, out)

    def lead_key(self):
        return max(self.terms)

    def lead_sign(self):
        return 1 if self.terms[self.lead_key()] > 0 else -1

    def evaluate(self, values):
        """Exact value at a point given as {name: Fraction}."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for i, k in enumerate(e):
                if k:
                    base = Fraction(values[self.ring.names[i]])
                    if base == 0 and k < 0:
                        raise EvaluationPoleError(
                            "negative power of zero for %s" % self.ring.names[i]
                        )
                    v *= base ** k
            total += v
        return total

    def __str__(self):
        return _poly_str(self)

    __repr__ = __str__


# --- gcd machinery (ordinary polynomials: all exponents nonnegative) ---


def _pp_make(ring, terms):
    return ParamPoly(ring, {e: c for e, c in terms.items() if c})


def _divexact(a, b):
    """Exact division of ordinary polynomials; asserts divisibility."""
    ring = a.ring
    if a.is_zero():
        return a
    rem = dict(a.terms)
    bl = max(b.terms)
    blc = b.terms[bl]
    q = {}
    while rem:
        al = max(rem)
        alc = rem[al]
        e = tuple(x - y for x, y in zip(al, bl))
        assert all(x >= 0 for x in e) and alc % blc == 0, "inexact poly division"
        c = alc // blc
        q[e] = c
        rem = _kernel.dict_sub(rem, _kernel.dict_term_mul(b.terms, e, c))
    return ParamPoly(ring, q)


def _prem(a, b, v):
    """Pseudo-remainder of a by b in variable v (up to an lc(b) power)."""
    db = b.degree_in(v)
    lcb = b.coeff_in(v, db)
    r = a
    while not r.is_zero() and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lcr = r.coeff_in(v, dr)
        shift = [0] * a.ring.nvars
        shift[v] = dr - db
        r = r * lcb - b.term_mul(tuple(shift), 1) * lcr
    return r


def _content_wrt(p, v):
    """Gcd of the x_v-coefficients; returns (content, primitive part)."""
    cont = ParamPoly.const(p.ring, 0)
    for k in range(p.degree_in(v) + 1):
        c = p.coeff_in(v, k)
        if not c.is_zero():
            cont = poly_gcd(cont, c)
    return cont, _divexact(p, cont)


def _monomial_gcd(a, b):
    """Gcd when at least one side is a single term."""
    lo = [min(x, y) for x, y in zip(a.min_exponents(), b.min_exponents())]
    g = _int_gcd(a.int_content(), b.int_content())
    return ParamPoly(a.ring, {tuple(lo): g})


def poly_gcd(a, b):
    """Gcd of ordinary polynomials (includes integer content), sign-normalized
    so the lexicographically leading coefficient is positive."""
    assert a.ring == b.ring
    if a.is_zero():
        return _sign_norm(b)
    if b.is_zero():
        return _sign_norm(a)
    if len(a.terms) == 1 or len(b.terms) == 1:
        return _monomial_gcd(a, b)
    v = max(a.max_var_index(), b.max_var_index())
    # a constant side is impossible here (constants are single terms)
    da, db_ = a.degree_in(v), b.degree_in(v)
    if da == 0 or db_ == 0:
        # one side is free of the top variable: reduce to its content
        ca = _content_wrt(a, v)[0] if da > 0 else a
        cb = _content_wrt(b, v)[0] if db_ > 0 else b
        return poly_gcd(ca, cb)
    ca, pa = _content_wrt(a, v)
    cb, pb = _content_wrt(b, v)
    c = poly_gcd(ca, cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    f, g = pa, pb
    while not g.is_zero():
        r = _prem(f, g, v)
        f = g
        g = _content_wrt(r, v)[1] if not r.is_zero() else r
    f = _content_wrt(f, v)[1]
    return _sign_norm(c * f)


def _sign_norm(p):
    if p.is_zero():
        return p
    if p.lead_sign() < 0:
        return -p
    return p


class RatFunc:
    """Element of the fraction field, kept in canonical reduced form.

    Canonical form: the denominator is an ordinary polynomial (minimum
    exponent 0 in every variable) with positive leading coefficient under
    the lexicographic term order, gcd(num, den) is 1, and any Laurent
    monomial unit is absorbed into the numerator.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num, den, reduced=False):
        if den.is_zero():
            raise FieldDivisionError("zero denominator")
        if not reduced:
            num, den = _canon(num, den)
        self.ring = ring
        self.num = num
        self.den = den

    @classmethod
    def const(cls, ring, c):
        if isinstance(c, Fraction):
            return cls(ring, ParamPoly.const(ring, c.numerator), ParamPoly.const(ring, c.denominator))
        return cls(ring, ParamPoly.const(ring, c), ParamPoly.const(ring, 1), reduced=True)

    @classmethod
    def var(cls, ring, name, exp=1):
        return cls(ring, ParamPoly.var(ring, name, exp), ParamPoly.const(ring, 1), reduced=True)

    @classmethod
    def from_poly(cls, p):
        return cls(p.ring, p, ParamPoly.const(p.ring, 1), reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.ring, other)
        return (
            isinstance(other, RatFunc)
            and self.ring == other.ring
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.ring, other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.ring, self.num + other.num, self.den)
        return RatFunc(
            self.ring,
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.ring, other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.ring, self.num - other.num, self.den)
        return RatFunc(
            self.ring,
            self.num * other.den - other.num * self.den,
            self.den * other.den,
        )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RatFunc(self.ring, -self.num, self.den, reduced=True)

    def __mul__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.ring, other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.ring, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.ring, other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        if other.num.is_zero():
            raise FieldDivisionError("division by zero")
        return RatFunc(self.ring, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.const(self.ring, other) / self

    def __pow__(self, n):
        if n < 0:
            return (RatFunc.const(self.ring, 1) / self) ** (-n)
        out = RatFunc.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def evaluate(self, values):
        d = self.den.evaluate(values)
        if d == 0:
            raise EvaluationPoleError("denominator vanishes at %r" % (values,))
        return self.num.evaluate(values) / d

    def __str__(self):
        ns = _poly_str(self.num)
        if self.den.is_one():
            return ns
        return "(%s)/(%s)" % (ns, _poly_str(self.den))

    __repr__ = __str__


def _canon(num, den):
    if num.is_zero():
        return num, ParamPoly.const(den.ring, 1)
    if den.is_one():
        return num, den
    mn, n0 = num.split_monomial()
    md, d0 = den.split_monomial()
    g = poly_gcd(n0, d0)
    if not g.is_one():
        n0 = _divexact(n0, g)
        d0 = _divexact(d0, g)
    if d0.lead_sign() < 0:
        n0, d0 = -n0, -d0
    shift = tuple(x - y for x, y in zip(mn, md))
    return n0.term_mul(shift, 1), d0


# --- printing ---


def _poly_str(p):
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        factors = []
        for i, k in enumerate(e):
            if k == 0:
                continue
            if k == 1:
                factors.append(p.ring.names[i])
            else:
                factors.append("%s^%d" % (p.ring.names[i], k))
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


# --- parsing ---

_TOKEN_RE = re.compile(r"\s*(\d+|[A-Za-z][A-Za-z0-9]*|\^|\+|\-|\*|/|\(|\))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError("bad character at position %d in %r" % (pos, text))
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)
    return tokens


class _Parser:
    """Recursive descent over: expr := term (+|- term)*; term := factor
    ((*|/) factor)*; factor := -* atom (^ signed-int)?; atom := int | var
    | ( expr )."""

    def __init__(self, ring, tokens):
        self.ring = ring
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            w = self.factor()
            v = v * w if op == "*" else v / w
        return v

    def factor(self):
        sign = 1
        while self.peek() == "-":
            self.take()
            sign = -sign
        v = self.atom()
        if self.peek() == "^":
            self.take()
            v = v ** self.signed_int()
        return v if sign > 0 else -v

    def signed_int(self):
        neg = False
        if self.peek() == "(":
            self.take()
            n = self.signed_int()
            if self.take() != ")":
                raise ParseError("expected ) after exponent")
            return n
        if self.peek() == "-":
            self.take()
            neg = True
        t = self.take()
        if t is None or not t.isdigit():
            raise ParseError("expected integer exponent, got %r" % t)
        return -int(t) if neg else int(t)

    def atom(self):
        t = self.take()
        if t is None:
            raise ParseError("unexpected end of input")
        if t.isdigit():
            return RatFunc.const(self.ring, int(t))
        if t == "(":
            v = self.expr()
            if self.take() != ")":
                raise ParseError("unbalanced parentheses")
            return v
        if t in self.ring.index:
            return RatFunc.var(self.ring, t)
        raise ParseError("unknown token %r (parameters: %s)" % (t, ", ".join(self.ring.names)))


def parse_ratfunc(ring, text):
    try:
        p = _Parser(ring, _tokenize(text))
        v = p.expr()
    except FieldDivisionError:
        raise ParseError("division by zero in %r" % text)
    if p.peek() is not None:
        raise ParseError("trailing input %r" % p.peek())
    return v


# --- specialization ---


class Specialization:
    """Monomial substitution of parameters into a target ring.

    images maps each source name to (sign, exponent tuple over the target
    ring) with sign in {1, -1}.  Fractional powers of q enter only through
    adjoined roots: (name, k) declares name^k = q, and the image of q must
    then be name^k.
    """

    __slots__ = ("source", "target", "images", "roots")

    def __init__(self, source, target, images, roots=()):
        self.source = source
        self.target = target
        self.images = dict(images)
        self.roots = tuple(roots)
        for n in source.names:
            if n not in self.images:
                raise ValueError("no image for parameter %s" % n)
            sign, e = self.images[n]
            assert sign in (1, -1) and len(e) == target.nvars
        for name, k in self.roots:
            if name not in target.index:
                raise ValueError("root variable %s not in target ring" % name)
            want = [0] * target.nvars
            want[target.index[name]] = k
            sign, e = self.images["q"]
            if sign != 1 or tuple(e) != tuple(want):
                raise ValueError("root %s^%d = q inconsistent with image of q" % (name, k))

    @classmethod
    def identity(cls, ring):
        images = {}
        for i, n in enumerate(ring.names):
            e = [0] * ring.nvars
            e[i] = 1
            images[n] = (1, tuple(e))
        return cls(ring, ring, images)

    @classmethod
    def sqrt_q(cls, source):
        """The map q -> u2^2, t_e -> u2 for every edge parameter."""
        target = ParamRing(("u2",))
        images = {}
        for n in source.names:
            if n == "q":
                images[n] = (1, (2,))
            elif n.startswith("t"):
                images[n] = (1, (1,))
            else:
                raise ValueError("cannot specialize adjoined variable %s" % n)
        return cls(source, target, images, roots=(("u2", 2),))

    def is_identity(self):
        return self.source == self.target and self == Specialization.identity(self.source)

    def __eq__(self, other):
        return (
            isinstance(other, Specialization)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
            and self.roots == other.roots
        )

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.images.items())), self.roots))

    def describe(self):
        parts = []
        for name, k in self.roots:
            parts.append("%s^%d=q" % (name, k))
        for n in self.source.names:
            sign, e = self.images[n]
            mono = ParamPoly(self.target, {tuple(e): sign})
            parts.append("%s=%s" % (n, _poly_str(mono)))
        return ",".join(parts)

    def apply_poly(self, p):
        assert p.ring == self.source
        out = {}
        for e, c in p.terms.items():
            img = [0] * self.target.nvars
            sign = 1
            for i, k in enumerate(e):
                if not k:
                    continue
                s, ie = self.images[self.source.names[i]]
                if s < 0 and k % 2:
                    sign = -sign
                for j, x in enumerate(ie):
                    img[j] += k * x
            key = tuple(img)
            s = out.get(key, 0) + sign * c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return ParamPoly(self.target, out)

    def apply(self, x):
        """Ring-homomorphism image of a RatFunc in the target field."""
        den = self.apply_poly(x.den)
        if den.is_zero():
            raise SpecializationPoleError("denominator %s specializes to zero" % x.den)
        return RatFunc(self.target, self.apply_poly(x.num), den)


def specialize(x, s):
    return s.apply(x)


def numeric_eval(x, assignment):
    """Exact rational value of x at {name: Fraction-like}."""
    values = {k: Fraction(v) for k, v in assignment.items()}
    missing = [n for n in x.ring.names if n not in values]
    if missing:
        raise EvaluationPoleError("no value for parameters %s" % ", ".join(missing))
    return x.evaluate(values)


def validate_torus_witness(s, witness):
    """True iff the witness values make 0 < |q| < |t_e| < 1 hold exactly
    for every edge parameter (and 0 < |q| < 1 if there are none)."""
    try:
        values = {k: Fraction(v) for k, v in witness.items()}
        for n in s.target.names:
            if n not in values:
                return False
        q_val = abs(specialize(RatFunc.var(s.source, "q"), s).evaluate(values))
        if not 0 < q_val < 1:
            return False
        for n in s.source.names:
            if n.startswith("t") and n != "q":
                t_val = abs(specialize(RatFunc.var(s.source, n), s).evaluate(values))
                if not q_val < t_val < 1:
                    return False
        return True
    except (EvaluationPoleError, SpecializationPoleError, ZeroDivisionError):
        return False


def ratfunc_arith(op, a, b=None):
    """Dispatch wrapper used by the CLI; op in add|sub|mul|div|neg."""
    if op == "neg":
        return -a
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)
