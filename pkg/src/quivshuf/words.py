"""Letters, words, and the orders that drive basis extraction.

A letter is a vertex with an integer exponent, written i^(d).  Letters
are ordered so that higher exponents come first: i^(d) < j^(e) iff d > e,
with ties broken by the vertex order.  Words are letter sequences under
the lexicographic order where a proper prefix is smaller.

Each monomial of a symmetric Laurent polynomial yields one associated
word per arrangement of its variables (same-vertex variables keep
increasing slots, so arrangements are the distinct permutations of the
factor multiset).  The prime twist shifts exponents by directed arrow
counts; the plain twist uses the exponents as they stand.
"""

from __future__ import annotations

import itertools
import re
from typing import NamedTuple

from .errors import ParseError
from .quiver import arrow_count
from .laurent import DegreeVector


class Letter(NamedTuple):
    vertex: str
    exponent: int

    def __str__(self):
        return "%s^%d" % (self.vertex, self.exponent)


def letter_key(quiver, letter):
    return (-letter.exponent, quiver.vertex_index(letter.vertex))


def letter_cmp(quiver, x, y):
    """-1, 0, or 1 as x <, ==, > y in the letter order."""
    a, b = letter_key(quiver, x), letter_key(quiver, y)
    return (a > b) - (a < b)


class Word:
    """A sequence of letters over one quiver."""

    __slots__ = ("quiver", "letters", "_key")

    def __init__(self, quiver, letters):
        self.quiver = quiver
        norm = []
        for l in letters:
            if not isinstance(l, Letter):
                l = Letter(str(l[0]), int(l[1]))
            quiver.check_vertex(l.vertex)
            norm.append(l)
        self.letters = tuple(norm)
        self._key = tuple(letter_key(quiver, l) for l in self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def degree(self):
        """(DegreeVector, total exponent)."""
        counts = {}
        for l in self.letters:
            counts[l.vertex] = counts.get(l.vertex, 0) + 1
        return DegreeVector(self.quiver, counts), sum(l.exponent for l in self.letters)

    def key(self):
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.quiver == other.quiver
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((self.quiver, self.letters))

    def __lt__(self, other):
        assert self.quiver == other.quiver
        return self._key < other._key

    def __le__(self, other):
        assert self.quiver == other.quiver
        return self._key <= other._key

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __str__(self):
        return "[%s]" % " ".join(str(l) for l in self.letters)

    __repr__ = __str__


def word_cmp(v, w):
    """-1, 0, or 1; lexicographic with proper-prefix-smaller."""
    assert v.quiver == w.quiver
    a, b = v.key(), w.key()
    return (a > b) - (a < b)


_WORD_RE = re.compile(r"^\s*\[(.*)\]\s*$")
_LETTER_RE = re.compile(r"^([A-Za-z0-9]+)\^(-?\d+)$")


def parse_word(quiver, text):
    m = _WORD_RE.match(text)
    if not m:
        raise ParseError("word literal must look like [1^2 1^-1]: %r" % text)
    letters = []
    body = m.group(1).strip()
    if body:
        for tok in body.split():
            lm = _LETTER_RE.match(tok)
            if not lm:
                raise ParseError("bad letter %r in %r" % (tok, text))
            v = lm.group(1)
            try:
                quiver.check_vertex(v)
            except ValueError as exc:
                raise ParseError(str(exc))
            letters.append(Letter(v, int(lm.group(2))))
    return Word(quiver, letters)


def is_nonincreasing(w, twist):
    """Plain: every adjacent pair has letter_k >= letter_{k+1}.  Prime: for
    all a<b, d_a < d_b + sum of undirected arrow counts #_{i_s i_b} over
    a <= s < b, or equality together with i_a >= i_b in the vertex order."""
    q = w.quiver
    if twist == "plain":
        k = w.key()
        return all(k[i] >= k[i + 1] for i in range(len(k) - 1))
    if twist != "prime":
        raise ValueError("unknown twist %r" % twist)
    ls = w.letters
    n = len(ls)
    for b in range(n):
        bound = 0
        for a in range(b - 1, -1, -1):
            bound += arrow_count(q, ls[a].vertex, ls[b].vertex, directed=False)
            lhs = ls[a].exponent
            rhs = ls[b].exponent + bound
            if lhs < rhs:
                continue
            if lhs == rhs and q.vertex_index(ls[a].vertex) >= q.vertex_index(ls[b].vertex):
                continue
            return False
    return True


def _monomial_factors(degree, exp):
    """The factor multiset of a slot-exponent tuple: [(vertex, exponent)]."""
    out = []
    for (v, _a), k in zip(degree.slots(), exp):
        out.append((v, k))
    return out


def word_shifts(quiver, arrangement, twist):
    """Exponent shifts turning a monomial arrangement into word exponents:
    d_a = k_a + shift_a."""
    n = len(arrangement)
    if twist == "plain":
        return [0] * n
    shifts = []
    for a in range(n):
        ia = arrangement[a][0]
        s = 0
        for t in range(a):
            s -= arrow_count(quiver, ia, arrangement[t][0], directed=True)
        for t in range(a + 1, n):
            s += arrow_count(quiver, arrangement[t][0], ia, directed=True)
        shifts.append(s)
    return shifts


def associated_words(degree, exp, twist):
    """All (arrangement, word) pairs for one monomial.

    Arrangements are the distinct orderings of the factor multiset; within
    one vertex the slot convention (increasing slots along the word) makes
    equal factors interchangeable, so duplicates are dropped.
    """
    q = degree.quiver
    factors = _monomial_factors(degree, exp)
    out = []
    for arrangement in sorted(set(itertools.permutations(factors))):
        shifts = word_shifts(q, arrangement, twist)
        letters = [
            Letter(v, k + s) for (v, k), s in zip(arrangement, shifts)
        ]
        out.append((arrangement, Word(q, letters)))
    return out


def leading_word(R, twist=None):
    """The word_cmp maximum over all monomials of R and all their
    associated words."""
    if R.is_zero():
        raise ValueError("zero polynomial has no leading word")
    if twist is None:
        twist = R.twist
    best = None
    for e in R.terms:
        for _arr, w in associated_words(R.degree, e, twist):
            if best is None or w > best:
                best = w
    return best


def word_monomial(word, twist=None):
    """The canonical monomial whose leading arrangement gives this word:
    k_a = d_a - shift_a, slots assigned per vertex in order of appearance.
    Returns (DegreeVector, exponent tuple)."""
    q = word.quiver
    arrangement = [(l.vertex, 0) for l in word.letters]
    shifts = word_shifts(q, arrangement, twist or "plain")
    degree, _d = word.degree()
    slot_of = {}
    seen = {}
    for pos, l in enumerate(word.letters):
        a = seen.get(l.vertex, 0) + 1
        seen[l.vertex] = a
        slot_of[pos] = (l.vertex, a)
    index = {sl: i for i, sl in enumerate(degree.slots())}
    exp = [0] * degree.length
    for pos, l in enumerate(word.letters):
        exp[index[slot_of[pos]]] = l.exponent - shifts[pos]
    return degree, tuple(exp)


def enumerate_nonincreasing(degree, total, window, twist):
    """All non-increasing words with the given degree vector, total
    exponent, and every exponent inside [lo, hi]; sorted descending."""
    lo, hi = window
    assert lo <= hi
    q = degree.quiver
    colors = []
    for v in q.vertices:
        colors.extend([v] * degree.count(v))
    n = len(colors)
    if n == 0:
        return [Word(q, [])] if total == 0 else []
    out = []
    for seq in sorted(set(itertools.permutations(colors))):
        for exps in _compositions(total, n, lo, hi):
            w = Word(q, [Letter(v, d) for v, d in zip(seq, exps)])
            if is_nonincreasing(w, twist):
                out.append(w)
    out.sort(reverse=True)
    return out


def _compositions(total, n, lo, hi):
    if n == 1:
        if lo <= total <= hi:
            yield (total,)
        return
    for d in range(lo, hi + 1):
        rest = total - d
        if rest < lo * (n - 1) or rest > hi * (n - 1):
            continue
        for tail in _compositions(rest, n - 1, lo, hi):
            yield (d,) + tail
