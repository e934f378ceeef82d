"""Per-component linear algebra over the word pairing.

A shuffle context, a degree vector, and a connected component of the
lattice graph determine a finite family of non-increasing words.  This
module computes the pairing (gram) matrix of that family, selects the
standard words by descending elimination, solves for the dual elements
e^w, and uses them to peel arbitrary wheel-condition elements into the
standard basis.  A desk-scale constructive check of the spanning theorem
ties the pieces together: solve the wheel constraints in a window, then
decompose every solution with zero residual.
"""

import itertools
import weakref
from dataclasses import dataclass

from .errors import CapExceededError, DegenerateParametersError
from .field import RatFunc
from .latticegraph import DEFAULT_COMPONENT_CAP, component as graph_component
from .laurent import GradedLaurent
from .pairing import pair
from .shuffle import (
    apply_bindings,
    restricted_case_instances,
    wheel_case_instances,
    wheel_check,
)
from .words import Letter, Word, is_nonincreasing, leading_word, word_monomial

DEFAULT_PEEL_CAP = 10000


def _is_zero(x):
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


class RowSpace:
    """Incremental row span with exact membership tests.

    Entries may be RatFunc or Fraction; rows are stored in echelon form
    keyed by pivot column.
    """

    def __init__(self):
        self.table = {}

    def residual(self, row):
        row = list(row)
        while True:
            piv = None
            for j, x in enumerate(row):
                if not _is_zero(x):
                    piv = j
                    break
            if piv is None or piv not in self.table:
                return row, piv
            base = self.table[piv]
            x = row[piv]
            row = [a - x * b for a, b in zip(row, base)]

    def add(self, row):
        """True iff the row enlarged the span."""
        r, piv = self.residual(row)
        if piv is None:
            return False
        inv = r[piv]
        self.table[piv] = [a / inv for a in r]
        return True

    @property
    def rank(self):
        return len(self.table)


def rref(rows, ncols):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if not _is_zero(mat[i][c])), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][c]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not _is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(ring, rows, ncols):
    """Basis of the right kernel of the matrix, free columns set to 1."""
    zero = RatFunc.const(ring, 0)
    one = RatFunc.const(ring, 1)
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = [zero] * ncols
        vec[f] = one
        for row, p in zip(red, pivots):
            vec[p] = zero - row[f]
        out.append(vec)
    return out


def invert_matrix(ring, M):
    """Exact inverse over the rational function field, or None."""
    n = len(M)
    zero = RatFunc.const(ring, 0)
    one = RatFunc.const(ring, 1)
    A = [list(M[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for c in range(n):
        pr = next((i for i in range(c, n) if not A[i][c].is_zero()), None)
        if pr is None:
            return None
        A[c], A[pr] = A[pr], A[c]
        inv = A[c][c]
        A[c] = [x / inv for x in A[c]]
        for i in range(n):
            if i != c and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def graph_params(ctx):
    """(m, variant) used by the context's twist: plain words live in G,
    prime words in Gprime."""
    m = 2 * len(ctx.quiver.edges)
    return m, ("G" if ctx.twist == "plain" else "Gprime")


def exponent_tuple(word):
    return tuple(l.exponent for l in word)


def component_words(ctx, degree, comp):
    """All non-increasing words with the degree's colors whose exponent
    sequence is a vertex of the component, sorted descending."""
    q = ctx.quiver
    colors = []
    for v in q.vertices:
        colors.extend([v] * degree.count(v))
    arrangements = sorted(set(itertools.permutations(colors)))
    out = []
    for t in comp.vertices:
        for seq in arrangements:
            w = Word(q, [Letter(c, d) for c, d in zip(seq, t)])
            if is_nonincreasing(w, ctx.twist):
                out.append(w)
    out.sort(reverse=True)
    return out


@dataclass
class ComponentBasis:
    ctx: object
    degree: object
    component: object
    words: list
    gram: dict
    standard: list
    dual: dict
    dual_coeffs: dict

    def to_json_dict(self):
        std = set(self.standard)
        return {
            "degree": self.degree.to_json_dict(),
            "component": self.component.to_json_dict(),
            "words": [str(w) for w in self.words],
            "standard": [str(w) for w in self.standard],
            "gram": [
                [str(self.gram[v][w]) for w in self.words] for v in self.words
            ],
            "dual": {
                str(v): {str(u): str(c) for u, c in self.dual_coeffs[v].items()}
                for v in self.standard
            },
        }


_BASIS_CACHE = weakref.WeakKeyDictionary()


def _cache_for(ctx):
    d = _BASIS_CACHE.get(ctx)
    if d is None:
        d = {}
        _BASIS_CACHE[ctx] = d
    return d


def build_component_basis(
    ctx,
    degree,
    seed,
    mode="symbolic",
    witness=None,
    cap=DEFAULT_COMPONENT_CAP,
    paranoid=False,
):
    """Component basis through the seed word or exponent tuple.

    mode "probe" runs the descending elimination on the gram matrix
    evaluated at the witness point (a sound independence filter) and
    falls back to the symbolic elimination if the resulting standard
    block is singular.
    """
    if isinstance(seed, Word):
        wdeg, _tot = seed.degree()
        if wdeg != degree:
            raise ValueError("seed word degree does not match")
        seed = exponent_tuple(seed)
    seed = tuple(int(x) for x in seed)
    if len(seed) != degree.length:
        raise ValueError("seed length does not match the degree vector")
    key0 = tuple(degree.count(v) for v in ctx.quiver.vertices)
    cache = _cache_for(ctx)
    hit = cache.get((key0, seed))
    if hit is not None:
        return hit
    m, variant = graph_params(ctx)
    comp = graph_component(seed, m, variant, cap=cap)
    words = component_words(ctx, degree, comp)
    gram = {}
    for v in words:
        ev = ctx.e_w(v)
        gram[v] = {w: pair(ctx, ev, w, paranoid=paranoid) for w in words}
    cb = _finish_basis(ctx, degree, comp, words, gram, mode, witness)
    for t in comp.vertices:
        cache[(key0, t)] = cb
    return cb


def _finish_basis(ctx, degree, comp, words, gram, mode, witness):
    standard = _select_standard(ctx, words, gram, mode, witness)
    dual, dual_coeffs = _solve_dual(ctx, words, gram, standard)
    if dual is None:
        if mode == "probe":
            standard = _select_standard(ctx, words, gram, "symbolic", None)
            dual, dual_coeffs = _solve_dual(ctx, words, gram, standard)
        if dual is None:
            raise DegenerateParametersError(
                "standard gram block is singular; parameters or "
                "specialization degenerate on component %r" % (comp.seed,)
            )
    return ComponentBasis(
        ctx=ctx,
        degree=degree,
        component=comp,
        words=words,
        gram=gram,
        standard=standard,
        dual=dual,
        dual_coeffs=dual_coeffs,
    )


def _select_standard(ctx, words, gram, mode, witness):
    if mode not in ("symbolic", "probe"):
        raise ValueError("mode must be symbolic or probe")
    if mode == "probe":
        if not witness:
            raise ValueError("probe mode needs a parameter witness")
        rows = {
            v: [gram[v][w].evaluate(witness) for w in words] for v in words
        }
    else:
        rows = {v: [gram[v][w] for w in words] for v in words}
    span = RowSpace()
    standard = []
    for v in words:
        if span.add(rows[v]):
            standard.append(v)
    return standard


def _solve_dual(ctx, words, gram, standard):
    """e^v = sum_u Minv[v][u] e_u over standard u; None on singularity."""
    M = [[gram[u][w] for w in standard] for u in standard]
    Minv = invert_matrix(ctx.ring, M)
    if Minv is None:
        return None, None
    dual = {}
    dual_coeffs = {}
    for i, v in enumerate(standard):
        coeffs = {}
        elem = None
        for j, u in enumerate(standard):
            c = Minv[i][j]
            if c.is_zero():
                continue
            coeffs[u] = c
            term = ctx.e_w(u).scale(c)
            elem = term if elem is None else elem + term
        dual[v] = elem
        dual_coeffs[v] = coeffs
    return dual, dual_coeffs


def decompose(
    ctx,
    R,
    mode="symbolic",
    witness=None,
    paranoid=False,
    max_steps=DEFAULT_PEEL_CAP,
    cap=DEFAULT_COMPONENT_CAP,
):
    """Peel R into the dual basis: returns [(word, coeff)] descending.

    The input must satisfy the context's wheel conditions; the loop
    subtracts coeff * e^(leading word) until the residual vanishes.
    """
    if not ctx.compatible(R):
        raise ValueError("element does not match the shuffle context")
    chk = wheel_check(ctx, R, paranoid=paranoid)
    if not chk["passes"]:
        raise DegenerateParametersError(
            "not in shuffle algebra / degenerate parameters: wheel failure %r"
            % (chk["first_failure"],)
        )
    out = []
    steps = 0
    prev = None
    while not R.is_zero():
        steps += 1
        if steps > max_steps:
            raise CapExceededError("peeling exceeded %d steps" % max_steps)
        v = leading_word(R)
        if prev is not None:
            assert v < prev, "leading word failed to decrease"
        prev = v
        cb = build_component_basis(
            ctx, R.degree, v, mode=mode, witness=witness, cap=cap
        )
        if v not in cb.dual:
            raise DegenerateParametersError(
                "leading word %s is not standard; input not in the span "
                "or parameters degenerate" % v
            )
        _deg, mono = word_monomial(v, ctx.twist)
        num = R.coefficient(mono)
        assert not num.is_zero(), "leading monomial missing from residual"
        den = cb.dual[v].coefficient(mono)
        alpha = num / den
        R = R - cb.dual[v].scale(alpha)
        if paranoid and not R.is_zero():
            assert wheel_check(ctx, R)["passes"], "residual left the ideal"
        out.append((v, alpha))
    return out


def reconstruct(ctx, terms, degree=None):
    """Sum coeff * e^word; inverse of decompose on its output."""
    total = None
    for w, c in terms:
        cb = build_component_basis(ctx, w.degree()[0], w)
        piece = cb.dual[w].scale(c)
        total = piece if total is None else total + piece
    if total is None:
        if degree is None:
            raise ValueError("empty decomposition needs an explicit degree")
        return GradedLaurent(degree, ctx.twist, ctx.ring, {})
    return total


def decomposition_report(terms):
    return [{"word": str(w), "coeff": str(c)} for w, c in terms]


def canonical_tensor(cb):
    """The component's contribution to the canonical tensor: pairs
    (e^w, f_w) over standard words, aligned with cb.standard."""
    return [(cb.dual[w], cb.ctx.f_w(w)) for w in cb.standard]


def orbit_basis(ctx, degree, window, total):
    """Orbit-sum basis of the symmetric Laurent space: one element per
    family of per-vertex exponent multisets inside the window with the
    given total degree; every distinct arrangement has coefficient 1."""
    lo, hi = window
    q = ctx.quiver
    one = RatFunc.const(ctx.ring, 1)
    per_vertex = []
    for v in q.vertices:
        c = degree.count(v)
        per_vertex.append(
            [ms for ms in itertools.combinations_with_replacement(range(lo, hi + 1), c)]
        )
    out = []
    for combo in itertools.product(*per_vertex):
        if sum(sum(ms) for ms in combo) != total:
            continue
        terms = {}
        spreads = [sorted(set(itertools.permutations(ms))) for ms in combo]
        for arrangement in itertools.product(*spreads):
            exp = tuple(itertools.chain.from_iterable(arrangement))
            terms[exp] = one
        out.append(GradedLaurent(degree, ctx.twist, ctx.ring, terms, checked=True))
    return out


def wheel_constraint_rows(ctx, degree, elements, paranoid=False):
    """Linear constraints: rows over columns = elements whose kernel is
    the wheel-condition subspace.

    Three-variable regime: each monomial coefficient of each case
    substitution must vanish.  Restricted regime: divisibility by
    (tok - c x)^mult becomes vanishing of the first mult derivatives at
    tok = c x.
    """
    zero = RatFunc.const(ctx.ring, 0)
    zps = [b.as_zpoly() for b in elements]
    images = []
    if ctx.wheel_regime == "restricted":
        for _meta, bindings, factors in restricted_case_instances(ctx, degree):
            imgs = [apply_bindings(z, bindings) for z in zps]
            for (tok, c, xtok), mult in factors:
                cur = imgs
                for r in range(mult):
                    images.append([p.subst_var(tok, c, xtok) for p in cur])
                    if r + 1 < mult:
                        cur = [p.derivative(tok) for p in cur]
    else:
        for _meta, bindings in wheel_case_instances(ctx, degree, paranoid):
            images.append([apply_bindings(z, bindings) for z in zps])
    rows = []
    for imgs in images:
        zvars = sorted({t for p in imgs for t in p.vars})
        aligned = [p.on_vars(zvars) for p in imgs]
        exps = sorted({e for p in aligned for e in p.terms})
        for e in exps:
            rows.append([p.terms.get(e, zero) for p in aligned])
    return rows


def wheel_subspace(ctx, degree, window, total, paranoid=False):
    """Basis of the wheel-condition solutions in the window: elements of
    the orbit-sum space annihilated by every wheel constraint."""
    B = orbit_basis(ctx, degree, window, total)
    if not B:
        return [], 0
    rows = wheel_constraint_rows(ctx, degree, B, paranoid=paranoid)
    coeffs = nullspace(ctx.ring, rows, len(B))
    out = []
    for vec in coeffs:
        elem = None
        for c, b in zip(vec, B):
            if c.is_zero():
                continue
            piece = b.scale(c)
            elem = piece if elem is None else elem + piece
        out.append(elem)
    return out, len(B)


def theorem_main_check(
    ctx,
    degree,
    window,
    total=None,
    mode="symbolic",
    witness=None,
    paranoid=False,
    cap=DEFAULT_COMPONENT_CAP,
):
    """Constructive desk-scale witness of the spanning theorem.

    For each total degree, solve the wheel constraints inside the window
    and decompose every solution; success means every residual reached
    zero exactly.
    """
    lo, hi = window
    n = degree.length
    if total is None:
        totals = list(range(lo * n, hi * n + 1))
    else:
        totals = [total]
    report = {
        "context": ctx.describe(),
        "degree": degree.to_json_dict(),
        "window": [lo, hi],
        "totals": [],
        "success": True,
    }
    for t in totals:
        solutions, ambient = wheel_subspace(ctx, degree, window, t, paranoid=paranoid)
        entry = {
            "total": t,
            "ambient_dimension": ambient,
            "dimension": len(solutions),
            "elements": [],
            "standard_counts": {},
        }
        comps = {}
        for elem in solutions:
            item = {}
            try:
                terms = decompose(
                    ctx, elem, mode=mode, witness=witness,
                    paranoid=paranoid, cap=cap,
                )
            except (DegenerateParametersError, CapExceededError) as exc:
                item["residual_zero"] = False
                item["error"] = str(exc)
                report["success"] = False
            else:
                item["residual_zero"] = True
                item["terms"] = decomposition_report(terms)
                if terms:
                    item["leading"] = str(terms[0][0])
                for w, _c in terms:
                    cb = build_component_basis(
                        ctx, degree, w, mode=mode, witness=witness, cap=cap
                    )
                    comps[cb.component.seed] = cb
            entry["elements"].append(item)
        for cb in comps.values():
            label = ",".join(str(x) for x in min(cb.component.vertices))
            entry["standard_counts"][label] = len(cb.standard)
        report["totals"].append(entry)
    return report
