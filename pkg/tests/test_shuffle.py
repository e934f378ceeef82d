"""Shuffle product against its defining formula, wheel checks, caching."""

import random

import pytest

from quivshuf.field import ParamRing, RatFunc, Specialization
from quivshuf.laurent import DegreeVector
from quivshuf.shuffle import (
    ShuffleContext,
    _DegenerateImage,
    apply_bindings,
    generator,
    instance_element,
    is_spherical_witness,
    quadratic_instance,
    restricted_case_instances,
    shuffle_image,
    shuffle_product,
    wheel_case_instances,
    wheel_check,
    wheel_check_word,
)
from quivshuf.words import Word

from oracles import W, random_point, shuffle_eval


def _random_word_element(ctx, rng, n, lo=-2, hi=2):
    letters = [
        (rng.choice(ctx.quiver.vertices), rng.randint(lo, hi)) for _ in range(n)
    ]
    return ctx.word_product(letters, "e")


def test_generator_shape(jordan, pool):
    ctx = pool.get(jordan, "plain")
    g = generator(ctx, "1", -3)
    assert g.degree == DegreeVector(jordan, {"1": 1})
    assert g.terms == {(-3,): RatFunc.const(ctx.ring, 1)}


def test_product_grading(q21, pool):
    ctx = pool.get(q21, "plain")
    a = ctx.word_product([("1", 1), ("2", 0)], "e")
    b = ctx.word_product([("1", -1)], "e")
    p = shuffle_product(ctx, a, b)
    assert p.degree == DegreeVector(q21, {"1": 2, "2": 1})
    assert p.homogeneous_zdegree() == 0


def test_unit_element(jordan, pool):
    ctx = pool.get(jordan, "plain")
    r = ctx.word_product([("1", 2), ("1", -1)], "e")
    assert shuffle_product(ctx, ctx.one(), r) == r
    assert shuffle_product(ctx, r, ctx.one()) == r


def test_context_mismatch_rejected(jordan, q21, pool):
    ctx = pool.get(jordan, "plain")
    other = pool.get(jordan, "prime")
    with pytest.raises(ValueError):
        shuffle_product(ctx, ctx.one(), other.one())


def test_product_matches_definition_numerically(quivers, pool):
    """The implementation clears a common denominator; the oracle
    evaluates the raw sum over splits at random points instead.
    One-vertex quivers stay at total degree 3: their single block makes
    degree-4 products disproportionately large."""
    rng = random.Random(31)
    for q in quivers.values():
        cap = 3 if len(q.vertices) == 1 else 4
        for twist in ("plain", "prime"):
            ctx = pool.get(q, twist)
            for _ in range(5):
                n1 = rng.randint(1, 2)
                n2 = rng.randint(1, min(2, cap - n1))
                a = _random_word_element(ctx, rng, n1)
                b = _random_word_element(ctx, rng, n2)
                p = shuffle_product(ctx, a, b)
                deg = a.degree + b.degree
                for _pt in range(2):
                    zv, pv = random_point(rng, deg.tokens(), ctx.ring.names)
                    want = shuffle_eval(ctx, a, b, zv, pv)
                    got = p.as_zpoly().evaluate(zv, pv)
                    assert got == want, (q.digest()[:8], twist)


def test_product_specialized_matches_definition(jordan, pool):
    rng = random.Random(32)
    ctx = pool.sqrt_q(jordan)
    for _ in range(4):
        a = _random_word_element(ctx, rng, rng.randint(1, 2))
        b = _random_word_element(ctx, rng, 1)
        p = shuffle_product(ctx, a, b)
        deg = a.degree + b.degree
        zv, pv = random_point(rng, deg.tokens(), ctx.ring.names)
        assert p.as_zpoly().evaluate(zv, pv) == shuffle_eval(ctx, a, b, zv, pv)


def test_associativity(quivers, pool):
    rng = random.Random(33)
    for q in quivers.values():
        for twist in ("plain", "prime"):
            ctx = pool.get(q, twist)
            for _ in range(3):
                x, y, z = (
                    generator(ctx, rng.choice(q.vertices), rng.randint(-2, 2))
                    for _ in range(3)
                )
                left = shuffle_product(ctx, shuffle_product(ctx, x, y), z)
                right = shuffle_product(ctx, x, shuffle_product(ctx, y, z))
                assert left == right


def test_f_side_reverses_the_fold(q21, pool):
    ctx = pool.get(q21, "plain")
    letters = [("1", 2), ("2", -1), ("1", 0)]
    assert ctx.word_product(letters, "f") == ctx.word_product(letters[::-1], "e")


def test_f_w_negates_exponents(q21, pool):
    ctx = pool.get(q21, "prime")
    w = W(q21, ("1", 2), ("2", -1))
    assert ctx.f_w(w) == ctx.word_product([("2", 1), ("1", -2)], "e")


def test_word_product_memoized(jordan, pool):
    ctx = pool.get(jordan, "plain")
    a = ctx.word_product([("1", 1), ("1", 0)], "e")
    b = ctx.word_product([("1", 1), ("1", 0)], "e")
    assert a is b


def test_disk_cache_round_trip(jordan, tmp_path, monkeypatch):
    monkeypatch.setenv("QUIVSHUF_CACHE_DIR", str(tmp_path))
    c1 = ShuffleContext(jordan, "plain")
    val = c1.word_product([("1", 2), ("1", -2)], "e")
    files = list(tmp_path.iterdir())
    assert files
    c2 = ShuffleContext(jordan, "plain")
    assert c2.word_product([("1", 2), ("1", -2)], "e") == val


def test_quadratic_instance_structure_plain(q21, pool):
    ctx = pool.get(q21, "plain")
    lhs, rhs = quadratic_instance(ctx, "1", "2", 2, -1)
    # one edge between the vertices: leading term on each side has coeff 1
    assert lhs[0][1] == ("1", 2) and lhs[0][2] == ("2", -1)
    assert lhs[0][0] == RatFunc.const(ctx.ring, 1)
    assert rhs[0][1] == ("2", -1) and rhs[0][2] == ("1", 2)
    assert rhs[0][0] == RatFunc.const(ctx.ring, 1)
    assert instance_element(ctx, lhs) == instance_element(ctx, rhs)


def test_quadratic_instance_structure_loop(jordan, pool):
    ctx = pool.get(jordan, "plain")
    a, b = 1, -2
    lhs, rhs = quadratic_instance(ctx, "1", "1", a, b)
    assert lhs[0] == (RatFunc.const(ctx.ring, 1), ("1", a), ("1", b))
    assert rhs[0] == (RatFunc.const(ctx.ring, -1), ("1", b + 1), ("1", a - 1))
    assert instance_element(ctx, lhs) == instance_element(ctx, rhs)


def test_wheel_check_accepts_products(quivers, pool):
    for q in quivers.values():
        for twist in ("plain", "prime"):
            ctx = pool.get(q, twist)
            r = ctx.word_product([(q.vertices[0], 1), (q.vertices[-1], 0)], "e")
            rep = wheel_check(ctx, r)
            assert rep == {"passes": True, "first_failure": None}
            assert wheel_check(ctx, r, paranoid=True)["passes"]


def _constant_element(ctx, counts):
    deg = DegreeVector(ctx.quiver, counts)
    one = RatFunc.const(ctx.ring, 1)
    return type(ctx.one())(deg, ctx.twist, ctx.ring, {(0,) * deg.length: one}, checked=True)


def test_wheel_check_rejects_symmetric_constant(jordan, q21, pool):
    ctx = pool.get(jordan, "plain")
    bad = _constant_element(ctx, {"1": 3})
    rep = wheel_check(ctx, bad)
    assert not rep["passes"]
    fail = rep["first_failure"]
    assert fail["regime"] == "three_variable"
    assert fail["edge"] == "1" and fail["case"] in (1, 2)
    ctx2 = pool.get(q21, "plain")
    bad2 = _constant_element(ctx2, {"1": 2, "2": 1})
    assert not wheel_check(ctx2, bad2)["passes"]


def test_wheel_instances_need_three_slots(jordan, pool):
    ctx = pool.get(jordan, "plain")
    deg = DegreeVector(jordan, {"1": 2})
    assert list(wheel_case_instances(ctx, deg)) == []
    deg3 = DegreeVector(jordan, {"1": 3})
    plainly = list(wheel_case_instances(ctx, deg3))
    # one canonical triple per edge and case
    assert len(plainly) == 2
    assert len(list(wheel_case_instances(ctx, deg3, paranoid=True))) == 12


def test_restricted_instances_merge_multiplicities(jordan, pool):
    ctx = pool.sqrt_q(jordan)
    deg = DegreeVector(jordan, {"1": 3})
    inst = list(restricted_case_instances(ctx, deg))
    # only the prefix k=2 leaves a variable to constrain; k=3 yields nothing
    by_k = {meta["k"]: (bindings, factors) for meta, bindings, factors in inst}
    assert set(by_k) == {2}
    bindings, factors = by_k[2]
    assert len(bindings) == 2
    # both loop orientations specialize to the same linear form u2*x, so
    # their multiplicities merge
    assert len(factors) == 1
    (tok, c, xtok), mult = factors[0]
    assert tok == ("z", 0, 3) and xtok == ("x", 1)
    assert mult == 2
    assert c == RatFunc.var(ctx.ring, "u2")


def test_restricted_wheel_passes_on_products(jordan, pool):
    ctx = pool.sqrt_q(jordan)
    r = ctx.word_product([("1", 1), ("1", 0), ("1", -1)], "e")
    assert wheel_check(ctx, r)["passes"]


def test_restricted_wheel_rejects_plain_constant(jordan, pool):
    ctx = pool.sqrt_q(jordan)
    bad = _constant_element(ctx, {"1": 3})
    rep = wheel_check(ctx, bad)
    assert not rep["passes"]
    assert rep["first_failure"]["regime"] == "restricted"
    assert rep["first_failure"]["multiplicity"] >= 1


def test_restricted_regime_requires_specialization(jordan):
    with pytest.raises(ValueError):
        ShuffleContext(jordan, "plain", None, "restricted")


def test_shuffle_image_matches_substituted_product(q22, pool):
    rng = random.Random(35)
    ctx = pool.get(q22, "prime")
    for _ in range(3):
        a = _random_word_element(ctx, rng, 2)
        g = generator(ctx, rng.choice(q22.vertices), rng.randint(-2, 2))
        toks = (a.degree + g.degree).tokens()
        bound = rng.sample(toks, 2)
        bindings = [
            (bound[0], RatFunc.var(ctx.ring, "q")),
            (bound[1], RatFunc.var(ctx.ring, "t2")),
        ]
        img = shuffle_image(ctx, a, g, bindings)
        ref = apply_bindings(shuffle_product(ctx, a, g).as_zpoly(), bindings)
        assert img == ref


def test_wheel_check_word_matches_full_check(quivers, pool):
    rng = random.Random(36)
    for q in quivers.values():
        ctx = pool.get(q, "prime")
        letters = [(rng.choice(q.vertices), rng.randint(-2, 2)) for _ in range(3)]
        full = wheel_check(ctx, ctx.word_product(letters, "e"))
        assert wheel_check_word(ctx, letters) == full


def test_wheel_check_word_degree_four(loop2, jordan, pool):
    # the full degree-4 product on two loops is far too large to build;
    # the substituted route answers in about a second
    ctx = pool.get(loop2, "plain")
    rep = wheel_check_word(ctx, [("1", 2), ("1", -1), ("1", 1), ("1", 0)])
    assert rep == {"passes": True, "first_failure": None}
    rctx = pool.sqrt_q(jordan)
    assert wheel_check_word(rctx, [("1", 1), ("1", 0), ("1", -1), ("1", 2)])["passes"]


def test_shuffle_image_rejects_colliding_scales(jordan, pool):
    ctx = pool.get(jordan, "plain")
    a = ctx.word_product([("1", 1), ("1", 0)], "e")
    g = generator(ctx, "1", -1)
    qv = RatFunc.var(ctx.ring, "q")
    toks = (a.degree + g.degree).tokens()
    with pytest.raises(_DegenerateImage):
        shuffle_image(
            ctx,
            a,
            g,
            [(toks[0], qv), (toks[1], qv), (toks[2], RatFunc.const(ctx.ring, 1))],
        )


def test_wheel_check_word_degenerate_specialization_falls_back(jordan, pool):
    # sending t1 to q makes two wheel scales collide, forcing the full
    # product fallback; the report must agree with the direct check
    ring = jordan.ring
    spec = Specialization(ring, ParamRing(("q",)), {"q": (1, (1,)), "t1": (1, (1,))})
    ctx = pool.get(jordan, "plain", spec, "three_variable")
    letters = [("1", 1), ("1", 0), ("1", -1)]
    full = wheel_check(ctx, ctx.word_product(letters, "e"))
    assert wheel_check_word(ctx, letters) == full
    assert full["passes"]


def test_spherical_witness(jordan, pool):
    ctx = pool.get(jordan, "plain")
    r = ctx.word_product([("1", 1), ("1", -1)], "e")
    assert is_spherical_witness(ctx, r, [(1, [("1", 1), ("1", -1)])])
    assert not is_spherical_witness(ctx, r, [(2, [("1", 1), ("1", -1)])])
    assert not is_spherical_witness(ctx, r, [(1, [("1", -1), ("1", 1)])])
    assert is_spherical_witness(ctx, r.scale(0), [])
