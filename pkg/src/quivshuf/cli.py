"""Batch command-line front end.

Eleven subcommands expose the library: zeta, shuffle, wheel-check, pair,
words-enumerate, graph-component, basis, decompose, tensor, theorem-check,
torus-witness.  Every run emits a single JSON document (compact by
default, --pretty re-renders the same data) whose "meta" block records the
tool version, the quiver digest, twist, specialization, wheel regime, and
the RNG seed, so identical configurations produce byte-identical output.

Error categories map to distinct exit codes, see EXIT_CODES.  The word
product cache can be persisted across runs by pointing QUIVSHUF_CACHE_DIR
at a directory.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import __version__
from .basis import (
    DEFAULT_PEEL_CAP,
    build_component_basis,
    canonical_tensor,
    decompose,
    decomposition_report,
    reconstruct,
    theorem_main_check,
)
from .errors import (
    CapExceededError,
    DegenerateParametersError,
    EvaluationPoleError,
    ParseError,
    QuivshufError,
    SpecializationPoleError,
)
from .field import ParamRing, Specialization, validate_torus_witness
from .latticegraph import DEFAULT_COMPONENT_CAP, VARIANTS, component
from .laurent import DegreeVector, GradedLaurent
from .pairing import pair, pair_symmetric
from .quiver import TWISTS, Quiver, zeta_ratio_series
from .shuffle import (
    WHEEL_REGIMES,
    ShuffleContext,
    generator,
    shuffle_product,
    wheel_check,
    wheel_check_word,
)
from .words import enumerate_nonincreasing, parse_word

EXIT_CODES = {
    "ok": 0,
    "internal": 1,
    "parse": 2,
    "file": 3,
    "cap": 4,
    "degenerate": 5,
}

_ITEM_RE = re.compile(r"^([A-Za-z0-9]+)\^(-?\d+)$")
_ROOT_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)\^(\d+)$")
_FACTOR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")


# --- small input parsers ---


def _parse_int(text, what):
    try:
        return int(text)
    except ValueError:
        raise ParseError("%s must be an integer: %r" % (what, text))


def _parse_int_tuple(text):
    parts = [p.strip() for p in str(text).split(",") if p.strip()]
    if not parts:
        raise ParseError("expected a comma-separated integer tuple: %r" % text)
    return tuple(_parse_int(p, "tuple entry") for p in parts)


def _parse_window(text):
    t = _parse_int_tuple(text)
    if len(t) != 2 or t[0] > t[1]:
        raise ParseError("window must be LO,HI with LO <= HI: %r" % text)
    return t


def _parse_degree(quiver, text):
    counts = {}
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ParseError("degree entries look like vertex:count: %r" % part)
        v, c = part.split(":", 1)
        counts[v.strip()] = counts.get(v.strip(), 0) + _parse_int(c, "count")
    try:
        return DegreeVector(quiver, counts)
    except ValueError as exc:
        raise ParseError(str(exc))


def _parse_assignment(text):
    out = {}
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ParseError("assignments look like name=p/q: %r" % part)
        k, v = part.split("=", 1)
        try:
            out[k.strip()] = Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad rational value %r for %s" % (v, k))
    if not out:
        raise ParseError("empty assignment: %r" % text)
    return out


def _parse_monomial(expr):
    expr = expr.strip()
    sign = 1
    if expr.startswith("-"):
        sign = -1
        expr = expr[1:].strip()
    if expr in ("", "1"):
        return sign, []
    factors = []
    for tok in expr.split("*"):
        m = _FACTOR_RE.match(tok.strip())
        if not m:
            raise ParseError("bad monomial factor %r in %r" % (tok, expr))
        factors.append((m.group(1), int(m.group(2) or 1)))
    return sign, factors


def _parse_specialization(ring, text):
    """None for the identity; "sqrt-q" for t_e = q^(1/2); otherwise the
    describe() grammar: comma-separated "name^k=q" root declarations and
    "param=signed monomial" images."""
    text = (text or "id").strip()
    if text in ("", "id", "identity", "none"):
        return None
    if text in ("sqrt-q", "sqrtq"):
        try:
            return Specialization.sqrt_q(ring)
        except ValueError as exc:
            raise ParseError(str(exc))
    roots = []
    raw = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ParseError("specialization entries need '=': %r" % part)
        lhs, rhs = part.split("=", 1)
        lhs, rhs = lhs.strip(), rhs.strip()
        m = _ROOT_RE.match(lhs)
        if m and rhs == "q":
            roots.append((m.group(1), int(m.group(2))))
        else:
            raw.append((lhs, _parse_monomial(rhs)))
    names = {n for n, _k in roots}
    for _src, (_sign, factors) in raw:
        names.update(n for n, _k in factors)
    target = ParamRing.canonical(sorted(names))
    images = {}
    for src, (sign, factors) in raw:
        e = [0] * target.nvars
        for n, k in factors:
            e[target.index[n]] += k
        images[src] = (sign, tuple(e))
    missing = [n for n in ring.names if n not in images]
    if missing:
        raise ParseError("specialization misses parameters: %s" % ", ".join(missing))
    try:
        return Specialization(ring, target, images, roots=tuple(roots))
    except ValueError as exc:
        raise ParseError(str(exc))


# --- file I/O ---


def _load_json(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except ValueError as exc:
            raise ParseError("invalid JSON in %s: %s" % (path, exc))


def _load_quiver(path):
    if path is None:
        raise ParseError("this command requires --quiver PATH")
    return Quiver.from_json_dict(_load_json(path))


def _load_element(ctx, path):
    elem = GradedLaurent.from_json_dict(ctx.quiver, _load_json(path), ring=ctx.ring)
    if elem.twist != ctx.twist:
        raise ParseError(
            "element twist %r does not match the context twist %r"
            % (elem.twist, ctx.twist)
        )
    return elem


def _write_report(report, args):
    if args.pretty:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        text = json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- context and report plumbing ---


def _context(args):
    quiver = _load_quiver(args.quiver)
    spec = _parse_specialization(quiver.ring, args.specialize)
    regime = args.wheel_regime
    if regime is None:
        regime = "restricted" if spec is not None else "three_variable"
    try:
        return ShuffleContext(quiver, args.twist, spec, regime)
    except ValueError as exc:
        raise ParseError(str(exc))


def _meta(args, ctx=None):
    meta = {
        "tool": "quivshuf",
        "version": __version__,
        "command": args.command,
        "rng_seed": args.rng_seed,
        "paranoid": bool(args.paranoid),
        "debug": bool(args.debug),
        "quiver_digest": None,
        "twist": getattr(args, "twist", None),
        "specialization": getattr(args, "specialize", None),
        "wheel_regime": getattr(args, "wheel_regime", None),
    }
    if ctx is not None:
        meta["quiver_digest"] = ctx.quiver.digest()
        meta["twist"] = ctx.twist
        meta["specialization"] = (
            ctx.specialization.describe() if ctx.specialization else "id"
        )
        meta["wheel_regime"] = ctx.wheel_regime
    return meta


def _positive(args, name):
    v = getattr(args, name)
    if v <= 0:
        raise ParseError("--%s must be positive" % name.replace("_", "-"))
    return v


def _element_arg(ctx, args):
    given = [
        opt
        for opt, val in (
            ("--word", args.word),
            ("--f-word", args.f_word),
            ("--element", args.element),
        )
        if val
    ]
    if len(given) != 1:
        raise ParseError("give exactly one of --word, --f-word, --element")
    if args.word:
        return ctx.e_w(parse_word(ctx.quiver, args.word))
    if args.f_word:
        return ctx.f_w(parse_word(ctx.quiver, args.f_word))
    return _load_element(ctx, args.element)


def _auto_witness(ctx, rng_seed, attempts=1000):
    """Deterministic torus witness for the context's parameters."""
    s = ctx.specialization or Specialization.identity(ctx.quiver.ring)
    rng = random.Random(rng_seed)
    for attempt in range(1, attempts + 1):
        w = {
            n: Fraction(rng.randint(1, 29), 30 + rng.randint(0, 90))
            for n in s.target.names
        }
        if validate_torus_witness(s, w):
            return w, attempt
    raise DegenerateParametersError(
        "no valid torus witness found in %d attempts" % attempts
    )


def _probe_setup(ctx, args, meta):
    """Resolve mode/witness; --paranoid forces the symbolic path."""
    mode = args.mode
    witness = None
    if args.paranoid:
        mode = "symbolic"
    elif mode == "probe":
        if args.witness:
            witness = _parse_assignment(args.witness)
        else:
            witness, _ = _auto_witness(ctx, args.rng_seed)
        meta["witness"] = {k: str(v) for k, v in sorted(witness.items())}
    meta["mode"] = mode
    return mode, witness


def _xpoly_str(p):
    """Render a one-variable Laurent polynomial {exp: coeff}."""
    if not p:
        return "0"
    parts = []
    for e in sorted(p):
        c = str(p[e])
        if e == 0:
            parts.append("(%s)" % c)
        elif e == 1:
            parts.append("(%s)*x" % c)
        else:
            parts.append("(%s)*x^%d" % (c, e))
    return " + ".join(parts)


# --- subcommands ---


def cmd_zeta(args):
    ctx = _context(args)
    i = ctx.quiver.check_vertex(args.i)
    j = ctx.quiver.check_vertex(args.j)
    z = ctx.kernel.zeta(i, j)
    result = {
        "i": i,
        "j": j,
        "num_factors": [_xpoly_str(f) for f in z.num_factors],
        "den_factors": [_xpoly_str(f) for f in z.den_factors],
    }
    if args.series_order is not None:
        if args.series_order < 0:
            raise ParseError("--series-order must be non-negative")
        series = zeta_ratio_series(ctx.kernel, i, j, args.series_order)
        result["ratio_series"] = [[e, str(series[e])] for e in sorted(series)]
    return {"meta": _meta(args, ctx), "result": result}


def cmd_shuffle(args):
    ctx = _context(args)
    items = []
    for it in args.items:
        if it.startswith("@"):
            items.append(_load_element(ctx, it[1:]))
            continue
        m = _ITEM_RE.match(it)
        if not m:
            raise ParseError("items look like vertex^exp or @file.json: %r" % it)
        items.append(generator(ctx, m.group(1), int(m.group(2)), args.side))
    total = items[0]
    for nxt in items[1:]:
        total = shuffle_product(ctx, total, nxt, args.side)
    result = {"side": args.side, "element": total.to_json_dict()}
    return {"meta": _meta(args, ctx), "result": result}


def cmd_wheel_check(args):
    ctx = _context(args)
    given = [
        opt
        for opt, val in (
            ("--word", args.word),
            ("--f-word", args.f_word),
            ("--element", args.element),
        )
        if val
    ]
    if len(given) != 1:
        raise ParseError("give exactly one of --word, --f-word, --element")
    if args.element:
        rep = wheel_check(ctx, _load_element(ctx, args.element), paranoid=args.paranoid)
    else:
        # generator products route through the substituted-product check,
        # which never builds the full element
        if args.word:
            w = parse_word(ctx.quiver, args.word)
            letters = [(l.vertex, l.exponent) for l in w]
        else:
            w = parse_word(ctx.quiver, args.f_word)
            letters = [(l.vertex, -l.exponent) for l in reversed(list(w))]
        rep = wheel_check_word(ctx, letters, paranoid=args.paranoid)
    return {"meta": _meta(args, ctx), "result": rep}


def cmd_pair(args):
    ctx = _context(args)
    w = parse_word(ctx.quiver, args.against)
    paranoid = args.paranoid or args.debug
    R = _element_arg(ctx, args)
    if args.symmetric:
        val = pair_symmetric(ctx, w, R, paranoid=paranoid)
    else:
        val = pair(ctx, R, w, paranoid=paranoid)
    result = {"against": str(w), "symmetric": bool(args.symmetric), "value": str(val)}
    return {"meta": _meta(args, ctx), "result": result}


def cmd_words_enumerate(args):
    ctx = _context(args)
    degree = _parse_degree(ctx.quiver, args.degree)
    window = _parse_window(args.window)
    words = enumerate_nonincreasing(degree, args.total, window, ctx.twist)
    result = {
        "degree": degree.to_json_dict(),
        "total": args.total,
        "window": list(window),
        "count": len(words),
        "words": [str(w) for w in words],
    }
    return {"meta": _meta(args, ctx), "result": result}


def cmd_graph_component(args):
    seed = _parse_int_tuple(args.seed)
    if args.n is not None and args.n != len(seed):
        raise ParseError("--n %d does not match seed length %d" % (args.n, len(seed)))
    cap = _positive(args, "cap")
    try:
        comp = component(seed, args.m, args.variant, cap=cap)
    except ValueError as exc:
        raise ParseError(str(exc))
    result = comp.to_json_dict()
    if args.edges:
        result["edges"] = [[list(u), list(t)] for u, t in comp.edges]
    return {"meta": _meta(args), "result": result}


def _seed_for_basis(ctx, args):
    if args.seed_word:
        if args.seed or args.degree:
            raise ParseError("--seed-word excludes --degree/--seed")
        w = parse_word(ctx.quiver, args.seed_word)
        return w.degree()[0], w
    if not (args.degree and args.seed):
        raise ParseError("give --seed-word, or --degree with --seed")
    degree = _parse_degree(ctx.quiver, args.degree)
    seed = _parse_int_tuple(args.seed)
    return degree, seed


def cmd_basis(args):
    ctx = _context(args)
    meta = _meta(args, ctx)
    degree, seed = _seed_for_basis(ctx, args)
    mode, witness = _probe_setup(ctx, args, meta)
    cb = build_component_basis(
        ctx,
        degree,
        seed,
        mode=mode,
        witness=witness,
        cap=_positive(args, "component_cap"),
        paranoid=args.paranoid or args.debug,
    )
    return {"meta": meta, "result": cb.to_json_dict()}


def cmd_decompose(args):
    ctx = _context(args)
    meta = _meta(args, ctx)
    R = _element_arg(ctx, args)
    mode, witness = _probe_setup(ctx, args, meta)
    terms = decompose(
        ctx,
        R,
        mode=mode,
        witness=witness,
        paranoid=args.paranoid or args.debug,
        max_steps=_positive(args, "peel_cap"),
        cap=_positive(args, "component_cap"),
    )
    back = reconstruct(ctx, terms, degree=R.degree)
    result = {
        "degree": R.degree.to_json_dict(),
        "terms": decomposition_report(terms),
        "round_trip": back == R,
    }
    return {"meta": meta, "result": result}


def cmd_tensor(args):
    ctx = _context(args)
    meta = _meta(args, ctx)
    degree, seed = _seed_for_basis(ctx, args)
    mode, witness = _probe_setup(ctx, args, meta)
    cb = build_component_basis(
        ctx,
        degree,
        seed,
        mode=mode,
        witness=witness,
        cap=_positive(args, "component_cap"),
        paranoid=args.paranoid or args.debug,
    )
    pairs = canonical_tensor(cb)
    result = {
        "degree": degree.to_json_dict(),
        "standard": [str(w) for w in cb.standard],
        "summands": [
            {
                "word": str(w),
                "dual": ew.to_json_dict(),
                "f_side": fw.to_json_dict(),
            }
            for w, (ew, fw) in zip(cb.standard, pairs)
        ],
    }
    return {"meta": meta, "result": result}


def cmd_theorem_check(args):
    ctx = _context(args)
    meta = _meta(args, ctx)
    degree = _parse_degree(ctx.quiver, args.degree)
    window = _parse_window(args.window)
    mode, witness = _probe_setup(ctx, args, meta)
    rep = theorem_main_check(
        ctx,
        degree,
        window,
        total=args.total,
        mode=mode,
        witness=witness,
        paranoid=args.paranoid or args.debug,
        cap=_positive(args, "component_cap"),
    )
    return {"meta": meta, "result": rep}


def cmd_torus_witness(args):
    ctx = _context(args)
    s = ctx.specialization or Specialization.identity(ctx.quiver.ring)
    if args.check:
        w = _parse_assignment(args.check)
        result = {
            "witness": {k: str(v) for k, v in sorted(w.items())},
            "valid": validate_torus_witness(s, w),
        }
    else:
        w, used = _auto_witness(ctx, args.rng_seed, _positive(args, "attempts"))
        result = {
            "witness": {k: str(v) for k, v in sorted(w.items())},
            "valid": True,
            "attempts": used,
        }
    return {"meta": _meta(args, ctx), "result": result}


_COMMANDS = {
    "zeta": cmd_zeta,
    "shuffle": cmd_shuffle,
    "wheel-check": cmd_wheel_check,
    "pair": cmd_pair,
    "words-enumerate": cmd_words_enumerate,
    "graph-component": cmd_graph_component,
    "basis": cmd_basis,
    "decompose": cmd_decompose,
    "tensor": cmd_tensor,
    "theorem-check": cmd_theorem_check,
    "torus-witness": cmd_torus_witness,
}


# --- argument plumbing ---


def _add_io_args(sp):
    sp.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    sp.add_argument("--pretty", action="store_true", help="indented JSON rendering")
    sp.add_argument(
        "--rng-seed",
        type=int,
        default=0,
        metavar="N",
        help="seed for witness probes; recorded in every report",
    )
    sp.add_argument(
        "--paranoid",
        action="store_true",
        help="all-triples wheel checks and symbolic-only rank selection",
    )
    sp.add_argument(
        "--debug",
        action="store_true",
        help="enable truncation-stability and residual re-check assertions",
    )


def _add_ctx_args(sp):
    sp.add_argument("--quiver", metavar="PATH", help="quiver JSON file")
    sp.add_argument("--twist", choices=TWISTS, default="plain")
    sp.add_argument(
        "--specialize",
        default="id",
        metavar="SPEC",
        help='parameter specialization: "id", "sqrt-q", or e.g. "u2^2=q,q=u2^2,t1=u2"',
    )
    sp.add_argument(
        "--wheel-regime",
        choices=WHEEL_REGIMES,
        default=None,
        help="default: restricted when specialized, else three_variable",
    )


def _add_mode_args(sp):
    sp.add_argument("--mode", choices=("symbolic", "probe"), default="symbolic")
    sp.add_argument(
        "--witness",
        metavar="ASSIGN",
        help='probe-mode parameter point, e.g. "q=1/5,t1=1/3"; drawn from --rng-seed when omitted',
    )
    sp.add_argument(
        "--component-cap",
        type=int,
        default=DEFAULT_COMPONENT_CAP,
        metavar="N",
    )


def _add_element_args(sp):
    sp.add_argument("--word", metavar="W", help='product e_w of a word, e.g. "[1^0 1^1]"')
    sp.add_argument(
        "--f-word", metavar="W", help="opposite-side product f_w (exponents negated)"
    )
    sp.add_argument("--element", metavar="PATH", help="element JSON file")


def build_parser():
    p = argparse.ArgumentParser(
        prog="quivshuf",
        description="Shuffle-algebra computations attached to a quiver.",
        epilog="Set QUIVSHUF_CACHE_DIR to persist word products across runs.",
    )
    p.add_argument("--version", action="version", version="quivshuf " + __version__)
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sp = sub.add_parser("zeta", help="zeta kernel factors and ratio series")
    _add_ctx_args(sp)
    _add_io_args(sp)
    sp.add_argument("--i", required=True, metavar="V")
    sp.add_argument("--j", required=True, metavar="V")
    sp.add_argument("--series-order", type=int, default=None, metavar="N")

    sp = sub.add_parser("shuffle", help="product of generators and elements")
    _add_ctx_args(sp)
    _add_io_args(sp)
    sp.add_argument("--side", choices=("e", "f"), default="e")
    sp.add_argument("items", nargs="+", metavar="ITEM", help="vertex^exp or @file.json")

    sp = sub.add_parser("wheel-check", help="wheel-ideal membership test")
    _add_ctx_args(sp)
    _add_io_args(sp)
    _add_element_args(sp)

    sp = sub.add_parser("pair", help="bilinear pairing against a word")
    _add_ctx_args(sp)
    _add_io_args(sp)
    _add_element_args(sp)
    sp.add_argument("--against", required=True, metavar="W", help="pairing word")
    sp.add_argument(
        "--symmetric",
        action="store_true",
        help="reversed-contour form <e_against, element>",
    )

    sp = sub.add_parser("words-enumerate", help="non-increasing words in a window")
    _add_ctx_args(sp)
    _add_io_args(sp)
    sp.add_argument("--degree", required=True, metavar="D", help='e.g. "1:2,2:1"')
    sp.add_argument("--total", required=True, type=int, metavar="N")
    sp.add_argument("--window", required=True, metavar="LO,HI")

    sp = sub.add_parser("graph-component", help="BFS component of the exponent graph")
    _add_io_args(sp)
    sp.add_argument("--n", type=int, default=None, metavar="N")
    sp.add_argument("--m", required=True, type=int, metavar="M")
    sp.add_argument("--seed", required=True, metavar="D1,...,DN")
    sp.add_argument("--variant", choices=VARIANTS, default="G")
    sp.add_argument("--cap", type=int, default=DEFAULT_COMPONENT_CAP, metavar="N")
    sp.add_argument("--edges", action="store_true", help="include the edge list")

    sp = sub.add_parser("basis", help="standard words and dual basis of a component")
    _add_ctx_args(sp)
    _add_io_args(sp)
    _add_mode_args(sp)
    sp.add_argument("--seed-word", metavar="W")
    sp.add_argument("--degree", metavar="D")
    sp.add_argument("--seed", metavar="D1,...,DN", help="exponent-tuple seed")

    sp = sub.add_parser("decompose", help="peel an element into the dual basis")
    _add_ctx_args(sp)
    _add_io_args(sp)
    _add_mode_args(sp)
    _add_element_args(sp)
    sp.add_argument("--peel-cap", type=int, default=DEFAULT_PEEL_CAP, metavar="N")

    sp = sub.add_parser("tensor", help="canonical tensor summands of a component")
    _add_ctx_args(sp)
    _add_io_args(sp)
    _add_mode_args(sp)
    sp.add_argument("--seed-word", metavar="W")
    sp.add_argument("--degree", metavar="D")
    sp.add_argument("--seed", metavar="D1,...,DN", help="exponent-tuple seed")

    sp = sub.add_parser("theorem-check", help="wheel solutions all decompose")
    _add_ctx_args(sp)
    _add_io_args(sp)
    _add_mode_args(sp)
    sp.add_argument("--degree", required=True, metavar="D")
    sp.add_argument("--window", required=True, metavar="LO,HI")
    sp.add_argument("--total", type=int, default=None, metavar="N")

    sp = sub.add_parser("torus-witness", help="find or validate a parameter witness")
    _add_ctx_args(sp)
    _add_io_args(sp)
    sp.add_argument("--check", metavar="ASSIGN", help='validate e.g. "q=1/5,t1=1/3"')
    sp.add_argument("--attempts", type=int, default=1000, metavar="N")

    return p


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CODES["ok"] if exc.code in (0, None) else EXIT_CODES["parse"]
    try:
        report = _COMMANDS[args.command](args)
        _write_report(report, args)
    except ParseError as exc:
        print("quivshuf: parse error: %s" % exc, file=sys.stderr)
        return EXIT_CODES["parse"]
    except CapExceededError as exc:
        print("quivshuf: cap exceeded: %s" % exc, file=sys.stderr)
        return EXIT_CODES["cap"]
    except (DegenerateParametersError, SpecializationPoleError, EvaluationPoleError) as exc:
        print("quivshuf: degenerate parameters: %s" % exc, file=sys.stderr)
        return EXIT_CODES["degenerate"]
    except OSError as exc:
        print("quivshuf: file error: %s" % exc, file=sys.stderr)
        return EXIT_CODES["file"]
    except ValueError as exc:
        print("quivshuf: parse error: %s" % exc, file=sys.stderr)
        return EXIT_CODES["parse"]
    except QuivshufError as exc:
        print("quivshuf: error: %s" % exc, file=sys.stderr)
        return EXIT_CODES["internal"]
    return EXIT_CODES["ok"]


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
