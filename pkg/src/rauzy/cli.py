"""Command-line entry point: ``rauzy <group> <command> [options]``.

Every report embeds the RunConfig it was produced from.  JSON is the
machine format, TSV the plotting format (config as a leading comment line).
Exit codes: 0 all checks passed, 1 a check failed or a computation could not
be completed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import ast
import dataclasses
import json
import operator
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import fractal, gasket, iet, isometries, measures, novikov, suspension, words
from .core import (BARYCENTER, InputError, RauzyError, SimplexPoint, fmt_rational, parse_rational,
                   parse_word)

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


# -- configuration and serialisation -------------------------------------------------------

@dataclass
class RunConfig:
    subcommand: str
    lam: Optional[str] = None
    word: Optional[str] = None
    knobs: dict = field(default_factory=dict)
    format: str = "json"
    seed: int = 0
    precision: Optional[int] = None

    def header(self) -> dict:
        return {"subcommand": self.subcommand, "lambda": self.lam, "word": self.word, "knobs": self.knobs,
                "format": self.format, "seed": self.seed, "precision": self.precision}


def jsonable(o):
    """Exact, deterministic JSON view of result objects: rationals as "p/q" strings."""
    if o is None or isinstance(o, (bool, str)):
        return o
    if isinstance(o, Fraction):
        return fmt_rational(o)
    if isinstance(o, int):
        return int(o)
    if isinstance(o, float):
        return o
    if isinstance(o, SimplexPoint):
        return str(o)
    if isinstance(o, iet.IetMap):
        return {"lambda": str(o.lam), "tilde": o.tilde}
    if isinstance(o, isometries.IsometrySystem):
        return json.loads(o.to_json())
    if isinstance(o, (bytes, bytearray)):
        return "".join(str(b) for b in o)
    if type(o).__module__.startswith("mpmath"):
        import mpmath
        return mpmath.nstr(o, 30)
    if hasattr(o, "tolist"):
        return jsonable(o.tolist())
    if dataclasses.is_dataclass(o):
        return {f.name: jsonable(getattr(o, f.name)) for f in dataclasses.fields(o)}
    if isinstance(o, dict):
        items = [(k if isinstance(k, str) else json.dumps(jsonable(k)), jsonable(v)) for k, v in o.items()]
        return dict(sorted(items))
    if isinstance(o, (set, frozenset)):
        return sorted((jsonable(v) for v in o), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(o, (list, tuple)):
        return [jsonable(v) for v in o]
    return str(o)


def emit_json(cfg: RunConfig, result, out) -> None:
    out.write(json.dumps({"config": cfg.header(), "result": jsonable(result)}, indent=2, sort_keys=True))
    out.write("\n")


def emit_tsv(cfg: RunConfig, header: Sequence[str], rows, out) -> None:
    out.write("# config " + json.dumps(cfg.header(), sort_keys=True) + "\n")
    out.write("\t".join(header) + "\n")
    for r in rows:
        out.write("\t".join(_cell(v) for v in r) + "\n")


def _cell(v) -> str:
    if isinstance(v, Fraction):
        return fmt_rational(v)
    if isinstance(v, float):
        return repr(v)
    j = jsonable(v)
    return j if isinstance(j, str) else json.dumps(j)


# -- parsing -------------------------------------------------------------------------------

def parse_lambda(s: str, normalize: bool = False) -> SimplexPoint:
    """Three whitespace-separated rationals; a trailing ``--normalize`` token rescales to Δ."""
    toks = s.split()
    if "--normalize" in toks:
        normalize = True
        s = s.replace("--normalize", " " * len("--normalize"))
    return SimplexPoint.parse(s, normalize=normalize)


def sample_rationals(rng: random.Random, n: int, max_den: int = 1000, lo=Fraction(0), hi=Fraction(1)) -> list:
    """Seeded rationals in [lo, hi) with denominators ≤ max_den (before rescaling)."""
    out = []
    for _ in range(n):
        q = rng.randint(1, max_den)
        out.append(lo + (hi - lo) * Fraction(rng.randrange(q), q))
    return out


def sample_lambdas(rng: random.Random, n: int, max_den: int = 1000, interior: bool = True) -> list[SimplexPoint]:
    out = []
    while len(out) < n:
        a, b = sorted(rng.randint(0, max_den) for _ in range(2))
        lam = SimplexPoint(Fraction(a, max_den), Fraction(b - a, max_den), Fraction(max_den - b, max_den))
        if interior and lam.is_boundary():
            continue
        out.append(lam)
    return out


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Pow: operator.pow,
        ast.FloorDiv: operator.floordiv}


def parse_exponents(expr: str, count: int) -> list[int]:
    """k_j for j = 1..count from an integer expression in j, e.g. "2^j" or "3*j^2+1"."""
    try:
        tree = ast.parse(expr.replace("^", "**"), mode="eval")
    except SyntaxError as e:
        raise InputError(f"cannot parse exponent expression {expr!r}") from e

    def ev(node, j):
        if isinstance(node, ast.Expression):
            return ev(node.body, j)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id == "j":
            return j
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left, j), ev(node.right, j))
        raise InputError(f"unsupported token in exponent expression {expr!r}")

    return [int(ev(tree, j)) for j in range(1, count + 1)]


def parse_face_point(s: str):
    """"face:u,v" with face an index 0..11 and (u, v) rational in-face coordinates."""
    try:
        f, uv = s.split(":")
        u, v = uv.split(",")
        face = int(f)
    except ValueError as e:
        raise InputError(f"expected face:u,v, got {s!r}") from e
    if not 0 <= face < 12:
        raise InputError("face index must be in 0..11")
    return face, (parse_rational(u.strip()), parse_rational(v.strip()))


# -- dictionary driver ---------------------------------------------------------------------

def _leg(name: str, fn) -> dict:
    try:
        ok, witness = fn()
    except RauzyError as e:
        return {"leg": name, "pass": False, "error": f"{type(e).__name__}: {e}"}
    return {"leg": name, "pass": bool(ok), "witness": witness}


def _leg_iet_gasket(lam: SimplexPoint, samples: list, depth: int):
    T = iet.IetMap(lam)
    letters = []
    for _ in range(depth):
        if T.lam.is_vertex():
            break
        g, _tie = gasket.first_letter(T.lam)
        try:
            st = iet.rauzy_induction_step(T)
        except iet.NoDominantLetter:
            if g is not None:
                return False, {"letters": letters, "mismatch": "gasket has a letter, induction has none"}
            lo, hi = iet.period3_window(T.lam)
            inner = [lo + (hi - lo) * u for u in samples if u > 0]
            ok = all(T(T(T(y))) == y for y in inner)
            return ok, {"letters": letters, "terminal": str(T.lam), "period3_window": [lo, hi]}
        if st.letter != g or st.T.lam != gasket.apply_f_inv(g, T.lam):
            return False, {"letters": letters, "mismatch_at": len(letters)}
        for u in samples:
            if iet.induced_map(T, g, u) != st.T(u):
                return False, {"letters": letters, "sample": u}
        letters.append(g)
        T = st.T
    return True, {"letters": letters, "terminal": str(T.lam)}


def _leg_susp(lam: SimplexPoint, samples: list):
    E = suspension.enhanced_S_lambda(lam)
    P = suspension.poincare_map(E, suspension.default_transversal(lam))
    bad = [2 * u for u in samples if P(2 * u) != suspension.doubled_T(lam, 2 * u)]
    return not bad, {"branches": len(P.branches), "samples": len(samples), "mismatches": bad[:5]}


def _leg_novikov(lam: SimplexPoint):
    if lam.is_vertex():
        return False, {"reason": "vertex of Δ excluded"}
    rep = novikov.first_return_iet(lam)
    return rep.match, {"rotation": rep.rotation, "reflected": rep.reflected,
                       "rotation_as_predicted": rep.rotation_as_predicted, "length_vector": rep.length_vector}


def _leg_rips(lam: SimplexPoint, depth: int):
    S = isometries.make_S_lambda(lam)
    cur = lam
    scale = Fraction(1)
    letters = []
    for _ in range(depth):
        if cur.is_vertex():
            break
        g, _tie = gasket.first_letter(cur)
        try:
            st = isometries.rips_step(S)
        except isometries.NoFreeArc:
            return g is None, {"letters": letters, "terminal": str(cur)}
        nxt = gasket.apply_f_inv(g, cur) if g is not None else None
        scale *= cur.coord(g) if g is not None else 1
        if st.letter != g or st.system != isometries.make_S_lambda(nxt).scaled(scale):
            return False, {"letters": letters, "mismatch_at": len(letters)}
        letters.append(g)
        S, cur = st.system, nxt
    return True, {"letters": letters, "terminal": str(cur)}


def dictionary_check(arg, samples: int = 20, depth: int = 12, seed: int = 0) -> dict:
    """Run the four model comparisons on one parameter; a word is realised as f_w(barycenter)."""
    if isinstance(arg, SimplexPoint):
        lam = arg
    else:
        lam = gasket.point_from_word(parse_word(arg) if isinstance(arg, str) else arg)
    rng = random.Random(seed)
    us = sample_rationals(rng, samples)
    legs = [
        _leg("iet_vs_gasket", lambda: _leg_iet_gasket(lam, us, depth)),
        _leg("suspension_vs_2T", lambda: _leg_susp(lam, us)),
        _leg("novikov_match", lambda: _leg_novikov(lam)),
        _leg("rips_vs_gasket", lambda: _leg_rips(lam, depth)),
    ]
    cls = iet.classify(lam)
    tri = isometries.classify_trichotomy(lam)
    return {"lambda": str(lam), "legs": legs, "all_pass": all(l["pass"] for l in legs),
            "classification": {"iet": cls.verdict, "isometries": tri.verdict}}


# -- command handlers ----------------------------------------------------------------------

def _lam(a) -> SimplexPoint:
    if getattr(a, "lambda_", None) is None:
        raise InputError("--lambda is required")
    return parse_lambda(a.lambda_, a.normalize)


def cmd_gasket(a, cfg, out):
    if a.cmd == "member":
        verdict, dw = gasket.membership(_lam(a), a.max_depth)
        emit_json(cfg, {"verdict": verdict, "directing_word": str(dw), "word": dw}, out)
    elif a.cmd == "word":
        dw, term = gasket.directing_word(_lam(a), a.len)
        emit_json(cfg, {"word": str(dw), "status": dw.status, "ambiguous_at": dw.ambiguous_at,
                        "terminal": term}, out)
    elif a.cmd == "point":
        p = gasket.point_from_word(parse_word(a.word))
        if a.format == "json":
            emit_json(cfg, {"point": p}, out)
        else:
            out.write(str(p) + "\n")
    return EXIT_OK


def cmd_iet(a, cfg, out):
    if a.cmd == "orbit":
        T = iet.IetMap(_lam(a), a.tilde)
        orb = iet.orbit(T, parse_rational(a.x), a.n)
        rows = [(k, x, T.branch(x), T.letter_of(x)) for k, x in enumerate(orb.points)]
        emit_tsv(cfg, ("k", "x", "branch", "letter"), rows, out)
    elif a.cmd == "induct":
        steps = iet.induction_run(iet.IetMap(_lam(a)), a.steps)
        emit_json(cfg, [{"letter": s.letter, "lambda": s.T.lam, "scale": s.scale, "ambiguous": s.ambiguous}
                        for s in steps], out)
    elif a.cmd == "classify":
        if a.word is not None:
            res = iet.classify_word(parse_word(a.word), parse_word(a.period or a.word))
        else:
            res = iet.classify(_lam(a), a.max_depth)
        emit_json(cfg, res, out)
    return EXIT_OK


def _read_word(a) -> bytes:
    if a.word_file:
        with open(a.word_file, encoding="ascii") as fh:
            text = "".join(fh.read().split())
        return bytes(parse_word(text))
    if a.word:
        return bytes(parse_word(a.word))
    return words.code(_lam(a), parse_rational(a.x), a.n).letters


def cmd_words(a, cfg, out):
    if a.cmd == "code":
        c = words.code(_lam(a), parse_rational(a.x), a.n, a.tilde)
        if a.format == "json":
            emit_json(cfg, {"word": c.letters, "frequencies": words.letter_frequencies(c)}, out)
        else:
            emit_tsv(cfg, ("n", "word"), [(len(c.letters), c.letters)], out)
    elif a.cmd == "complexity":
        w = _read_word(a)
        prof = words.complexity_profile(w, a.nmax)
        emit_tsv(cfg, ("n", "p", "right_special", "left_special"), prof.rows(), out)
    return EXIT_OK


def cmd_measures(a, cfg, out):
    if a.cmd == "cert":
        w = parse_word(a.word)
        ev = measures.unique_ergodicity_evidence(w, a.window)
        res = {"product": measures.word_product(w), "positive": bool((measures.word_product(w) > 0).all()),
               "certificate": measures.positivity_certificate(w), "evidence": ev, "count": ev.count}
        emit_json(cfg, res, out)
        return EXIT_OK if res["positive"] else EXIT_CHECK
    if a.cmd == "nonue":
        letters = [parse_word(a.pattern)[j % len(a.pattern)] for j in range(a.m + 1)]
        ks = parse_exponents(a.exp, a.m + 1)
        r = measures.nonUE_measures(letters, ks, a.m, a.prec)
        rows = []
        rep = None
        if a.birkhoff_n > 0:
            blocks = a.birkhoff_blocks
            bw = measures.pattern_word(letters[:blocks], ks[:blocks])
            cols = [[float(v) for v in c] for c in r.columns]
            rep = measures.birkhoff_invariance_test(bw, cols, a.birkhoff_n, seed=cfg.seed, n_starts=a.birkhoff_starts)
        import mpmath
        for k in range(6):
            rows.append(("column", k + 1, mpmath.nstr(r.columns[0][k], 20), mpmath.nstr(r.columns[1][k], 20)))
        rows.append(("separation", "", mpmath.nstr(r.separation, 10), ""))
        rows.append(("last_successive", "", mpmath.nstr(r.successive[-1], 10), ""))
        rows.append(("x7_exact_zero", "", str(r.x7_exact_zero).lower(), ""))
        if rep is not None:
            for x, res in zip(rep.starts, rep.residuals):
                rows.append(("birkhoff", fmt_rational(x), f"{res[0]:.6f}", f"{res[1]:.6f}"))
        emit_tsv(cfg, ("row", "index", "c0", "c1"), rows, out)
    return EXIT_OK


def _system(a) -> isometries.IsometrySystem:
    if getattr(a, "system", None):
        with open(a.system, encoding="utf-8") as fh:
            return isometries.IsometrySystem.from_json(fh.read())
    return isometries.make_S_lambda(_lam(a))


def cmd_isom(a, cfg, out):
    if a.cmd == "ball":
        ball = isometries.orbit_ball(_system(a), parse_rational(a.x), a.radius)
        rows = []
        for e in ball.edges:
            ends = sorted(e)
            rows.append((ends[0], ends[-1]))
        rows.sort()
        emit_tsv(cfg, ("x", "y"), rows, out)
    elif a.cmd == "rips":
        steps = isometries.rips_run(_lam(a), a.steps)
        emit_json(cfg, [{"letter": s.letter, "scale": s.scale, "free_arc": s.free_arc, "system": s.system,
                         "ambiguous": s.ambiguous} for s in steps], out)
    elif a.cmd == "classify":
        arg = parse_word(a.word) if a.word else _lam(a)
        emit_json(cfg, isometries.classify_trichotomy(arg, a.max_depth), out)
    return EXIT_OK


def cmd_susp(a, cfg, out):
    if a.cmd == "build":
        sc = suspension.build_double_suspension(suspension.enhanced_S_lambda(_lam(a)))
        emit_json(cfg, {"euler": sc.euler, "genus": sc.genus, "eps": sc.eps, "singularities": sc.singularities,
                        "gluing_audit": sc.gluing_audit, "strips": sc.strips}, out)
        return EXIT_OK if sc.gluing_audit else EXIT_CHECK
    if a.cmd == "poincare":
        lam = _lam(a)
        res = _leg_susp(lam, sample_rationals(random.Random(cfg.seed), a.samples))
        emit_json(cfg, {"pass": res[0], **res[1]}, out)
        return EXIT_OK if res[0] else EXIT_CHECK
    if a.cmd == "ends":
        if a.lambda_word:
            lam = gasket.point_from_word(parse_word(a.lambda_word))
        else:
            lam = _lam(a)
        E = suspension.enhanced_S_lambda(lam)
        if a.x is None:
            xs = sample_rationals(random.Random(cfg.seed), a.samples, 10**6)
            emit_json(cfg, {"lambda": lam, "census": suspension.end_census(E, xs, a.radius)}, out)
            return EXIT_OK
        rep = suspension.count_ends(E, parse_rational(a.x), a.radius)
        emit_json(cfg, {"lambda": lam, "report": rep}, out)
        return EXIT_OK if rep.boundary_cycles == rep.leaf_count else EXIT_CHECK
    return EXIT_OK


DEFAULT_LEAF_STARTS = ("0:1/3,1/7", "5:2/5,1/9", "9:1/2,3/11")


def cmd_novikov(a, cfg, out):
    lam = _lam(a)
    if a.cmd == "trace":
        tr = novikov.trace_pl_leaf(lam, parse_face_point(a.start), a.n)
        rows = [(k, novikov.build_pl_surface().index(c.face), *c.point) for k, c in enumerate(tr.crossings)]
        emit_tsv(cfg, ("k", "face", "x1", "x2", "x3"), rows, out)
        return EXIT_OK if tr.audit_ok else EXIT_CHECK
    if a.cmd == "match":
        rep = novikov.first_return_iet(lam)
        emit_json(cfg, rep.to_json(), out)
        return EXIT_OK if rep.match else EXIT_CHECK
    if a.cmd == "svg":
        starts = [parse_face_point(s) for s in (a.leaf or DEFAULT_LEAF_STARTS)]
        novikov.render_svg(lam, starts, a.out, a.n)
        emit_json(cfg, {"out": a.out, "leaves": len(starts)}, out)
    return EXIT_OK


def cmd_fractal(a, cfg, out):
    if a.cmd == "area":
        areas = fractal.removed_areas(a.depth)
        if a.format == "tsv":
            emit_tsv(cfg, ("depth", "area", "float"), [(d, v, float(v)) for d, v in enumerate(areas)], out)
        else:
            emit_json(cfg, {"areas": areas, "float": [float(v) for v in areas]}, out)
    elif a.cmd == "dim":
        est = fractal.sierpinski_self_test(a.grid) if a.self_test else fractal.box_dimension_estimate(a.depth, a.grid)
        emit_json(cfg, est.to_json(), out)
    elif a.cmd == "svg":
        fractal.render_svg(a.depth, a.out)
        emit_json(cfg, {"out": a.out, "triangles": (3 ** (a.depth + 1) - 1) // 2}, out)
    return EXIT_OK


def cmd_dictionary(a, cfg, out):
    arg = parse_word(a.word) if a.word else _lam(a)
    rep = dictionary_check(arg, a.samples, a.depth, cfg.seed)
    emit_json(cfg, rep, out)
    return EXIT_OK if rep["all_pass"] else EXIT_CHECK


# -- argument parser -----------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, lam: bool = True) -> None:
    if lam:
        p.add_argument("--lambda", dest="lambda_", help='three rationals, e.g. "1/2 1/4 1/4"')
        p.add_argument("--normalize", action="store_true", help="rescale λ to sum 1")
    p.add_argument("--format", choices=("json", "tsv", "svg"), default=None)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rauzy", description="Arnoux-Rauzy dynamics and the Rauzy gasket.")
    groups = ap.add_subparsers(dest="group", required=True)

    g = groups.add_parser("gasket").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("member"); _common(p); p.add_argument("--max-depth", type=int, default=64)
    p = g.add_parser("word"); _common(p); p.add_argument("--len", type=int, default=32)
    p = g.add_parser("point"); _common(p, lam=False); p.add_argument("--word", required=True)

    g = groups.add_parser("iet").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("orbit"); _common(p)
    p.add_argument("--x", required=True); p.add_argument("--n", type=int, default=20)
    p.add_argument("--tilde", action="store_true")
    p = g.add_parser("induct"); _common(p); p.add_argument("--steps", type=int, default=10)
    p = g.add_parser("classify"); _common(p); p.add_argument("--max-depth", type=int, default=64)
    p.add_argument("--word", help="directing-word prefix (symbolic verdict)"); p.add_argument("--period")

    g = groups.add_parser("words").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("code"); _common(p)
    p.add_argument("--x", required=True); p.add_argument("--n", type=int, default=1000)
    p.add_argument("--tilde", action="store_true")
    p = g.add_parser("complexity"); _common(p)
    p.add_argument("--word-file"); p.add_argument("--word"); p.add_argument("--x", default="0")
    p.add_argument("--n", type=int, default=100_000); p.add_argument("--nmax", type=int, default=15)

    g = groups.add_parser("measures").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("cert"); _common(p, lam=False)
    p.add_argument("--word", required=True); p.add_argument("--window", type=int, default=64)
    p = g.add_parser("nonue"); _common(p, lam=False)
    p.add_argument("--pattern", default="123"); p.add_argument("--exp", default="2^j")
    p.add_argument("--m", type=int, default=20); p.add_argument("--prec", type=int, default=None)
    p.add_argument("--birkhoff-n", type=int, default=0, help="orbit length for the Birkhoff check (0 skips)")
    p.add_argument("--birkhoff-blocks", type=int, default=10)
    p.add_argument("--birkhoff-starts", type=int, default=12)

    g = groups.add_parser("isom").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("ball"); _common(p)
    p.add_argument("--x", required=True); p.add_argument("--radius", type=int, default=10)
    p.add_argument("--system", help="JSON file with a general system of isometries")
    p = g.add_parser("rips"); _common(p); p.add_argument("--steps", type=int, default=10)
    p = g.add_parser("classify"); _common(p); p.add_argument("--word")
    p.add_argument("--max-depth", type=int, default=64)

    g = groups.add_parser("susp").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("build"); _common(p)
    p = g.add_parser("poincare"); _common(p); p.add_argument("--samples", type=int, default=50)
    p = g.add_parser("ends"); _common(p)
    p.add_argument("--lambda-word"); p.add_argument("--x", help="one orbit; omit for a D1/D2 census")
    p.add_argument("--radius", type=int, default=128)
    p.add_argument("--samples", type=int, default=50, help="census size when --x is omitted")

    g = groups.add_parser("novikov").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("trace"); _common(p)
    p.add_argument("--start", required=True, help="face:u,v"); p.add_argument("--n", type=int, default=200)
    p = g.add_parser("match"); _common(p)
    p = g.add_parser("svg"); _common(p)
    p.add_argument("--out", required=True); p.add_argument("--leaf", action="append")
    p.add_argument("--n", type=int, default=200)

    g = groups.add_parser("fractal").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("area"); _common(p, lam=False); p.add_argument("--depth", type=int, default=8)
    p = g.add_parser("dim"); _common(p, lam=False)
    p.add_argument("--depth", type=int, default=4096); p.add_argument("--grid", type=int, default=1 << 10)
    p.add_argument("--self-test", action="store_true", help="run the estimator on the Sierpinski triangle")
    p = g.add_parser("svg"); _common(p, lam=False)
    p.add_argument("--depth", type=int, default=6); p.add_argument("--out", required=True)

    p = groups.add_parser("dictionary"); _common(p)
    p.add_argument("--word"); p.add_argument("--samples", type=int, default=20)
    p.add_argument("--depth", type=int, default=12)
    return ap


HANDLERS = {"gasket": cmd_gasket, "iet": cmd_iet, "words": cmd_words, "measures": cmd_measures,
            "isom": cmd_isom, "susp": cmd_susp, "novikov": cmd_novikov, "fractal": cmd_fractal,
            "dictionary": cmd_dictionary}

_TSV_DEFAULT = {("iet", "orbit"), ("words", "code"), ("words", "complexity"), ("measures", "nonue"),
                ("isom", "ball"), ("novikov", "trace"), ("fractal", "area")}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    a = build_parser().parse_args(argv)
    cmd = getattr(a, "cmd", None)
    if a.format is None:
        a.format = "tsv" if (a.group, cmd) in _TSV_DEFAULT else "json"
    knobs = {k: v for k, v in sorted(vars(a).items())
             if k not in ("group", "cmd", "lambda_", "word", "format", "seed", "normalize") and v is not None}
    cfg = RunConfig(" ".join(x for x in (a.group, cmd) if x), getattr(a, "lambda_", None),
                    getattr(a, "word", None), knobs, a.format, a.seed,
                    getattr(a, "prec", None) or measures.default_precision())
    try:
        return HANDLERS[a.group](a, cfg, out)
    except InputError as e:
        print(f"input error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (RauzyError, ValueError) as e:
        print(f"check failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
