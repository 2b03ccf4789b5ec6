"""Command-line interface; every subcommand prints one JSON report on stdout.

Exit status: 0 all checks pass, 1 a verification failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction

from .cones import delta_hrep
from .diagram import build_diagram
from .family import box_equations, build_family, redundant_inequalities
from .lifting import (
    VerificationFailed, chain_verify, classify_pieces, lift_pullback, pl_verify_polytope,
    two_move_transport, verify_box_preservation, verify_roundtrip,
)
from .polytope import (
    NonIntegralDual, NormalizationFailure, dual_polytope, f_vector, face_fan_ranks,
    facet_quadruple_test, interior_point, lambda_apex, string_polytope, toric_ranks,
)
from .weyl import (
    DEFAULT_RANK_CAP, BraidMove, MoveNotApplicable, RankTooLarge, applicable_moves,
    enumerate_words, move_applicable, parse_word, standard_word,
)

SCHEMA = 1
log = logging.getLogger("stringpoly")


class InputError(ValueError):
    pass


def _q(x) -> str:
    return str(Fraction(x))


def _point(v) -> list[str]:
    return [_q(x) for x in v]


def _word(text: str, args):
    try:
        w = parse_word(text)
    except ValueError as e:
        raise InputError(f"bad word {text!r}: {e}") from e
    _cap(w.n, args)
    return w


def _cap(n: int, args) -> None:
    if n > DEFAULT_RANK_CAP and not args.allow_large:
        raise InputError(f"rank {n} exceeds the cap {DEFAULT_RANK_CAP}; pass --allow-large")


def _check(name: str, fn) -> dict:
    """Run one check; failures become {ok: false, witness} instead of exceptions."""
    try:
        out = fn()
    except (VerificationFailed, NormalizationFailure, NonIntegralDual) as e:
        return {"check": name, "ok": False, "error": str(e), "witness": _plain(getattr(e, "witness", None))}
    if isinstance(out, dict):
        return {"check": name, **out}
    return {"check": name, "ok": bool(out)}


def _plain(x):
    if isinstance(x, Fraction):
        return _q(x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if x is None or isinstance(x, (int, str, bool, float)):
        return x
    return str(x)


# --- subcommands -------------------------------------------------------------


def cmd_words(args) -> dict:
    _cap(args.n, args)
    words = enumerate_words(args.n, cap=args.n if args.allow_large else DEFAULT_RANK_CAP)
    return {"n": args.n, "count": len(words), "words": [list(w.letters) for w in words]}


def cmd_diagram(args) -> dict:
    return build_diagram(_word(args.word, args)).to_json()


def cmd_cone(args) -> dict:
    w = _word(args.word, args)
    return {"word": list(w.letters), "inequalities": [h.to_json() for h in delta_hrep(w)]}


def cmd_polytope(args) -> dict:
    w = _word(args.word, args)
    poly = string_polytope(w)
    out = {
        "word": list(w.letters),
        "vertices": [_point(v) for v in poly.vrep],
        "facets": [h.id for h in poly.facets],
        "redundant": [h.id for h in poly.hrep if not poly.facet_flags[h.id]],
        "integral": poly.is_integral(),
        "lambda_apex": _point(lambda_apex(w)),
    }
    ok = poly.is_integral()
    if args.f_vector:
        out["f_vector"] = list(f_vector(poly))
    if args.picard:
        cr, pr = toric_ranks(poly)
        out["toric"] = {"class_rank": cr, "picard_rank": pr}
    if args.dual:
        try:
            ip = interior_point(w, poly)
            dual = dual_polytope(poly, ip)
        except (NormalizationFailure, NonIntegralDual) as e:
            out["dual"] = {"ok": False, "error": str(e)}
            out["ok"] = False
            return out
        out["dual"] = {
            "interior_point": _point(ip.coords),
            "vertices": {lab: _point(v) for lab, v in zip(dual.vertex_labels, dual.vrep)},
            "integral": dual.is_integral(),
            "normalized": all(ip.slacks[h.id] == 1 for h in poly.facets),
        }
        ok = ok and dual.is_integral()
        if args.f_vector:
            out["dual"]["f_vector"] = list(f_vector(dual))
        if args.picard:
            cr, pr = face_fan_ranks(dual)
            out["dual"]["face_fan"] = {"class_rank": cr, "picard_rank": pr}
    out["ok"] = ok
    return out


def cmd_family(args) -> dict:
    w = _word(args.word, args)
    fam = build_family(w)
    space = box_equations(fam)
    return {
        "word": list(w.letters),
        **fam.to_json(),
        "box_equations": space.to_json(),
        "dim": space.dim,
        "saturation_index": space.saturation,
        "redundant": redundant_inequalities(fam),
    }


def _pos_move(w, pos: int) -> BraidMove:
    for kind in ("Three", "Two"):
        mv = BraidMove(kind, pos)
        if move_applicable(w, mv):
            return mv
    raise InputError(f"no braid move applies at position {pos} of {w}")


def move_checks(w, mv: BraidMove) -> list[dict]:
    if mv.kind == "Two":
        return [_check("two_move_transport", lambda: bool(two_move_transport(build_family(w), mv)))]
    i = mv.pos
    apex = lambda_apex(w)
    src = build_family(w)

    def pullback_check():
        dst, g = lift_pullback(src, mv)
        ok, witness = verify_box_preservation(box_equations(src), box_equations(dst), g)
        return {"ok": ok, "witness": witness, "coefficient_map": g.to_json()}

    return [
        _check("lambda_apex_hyperplane", lambda: {
            "ok": apex[i - 1] + apex[i + 1] == apex[i], "apex": _point(apex)}),
        _check("pl_polytope", lambda: pl_verify_polytope(w, mv).to_json()),
        _check("classify_pieces", lambda: classify_pieces(w, mv).to_json()),
        _check("pullback", pullback_check),
        _check("roundtrip", lambda: verify_roundtrip(w, mv).to_json()),
    ]


def cmd_verify_move(args) -> dict:
    w = _word(args.word, args)
    mv = _pos_move(w, args.pos)
    checks = move_checks(w, mv)
    return {"word": list(w.letters), "move": str(mv), "checks": checks, "ok": all(c["ok"] for c in checks)}


def cmd_verify_chain(args) -> dict:
    a, b = _word(args.from_word, args), _word(args.to_word, args)
    if a.n != b.n:
        raise InputError("words have different rank")
    check = _check("chain", lambda: chain_verify(a, b, args.seed).to_json())
    return {"checks": [check], "ok": check["ok"]}


def cmd_smallness(args) -> dict:
    w = _word(args.word, args)
    poly = string_polytope(w)
    cr, pr = toric_ranks(poly)
    return {
        "word": list(w.letters),
        "class_rank": cr,
        "picard_rank": pr,
        "flag_variety_picard_rank": w.n,
        "not_small": pr < w.n,
        "note": "toric-side necessary condition only: equal Picard ranks do not prove smallness",
        "ok": True,
    }


def word_checks(w) -> list[dict]:
    poly = string_polytope(w)
    checks = [_check("delta_integral", lambda: poly.is_integral())]
    holder = {}

    def dual_check():
        ip = interior_point(w, poly)
        holder["dual"] = dual_polytope(poly, ip)
        return holder["dual"].is_integral()

    checks.append(_check("dual_integral_normalized", dual_check))
    space = box_equations(w)
    if "dual" in holder:
        dual = holder["dual"]
        bad = []
        for eq in space.equations:
            ok, _ = facet_quadruple_test(dual, [eq.p1, eq.lam_top, eq.p2, eq.lam_bot], eq.box.top, eq.box.bot)
            if not ok:
                bad.append(eq.text())
        checks.append({"check": "box_quadruple_facets", "ok": not bad, "witness": bad[:1] or None})
    for mv in applicable_moves(w):
        for c in move_checks(w, mv):
            checks.append({**c, "move": str(mv)})
    return checks


def cmd_orbit(args) -> dict:
    _cap(args.n, args)
    words = enumerate_words(args.n, cap=args.n if args.allow_large else DEFAULT_RANK_CAP)
    per_word = []
    dims = set()
    for w in words:
        checks = word_checks(w)
        dims.add(box_equations(w).dim)
        failed = [c for c in checks if not c["ok"]]
        per_word.append({"word": list(w.letters), "checks": len(checks), "failed": failed})
    std = standard_word(args.n)
    space = box_equations(std)
    poly = string_polytope(std)
    dual = dual_polytope(poly, interior_point(std, poly))
    _, pic = face_fan_ranks(dual)
    identity = {"check": "dimension_identity", "word": list(std.letters), "dim_P": space.dim,
                "picard_rank_dual_face_fan": pic, "N": std.N, "ok": space.dim == pic + std.N}
    invariance = {"check": "dimension_invariance", "dims": sorted(dims), "ok": len(dims) == 1}
    ok = all(not r["failed"] for r in per_word) and identity["ok"] and invariance["ok"]
    return {"n": args.n, "words": len(words), "results": per_word,
            "global": [identity, invariance], "ok": ok}


# --- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--allow-large", action="store_true", help="lift the rank cap of 4")
    common.add_argument("--json", action="store_true", default=True, help="JSON output (the default and only format)")
    p = argparse.ArgumentParser(prog="stringpoly", description="String polytopes and Laurent mirror families")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("words", parents=[common], help="all reduced words of w0")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_words)
    for name, fn, help_ in [
        ("diagram", cmd_diagram, "string diagram"),
        ("cone", cmd_cone, "lambda and string inequalities"),
        ("family", cmd_family, "Laurent family and box equations"),
        ("smallness", cmd_smallness, "Picard-rank smallness indicator"),
    ]:
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--word", required=True)
        s.set_defaults(fn=fn)
    s = sub.add_parser("polytope", parents=[common], help="string polytope")
    s.add_argument("--word", required=True)
    s.add_argument("--dual", action="store_true")
    s.add_argument("--f-vector", action="store_true")
    s.add_argument("--picard", action="store_true")
    s.set_defaults(fn=cmd_polytope)

    v = sub.add_parser("verify", help="verify braid-move statements")
    vsub = v.add_subparsers(dest="what", required=True)
    s = vsub.add_parser("move", parents=[common])
    s.add_argument("--word", required=True)
    s.add_argument("--pos", type=int, required=True)
    s.set_defaults(fn=cmd_verify_move)
    s = vsub.add_parser("chain", parents=[common])
    s.add_argument("--from", dest="from_word", required=True)
    s.add_argument("--to", dest="to_word", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_verify_chain)

    s = sub.add_parser("orbit", parents=[common], help="full invariant suite over all words of rank n")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_orbit)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    command = [args.command] + ([args.what] if getattr(args, "what", None) else [])
    start = time.perf_counter()
    try:
        body = args.fn(args)
    except (InputError, RankTooLarge, MoveNotApplicable, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    # timing goes to stderr so stdout stays byte-identical across runs
    print(f"{' '.join(command)}: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    report = {"schema": SCHEMA, "command": " ".join(command), **body}
    print(json.dumps(report, sort_keys=True, indent=2, default=_plain))
    return 0 if report.get("ok", True) else 1


if __name__ == "__main__":
    sys.exit(main())
