from __future__ import annotations

# Command-line workbench: ``glp <subcommand> ...``.
#
# Exit codes: 0 decided, 2 bounded search left the answer open, 1 error.

import argparse
import json
import logging
import sys

from .config import ModelConfig
from .corpus import AXIOMS, axiom_instances, sample_points, sample_worlds
from .formula import FormulaSyntaxError, Worm, parse
from .hyper import INF, norm
from .kripke import (
    BelowThreshold, SearchCapExceeded, decide, model_for, worm_verdict,
)
from .lseq import LSeq, LSeqError, main_axis
from .ordinal import OMEGA, OrdinalError, parse_ordinal
from .topo import agree, topo_model_for

log = logging.getLogger("glpzero")

EXIT_OK, EXIT_ERR, EXIT_BOUNDED = 0, 1, 2


def _ord(text, unicode_out):
    return text.pretty() if unicode_out else str(text)


def _config(args) -> ModelConfig:
    lam = parse_ordinal(args.lam) if args.lam else OMEGA
    theta = parse_ordinal(args.theta) if args.theta else None
    kw = {}
    if args.norm_budget is not None:
        kw["norm_budget"] = None if args.norm_budget < 0 else args.norm_budget
    if args.max_candidates is not None:
        kw["max_candidates"] = args.max_candidates
    return ModelConfig.default(lam, theta, **kw)


def _emit(args, obj, text):
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def cmd_ord(args) -> int:
    x = parse_ordinal(args.expr, allow_log=True)
    if args.norm is not None:
        G = [parse_ordinal(g) for g in args.gamma.split(",") if g.strip()] if args.gamma else []
        n = norm(x, G, args.norm)
        shown = "inf" if n == INF else str(n)
        _emit(args, {"ordinal": str(x), "norm": None if n == INF else n},
              f"{_ord(x, not args.ascii)}  norm={shown}")
        return EXIT_OK
    _emit(args, {"ordinal": str(x)}, str(x) if args.ascii else x.pretty())
    return EXIT_OK


def _verdict(args, mode) -> int:
    cfg = _config(args)
    phi = parse(args.formula)
    v = decide(phi, cfg, mode)
    if args.json:
        print(json.dumps(v.to_json(), sort_keys=True))
    else:
        line = v.result
        if v.witness is not None:
            line += f"  witness {_ord(v.witness, not args.ascii)}"
        line += f"  (budget {v.budget}"
        line += ", bounded-search)" if v.bounded else ")"
        print(line)
    return EXIT_BOUNDED if v.result == "unknown" else EXIT_OK


def cmd_sat(args) -> int:
    return _verdict(args, "sat")


def cmd_valid(args) -> int:
    return _verdict(args, "valid")


def cmd_eval(args) -> int:
    cfg = _config(args)
    phi = parse(args.formula)
    w = args.world.strip()
    if w.startswith("{"):
        f = LSeq.from_json(json.loads(w)).with_config(cfg)
    else:
        f = main_axis(parse_ordinal(w), cfg)
    m = model_for(cfg)
    r = m.eval(phi, f)
    bounded = m.is_bounded(phi)
    _emit(args, {"formula": str(phi), "world": f.to_json(), "result": r, "bounded": bounded},
          f"{str(r).lower()}" + ("  (bounded-search)" if bounded else ""))
    return EXIT_OK


def cmd_agree(args) -> int:
    cfg = _config(args)
    rep = agree(parse(args.formula), parse_ordinal(args.point), cfg)
    _emit(args, rep, f"kripke={rep['kripke']} topo={rep['topo']} "
                     f"{'match' if rep['match'] else 'MISMATCH'}")
    return EXIT_OK if rep["match"] else EXIT_ERR


def cmd_worm(args) -> int:
    cfg = _config(args)
    A, B = Worm.parse(args.a), Worm.parse(args.b)
    xi = parse_ordinal(args.xi)
    v = worm_verdict(A, B, xi, cfg)
    r = {"valid": True, "invalid": False}.get(v.result)
    shown = "unknown" if r is None else str(r).lower()
    _emit(args, {"A": str(A), "B": str(B), "xi": str(xi), "result": r,
                 "budget": v.budget, "bounded": v.bounded},
          shown + ("  (bounded-search)" if v.bounded else ""))
    return EXIT_BOUNDED if r is None else EXIT_OK


def cmd_axioms(args) -> int:
    cfg = _config(args)
    inst = axiom_instances(args.seed, args.count, args.depth, _indices(args, cfg))
    worlds = sample_worlds(args.seed + 1, args.worlds, cfg)
    points = sample_points(args.seed + 2, args.worlds, cfg)
    km, tm = model_for(cfg), topo_model_for(cfg)
    passed = 0
    failures = []
    for kind, phi in inst:
        ok = all(km.eval(phi, f) for f in worlds) and all(tm.eval(phi, x) for x in points)
        if ok:
            passed += 1
        else:
            failures.append({"axiom": kind, "formula": str(phi)})
    bounded = any(km.is_bounded(phi) for _, phi in inst)
    obj = {"passed": passed, "failed": len(failures), "failures": failures,
           "seed": args.seed, "bounded": bounded}
    text = f"{passed} pass, {len(failures)} fail" + ("  (bounded-search)" if bounded else "")
    for fl in failures:
        text += f"\n  {fl['axiom']}: {fl['formula']}"
    _emit(args, obj, text)
    return EXIT_OK if not failures else EXIT_ERR


def _indices(args, cfg):
    xs = [parse_ordinal(s) for s in args.indices.split(",")]
    return tuple(x for x in xs if x < cfg.lam)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="glp", description="Ordinal hyperation and closed GLP workbench")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta", help="depth of the model (default e(lambda,1))")
    common.add_argument("--lambda", dest="lam", help="length of the model (default w)")
    common.add_argument("--norm-budget", type=int,
                        help="cap on the per-step norm budget; negative means exact")
    common.add_argument("--max-candidates", type=int)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--ascii", action="store_true", help="print ordinals in input grammar")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("ord", parents=[common], help="evaluate an ordinal expression")
    s.add_argument("expr")
    s.add_argument("--norm", type=int, metavar="BUDGET", help="also report the norm up to BUDGET")
    s.add_argument("--gamma", help="comma-separated hyperexponent indices for --norm")
    s.set_defaults(fn=cmd_ord)

    for name, fn in (("sat", cmd_sat), ("valid", cmd_valid)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("formula")
        s.set_defaults(fn=fn)

    s = sub.add_parser("eval", parents=[common], help="evaluate at a world (ordinal or LSeq JSON)")
    s.add_argument("formula")
    s.add_argument("world")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("agree", parents=[common], help="compare Kripke and topological verdicts")
    s.add_argument("formula")
    s.add_argument("point")
    s.set_defaults(fn=cmd_agree)

    s = sub.add_parser("worm", parents=[common], help="decide A <_xi B")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("xi")
    s.set_defaults(fn=cmd_worm)

    s = sub.add_parser("axioms", parents=[common], help="randomized soundness run")
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--worlds", type=int, default=20)
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--indices", default="0,1,w")
    s.set_defaults(fn=cmd_axioms)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except (OrdinalError, FormulaSyntaxError, LSeqError, BelowThreshold, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERR
    except SearchCapExceeded as exc:
        print(f"error: search cap exceeded: {exc}", file=sys.stderr)
        return EXIT_ERR


if __name__ == "__main__":
    sys.exit(main())
