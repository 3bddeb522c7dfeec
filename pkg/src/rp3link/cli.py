"""Command line interface: ``rp3link {lk,selflink,oracle,check,gen}``.

Exit codes: 0 success, 1 check disagreement, 2 input or validation error,
3 genericity exhaustion.
"""
import argparse
import csv
import json
import sys
from fractions import Fraction

from . import cover_oracle, samples
from .config import RunConfig, Tolerances
from .curves import format_curves, random_curve, read_curves
from .errors import GenericityError, InputError
from .linking import linking_number
from .selflink import self_linking

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_GENERICITY = 0, 1, 2, 3


def _common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--max-resamples", type=int, default=50)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--tol-residual", type=float, default=Tolerances.residual)
    p.add_argument("--tol-param", type=float, default=Tolerances.param)
    p.add_argument("--tol-disc", type=float, default=Tolerances.disc)
    p.add_argument("--tol-sign", type=float, default=Tolerances.sign)
    p.add_argument("--tol-separation", type=float, default=Tolerances.separation)
    p.add_argument("--json", action="store_true", help="print one JSON object")
    p.add_argument("--crossings", metavar="PATH", help="write the crossing table as CSV")
    p.add_argument("--affine", action="store_true",
                   help="vertex lines carry affine x y z, lifted as (1, x, y, z)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rp3link",
        description="Linking and self-linking numbers of PL curves in RP^3.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lk", help="linking number by counting lines through a point")
    p.add_argument("file")
    p.add_argument("a", help="curve name, or comma-separated names of one cycle")
    p.add_argument("b")
    _common(p)

    p = sub.add_parser("selflink", help="self-linking number of a null-homologous knot")
    p.add_argument("file")
    p.add_argument("knot")
    _common(p)

    for name, helptext in (("oracle", "double-cover oracle values"),
                           ("check", "compare line counting with the oracle")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("a")
        p.add_argument("b", nargs="?")
        p.add_argument("--selflink", action="store_true")
        _common(p)
        if name == "check":
            # harness sanity only: negates every crossing sign
            p.add_argument("--corrupt-sign", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("gen", help="write a sample curve file")
    p.add_argument("type", choices=["lines", "hopf-affine", "split", "random"])
    p.add_argument("--edges", type=int, default=None)
    p.add_argument("--class", dest="classes", type=int, nargs="+", default=[0, 1],
                   choices=[0, 1], help="homology class per random curve (one or two)")
    p.add_argument("--scale", type=float, default=4.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default="-")
    return parser


def _config(args):
    tol = Tolerances(residual=args.tol_residual, param=args.tol_param, disc=args.tol_disc,
                     sign=args.tol_sign, separation=args.tol_separation)
    return RunConfig(seed=args.seed, trials=args.trials, tol=tol,
                     max_resamples=args.max_resamples, workers=args.threads,
                     json=args.json, crossings_path=args.crossings)


def _side(curves, names):
    out = []
    for name in names.split(","):
        if name not in curves:
            raise InputError(f"no curve named {name!r} (have: {', '.join(curves)})")
        out.append(curves[name])
    return out


def _write_crossings(path, report, viewpoint, with_class=False):
    cols = ["component_a", "edge_i", "s", "component_b", "edge_j", "u", "sign"]
    if with_class:
        cols.append("loop_class")
    cols += ["residual", "v0", "v1", "v2", "v3"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for c in report.crossings:
            row = [c.component_a, c.i, repr(c.s), c.component_b, c.j, repr(c.u), c.sign]
            if with_class:
                row.append(c.loop_class)
            row += [repr(c.residual)] + [repr(float(x)) for x in viewpoint.V]
            w.writerow(row)


def _emit(config, payload, lines):
    if config.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))


def _fmt_v(v):
    return "(" + ", ".join(f"{x:.6f}" for x in v.V) + ")"


def cmd_lk(args, config, curves):
    a, b = _side(curves, args.a), _side(curves, args.b)
    rep = linking_number(a, b, config)
    if config.crossings_path:
        _write_crossings(config.crossings_path, rep, rep.viewpoint)
    _emit(config, {"command": "lk", "a": args.a, "b": args.b, "seed": config.seed,
                   "trials": config.trials, "report": rep.as_dict()},
          [f"d={rep.d} lk={rep.lk}",
           f"crossings={len(rep.crossings)} viewpoints_tried={rep.viewpoints_tried} "
           f"trials={config.trials}",
           f"viewpoint={_fmt_v(rep.viewpoint)}"])
    return EXIT_OK


def cmd_selflink(args, config, curves):
    (k,) = _side(curves, args.knot)
    rep = self_linking(k, config)
    if config.crossings_path:
        _write_crossings(config.crossings_path, rep, rep.viewpoint, with_class=True)
    _emit(config, {"command": "selflink", "knot": args.knot, "seed": config.seed,
                   "trials": config.trials, "report": rep.as_dict()},
          [f"sl={rep.sl} d={rep.d}",
           f"included={len(rep.included)} excluded={len(rep.excluded)} "
           f"viewpoints_tried={rep.viewpoints_tried} trials={config.trials}",
           f"viewpoint={_fmt_v(rep.viewpoint)}"])
    return EXIT_OK


def _oracle_value(args, config, curves):
    if args.selflink:
        (k,) = _side(curves, args.a)
        return cover_oracle.oracle_selflink(k, config.seed, config.tol)
    if args.b is None:
        raise InputError("two curves are needed unless --selflink is given")
    a, b = _side(curves, args.a), _side(curves, args.b)
    return cover_oracle.oracle_degree(a, b, config.seed, config.tol)


def cmd_oracle(args, config, curves):
    val = _oracle_value(args, config, curves)
    if args.selflink:
        payload, line = {"sl": val}, f"oracle sl={val}"
    else:
        payload = {"d": val, "lk": str(Fraction(val, 2))}
        line = f"oracle d={val} lk={payload['lk']}"
    _emit(config, {"command": "oracle", "seed": config.seed, "report": payload}, [line])
    return EXIT_OK


def cmd_check(args, config, curves):
    sign = -1 if args.corrupt_sign else 1
    if args.selflink:
        (k,) = _side(curves, args.a)
        main = self_linking(k, config, sign_convention=sign).sl
        key = "sl"
    else:
        if args.b is None:
            raise InputError("two curves are needed unless --selflink is given")
        main = linking_number(_side(curves, args.a), _side(curves, args.b), config,
                              sign_convention=sign).d
        key = "d"
    oracle = _oracle_value(args, config, curves)
    agree = main == oracle
    verdict = "AGREE" if agree else "DISAGREE"

    def show(val):
        return f"{key}={val}" + ("" if args.selflink else f" lk={Fraction(val, 2)}")

    _emit(config, {"command": "check", "seed": config.seed, "quantity": key,
                   "main": main, "oracle": oracle, "agree": agree},
          [f"main {show(main)}", f"oracle {show(oracle)}", verdict])
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_gen(args):
    if args.type == "lines":
        curves = samples.lines(args.edges or 8)
    elif args.type == "hopf-affine":
        curves = samples.hopf_affine(args.edges or 12)
    elif args.type == "split":
        curves = samples.split_affine(args.edges or 12)
    else:
        n = args.edges or 16
        if len(args.classes) == 1:
            curves = [random_curve(args.seed, n, args.classes[0], args.scale, name="K")]
        elif len(args.classes) == 2:
            curves = list(samples.random_pair(args.seed, n, n, *args.classes, scale=args.scale))
        else:
            raise InputError("--class takes one or two values")
    text = format_curves(curves, comment=f"rp3link gen {args.type} seed={args.seed}")
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        config = _config(args)
        curves = read_curves(args.file, affine=args.affine)
        handler = {"lk": cmd_lk, "selflink": cmd_selflink,
                   "oracle": cmd_oracle, "check": cmd_check}[args.command]
        return handler(args, config, curves)
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GenericityError as exc:
        print(f"genericity failure: {exc}", file=sys.stderr)
        return EXIT_GENERICITY


if __name__ == "__main__":
    sys.exit(main())
