"""Command-line front end.

Subcommands: solve, rur, dv, cad, stability, hinf, refine.  Output is
deterministic JSON on stdout; interval endpoints are serialized as exact
dyadic strings "m*2^e" (normative) plus an advisory decimal rendering.

Exit codes: 0 success, 2 parse error, 3 unsupported input
(e.g. not zero-dimensional), 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import NotZeroDimensional, ParseError, PolycertError, UnsupportedInput
from .groebner import buchberger, is_zero_dimensional
from .intervals import MPInterval, SolutionBox
from .paramspace import discriminant_variety, open_cad, sample_points
from .rationals import rational_from_decimal
from .sysfile import load_system
from .zdsolve import interval_newton, isolate_system, solve_rur

_DECIMAL_DIGITS = 12


def _iv_json(iv: MPInterval) -> dict:
    return {
        "lo": str(iv.lo),
        "hi": str(iv.hi),
        "decimal": iv.decimal_str(_DECIMAL_DIGITS),
    }


def _box_json(box: SolutionBox, names) -> dict:
    return {
        "certified": box.certified,
        "coords": {n: _iv_json(c) for n, c in zip(names, box.coords)},
    }


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def cmd_solve(args) -> int:
    sf = load_system(args.file)
    prec = args.precision if args.precision is not None else (sf.precision or 53)
    system = [p.reorder(sf.vars) if sf.params else p for p in sf.eqs]
    gb = buchberger(system)
    if gb.is_trivial():
        _emit({"solutions": []})
        return 0
    if not is_zero_dimensional(gb):
        raise NotZeroDimensional("system is not zero-dimensional")
    rur = solve_rur(gb)
    boxes = isolate_system(rur, prec)
    _emit({"solutions": [_box_json(b, sf.vars) for b in boxes]})
    return 0


def cmd_rur(args) -> int:
    sf = load_system(args.file)
    system = [p.reorder(sf.vars) if sf.params else p for p in sf.eqs]
    gb = buchberger(system)
    if gb.is_trivial():
        _emit({"rur": None, "solutions": 0})
        return 0
    if not is_zero_dimensional(gb):
        raise NotZeroDimensional("system is not zero-dimensional")
    rur = solve_rur(gb)
    _emit(
        {
            "rur": {
                "separating_form": {v: str(c) for v, c in zip(rur.vars, rur.sep)},
                "f_t": str(rur.f_t),
                "f_t_squarefree": str(rur.fbar_t),
                "numerators": {v: str(p) for v, p in zip(rur.vars, rur.numerators)},
            }
        }
    )
    return 0


def cmd_dv(args) -> int:
    sf = load_system(args.file)
    if not sf.params:
        raise ParseError("dv requires a params: section")
    dv = discriminant_variety(list(sf.eqs), sf.vars, sf.params)
    _emit({"discriminant_variety": [str(p) for p in dv.polys]})
    return 0


def cmd_cad(args) -> int:
    sf = load_system(args.file)
    ring = sf.params if sf.params else sf.vars
    polys = [p.reorder(ring) for p in sf.eqs]
    cad = open_cad(polys, ring)
    pts = sample_points(cad)
    _emit(
        {
            "levels": [[str(p) for p in level] for level in cad.po],
            "sample_points": [[str(c) for c in pt] for pt in pts],
        }
    )
    return 0


def cmd_stability(args) -> int:
    from .control.stability import stability_2d, stability_parametric

    sf = load_system(args.file)
    if len(sf.vars) != 2 or len(sf.eqs) != 1:
        raise ParseError("stability expects two vars and exactly one polynomial")
    d = sf.eqs[0]
    if args.parametric:
        if not sf.params:
            raise ParseError("--parametric requires a params: section")
        verdict = stability_parametric(d, sf.params)
        payload = {
            "stable": [[str(c) for c in pt] for pt in verdict.stable_points],
            "unstable": [[str(c) for c in pt] for pt in verdict.unstable_points],
        }
        _emit(payload)
        plot_path = args.plot_out or (Path(args.file).stem + ".cells.dat")
        with open(plot_path, "w", encoding="utf-8") as fh:
            for pt, v in verdict.entries:
                fh.write(" ".join(str(c) for c in pt) + f" {v}\n")
        return 0
    d0 = d.reorder(sf.vars) if sf.params else d
    _emit({"stable": stability_2d(d0, sf.vars)})
    return 0


def cmd_hinf(args) -> int:
    from .control.hinf import hinf_norm, parse_transfer_matrix

    sf = load_system(args.file)
    if not sf.matrix_rows:
        raise ParseError("hinf requires a matrix: section")
    var = sf.vars[0] if sf.vars else "s"
    G = parse_transfer_matrix(sf.matrix_rows, var)
    iv = hinf_norm(G, starting_precision=args.starting_precision)
    _emit({"hinf": _iv_json(iv)})
    return 0


def cmd_refine(args) -> int:
    sf = load_system(args.file)
    system = [p.reorder(sf.vars) if sf.params else p for p in sf.eqs]
    point = [rational_from_decimal(v) for v in args.point.split(",")]
    if len(point) != len(sf.vars):
        raise ParseError("--point arity does not match vars")
    box = interval_newton(system, point, args.precision)
    _emit({"box": _box_json(box, sf.vars)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polycert",
        description="Certified polynomial system solving for control applications",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="isolate all real solutions of a zero-dimensional system")
    p.add_argument("file")
    p.add_argument("--precision", type=int, default=None, help="binary output precision")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("rur", help="rational univariate representation")
    p.add_argument("file")
    p.set_defaults(func=cmd_rur)

    p = sub.add_parser("dv", help="discriminant variety of a parametric system")
    p.add_argument("file")
    p.set_defaults(func=cmd_dv)

    p = sub.add_parser("cad", help="open-cell CAD sample points")
    p.add_argument("file")
    p.set_defaults(func=cmd_cad)

    p = sub.add_parser("stability", help="2-D structural stability")
    p.add_argument("file")
    p.add_argument("--parametric", action="store_true")
    p.add_argument("--plot-out", default=None, help="plot-data output path (parametric)")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("hinf", help="H-infinity norm enclosure")
    p.add_argument("file")
    p.add_argument("--starting-precision", type=int, default=None)
    p.set_defaults(func=cmd_hinf)

    p = sub.add_parser("refine", help="certified interval-Newton refinement")
    p.add_argument("file")
    p.add_argument("--point", required=True, help="comma-separated coordinates")
    p.add_argument("--precision", type=int, default=53)
    p.set_defaults(func=cmd_refine)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotZeroDimensional, UnsupportedInput) as exc:
        print(f"unsupported input: {exc}", file=sys.stderr)
        return 3
    except PolycertError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
