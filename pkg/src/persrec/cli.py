"""Command-line front end wiring generators, diagrams, landscapes,
reconstructions, and the benchmark into file-based pipelines.

Angles are degrees everywhere on the CLI and in files. Every randomized
command requires --seed, so identical invocations produce identical files.
Exit codes: 0 success, 1 domain errors (e.g. a non-admissible direction under
--strict), 2 argument errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bench import run_bench, write_csv
from .generators import gen_harmonic, gen_pl, gen_spline
from .geometry import Angle, Point2
from .landscape import Landscape, landscapes, reconstruct_from_landscapes
from .persistence import (
    Diagram,
    PLFunction,
    critical_heights,
    critical_points_to_dicts,
    directional_diagram,
    is_admissible,
)
from .reconstruct_pl import TripleConfig, naive_reconstruct, rolling_ball_reconstruct
from .reconstruct_smooth import SampledFunction, SmoothConfig, five_line_reconstruct, pl_proxy


def _read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _write_json(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _write_plot_data(path: str, blocks: list[list[tuple[float, float]]]) -> None:
    """Plain two-column x,y data; multiple blocks are blank-line separated."""
    with open(path, "w") as fh:
        for b, block in enumerate(blocks):
            if b:
                fh.write("\n")
            for x, y in block:
                fh.write(f"{x!r} {y!r}\n")


def _parse_point(text: str) -> Point2:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise ValueError(f"expected 'x,y', got {text!r}") from exc
    return Point2(x, y)


def _parse_domain(text: str) -> tuple[float, float]:
    a, b = (float(v) for v in text.split(","))
    return a, b


def _truth_path(out: str) -> str:
    return out[: -len(".json")] + ".truth.json" if out.endswith(".json") else out + ".truth.json"


def _load_function(data: dict):
    """Function files hold either {"vertices": [[x,y],..]} or {"xs":[..],"ys":[..]}."""
    if "vertices" in data:
        return PLFunction.from_dict(data)
    if "xs" in data and "ys" in data:
        return SampledFunction.from_dict(data)
    raise ValueError("function file must contain either 'vertices' or 'xs'/'ys'")


# ---------------------------------------------------------------------------
# subcommands

def cmd_gen(args) -> int:
    domain = _parse_domain(args.domain)
    if args.family == "pl":
        f, truth = gen_pl(args.n, args.seed, domain)
        func_dict = f.to_dict()
        pairs = list(zip(f.xs.tolist(), f.ys.tolist()))
    elif args.family == "harmonic":
        f, truth = gen_harmonic(args.seed, domain, samples_per_unit=args.samples_per_unit)
        func_dict = f.to_dict()
        pairs = list(zip(f.xs.tolist(), f.ys.tolist()))
    else:
        f, truth = gen_spline(args.seed, domain, knots=args.knots, samples_per_unit=args.samples_per_unit)
        func_dict = f.to_dict()
        pairs = list(zip(f.xs.tolist(), f.ys.tolist()))

    truth_dict = {"critical_points": critical_points_to_dicts(truth)}
    if args.out:
        _write_json(func_dict, args.out)
        _write_json(truth_dict, _truth_path(args.out))
    else:
        _write_json({"function": func_dict, "truth": truth_dict}, None)
    if args.emit_plot_data:
        _write_plot_data(args.emit_plot_data, [pairs])
    return 0


def cmd_diagram(args) -> int:
    f = _load_function(_read_json(args.infile))
    v = Angle.from_degrees(args.angle_deg)
    if isinstance(f, SampledFunction):
        d = directional_diagram(pl_proxy(f), v)
        out = d.to_dict()
    else:
        d = directional_diagram(f, v)
        out = d.to_dict()
        out["admissible"] = is_admissible(f, v)
        if not out["admissible"]:
            print(f"warning: direction {args.angle_deg} deg is not admissible for this function", file=sys.stderr)
            if args.strict:
                return 1
    _write_json(out, args.out)
    return 0


def cmd_landscape(args) -> int:
    d = Diagram.from_dict(_read_json(args.infile))
    ls = landscapes(d, args.levels, essential_cap=args.essential_cap)
    _write_json([l.to_dict() for l in ls], args.out)
    if args.emit_plot_data:
        _write_plot_data(args.emit_plot_data, [list(l.vertices) for l in ls if not l.is_zero])
    return 0


def cmd_reconstruct_pl(args) -> int:
    data_t = _read_json(args.in_t)
    data_s = _read_json(args.in_s)
    data_r = _read_json(args.in_r)
    flagged = [
        name
        for name, data in (("T", data_t), ("S", data_s), ("R", data_r))
        if data.get("admissible") is False
    ]
    if flagged:
        print(f"warning: non-admissible direction(s) in {', '.join(flagged)}; "
              "reconstruction may omit critical points", file=sys.stderr)
        if args.strict:
            return 1
    d_t, d_s, d_r = (Diagram.from_dict(d) for d in (data_t, data_s, data_r))
    cfg = TripleConfig(
        d_t.direction,
        d_s.direction,
        d_r.direction,
        _parse_point(args.start),
        _parse_point(args.end),
        args.match_tol,
    )
    algorithm = naive_reconstruct if args.algorithm == "naive" else rolling_ball_reconstruct
    points = algorithm(
        critical_heights(d_t), critical_heights(d_s), critical_heights(d_r), cfg
    )
    _write_json({"vertices": [[p.x, p.y] for p in points]}, args.out)
    if args.emit_plot_data:
        _write_plot_data(args.emit_plot_data, [[(p.x, p.y) for p in points]])
    return 0


def cmd_reconstruct_smooth(args) -> int:
    f = _load_function(_read_json(args.infile))
    if not isinstance(f, SampledFunction):
        raise ValueError("reconstruct-smooth expects a sampled function file ('xs'/'ys')")
    cfg = SmoothConfig(tau=args.tau, steep_deg=args.steep_deg, shallow_deg=args.shallow_deg)
    result = five_line_reconstruct(f, cfg)
    _write_json(
        {
            "critical_points": critical_points_to_dicts(result.points),
            "alternation_ok": result.alternation_ok,
            "warnings": result.warnings,
        },
        args.out,
    )
    if args.emit_plot_data:
        _write_plot_data(args.emit_plot_data, [[(p.x, p.y) for p in result.points]])
    return 0


def cmd_reconstruct_landscapes(args) -> int:
    ls = [Landscape.from_dict(d) for d in _read_json(args.in_landscapes)]
    f = _load_function(_read_json(args.in_function))
    if isinstance(f, SampledFunction):
        xs, ys = f.xs, f.ys
    else:
        a, b = f.domain
        xs = np.linspace(a, b, max(2, int(round((b - a) * args.samples_per_unit)) + 1))
        ys = f(xs)
    points = reconstruct_from_landscapes(ls, ys, xs)
    _write_json(critical_points_to_dicts(points), args.out)
    if args.emit_plot_data:
        _write_plot_data(args.emit_plot_data, [[(p.x, p.y) for p in points]])
    return 0


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    results = run_bench(sizes, args.seed, repetitions=args.reps)
    if args.out:
        with open(args.out, "w") as fh:
            write_csv(results, fh, repetitions=args.reps)
    else:
        write_csv(results, sys.stdout, repetitions=args.reps)
    return 0


def _load_points(data) -> list[tuple[float, float]]:
    if isinstance(data, dict) and "vertices" in data:
        return [(float(x), float(y)) for x, y in data["vertices"]]
    if isinstance(data, dict) and "critical_points" in data:
        data = data["critical_points"]
    if isinstance(data, list):
        out = []
        for item in data:
            if isinstance(item, dict):
                out.append((float(item["x"]), float(item["y"])))
            else:
                out.append((float(item[0]), float(item[1])))
        return out
    raise ValueError("unrecognized points file")


def cmd_verify(args) -> int:
    recovered = _load_points(_read_json(args.points))
    truth = _load_points(_read_json(args.truth))
    tol = args.tol
    missed = [
        [tx, ty]
        for tx, ty in truth
        if not any(abs(tx - rx) <= tol and abs(ty - ry) <= tol for rx, ry in recovered)
    ]
    report = {
        "truth_points": len(truth),
        "recovered_points": len(recovered),
        "matched": len(truth) - len(missed),
        "missed": missed,
        "tol": tol,
        "ok": not missed,
    }
    _write_json(report, args.out)
    return 0 if report["ok"] else 1


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="persrec",
        description="Reconstruct functions from directional sublevel-set persistence diagrams.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    gen = sub.add_parser("gen", help="generate a seeded test function plus ground truth")
    gsub = gen.add_subparsers(dest="family", required=True)
    for family in ("pl", "harmonic", "spline"):
        g = gsub.add_parser(family)
        g.add_argument("--seed", type=int, required=True)
        g.add_argument("--domain", default="0,1", help="a,b (default 0,1)")
        g.add_argument("--out", help="function JSON path; truth goes to <out>.truth.json")
        g.add_argument("--emit-plot-data", metavar="PATH", help="write plain x,y columns")
        if family == "pl":
            g.add_argument("--n", type=int, required=True, help="interior critical points")
        else:
            g.add_argument("--samples-per-unit", type=float, default=10_000.0)
        if family == "spline":
            g.add_argument("--knots", type=int, default=30)
        g.set_defaults(func=cmd_gen, family=family)

    d = sub.add_parser("diagram", help="directional persistence diagram of a function file")
    d.add_argument("--in", dest="infile", required=True)
    d.add_argument("--angle-deg", type=float, required=True)
    d.add_argument("--out")
    d.add_argument("--strict", action="store_true", help="exit 1 if the direction is not admissible")
    d.set_defaults(func=cmd_diagram)

    l = sub.add_parser("landscape", help="exact persistence landscapes of a diagram file")
    l.add_argument("--in", dest="infile", required=True)
    l.add_argument("--levels", type=int, default=10)
    l.add_argument("--essential-cap", type=float, default=None)
    l.add_argument("--out")
    l.add_argument("--emit-plot-data", metavar="PATH")
    l.set_defaults(func=cmd_landscape)

    rp = sub.add_parser("reconstruct-pl", help="triple-intersection reconstruction from three diagrams")
    rp.add_argument("--in-t", required=True, help="diagram for the steepest direction (e.g. 90 deg)")
    rp.add_argument("--in-s", required=True, help="diagram for the middle direction (e.g. 85 deg)")
    rp.add_argument("--in-r", required=True, help="diagram for the shallowest direction (e.g. 80 deg)")
    rp.add_argument("--start", required=True, help="x,y of the left boundary point")
    rp.add_argument("--end", required=True, help="x,y of the right boundary point")
    rp.add_argument("--algorithm", choices=("rolling", "naive"), default="rolling")
    rp.add_argument("--match-tol", type=float, default=1e-6)
    rp.add_argument("--strict", action="store_true")
    rp.add_argument("--out")
    rp.add_argument("--emit-plot-data", metavar="PATH")
    rp.set_defaults(func=cmd_reconstruct_pl)

    rs = sub.add_parser("reconstruct-smooth", help="five-line reconstruction of a sampled function")
    rs.add_argument("--in", dest="infile", required=True)
    rs.add_argument("--tau", type=float, default=0.08)
    rs.add_argument("--steep-deg", type=float, default=30.0)
    rs.add_argument("--shallow-deg", type=float, default=0.1)
    rs.add_argument("--out")
    rs.add_argument("--emit-plot-data", metavar="PATH")
    rs.set_defaults(func=cmd_reconstruct_smooth)

    rl = sub.add_parser("reconstruct-landscapes", help="decode critical points from selected landscapes")
    rl.add_argument("--in-landscapes", required=True)
    rl.add_argument("--in-function", required=True)
    rl.add_argument("--samples-per-unit", type=float, default=10_000.0)
    rl.add_argument("--out")
    rl.add_argument("--emit-plot-data", metavar="PATH")
    rl.set_defaults(func=cmd_reconstruct_landscapes)

    b = sub.add_parser("bench", help="naive vs rolling ball timing and comparison counts")
    b.add_argument("--sizes", default="5,10,25,50,100,150,200")
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="check recovered points against a ground-truth file")
    v.add_argument("--points", required=True)
    v.add_argument("--truth", required=True)
    v.add_argument("--tol", type=float, default=1e-6)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
