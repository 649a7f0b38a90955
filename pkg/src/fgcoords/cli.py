"""Command line front end.

Every subcommand reads a surface file (``--surface``) and, where needed, a
coordinates file (``--coords``, ``-`` for stdin) and writes JSON with sorted
keys. Exit status is 0 on success, 1 for invalid input and 2 when a
computation fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import canonical, coords as C, develop as D, dualize, holonomy as H, hyperbolic as HY
from .errors import FGError, ValidationError
from .scalar import FLOAT, RATIONAL, serialize, to_scalar
from .surface import load_triangulation, standard_subdivision, triangulation_from_json


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError("IO_ERROR", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise ValidationError("BAD_FORMAT", f"{path}: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _surface(args):
    return triangulation_from_json(_read_json(args.surface))


def _coords(args, chart):
    data = _read_json(args.coords)
    c = C.coords_from_json(chart, data)
    if getattr(args, "backend", None) == FLOAT and c.backend != FLOAT:
        c = c.to_float()
    elif getattr(args, "backend", None) == RATIONAL and c.backend != RATIONAL:
        raise ValidationError("BAD_BACKEND", "cannot convert float coordinates to rationals")
    return c


def _kept(arg, chart):
    kept = [e for e in arg.split(",") if e] if arg else []
    for e in kept:
        if not chart.has_edge(e):
            raise ValidationError("UNKNOWN_EDGE", f"no edge {e!r}")
    return kept


def _cell_json(cell):
    return {
        "kept_edges": list(cell.kept_edges),
        "polygons": [{"triangles": list(p.triangles), "diagonals": list(p.diagonals), "sides": p.n}
                     for p in cell.polygons],
    }


def _outs(coords):
    return {e: serialize(v) for e, v in C.outitudes(coords).items()}


def cmd_validate(args):
    tri = _surface(args)
    return {"valid": True, "triangles": len(tri.triangles), "edges": len(tri.edges),
            "punctures": {p: tri.valence(p) for p in tri.punctures}}


def cmd_outitude(args):
    tri = _surface(args)
    c = _coords(args, tri)
    if args.edge:
        return {"outitudes": {args.edge: serialize(C.outitude(c, args.edge))}}
    return {"outitudes": _outs(c)}


def cmd_flip(args):
    tri = _surface(args)
    if args.coords:
        c = _coords(args, tri)
        new = C.flip_transform(c, args.edge)
        return {"chart": new.chart.to_json(), "coords": new.to_json()}
    from .surface import flip_edge
    return {"chart": flip_edge(tri, args.edge).triangulation.to_json()}


def cmd_canonicalize(args):
    tri = _surface(args)
    c = _coords(args, tri)
    final, flips = canonical.canonicalize(c, args.max_flips)
    cell = canonical.extract_cell_decomposition(final)
    return {"flips": flips, "final_chart": final.chart.to_json(), "final_coords": final.to_json(),
            "outitudes": _outs(final), "cell": _cell_json(cell)}


def cmd_membership(args):
    tri = _surface(args)
    c = _coords(args, tri)
    cell = standard_subdivision(tri, _kept(args.cell, tri))
    status, borderline = canonical.cell_membership(c, cell, report=True)
    return {"membership": status, "borderline": borderline, "outitudes": _outs(c)}


def _triangle_params(args, tri):
    if args.triangle_params:
        data = _read_json(args.triangle_params)
        return {t: to_scalar(data[t], args.backend or RATIONAL) for t in tri.triangles}
    return {t: to_scalar(1, args.backend or RATIONAL) for t in tri.triangles}


def cmd_sample_cell(args):
    tri = _surface(args)
    cell = standard_subdivision(tri, _kept(args.cell, tri))
    c = canonical.sample_cell(cell, _triangle_params(args, cell.chart))
    return {"chart": cell.chart.to_json(), "coords": c.to_json(), "cell": _cell_json(cell),
            "membership": canonical.cell_membership(c, cell), "outitudes": _outs(c)}


def cmd_deform(args):
    tri = _surface(args)
    c = _coords(args, tri)
    cell = standard_subdivision(tri, _kept(args.cell, tri))
    t = Fraction(args.t) if c.backend == RATIONAL else float(Fraction(args.t))
    out = canonical.deform_toward_one(c, cell, t)
    return {"coords": out.to_json(), "membership": canonical.cell_membership(out, cell),
            "outitudes": _outs(out)}


def cmd_xcoords(args):
    tri = _surface(args)
    x = C.to_x_coords(_coords(args, tri))
    res = C.finite_area_residuals(x)
    out = x.to_json()
    out["finite_area_residuals"] = {p: [serialize(a), serialize(b)] for p, (a, b) in res.items()}
    return out


def cmd_holonomy(args):
    tri = _surface(args)
    c = _coords(args, tri)
    m = H.normalized(H.peripheral_holonomy(c, args.puncture))
    return {"puncture": args.puncture, "matrix": [[serialize(v) for v in row] for row in m],
            "parabolic": H.is_parabolic(m)}


def cmd_dual(args):
    tri = _surface(args)
    return dualize.dual_coords(_coords(args, tri)).to_json()


def cmd_embed_penner(args):
    tri = _surface(args)
    data = _read_json(args.lambdas)
    lam = HY.LambdaLengths(tri, {e: to_scalar(data[e], FLOAT) for e in tri.edges if e in data})
    c = HY.embed_penner(lam)
    return {"coords": c.to_json(), "outitudes": _outs(c)}


def cmd_center(args):
    tri = _surface(args)
    cell = standard_subdivision(tri, _kept(args.cell, tri))
    c = HY.cell_center(cell)
    return {"chart": cell.chart.to_json(), "coords": c.to_json(), "cell": _cell_json(cell),
            "outitudes": _outs(c), "membership": canonical.cell_membership(c, cell)}


def cmd_develop(args):
    tri = _surface(args)
    c = _coords(args, tri)
    dev = D.develop(c, args.base, args.depth)
    report = D.verify_development(dev)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(D.render_svg(dev, args.width, highlight_cell=args.highlight_cell))
    out = {"triangles": len(dev.triangles), "verified": report.ok, "violations": report.violations[:20]}
    if args.json:
        out["flags"] = [
            {"triangle": lt.chart_triangle, "path": [f"{t}:{s}" for t, s in lid[1]],
             "vectors": [[serialize(v) for v in f.vector] for f in lt.triangle.flags],
             "covectors": [[serialize(v) for v in f.covector] for f in lt.triangle.flags]}
            for lid, lt in dev.triangles.items()
        ]
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fgcoords", description="A-coordinates of convex projective surfaces")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, coords=True, coords_required=True):
        sp = sub.add_parser(name)
        sp.add_argument("--surface", required=True)
        if coords:
            sp.add_argument("--coords", required=coords_required)
        sp.add_argument("--output", default="-")
        sp.add_argument("--backend", choices=[RATIONAL, FLOAT])
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, coords=False)
    add("outitude", cmd_outitude).add_argument("--edge")
    add("flip", cmd_flip, coords_required=False).add_argument("--edge", required=True)
    add("canonicalize", cmd_canonicalize).add_argument("--max-flips", type=int, default=1000)
    add("membership", cmd_membership).add_argument("--cell", required=True)
    sp = add("sample-cell", cmd_sample_cell, coords=False)
    sp.add_argument("--cell", required=True)
    sp.add_argument("--triangle-params")
    sp = add("deform", cmd_deform)
    sp.add_argument("--cell", required=True)
    sp.add_argument("--t", required=True)
    add("xcoords", cmd_xcoords)
    add("holonomy", cmd_holonomy).add_argument("--puncture", required=True)
    add("dual", cmd_dual)
    add("embed-penner", cmd_embed_penner, coords=False).add_argument("--lambdas", required=True)
    add("center", cmd_center, coords=False).add_argument("--cell", required=True)
    sp = add("develop", cmd_develop)
    sp.add_argument("--base", required=True)
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--svg")
    sp.add_argument("--width", type=int, default=800)
    sp.add_argument("--highlight-cell", action="store_true")
    sp.add_argument("--json", action="store_true")
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except FGError as exc:
        sys.stderr.write(_dump({"error": exc.code, "message": exc.message}))
        return exc.exit_code
    text = _dump(result)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
