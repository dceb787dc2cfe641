"""Command-line front end: analyze | bf | fix | torus | rotset | beta | shadow.

Primary textual output (JSON or CSV) goes to stdout; figure subcommands
also write an SVG file. Exit codes: 0 success, 1 input error, 2 verdict
UNKNOWN, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import ast
import csv
import json
import sys
from fractions import Fraction

from .bf import BFGroup, enumerate_fixed
from .dsl import MapSpec, parse
from .errors import BudgetExceeded, ParseError, WedgedynError
from .graphmap import TightMap, iota
from .intmat import IntMatrix
from .rotation import rotation_set
from .semiconj import beta_breakpoints, holder_bound, shadow_pairs
from .svg import beta_figure, rotset_figure


def _rat(x) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _load_spec(path: str, name: str | None) -> MapSpec:
    with open(path, encoding="utf-8") as fh:
        specs = parse(fh.read())
    if not specs:
        raise ParseError("no map definitions in file", 1, 1)
    if name is None:
        return specs[0]
    for s in specs:
        if s.name == name:
            return s
    known = ", ".join(s.name for s in specs)
    raise ParseError(f"no map named {name!r} (file has: {known})", 1, 1)


def _load_matrix(text: str) -> IntMatrix:
    rows = ast.literal_eval(text)
    return IntMatrix(tuple(tuple(int(x) for x in r) for r in rows))


def _tight_map(args) -> TightMap:
    spec = _load_spec(args.mapfile, args.name)
    return TightMap(spec.to_endomorphism(), name=spec.name)


def _csv_writer():
    return csv.writer(sys.stdout, lineterminator="\r\n")


def cmd_analyze(args) -> int:
    m = _tight_map(args)
    sp = m.spectral
    report = {
        "name": m.name,
        "rank": m.rank,
        "images": [str(w) for w in m.endo.images],
        "abelianization": [list(r) for r in m.A.rows],
        "charpoly": list(sp.charpoly),
        "eigenvalues": [
            {"re": _rat(ev.re) if ev.exact else float(ev.re),
             "im": _rat(ev.im) if ev.exact else float(ev.im),
             "eps": None if ev.eps is None else float(ev.eps),
             "multiplicity": ev.multiplicity}
            for ev in sp.eigenvalues
        ],
        "is_expanding": sp.is_expanding,
        "lambda_lower": _rat(sp.lambda_lower) if sp.lambda_lower is not None else None,
        "uniform_expansion": m.endo.uniform_expansion(),
    }
    if sp.is_expanding:
        sr = m.sigma_report(norm=args.norm)
        report.update({
            "norm": sr.norm.kind,
            "c": _rat(sr.c),
            "c_sup": _rat(sr.c_sup),
            "lam": _rat(sr.lam),
            "delta": _rat(sr.delta),
            "holder_bound": _rat(holder_bound(m)),
        })
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def cmd_bf(args) -> int:
    if args.matrix is not None:
        a = _load_matrix(args.matrix)
        label = "matrix"
    else:
        m = _tight_map(args)
        a = m.A
        label = m.name
    rows = []
    for k in range(1, args.k + 1):
        g = BFGroup(a, k)
        rows.append({
            "k": k,
            "invariant_factors": [_rat(d) for d in g.invariant_factors],
            "diagonal": [_rat(d) for d in g.diagonal],
            "order": _rat(g.order),
        })
    if args.format == "json":
        print(json.dumps({"name": label, "matrix": [list(r) for r in a.rows],
                          "groups": rows}, indent=2, sort_keys=True))
    else:
        w = _csv_writer()
        w.writerow(["k", "invariant_factors", "order"])
        for r in rows:
            w.writerow([r["k"], "x".join(r["invariant_factors"]), r["order"]])
    return 0


def cmd_fix(args) -> int:
    m = _tight_map(args)
    pts = m.periodic_points(args.k)
    b = m.rank
    w = _csv_writer()
    header = (["edge", "t", "period", "least_period"]
              + [f"delta_{i}" for i in range(b)]
              + [f"disp_{i}" for i in range(b)]
              + [f"alpha_{i}" for i in range(b)])
    w.writerow(header)
    for p in pts:
        disp = ([""] * b if p.displacement is None
                else [_rat(x) for x in p.displacement.r])
        alpha = ([""] * b if p.alpha_image is None
                 else [_rat(x) for x in p.alpha_image.coords])
        w.writerow([p.point.edge, _rat(p.point.t), p.period, p.least_period]
                   + [_rat(x) for x in p.translation] + disp + alpha)
    return 0


def cmd_torus(args) -> int:
    m = _tight_map(args)
    pts = enumerate_fixed(m.A, args.k)
    w = _csv_writer()
    w.writerow([f"x_{i}" for i in range(m.rank)])
    for p in pts:
        w.writerow([_rat(x) for x in p.coords])
    return 0


def cmd_rotset(args) -> int:
    m = _tight_map(args)
    report = rotation_set(m, budget=args.budget)
    w = _csv_writer()
    b = m.rank
    w.writerow(["kind", "period"] + [f"v_{i}" for i in range(b)])
    for period, vec in report.loop_vectors:
        w.writerow(["loop", period] + [_rat(x) for x in vec])
    for vec in report.hull_vertices:
        w.writerow(["hull", ""] + [_rat(x) for x in vec])
    for vec in report.fixed_point_vectors:
        w.writerow(["fixed", 1] + [_rat(x) for x in vec])
    for vec in report.period2_vectors:
        w.writerow(["period2", 2] + [_rat(x) for x in vec])
    if args.svg is not None:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(rotset_figure(report))
    return 0


def cmd_beta(args) -> int:
    m = _tight_map(args)
    approx = beta_breakpoints(m, args.k)
    w = _csv_writer()
    b = m.rank
    w.writerow(["edge", "i", "t"] + [f"beta_{i}" for i in range(b)])
    denom = approx.M ** approx.level
    for e in range(b):
        for i, val in enumerate(approx.values[e]):
            w.writerow([e, i, _rat(Fraction(i, denom))] + [_rat(x) for x in val])
    if args.svg is not None:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(beta_figure(m, args.k, window=args.window))
    return 0


def cmd_shadow(args) -> int:
    m = _tight_map(args)
    cert = shadow_pairs(m, depth=args.depth, norm=args.norm,
                        max_cells=args.max_cells)
    witness = None
    if cert.witness is not None:
        witness = [{"edge": cp.point.edge, "t": _rat(cp.point.t),
                    "base": list(cp.base),
                    "coords": [_rat(x) for x in iota(cp)]}
                   for cp in cert.witness]
    print(json.dumps({"status": cert.status, "depth": cert.depth,
                      "delta": _rat(cert.delta), "norm": cert.norm,
                      "witness": witness}, indent=2, sort_keys=True))
    return 2 if cert.status == "UNKNOWN" else 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="wedgedyn",
                                  description="homological invariants of tight graph maps")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, norm=False):
        p.add_argument("mapfile", help="map description file")
        p.add_argument("--name", default=None, help="which map in the file (default: first)")
        if norm:
            p.add_argument("--norm", choices=("adapted", "sup"), default="adapted")

    p = sub.add_parser("analyze", help="matrix, spectra, shadowing constants (JSON)")
    common(p, norm=True)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("bf", help="Bowen-Franks groups for k = 1..K")
    common(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--matrix", default=None,
                   help="integer matrix literal, e.g. '[[3,1],[1,3]]' (overrides mapfile)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=cmd_bf)

    p = sub.add_parser("fix", help="periodic points of period k (CSV)")
    common(p)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(fn=cmd_fix)

    p = sub.add_parser("torus", help="fixed points of the k-th toral iterate (CSV)")
    common(p)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(fn=cmd_torus)

    p = sub.add_parser("rotset", help="minimal loops and rotation-set hull (CSV + SVG)")
    common(p)
    p.add_argument("--budget", type=int, default=200000)
    p.add_argument("--svg", default=None, help="write the hull figure here")
    p.set_defaults(fn=cmd_rotset)

    p = sub.add_parser("beta", help="exact beta breakpoints at level k (CSV + SVG)")
    common(p)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--window", type=int, default=1)
    p.add_argument("--svg", default=None, help="write the polyline figure here")
    p.set_defaults(fn=cmd_beta)

    p = sub.add_parser("shadow", help="injectivity certificate (JSON)")
    common(p, norm=True)
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--max-cells", type=int, default=100000)
    p.set_defaults(fn=cmd_shadow)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"wedgedyn.errors.BudgetExceeded: {exc}", file=sys.stderr)
        return 3
    except WedgedynError as exc:
        print(f"{type(exc).__module__}.{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, SyntaxError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
