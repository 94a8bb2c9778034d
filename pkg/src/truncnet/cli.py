"""Command line interface: generate data, build networks, verify, evaluate, plot.

Exit codes: 0 success, 1 failed check or violated construction precondition,
2 usage, input or parse error.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .cones import Simplex
from .constructors import LabelPair, cone_construction, simplex_construction
from .datagen import GenSpec
from .exceptions import BadParams, BadRadii, DegenerateLabels, TruncNetError, UnsupportedDim
from .network import forward
from .plot import render_svg
from .verification import DEFAULT_LABELS, nearest_label, verify_network

USAGE_ERRORS = (BadRadii, BadParams, DegenerateLabels, UnsupportedDim)


class CheckFailed(Exception):
    pass


def _vector(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def cmd_gen(args):
    n_default = 200 if args.kind == "concentric" else 100
    spec = GenSpec(
        kind=args.kind,
        seed=args.seed,
        dim=args.dim,
        n_class1=args.n1 or args.n or n_default,
        n_class2=args.n2 or args.n or n_default,
        r_inner=args.r_inner,
        r_outer_lo=args.r_outer_lo,
        r_outer_hi=args.r_outer_hi,
        simplex_inradius=args.inradius,
        margin=args.margin,
    )
    if args.kind == "crescent" and args.dim != 2:
        raise BadParams("crescent data are two-dimensional")
    data, geometry = spec.generate()
    out = Path(args.out or f"{args.kind}.csv")
    sidecar = Path(args.sidecar) if args.sidecar else io.sidecar_path_for(out)
    io.write_dataset_csv(data, out)
    io.save_sidecar(geometry, sidecar, kind=args.kind, seed=args.seed)
    print(f"wrote {len(data)} points to {out} and companion geometry to {sidecar}")


def cmd_build(args):
    data = io.read_dataset_csv(args.data)
    sidecar = Path(args.sidecar) if args.sidecar else io.sidecar_path_for(args.data)
    geometry, extra = io.load_sidecar(sidecar)
    labels = LabelPair(args.y1, args.y2)
    if isinstance(geometry, Simplex):
        c = simplex_construction(data, geometry, labels, args.height)
    else:
        c = cone_construction(data, geometry, labels)
    meta = {
        "construction": c.kind,
        "a_tilde": c.a_tilde,
        "labels": [labels.y1, labels.y2],
        "seed": extra.get("seed"),
    }
    if c.kind == "simplex":
        meta["height"] = float(c.cone.p[-1])
    io.save_network(c.network, args.out, meta)
    print(f"built network with dims {list(c.network.dims)} (a_tilde={c.a_tilde:.6g}) -> {args.out}")


def cmd_verify(args):
    net, meta = io.load_network(args.net)
    data = io.read_dataset_csv(args.data)
    checks, stats = verify_network(net, data, meta, args.tol)
    for c in checks:
        dev = "n/a" if c["max_deviation"] is None else f"{c['max_deviation']:.3e}"
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']:<22} deviation={dev}  tol={c['tolerance']:.1e}")
    for k, v in stats.items():
        print(f"      {k} = {v}")
    if args.out:
        io.save_report(checks, args.out)
    if not all(c["passed"] for c in checks):
        raise CheckFailed("verification failed")


def _read_points(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 2:
        raise ValueError(f"{path}: no data rows")
    cols = [i for i, h in enumerate(rows[0]) if h.startswith("x")]
    return np.array([[float(r[i]) for i in cols] for r in rows[1:]])


def cmd_eval(args):
    net, meta = io.load_network(args.net)
    if args.data:
        X = _read_points(args.data)
    elif args.x:
        X = np.array(args.x, dtype=float)
    else:
        raise BadParams("give --data or at least one --x")
    out = forward(net, X)[-1]
    labels = np.asarray(meta.get("labels", DEFAULT_LABELS), dtype=float)
    cls = nearest_label(out, labels) + 1 if out.shape[1] == labels.shape[1] else None
    lines = [",".join([f"y{i}" for i in range(out.shape[1])] + ["class"])]
    for k, row in enumerate(out):
        c = "" if cls is None else str(cls[k])
        lines.append(",".join([repr(float(v)) for v in row] + [c]))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_plot(args):
    data = io.read_dataset_csv(args.data)
    sidecar = Path(args.sidecar) if args.sidecar else io.sidecar_path_for(args.data)
    geometry = io.load_sidecar(sidecar)[0] if sidecar.exists() else None
    net, meta = io.load_network(args.net) if args.net else (None, {})
    svg = render_svg(data, geometry, net, show_truncated=args.show_truncated, grid=args.grid,
                     labels=meta.get("labels", DEFAULT_LABELS), title=Path(args.data).stem)
    Path(args.out).write_text(svg, encoding="utf-8", newline="\n")
    print(f"wrote {args.out}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="truncnet",
        description="Closed-form ReLU networks that interpolate two-class data.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("gen", help="generate a data set and its companion geometry", formatter_class=fmt)
    p.add_argument("kind", choices=["concentric", "crescent"])
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--n", type=int, help="points per class")
    p.add_argument("--n1", type=int, help="class-1 points (overrides --n)")
    p.add_argument("--n2", type=int, help="class-2 points (overrides --n)")
    p.add_argument("--r-inner", type=float, default=1.0)
    p.add_argument("--r-outer-lo", type=float, default=3.0)
    p.add_argument("--r-outer-hi", type=float, default=4.0)
    p.add_argument("--inradius", type=float, help="simplex inradius (concentric)")
    p.add_argument("--margin", type=float, default=0.1, help="crescent band margin")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default: <kind>.csv)")
    p.add_argument("--sidecar", help="geometry JSON path (default: <out>.sidecar.json)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="construct the interpolating network", formatter_class=fmt)
    p.add_argument("--data", required=True)
    p.add_argument("--sidecar")
    p.add_argument("--height", type=float, help="apex height of the lifted cone")
    p.add_argument("--y1", type=_vector, default=(1.0, 0.0))
    p.add_argument("--y2", type=_vector, default=(0.0, 1.0))
    p.add_argument("--out", default="network.json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check a network against a data set", formatter_class=fmt)
    p.add_argument("--net", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate a network on points", formatter_class=fmt)
    p.add_argument("--net", required=True)
    p.add_argument("--data", help="CSV with x0.. columns")
    p.add_argument("--x", type=_vector, action="append", help="a single point, repeatable")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("plot", help="render 1-D or 2-D data as SVG", formatter_class=fmt)
    p.add_argument("--data", required=True)
    p.add_argument("--sidecar")
    p.add_argument("--net")
    p.add_argument("--show-truncated", action="store_true")
    p.add_argument("--grid", type=int, default=60)
    p.add_argument("--out", default="plot.svg")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CheckFailed:
        return 1
    except USAGE_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except TruncNetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
