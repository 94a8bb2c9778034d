"""Dataset CSV, network JSON, companion-geometry sidecars and reports.

Floats are written with ``repr``, the shortest string that parses back to the
same double, so every file round-trips losslessly and re-serializes to the
same bytes.
"""

import csv
import io
import json
from pathlib import Path

import numpy as np

from .cones import PolyhedralCone, Simplex
from .constructors import LabeledDataset
from .network import Network

SCHEMA_VERSION = 1


def _fmt(v):
    return repr(float(v))


def _write_text(path, text):
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def dataset_to_csv(data):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{i}" for i in range(data.dim)] + ["label"])
    for x, label in zip(data.X, data.y):
        w.writerow([_fmt(v) for v in x] + [int(label)])
    return buf.getvalue()


def write_dataset_csv(data, path):
    _write_text(path, dataset_to_csv(data))


def read_dataset_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    header, body = rows[0], rows[1:]
    d = len(header) - 1
    if d < 1 or header != [f"x{i}" for i in range(d)] + ["label"]:
        raise ValueError(f"{path}: header must be x0,...,x{{d-1}},label")
    if not body:
        raise ValueError(f"{path}: no data rows")
    try:
        X = np.array([[float(v) for v in r[:d]] for r in body])
        y = np.array([int(r[d]) for r in body])
    except (ValueError, IndexError) as exc:
        raise ValueError(f"{path}: malformed row ({exc})") from exc
    return LabeledDataset(X, y)


def _to_jsonable(v):
    if isinstance(v, np.ndarray):
        return [_to_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_to_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def dumps(obj):
    return json.dumps(_to_jsonable(obj), indent=2) + "\n"


def network_to_dict(net, meta=None):
    return {
        "schema": SCHEMA_VERSION,
        "dims": list(net.dims),
        "layers": [
            {"rows": l.out_dim, "cols": l.in_dim, "w": l.W.ravel(), "b": l.b}
            for l in net.layers
        ],
        "meta": dict(meta or {}),
    }


def network_from_dict(d):
    """Inverse of :func:`network_to_dict`; returns ``(network, meta)``."""
    if d.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported network schema {d.get('schema')!r}")
    params = []
    for k, layer in enumerate(d["layers"]):
        rows, cols = int(layer["rows"]), int(layer["cols"])
        w = np.asarray(layer["w"], dtype=float)
        if w.size != rows * cols:
            raise ValueError(f"layer {k + 1}: {w.size} weights for a {rows}x{cols} matrix")
        params.append((w.reshape(rows, cols), np.asarray(layer["b"], dtype=float)))
    net = Network.from_params(params)
    if list(net.dims) != list(d["dims"]):
        raise ValueError(f"dims {d['dims']} disagree with layer shapes {net.dims}")
    return net, d.get("meta", {})


def save_network(net, path, meta=None):
    _write_text(path, dumps(network_to_dict(net, meta)))


def load_network(path):
    with open(path, encoding="utf-8") as fh:
        return network_from_dict(json.load(fh))


def sidecar_to_dict(geometry, **extra):
    if isinstance(geometry, Simplex):
        d = {"vertices": geometry.vertices}
    elif isinstance(geometry, PolyhedralCone):
        d = {"p": geometry.p, "edges": geometry.edges}
    else:
        raise TypeError(f"cannot serialize {type(geometry).__name__}")
    d.update(extra)
    return d


def sidecar_from_dict(d):
    """Return ``(geometry, extra)`` where geometry is a Simplex or PolyhedralCone."""
    extra = {k: v for k, v in d.items() if k not in ("vertices", "p", "edges")}
    if "vertices" in d:
        return Simplex(np.asarray(d["vertices"], dtype=float)), extra
    if "p" in d and "edges" in d:
        return PolyhedralCone(d["p"], np.asarray(d["edges"], dtype=float)), extra
    raise ValueError("sidecar needs either 'vertices' or 'p' and 'edges'")


def save_sidecar(geometry, path, **extra):
    _write_text(path, dumps(sidecar_to_dict(geometry, **extra)))


def load_sidecar(path):
    with open(path, encoding="utf-8") as fh:
        return sidecar_from_dict(json.load(fh))


def sidecar_path_for(csv_path):
    p = Path(csv_path)
    return p.with_name(p.stem + ".sidecar.json")


def save_report(checks, path):
    """Write a report: ``checks`` is a list of dicts with name/max_deviation/tolerance/passed."""
    _write_text(path, dumps({"checks": checks, "passed": all(c["passed"] for c in checks)}))
