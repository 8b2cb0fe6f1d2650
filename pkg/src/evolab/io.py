"""Reading and writing polygons, traces and families.

Floats are written with 17 significant digits so that values round-trip
exactly.  Every artifact carries the seed that produced it.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .geometry import Polygon

FLOAT_FMT = "%.17g"


def fmt(x: float) -> str:
    return FLOAT_FMT % float(x)


def _jsonable(obj):
    if isinstance(obj, Polygon):
        return polygon_to_dict(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def dumps(obj) -> str:
    """Deterministic JSON (sorted keys; Python floats already round-trip)."""
    return json.dumps(_jsonable(obj), sort_keys=True)


def polygon_to_dict(P: Polygon) -> dict:
    return {"lines": [{"alpha": float(a), "p": float(v)} for a, v in zip(P.alpha, P.p)]}


def polygon_from_dict(d: dict) -> Polygon:
    """Accepts ``{"lines": [{"alpha", "p"}, ...]}``, ``{"alpha": [...], "p": [...]}`` or vertices."""
    if "lines" in d:
        return Polygon([l["alpha"] for l in d["lines"]], [l["p"] for l in d["lines"]])
    if "alpha" in d and "p" in d:
        return Polygon(d["alpha"], d["p"])
    if "vertices" in d:
        return Polygon.from_vertices(d["vertices"], d.get("coorientation", "ccw"))
    raise ValueError("a polygon needs 'lines', 'alpha' and 'p', or 'vertices'")


def write_polygon_csv(path, P: Polygon, seed=None):
    with open(path, "w", newline="") as fh:
        if seed is not None:
            fh.write(f"# seed={seed}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["j", "alpha", "p"])
        for j, (a, p) in enumerate(zip(P.alpha, P.p)):
            w.writerow([j, fmt(a), fmt(p)])


def read_polygon_csv(path) -> Polygon:
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(line for line in fh if not line.startswith("#"))]
    header, body = rows[0], rows[1:]
    if {"alpha", "p"} <= set(header):
        ia, ip = header.index("alpha"), header.index("p")
        return Polygon([float(r[ia]) for r in body], [float(r[ip]) for r in body])
    if {"x", "y"} <= set(header):
        ix, iy = header.index("x"), header.index("y")
        return Polygon.from_vertices([[float(r[ix]), float(r[iy])] for r in body], "ccw")
    raise ValueError("CSV needs columns alpha,p or x,y")


def read_polygon(path) -> Polygon:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return read_polygon_csv(path)
    with open(path) as fh:
        return polygon_from_dict(json.load(fh))


def write_trace_csv(path, trace, seed=None):
    """One row per step and side: step, j, alpha, p, x, y (vertex j)."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# seed={seed} transform={trace.transform}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["step", "j", "alpha", "p", "x", "y"])
        for k, P in enumerate(trace.steps):
            V = P.vertices()
            for j in range(P.n):
                w.writerow([k, j, fmt(P.alpha[j]), fmt(P.p[j]), fmt(V[j, 0]), fmt(V[j, 1])])


def write_trace_jsonl(path, trace, seed=None):
    with open(path, "w") as fh:
        fh.write(dumps({"seed": seed, "transform": trace.transform}) + "\n")
        for k, P in enumerate(trace.steps):
            row = {"step": k, **polygon_to_dict(P)}
            if k > 0:
                row["log_scale"] = trace.scale_log[k - 1]
            fh.write(dumps(row) + "\n")


def family_to_dict(fam) -> dict:
    seed = fam.seed
    if hasattr(seed, "alpha") and hasattr(seed, "p"):
        seed = {"line": {"alpha": float(seed.alpha), "p": float(seed.p)}}
    elif seed is not None:
        seed = {"point": np.asarray(seed, dtype=float).tolist()}
    return {
        "evolute": fam.evolute,
        "kind": fam.kind,
        "isometry": fam.isometry.kind,
        "seed": seed,
        "evolvent": None if fam.evolvent is None else polygon_to_dict(fam.evolvent),
        "reason": fam.reason,
        "bisectors": None if fam.bisectors is None else list(fam.bisectors),
    }


def write_histogram_csv(path, hist: np.ndarray, seed=None):
    """Flattened orbit histogram: one row per bin with its multi-index and count."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# seed={seed}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"bin{d}" for d in range(hist.ndim)] + ["count"])
        for idx in np.ndindex(hist.shape):
            w.writerow(list(idx) + [int(hist[idx])])


def support_poly_to_dict(s) -> dict:
    return {
        "q": s.q,
        "cycloidal": s.cycloidal,
        "coeffs": [{"k": k, "a": a, "b": b} for k, (a, b) in s.coeffs.items()],
    }


def support_poly_from_dict(d: dict):
    from .smooth import SupportPoly

    coeffs = {int(c["k"]): (c.get("a", 0.0), c.get("b", 0.0)) for c in d.get("coeffs", [])}
    return SupportPoly(int(d.get("q", 1)), coeffs, bool(d.get("cycloidal", False)))
