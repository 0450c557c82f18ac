"""Command-line front end: ``levigeom {compute,check,classify,scan}``.

Exit codes:

    0  success (check: every asserted residual within --tol; classify: a definite kind)
    1  usage error (bad flags, bad point text, --samples < 1)
    2  surface file does not parse, or F is not real-valued
    3  geometry error at the requested point (not on surface, degenerate)
    4  sampling failed
    5  classify ended with Unclassified
    6  I/O error (surface file unreadable, CSV not writable)
    7  check: some asserted residual exceeds --tol
"""
from __future__ import annotations

import argparse
import csv
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .classify import DEFAULT_DECISION_TOL, classify
from .connection import RESIDUAL_NAMES, CodazziReport, codazzi_residuals
from .dsl.parser import parse_surface
from .dsl.surface import check_real_valued
from .errors import GeometryError, SamplingError, SurfaceDefinitionError, SurfaceSyntaxError
from .frame import locate
from .sampling import is_well_conditioned, project, sample_surface
from .shape import levi_curvature, second_form

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_GEOMETRY = 0, 1, 2, 3
EXIT_SAMPLING, EXIT_UNCLASSIFIED, EXIT_IO, EXIT_CHECK_FAILED = 4, 5, 6, 7


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- JSON -----------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    if x == int(x) and abs(x) < 1e16:
        return format(x, ".1f")
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}{_json_str(str(k))}: {dumps(v, indent, _level + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        obj = list(obj)
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps({"re": obj.real, "im": obj.imag}, indent, _level)
    return _json_str(str(obj))


def _json_str(s: str) -> str:
    import json

    return json.dumps(s, ensure_ascii=False)


def _cvec(z) -> list:
    z = np.asarray(z, dtype=complex)
    return [float(x) for pair_ in zip(z.real.ravel(), z.imag.ravel()) for x in pair_]


def _cmat(a) -> list:
    a = np.asarray(a, dtype=complex)
    return [_cvec(row) for row in a]


# -- helpers ----------------------------------------------------------------------


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LEVI_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    items = list(items)
    k = _threads()
    if k == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as ex:
        return list(ex.map(fn, items))


def _load_surface(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read surface file {path!r}: {exc.strerror}") from None
    s = parse_surface(text)
    rep = check_real_valued(s, 64, 0)
    if not rep.passed:
        raise SurfaceDefinitionError(f"F is not real-valued (max |Im F| = {rep.max_imag:.3e})")
    return s


def parse_point(text: str, dim: int) -> np.ndarray:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--point must be comma-separated reals, got {text!r}") from None
    if len(vals) != 2 * dim:
        raise UsageError(f"--point needs {2 * dim} reals for n = {dim - 1}, got {len(vals)}")
    v = np.array(vals)
    return v[0::2] + 1j * v[1::2]


def _report(args, s, results) -> dict:
    rep = {
        "tool_version": __version__,
        "surface": {"name": s.name, "n": s.n},
        "command": args.command,
        "inputs": _inputs(args),
        "results": results,
    }
    if not args.no_timing:
        rep["timing_ms"] = (time.perf_counter() - args._t0) * 1000.0
    return rep


def _inputs(args) -> dict:
    keys = ["surface", "tol", "seed", "samples", "point", "step", "max_iter", "csv", "decision_tol"]
    out = {}
    for k in keys:
        if hasattr(args, k) and getattr(args, k) is not None:
            out[k] = getattr(args, k)
    return out


# -- commands -----------------------------------------------------------------------


def cmd_compute(args, s) -> tuple[dict, int]:
    if args.point is None:
        raise UsageError("compute needs --point")
    z = parse_point(args.point, s.dim)
    p0 = locate(s, z, args.tol)
    # the point is certified within --tol, then polished onto the surface
    p = project(s, p0.z, args.tol, args.max_iter)
    sf = second_form(s, p)
    fp = sf.frame
    n = s.n
    results = {
        "point": _cvec(p.z),
        "input_F": float(abs(s(z))),
        "chart_pivot": p.chart_pivot,
        "H": sf.H,
        "H_closed_form": levi_curvature(s, p),
        "h_hol_antihol": _cmat(sf.h_hol_antihol),
        "h_hol_hol": _cmat(sf.h_hol_hol),
        "h_hol_T": _cvec(sf.h_hol_T),
        "h_TT": sf.h_TT,
        "levi_eigs": [float(x) for x in sf.levi_eigs],
        "shape_eigs": [float(x) for x in sf.shape_eigs],
        "mean_curvature_real": sf.mean_curvature,
        "frame": {
            "grad_norm": fp.grad_norm,
            "perm": list(fp.perm),
            "nu": _cvec(fp.nu[: n + 1]),
            "T": _cvec(fp.T[: n + 1]),
            "N": _cvec(fp.N[: n + 1]),
            "Z": _cmat(fp.Z[:, : n + 1]),
            "g": _cmat(fp.g),
            "g_inv": _cmat(fp.g_inv),
        },
        "hesse_residual": sf.hesse_residual,
    }
    return results, EXIT_OK


def _samples(args, s):
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    return sample_surface(s, args.samples, args.seed, args.tol, args.step, args.max_iter)


def cmd_check(args, s) -> tuple[dict, int]:
    ss = _samples(args, s)
    reports = _map(lambda p: codazzi_residuals(s, p), ss.points)
    good = [r for r, p in zip(reports, ss.points) if is_well_conditioned(s, p)]
    worst_all = CodazziReport.combine(reports).to_dict()
    worst = CodazziReport.combine(good).to_dict() if good else {k: 0.0 for k in RESIDUAL_NAMES}
    passed = {k: worst[k] <= args.tol for k in RESIDUAL_NAMES}
    ok = bool(good) and all(passed.values())
    results = {
        "sample_stats": ss.stats,
        "well_conditioned": len(good),
        "residuals": worst,
        "residuals_all_points": worst_all,
        "passed": passed,
        "all_passed": ok,
    }
    return results, EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_classify(args, s) -> tuple[dict, int]:
    ss = _samples(args, s)
    v = classify(s, ss, args.decision_tol)
    results = {"sample_stats": ss.stats, **v.to_dict()}
    return results, EXIT_OK if v.definite else EXIT_UNCLASSIFIED


def cmd_scan(args, s) -> tuple[dict, int]:
    ss = _samples(args, s)
    forms = _map(lambda p: second_form(s, p), ss.points)
    d = s.dim
    header = ["index"] + [f"{c}{k}" for k in range(1, d + 1) for c in ("x", "y")]
    header += ["H"] + [f"levi{k}" for k in range(1, s.n + 1)] + ["h_TT", "umbilical_dev"]
    rows = []
    for i, f in enumerate(forms):
        umb = float(np.max(np.abs(f.levi_eigs - f.H)))
        rows.append([i] + _cvec(f.z) + [f.H] + list(map(float, f.levi_eigs)) + [f.h_TT, umb])
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for r in rows:
                w.writerow([r[0]] + [format(x, ".17g") for x in r[1:]])
    H = np.array([f.H for f in forms])
    umbs = np.array([r[-1] for r in rows])
    h00 = np.array([f.h_TT for f in forms])
    results = {
        "sample_stats": ss.stats,
        "csv": args.csv,
        "rows": len(rows),
        "H": {"mean": float(H.mean()), "min": float(H.min()), "max": float(H.max())},
        "h_TT": {"mean": float(h00.mean()), "min": float(h00.min()), "max": float(h00.max())},
        "umbilical_dev_max": float(umbs.max()),
    }
    return results, EXIT_OK


COMMANDS = {"compute": cmd_compute, "check": cmd_check, "classify": cmd_classify, "scan": cmd_scan}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("surface_pos", nargs="?", metavar="SURFACE", help="surface file")
    common.add_argument("--surface", help="surface file (alternative to the positional)")
    common.add_argument("--tol", type=float, default=1e-9,
                        help="surface membership tolerance; check: residual threshold")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--step", type=float, default=None, help="random-walk step")
    common.add_argument("--max-iter", type=int, default=50, help="Newton iterations per projection")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--no-timing", action="store_true", help="omit timing from the report")

    parser = _Parser(prog="levigeom", description="Levi geometry of real hypersurfaces {F = 0}.")
    parser.add_argument("--version", action="version", version=f"levigeom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("compute", parents=[common], help="all point-wise quantities at --point")
    p.add_argument("--point", help="2(n+1) comma-separated reals x1,y1,x2,y2,...")
    sub.add_parser("check", parents=[common], help="connection and Codazzi identity residuals")
    p = sub.add_parser("classify", parents=[common], help="classify the sampled surface")
    p.add_argument("--decision-tol", type=float, default=DEFAULT_DECISION_TOL)
    p = sub.add_parser("scan", parents=[common], help="per-sample curvature table")
    p.add_argument("--csv", help="write one row per sample to this path")
    return parser


def _print_human(rep: dict, out):
    res = rep["results"]
    print(f"{rep['command']}: {rep['surface']['name']} (n = {rep['surface']['n']})", file=out)
    for k, v in res.items():
        if isinstance(v, dict):
            print(f"  {k}:", file=out)
            for k2, v2 in v.items():
                print(f"    {k2:<24} {_short(v2)}", file=out)
        else:
            print(f"  {k:<26} {_short(v)}", file=out)


def _short(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, list) and v and isinstance(v[0], float) and len(v) <= 8:
        return "[" + ", ".join(f"{x:.8g}" for x in v) + "]"
    if isinstance(v, list) and len(v) > 8:
        return f"[{len(v)} entries]"
    return str(v)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.perf_counter()
    path = args.surface or args.surface_pos
    if path is None:
        parser.error("a surface file is required (positional or --surface)")
    args.surface = path
    try:
        s = _load_surface(path)
        results, code = COMMANDS[args.command](args, s)
    except UsageError as exc:
        print(f"levigeom: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SurfaceSyntaxError, SurfaceDefinitionError) as exc:
        print(f"levigeom: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GeometryError as exc:
        print(f"levigeom: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except SamplingError as exc:
        print(f"levigeom: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SAMPLING
    except OSError as exc:
        print(f"levigeom: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    rep = _report(args, s, results)
    if args.json:
        sys.stdout.write(dumps(rep) + "\n")
    else:
        _print_human(rep, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
