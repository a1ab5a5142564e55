"""Command-line interface.

Exit codes: 0 success; 1 input parse error; 2 optimizer non-convergence;
3 infeasible / height-exhausted exact construction; 4 checker hypothesis
violation; 5 verification or consistency failure.  (Flag errors exit 2 via
argparse.)  The default random seed is 0xC0FFEE; the CURVLAB_SEED environment
variable overrides it, and an explicit --seed flag wins over both.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

import numpy as np

from . import bounds, curves, designs, immersions, verify
from .curvature import (
    DEFAULT_SEED,
    focal_radius,
    fundamental_data,
    mean_curvature,
    normal_curvature_global,
    petrunin_pi,
    scalar_curvature_gauss,
)
from .immersions import jet2, sample_params

EXIT_PARSE = 1
EXIT_NON_CONVERGED = 2
EXIT_INFEASIBLE = 3
EXIT_HYPOTHESIS = 4
EXIT_VERIFY = 5


def _env_seed() -> int:
    raw = os.environ.get("CURVLAB_SEED")
    return int(raw, 0) if raw else DEFAULT_SEED


def _meta(args) -> dict:
    meta = {"seed": args.seed}
    if getattr(args, "tol", None) is not None:
        meta["tol"] = args.tol
    if not args.no_meta:
        meta["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return meta


def _emit(payload: dict, args) -> None:
    payload = dict(payload)
    payload["meta"] = _meta(args)
    fmt = getattr(args, "format", "json")
    if fmt == "csv":
        lines = ["key,value"]
        for k, v in sorted(payload.items()):
            if k == "meta":
                continue
            lines.append(f"{k},{json.dumps(v) if isinstance(v, (list, dict)) else v}")
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    except json.JSONDecodeError as e:
        print(f"error: {path}: line {e.lineno} column {e.colno}: {e.msg}",
              file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _load_curve(path: str, closed: bool) -> curves.PolyCurve:
    if path.endswith(".csv"):
        try:
            with open(path) as fh:
                return curves.curve_from_csv(fh.read(), closed=closed)
        except FileNotFoundError:
            print(f"error: no such file: {path}", file=sys.stderr)
            raise SystemExit(EXIT_PARSE)
        except ValueError as e:
            print(f"error: {path}: {e}", file=sys.stderr)
            raise SystemExit(EXIT_PARSE)
    data = _load_json(path)
    if closed:
        data = dict(data, closed=True)
    return curves.curve_from_json(data)


# ---------------------------------------------------------------------------
# commands

def _curvature_payload(spec, args) -> dict:
    res = normal_curvature_global(spec, n_points=args.points, seed=args.seed,
                                  grid_density=args.grid)
    rng = np.random.default_rng(args.seed)
    fd = fundamental_data(jet2(spec, sample_params(spec, 1, rng)[0]))
    H = mean_curvature(fd)
    status = "OK" if res["per_point_spread"] <= args.tol else "NON_CONVERGED"
    return {
        "curv": res["sup"],
        "per_point_spread": res["per_point_spread"],
        "n_points": res["n_points"],
        "pi": petrunin_pi(fd),
        "mean_curvature_norm": float(np.linalg.norm(H)),
        "scalar_curvature": scalar_curvature_gauss(fd),
        "focal_radius": focal_radius(res["sup"]) if res["sup"] > 0 else None,
        "status": status,
    }


def cmd_curv(args) -> int:
    try:
        spec = immersions.spec_from_json(_load_json(args.spec))
    except (KeyError, ValueError) as e:
        print(f"error: {args.spec}: {e}", file=sys.stderr)
        return EXIT_PARSE
    payload = _curvature_payload(spec, args)
    _emit(payload, args)
    return 0 if payload["status"] == "OK" else EXIT_NON_CONVERGED


def cmd_design(args) -> int:
    if args.design_cmd == "verify":
        d = designs.design_from_json(_load_json(args.file))
        res = designs.is_degree4_design(d, tol=args.tol)
        _emit({"ok": res["ok"], "residual": float(res["residual"]),
               "exact": isinstance(d, designs.RationalDesign)}, args)
        return 0 if res["ok"] else EXIT_VERIFY
    if args.design_cmd == "optimize":
        res = designs.optimize_design(args.n, args.cardinality,
                                      seed=args.seed, iters=args.iters)
        payload = designs.design_to_json(res["design"])
        payload.update(residual=res["residual"], status=res["status"])
        _emit(payload, args)
        return 0 if res["status"] == "OK" else EXIT_NON_CONVERGED
    if args.design_cmd == "hilbert":
        try:
            rd = designs.hilbert_rational_design(args.n, args.height_start,
                                                 args.height_max)
        except designs.HeightExhausted as e:
            print(f"error: HEIGHT_EXHAUSTED: {e} (relaxed residual {e.residual})",
                  file=sys.stderr)
            return EXIT_INFEASIBLE
        payload = designs.design_to_json(rd)
        payload["cardinality"] = rd.N
        _emit(payload, args)
        return 0
    if args.design_cmd == "torus":
        d = designs.design_from_json(_load_json(args.file))
        try:
            spec = designs.torus_immersion_from_design(d)
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_HYPOTHESIS
        payload = {"spec": immersions.spec_to_json(spec)}
        if args.curv:
            payload.update(_curvature_payload(spec, args))
        _emit(payload, args)
        return 0
    raise AssertionError(args.design_cmd)


def cmd_curve(args) -> int:
    if args.curve_cmd == "fenchel":
        curve = _load_curve(args.file, closed=True)
        res = curves.fenchel_check(curve)
        _emit(res, args)
        return 0 if res["ok"] else EXIT_VERIFY
    if args.curve_cmd == "arm":
        if args.random:
            rng = np.random.default_rng(args.seed)
            results = []
            for i in range(args.random):
                k = int(rng.integers(3, 11))
                p, q = curves.random_arm_instance(k, args.ambient, seed=args.seed + i)
                results.append(curves.arm_check(q, p, tol=args.tol))
            ok = all(r["hypotheses_ok"] and r["inequality_ok"] for r in results)
            _emit({"instances": args.random, "all_ok": ok,
                   "min_slack": min(r["slack"] for r in results)}, args)
            return 0 if ok else EXIT_VERIFY
        if not args.q or not args.p:
            print("error: arm needs two curve files (q p) or --random K",
                  file=sys.stderr)
            return EXIT_PARSE
        q = _load_curve(args.q, closed=False)
        p = _load_curve(args.p, closed=False)
        res = curves.arm_check(q, p, tol=args.tol)
        _emit(res, args)
        if not res["hypotheses_ok"]:
            return EXIT_HYPOTHESIS
        return 0 if res["inequality_ok"] else EXIT_VERIFY
    if args.curve_cmd == "bow":
        curve = _load_curve(args.file, closed=False)
        res = curves.bow_check(curve, args.R, tol=args.tol)
        _emit(res, args)
        if not res["curv_ok"]:
            return EXIT_HYPOTHESIS
        return 0 if res["chord_ok"] else EXIT_VERIFY
    if args.curve_cmd == "crofton":
        curve = _load_curve(args.file, closed=True)
        res = curves.crofton_check(curve, n_dirs=args.dirs, seed=args.seed)
        _emit(res, args)
        return 0 if res["rel_err"] <= args.tol else EXIT_VERIFY
    raise AssertionError(args.curve_cmd)


def cmd_bounds(args) -> int:
    rep = bounds.report(args.n_min, args.n_max)
    if args.format == "csv":
        text = bounds.report_to_csv(rep)
    else:
        payload = json.loads(bounds.report_to_json(rep))
        payload["meta"] = _meta(args)
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep["ok"] else EXIT_VERIFY


def cmd_verify(args) -> int:
    records = list(verify.run_checks(only=args.only, seed=args.seed))
    lines = [json.dumps(r, sort_keys=True) for r in records]
    for line in lines:
        print(line)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "results.jsonl"), "w") as fh:
            fh.write("\n".join(lines) + "\n")
    n_fail = sum(not r["pass"] for r in records)
    print(f"{len(records) - n_fail}/{len(records)} checks passed", file=sys.stderr)
    return 0 if n_fail == 0 else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="curvlab",
        description="normal-curvature workbench: immersion curvatures, "
                    "spherical designs, curve inequalities, and bound reports",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, tol=1e-3):
        p.add_argument("--seed", type=lambda s: int(s, 0), default=_env_seed())
        p.add_argument("--tol", type=float, default=tol)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)
        p.add_argument("--no-meta", action="store_true",
                       help="omit the timestamp for byte-identical reruns")

    p = sub.add_parser("curv", help="curvature report for an immersion spec")
    p.add_argument("spec", help="immersion spec JSON file")
    p.add_argument("--grid", type=int, default=None,
                   help="direction grid density override")
    p.add_argument("--points", type=int, default=20, help="basepoint count")
    common(p)

    p = sub.add_parser("design", help="degree-4 spherical design tools")
    dsub = p.add_subparsers(dest="design_cmd", required=True)
    pv = dsub.add_parser("verify", help="check a design file")
    pv.add_argument("file")
    common(pv, tol=1e-10)
    po = dsub.add_parser("optimize", help="search for a floating design")
    po.add_argument("--n", type=int, required=True)
    po.add_argument("--cardinality", type=int, required=True)
    po.add_argument("--iters", type=int, default=40)
    common(po)
    ph = dsub.add_parser("hilbert", help="exact rational design construction")
    ph.add_argument("--n", type=int, required=True)
    ph.add_argument("--height-start", type=int, default=1)
    ph.add_argument("--height-max", type=int, default=8)
    common(ph)
    pt = dsub.add_parser("torus", help="flat-torus immersion from a design")
    pt.add_argument("file")
    pt.add_argument("--curv", action="store_true",
                    help="also run the curvature report on the result")
    pt.add_argument("--grid", type=int, default=None)
    pt.add_argument("--points", type=int, default=20)
    common(pt)

    p = sub.add_parser("curve", help="discrete-curve inequality checkers")
    csub = p.add_subparsers(dest="curve_cmd", required=True)
    pf = csub.add_parser("fenchel", help="total curvature of a closed curve")
    pf.add_argument("file")
    common(pf)
    pa = csub.add_parser("arm", help="convex-arc straightening check")
    pa.add_argument("q", nargs="?", help="spatial arc file")
    pa.add_argument("p", nargs="?", help="planar convex comparison arc file")
    pa.add_argument("--random", type=int, default=0,
                    help="run this many generated instances instead of files")
    pa.add_argument("--ambient", type=int, default=3)
    common(pa, tol=1e-9)
    pb = csub.add_parser("bow", help="chord bound for curvature-bounded curves")
    pb.add_argument("file")
    pb.add_argument("--R", type=float, required=True, help="curvature bound 1/R")
    common(pb, tol=1e-9)
    pc = csub.add_parser("crofton", help="height-function critical point count")
    pc.add_argument("file")
    pc.add_argument("--dirs", type=int, default=10_000)
    common(pc, tol=0.05)

    p = sub.add_parser("bounds", help="curvature bound tables")
    bsub = p.add_subparsers(dest="bounds_cmd", required=True)
    pr = bsub.add_parser("report", help="bound table with consistency checks")
    pr.add_argument("--n-min", type=int, default=1)
    pr.add_argument("--n-max", type=int, default=16)
    common(pr)

    p = sub.add_parser("verify-paper",
                       help="run the full quantitative claim suite")
    p.add_argument("--only", default=None, help="run a single check group")
    common(p)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except SystemExit as e:  # file loaders bail out with a coded exit
        return e.code


def _dispatch(args) -> int:
    if args.command == "curv":
        return cmd_curv(args)
    if args.command == "design":
        return cmd_design(args)
    if args.command == "curve":
        return cmd_curve(args)
    if args.command == "bounds":
        return cmd_bounds(args)
    if args.command == "verify-paper":
        try:
            return cmd_verify(args)
        except KeyError as e:
            print(f"error: {e.args[0]}", file=sys.stderr)
            return EXIT_PARSE
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
