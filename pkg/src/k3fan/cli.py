"""Command-line entry point: censuses, classification, audits, normal forms and figures."""
from __future__ import annotations

import argparse
import os
import sys
import time

from . import audits, weier
from .census import face_census, load_expectations
from .chambers import END_LABELS, SLOTS, locate_vector, rc_chamber
from .errors import K3FanError, NotDivisible, NotTypeIII
from .ias import EllVector, comb_type, ell_of_lambda, lambda_of_ell, strong_divisibility, validate
from .lattice import LatticeVector, alpha, vector_with_pairings
from .report import Report
from .strata import (
    face_comb_type,
    glued_partners,
    saturation,
    stable_type,
    stratum_dims,
    type2_info,
)

DEFAULT_SEED = 7


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", ",").split(",") if t]


def _ell(spec: list[str]) -> EllVector:
    ends = _ints(spec[0])
    vals = _ints(" ".join(spec[1:]))
    if len(ends) != 2:
        raise ValueError("ends must be given as L,R")
    return validate(EllVector(ends[0], ends[1], tuple(vals)))


# ---------------------------------------------------------------- commands

def cmd_census(args) -> tuple[dict, bool, list]:
    dims = set(_ints(args.dims)) if args.dims else None
    rep = face_census(args.fan, args.group, dims=dims, threads=args.threads,
                      max_bytes=args.max_bytes, max_seconds=args.max_seconds)
    if args.expectations:
        table = load_expectations(args.expectations)
        rep.expected = table.get((rep.fan, rep.group), [])
    figs = []
    if args.report:
        from .plotting import census_figure
        path = os.path.join(args.report, f"census_{rep.fan}_{rep.group}.svg")
        census_figure(rep.by_dim, f"{rep.fan.upper()} faces mod {rep.group}", path)
        figs.append(path)
    payload = rep.payload()
    if args.timing:
        payload["seconds"] = round(rep.seconds, 3)
        payload["peak_bytes"] = rep.peak_bytes
    return payload, rep.passed(), figs


def classify_vector(v: LatticeVector) -> dict:
    w, face = locate_vector(v)
    out: dict = {"reduced_lambda": list(w.reduced()), "pairings": list(w.pairings()),
                 "norm": w.norm(), "chamber": face.chamber.name,
                 "face_zeros": sorted(face.zeros), "support": sorted(face.support),
                 "cone_dim": face.dim}
    if not face.support:
        raise K3FanError("the zero vector has no stratum")
    ct = face_comb_type(face)
    out["comb_type"] = str(ct)
    out["stable_type"] = str(stable_type(ct))
    try:
        d = stratum_dims(face)
        out["dims"] = {"cone": d.cone_dim, "stratum": d.toroidal_dim,
                       "index_sum": d.index_sum, "length": d.length, "law": d.consistent()}
    except NotTypeIII:
        out["dims"] = {"cone": face.dim, "stratum": 18 - face.dim}
        out["type_ii"] = type2_info(face)
    s = saturation(face)
    out["saturation"] = {"gcd": s.gcd_index, "snf": s.snf_index,
                         "chamber_generates": s.chamber_generates}
    try:
        e = ell_of_lambda(w)
        out["divisibility"] = {"status": "divisible", "ell": list(e.ell), "ends": [e.L, e.R]}
    except NotDivisible as exc:
        out["divisibility"] = {"status": "NotDivisible", "multiplier": exc.multiplier}
    out["divisibility"]["strong"] = strong_divisibility(w)
    out["glued_partners"] = [p.chamber.name for p in glued_partners(face)]
    walls = [f"{c}" for c in _boundary_chambers(w)]
    if len(walls) > 1:
        out["on_boundary_of"] = walls
    return out


def _boundary_chambers(w: LatticeVector) -> list[str]:
    return [rc_chamber(L, R).name for L in END_LABELS for R in END_LABELS
            if rc_chamber(L, R).contains(w)]


def cmd_classify(args) -> tuple[dict, bool, list]:
    figs = []
    if args.ell:
        e = _ell(args.ell)
        lam = lambda_of_ell(e)
        out = {"input": {"ends": [e.L, e.R], "ell": list(e.ell)},
               "comb_type_of_ell": str(comb_type(e))}
        out.update(classify_vector(lam))
        if args.report:
            from .plotting import ias_figure
            path = os.path.join(args.report, f"Q{e.L}{e.R}.svg")
            ias_figure(e, path)
            figs.append(path)
    else:
        if args.pairings:
            vals = _ints(args.pairings)
            if len(vals) != len(SLOTS):
                raise ValueError("19 pairings expected")
            v = vector_with_pairings(vals[:8] + vals[9:], [alpha(i) for i in SLOTS if i != 9])
            if v.pairings() != tuple(vals):
                raise K3FanError("pairings violate the relation among the roots")
        else:
            v = LatticeVector.from_coords(_ints(args.lam))
        out = {"input": {"coords": list(v.reduced())}}
        out.update(classify_vector(v))
    return out, True, figs


def cmd_audit(args) -> tuple[dict, bool, list]:
    scope = args.scope
    if scope == "charges":
        if args.exhaustive:
            r = audits.audit_charges(args.threads)
        else:
            r = audits.audit_charges_sample(args.sample or 10_000, args.seed)
    elif scope == "dims":
        r = audits.audit_dims(args.threads)
    elif scope == "monodromy":
        r = audits.audit_monodromy(args.sample or 10_000, args.seed)
    elif scope == "gammas":
        r = audits.audit_gammas()
    else:
        r = audits.audit_saturation(all_chambers=args.all_chambers)
    return r.payload(), r.passed, []


def cmd_weier(args) -> tuple[dict, bool, list]:
    rows = list(weier.ROWS) if args.all or not args.row else [args.row]
    out = {"rows": [], "cascade": []}
    ok = True
    for name in rows:
        if name not in weier.ROWS:
            raise ValueError(f"unknown row {name}; choose from {', '.join(weier.ROWS)}")
        r = weier.verify_row(name, args.trials, args.seed)
        row = weier.ROWS[name]
        out["rows"].append({"row": name, "n": row.n, "trials": r.trials, "pass": r.passed,
                            "monomial": list(row.monomial), "group_order": row.group,
                            "semiinvariance_order": weier.semiinvariance_order(*row.monomial),
                            "first_counterexample": r.failures[0] if r.failures else None})
        ok &= r.passed
    if args.all or not args.row:
        for step, good in weier.cascade_check(args.seed):
            out["cascade"].append({"step": step, "pass": good})
            ok &= good
    return out, ok, []


def cmd_figure(args) -> tuple[dict, bool, list]:
    from .plotting import ias_figure
    e = _ell(args.ell)
    info = ias_figure(e, args.out)
    return info, True, [args.out]


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    common.add_argument("--report", metavar="DIR", help="write report.json, report.csv and SVG figures to DIR")
    common.add_argument("--threads", type=int, default=None, help="parallelism cap (default K3FAN_THREADS)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--timing", action="store_true", help="include wall time (breaks byte identity)")

    p = argparse.ArgumentParser(prog="k3fan", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("census", parents=[common], help="face census of a fan")
    c.add_argument("--fan", choices=["cox", "ram", "rc"], required=True)
    c.add_argument("--group", choices=["W", "Gamma"], default="W")
    c.add_argument("--dims", help="comma separated cone dimensions")
    c.add_argument("--expectations", help="JSON file overriding the expected counts")
    c.add_argument("--max-bytes", type=int, default=None)
    c.add_argument("--max-seconds", type=float, default=None)
    c.set_defaults(func=cmd_census)

    k = sub.add_parser("classify", parents=[common], help="classify a monodromy vector or edge vector")
    g = k.add_mutually_exclusive_group(required=True)
    g.add_argument("--ell", nargs="+", metavar="L,R ell", help="end labels then 19 edge lengths")
    g.add_argument("--lambda", dest="lam", help="19 root coordinates")
    g.add_argument("--pairings", help="19 values of lambda . alpha_i")
    k.set_defaults(func=cmd_classify)

    a = sub.add_parser("audit", parents=[common], help="invariant sweeps")
    a.add_argument("scope", choices=["charges", "dims", "monodromy", "gammas", "saturation"])
    a.add_argument("--exhaustive", action="store_true")
    a.add_argument("--exhaustive-mod-gamma", action="store_true", help="accepted for dims, which is always exhaustive")
    a.add_argument("--sample", type=int, default=None)
    a.add_argument("--all-chambers", action="store_true", help="saturation: include non-generating chambers")
    a.set_defaults(func=cmd_audit)

    w = sub.add_parser("weier", parents=[common], help="verify the normal form table")
    w.add_argument("--row")
    w.add_argument("--all", action="store_true")
    w.add_argument("--trials", type=int, default=100)
    w.set_defaults(func=cmd_weier)

    f = sub.add_parser("figure", parents=[common], help="SVG of the triangulated polygon")
    f.add_argument("--ell", nargs="+", required=True, metavar="L,R ell")
    f.add_argument("--out", required=True)
    f.set_defaults(func=cmd_figure)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    start = time.monotonic()
    try:
        if args.report:
            os.makedirs(args.report, exist_ok=True)
        payload, ok, figs = args.func(args)
    except (K3FanError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    rep = Report(["k3fan"] + argv, args.seed, payload, ok,
                 time.monotonic() - start if args.timing else None, figs)
    text = rep.to_csv() if args.fmt == "csv" else rep.to_json()
    sys.stdout.write(text)
    if args.report:
        with open(os.path.join(args.report, "report.json"), "w") as fh:
            fh.write(rep.to_json())
        with open(os.path.join(args.report, "report.csv"), "w") as fh:
            fh.write(rep.to_csv())
    return 0 if ok else 2
