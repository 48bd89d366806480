"""Command-line frontend for classification, sweeps, transforms, and lemmas."""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .analysis_ct import (
    classify_cni,
    classify_cpr,
    classify_cssni,
    classify_csspr,
    classify_cwsni,
    classify_cwspr,
)
from .analysis_dt import classify_dni, classify_dpr, classify_dssni, classify_dsspr, classify_dwsni
from .boundary import ct_grid, defect_ct, defect_dt, dt_grid_full, dt_grid_half, herm, ppart_ct, ppart_dt
from .config import DEFAULT
from .docio import document_of, jsonable, load_document, parse_document, save_document
from .errors import NiprError
from .interconnect import PartitionedSystem, internal_stability, ni_stability_test, redheffer_star
from .nilemma import FEASIBLE, dni_lemma_check, dpr_lemma_check, dual_dni_lemma_check
from .ratmat import RationalMatrix, rm_cayley, rm_eval, rm_eval_many
from .realization import StateSpace, minimal_realization, tf_of
from .transforms import (
    csspr_to_cssni,
    cssni_to_csspr,
    ct_ni_to_pr,
    ct_pr_to_ni,
    dt_ni_to_pr,
    dt_pr_to_ni,
)

CLASSIFIERS = {
    "cpr": ("ct", classify_cpr),
    "csspr": ("ct", classify_csspr),
    "cwspr": ("ct", classify_cwspr),
    "cni": ("ct", classify_cni),
    "cssni": ("ct", classify_cssni),
    "cwsni": ("ct", classify_cwsni),
    "dpr": ("dt", classify_dpr),
    "dsspr": ("dt", classify_dsspr),
    "dni": ("dt", classify_dni),
    "dssni": ("dt", classify_dssni),
    "dwsni": ("dt", classify_dwsni),
}


def _config_from_args(args):
    cfg = DEFAULT
    overrides = {}
    if getattr(args, "tol", None) is not None:
        overrides["psd_rel"] = args.tol
    if getattr(args, "grid", None) is not None:
        overrides["grid_points_ct"] = args.grid
        overrides["grid_points_dt"] = args.grid
    if getattr(args, "allow_asymmetric", False):
        overrides["require_symmetry"] = False
    return cfg.with_overrides(**overrides) if overrides else cfg


def _load_rational(path, cfg):
    obj = parse_document(load_document(path))
    if isinstance(obj, StateSpace):
        return tf_of(obj)
    return obj


def _report_dict(rep):
    return {
        "class": rep.class_id,
        "verdict": rep.verdict,
        "conditions": [
            {"id": c.cid, "passed": c.passed, "witness": jsonable(c.witness)} for c in rep.conditions
        ],
        "notes": rep.notes,
        "config": rep.config,
    }


def _print_report(rep, out):
    mark = "PASS" if rep.verdict else "FAIL"
    print(f"{rep.class_id}: {mark}", file=out)
    for c in rep.conditions:
        flag = "ok  " if c.passed else "FAIL"
        wit = ""
        if not c.passed and c.witness:
            wit = "  " + json.dumps(jsonable(c.witness), default=str)
        print(f"  [{flag}] {c.cid}{wit}", file=out)


def cmd_classify(args):
    cfg = _config_from_args(args)
    R = _load_rational(args.file, cfg)
    names = list(CLASSIFIERS) if args.class_name == "all" else [args.class_name]
    reports = []
    for name in names:
        domain, fn = CLASSIFIERS[name]
        if domain != R.domain:
            if args.class_name != "all":
                raise NiprError(f"classifier {name} needs a {domain} system, document is {R.domain}")
            continue
        reports.append(fn(R, cfg))
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.json:
            json.dump(jsonable([_report_dict(r) for r in reports]), out, indent=2)
            out.write("\n")
        else:
            for r in reports:
                _print_report(r, out)
    finally:
        if args.out:
            out.close()
    return 0 if all(r.verdict for r in reports) else 1


def cmd_sweep(args):
    cfg = _config_from_args(args)
    R = _load_rational(args.file, cfg)
    mode = args.mode
    if R.domain == "ct":
        params = ct_grid(cfg)
        points = 1j * params
        M = defect_ct(R) if mode == "ni" else ppart_ct(R)
        premul = 1j if mode == "ni" else 1.0
        scale = params  # (1/w) normalization column
        label = "omega"
    else:
        params = dt_grid_half(cfg) if mode == "ni" else dt_grid_full(cfg)
        points = np.exp(1j * params)
        M = defect_dt(R) if mode == "ni" else ppart_dt(R)
        premul = 1j if mode == "ni" else 1.0
        scale = np.sin(params)
        label = "theta"
    vals, ok = rm_eval_many(M, points, cfg)
    rows = []
    for k in range(params.size):
        if not ok[k]:
            continue
        H = herm(premul * vals[k])
        lam = np.linalg.eigvalsh(H)
        row = [params[k], lam[0], lam[-1]]
        if mode == "ni":
            row.append(lam[0] / scale[k] if scale[k] != 0 else float("nan"))
        rows.append(row)
    header = [label, "min_eig", "max_eig"] + (["min_eig_scaled"] if mode == "ni" else [])
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) for v in row])
    finally:
        if args.out:
            out.close()
    return 0


def cmd_transform(args):
    cfg = _config_from_args(args)
    doc = load_document(args.file)
    obj = parse_document(doc)
    R = tf_of(obj) if isinstance(obj, StateSpace) else obj
    m = R.size
    name = args.map_name
    eps = None
    if name in ("prni", "ct_ni_to_pr"):
        out_sys = ct_ni_to_pr(R, cfg)
    elif name in ("prni-inverse", "ct_pr_to_ni"):
        out_sys = ct_pr_to_ni(R, np.zeros((m, m)), cfg)
    elif name == "csspr_to_cssni":
        out_sys, eps = csspr_to_cssni(R, np.zeros((m, m)), cfg)
    elif name == "cssni_to_csspr":
        out_sys, eps = cssni_to_csspr(R, cfg)
    elif name in ("lem3", "dt_ni_to_pr"):
        out_sys = dt_ni_to_pr(R, cfg)
    elif name in ("lem3-inverse", "dt_pr_to_ni"):
        out_sys = dt_pr_to_ni(R, np.zeros((m, m)), cfg)
    elif name == "cayley":
        out_sys = rm_cayley(R)
    else:
        raise NiprError(f"unknown transform {name!r}")
    meta = {"transform": name, "source": doc.get("name", "system")}
    if eps is not None:
        meta["epsilon"] = eps
    out_doc = document_of(out_sys, name=f"{doc.get('name', 'system')}.{name}", meta=meta)
    if args.out:
        save_document(out_doc, args.out)
    else:
        json.dump(jsonable(out_doc), sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0


def cmd_lemma(args):
    cfg = _config_from_args(args)
    obj = parse_document(load_document(args.file))
    if isinstance(obj, RationalMatrix):
        obj = minimal_realization(obj, cfg)
    if args.form == "pr":
        cert = dpr_lemma_check(obj, cfg)
    elif args.form == "dual":
        cert = dual_dni_lemma_check(obj, cfg)
    else:
        cert = dni_lemma_check(obj, cfg)
    payload = jsonable({
        "status": cert.status,
        "X": cert.X,
        "residual_affine": cert.residual_affine,
        "lambda_min_X": cert.lambda_min_X,
        "lambda_min_lyap": cert.lambda_min_lyap,
        "iterations": cert.iterations,
        "extras": cert.extras,
        "config": cfg.as_dict(),
    })
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if cert.status == FEASIBLE else 1


def cmd_interconnect(args):
    cfg = _config_from_args(args)
    P = parse_document(load_document(args.fileP))
    Q = parse_document(load_document(args.fileQ))
    if args.mode == "ni-test":
        Pr = tf_of(P) if isinstance(P, StateSpace) else P
        Qr = tf_of(Q) if isinstance(Q, StateSpace) else Q
        rep = ni_stability_test(Pr, Qr, cfg)
        payload = jsonable({k: v for k, v in rep.items()})
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0 if rep["verdict"] else 1
    Pss = P if isinstance(P, StateSpace) else minimal_realization(P, cfg)
    Qss = Q if isinstance(Q, StateSpace) else minimal_realization(Q, cfg)
    res = internal_stability(Pss, Qss, cfg)
    payload = jsonable({
        "well_posed": res.well_posed,
        "internally_stable": res.internally_stable,
        "closed_loop_spectrum": res.closed_loop_spectrum,
    })
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if res.internally_stable else 1


def cmd_star(args):
    cfg = _config_from_args(args)
    S1 = parse_document(load_document(args.file1))
    S2 = parse_document(load_document(args.file2))
    S1 = S1 if isinstance(S1, StateSpace) else minimal_realization(S1, cfg)
    S2 = S2 if isinstance(S2, StateSpace) else minimal_realization(S2, cfg)
    res = redheffer_star(PartitionedSystem(S1, args.a, args.b), PartitionedSystem(S2, args.a, args.b), cfg)
    star_doc = document_of(res.system, name="star", meta={"a": args.a, "b": args.b})
    verdicts = {}
    if args.class_name:
        domain, fn = CLASSIFIERS[args.class_name]
        R = tf_of(res.system)
        if domain == R.domain:
            verdicts[args.class_name] = fn(R, cfg).verdict
    payload = jsonable({
        "well_posed": res.well_posed,
        "internally_stable": res.internally_stable,
        "closed_loop_spectrum": res.closed_loop_spectrum,
        "verdicts": verdicts,
    })
    if args.out:
        save_document(star_doc, args.out)
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _add_common(p):
    p.add_argument("--tol", type=float, default=None, help="semidefinite tolerance override")
    p.add_argument("--grid", type=int, default=None, help="grid point count override")
    p.add_argument("--allow-asymmetric", action="store_true", help="skip the symmetry requirement")


def build_parser():
    ap = argparse.ArgumentParser(prog="nipr", description="positive-real / negative-imaginary analysis")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="run classifiers on a system document")
    p.add_argument("file")
    p.add_argument("--class", dest="class_name", default="all",
                   choices=sorted(CLASSIFIERS) + ["all"])
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("sweep", help="export boundary eigenvalue data as CSV")
    p.add_argument("file")
    p.add_argument("--mode", choices=["pr", "ni"], default="ni")
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("transform", help="apply a structural map")
    p.add_argument("file")
    p.add_argument("--map", dest="map_name", required=True)
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("lemma", help="state-space feasibility certificates")
    p.add_argument("file")
    p.add_argument("--form", choices=["primal", "dual", "pr"], default="primal")
    _add_common(p)
    p.set_defaults(fn=cmd_lemma)

    p = sub.add_parser("interconnect", help="positive feedback analysis")
    p.add_argument("fileP")
    p.add_argument("fileQ")
    p.add_argument("--mode", choices=["feedback", "ni-test"], default="feedback")
    _add_common(p)
    p.set_defaults(fn=cmd_interconnect)

    p = sub.add_parser("star", help="Redheffer star product")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--class", dest="class_name", default=None, choices=sorted(CLASSIFIERS))
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_star)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (NiprError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
