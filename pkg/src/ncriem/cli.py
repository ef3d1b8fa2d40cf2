"""Command-line front end: ``ncriem verify|classify|solve-lc|sample-moduli|sigma-dump``.

Every report embeds the tool version, seed, backend and tolerance.  Reports
contain no timings, so repeated runs with the same options are byte-identical.

CSV output has the fixed column order ``section,id,ref,status,witness``;
``witness`` is the JSON encoding of the nested witness object.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from fractions import Fraction

from . import __version__
from . import groupconn as gc
from . import qconn as qc
from .scalars import GAUSS, QRAT, ParseError, field_by_name, parse_rat
from .suites import SUITES, RunConfig, UnknownSuite, classify_qsu2, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CSV_COLUMNS = ("section", "id", "ref", "status", "witness")


class UsageError(ValueError):
    pass


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


def _dumps(obj, indent=None) -> str:
    return json.dumps(obj, indent=indent, default=_jsonable, ensure_ascii=False)


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------


def _sections(report: dict) -> list[tuple[str, list[dict]]]:
    return [(s["name"], s["records"]) for s in report["sections"]]


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return _dumps(report, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for name, recs in _sections(report):
            for r in recs:
                w.writerow([name, r["id"], r["ref"], r["status"], _dumps(r.get("witness"))])
        return buf.getvalue()
    lines = [f"ncriem {report['version']}  command={report['command']}  seed={report['seed']}  "
             f"backend={report['backend']}  tolerance={report['tolerance']}"]
    for name, recs in _sections(report):
        lines.append(f"[{name}]")
        for r in recs:
            line = f"  {r['status'].upper():4}  {r['id']}  ({r['ref']})"
            if r["status"] != "pass" and r.get("witness") is not None:
                line += f"  witness={_dumps(r['witness'])}"
            lines.append(line)
            wit = r.get("witness")
            if isinstance(wit, dict) and "rows" in wit:
                lines.extend("    " + "  ".join(row) for row in wit["rows"])
    for key, val in report.get("extra", {}).items():
        lines.append(f"{key}: {_dumps(val)}")
    npass = sum(r["status"] == "pass" for _, recs in _sections(report) for r in recs)
    ntot = sum(len(recs) for _, recs in _sections(report))
    lines.append(f"{'OK' if report['ok'] else 'FAILED'}  {npass}/{ntot} checks passed")
    return "\n".join(lines) + "\n"


def _report(command: str, cfg: RunConfig, sections: list[dict], extra: dict | None = None) -> dict:
    ok = all(r["status"] == "pass" for s in sections for r in s["records"])
    rep = {"tool": "ncriem", "version": __version__, "command": command, "seed": cfg.seed,
           "backend": cfg.backend, "tolerance": cfg.tol, "ok": ok, "sections": sections}
    if extra:
        rep["extra"] = extra
    return rep


def _rec(cid, ref, ok, witness=None) -> dict:
    return {"id": cid, "ref": ref, "status": "pass" if ok else "fail", "witness": witness}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_verify(args, cfg: RunConfig) -> dict:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    sections = []
    for name in names:
        res = run_suite(name, cfg)
        sections.append({"name": name, "records": res["checks"]})
    return _report(f"verify {args.suite}", cfg, sections)


def _conditions(text: str) -> list[str]:
    return [c.strip() for c in text.split(",") if c.strip()]


def cmd_classify(args, cfg: RunConfig) -> dict:
    conds = _conditions(args.conditions)
    if args.geometry == "s3":
        rep = gc.classify_s3(conds, backend=cfg.backend, samples=args.samples or cfg.samples,
                             seed=cfg.seed, tol=cfg.tol)
        recs = [_rec(f["name"], f["ref"], f["ok"],
                     {"backend": f["backend"], "samples": f["samples"], "pass": f["pass"],
                      "expected": f["expected"], "params": f["params_or_sampler"], "note": f["note"],
                      "witness": f["witness"]})
                for f in rep["families"]]
    else:
        rep = classify_qsu2(conds, q=args.q, metric=_metric(args.metric), samples=args.samples or 10,
                            seed=cfg.seed, tol=max(cfg.tol, 1e-9))
        recs = [_rec(f["name"], f["ref"], f["ok"],
                     {k: v for k, v in f.items() if k not in ("name", "ref", "ok")})
                for f in rep["families"]]
    off = rep["off_family_samples"]
    recs.append(_rec("off-family", "random points outside the catalogued families fail",
                     off["passing"] == 0, off))
    if not rep["catalogued"]:
        recs.append(_rec("catalogued", "condition set has a catalogued answer", False, rep["condition_set"]))
    extra = {"condition_set": rep["condition_set"]}
    if rep.get("empty"):
        extra["empty"] = True
    return _report(f"classify {args.geometry} {','.join(rep['condition_set'])}", cfg,
                   [{"name": f"classify-{args.geometry}", "records": recs}], extra)


def _metric(text: str | None) -> qc.QMetric:
    if text is None:
        return qc.QMetric(1, 1, 1)
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise qc.BadMetric("metric must be three comma-separated numbers g++,g00,g--")
    try:
        vals = [parse_rat(p) for p in parts]
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        raise qc.BadMetric(f"cannot parse metric {text!r}") from exc
    return qc.QMetric(*vals)


def cmd_solve_lc(args, cfg: RunConfig) -> dict:
    g = _metric(args.metric)
    tol = max(cfg.tol, 1e-12)
    rep = qc.levi_civita_solve(args.q, g, tol)
    recs = []
    for k, s in enumerate(rep["solutions"]):
        recs.append(_rec(f"solution-{k}", "torsion free, metric preserving, star compatible, torsion compatible",
                         s["ok"], s))
    extra = {"q": rep["q"], "metric": rep["metric"], "disc": rep["disc"],
             "classical_root_index": rep["classical_root_index"], "classical_sign": rep["classical_sign"]}
    return _report("solve-lc", cfg, [{"name": "levi-civita", "records": recs}], extra)


def cmd_sample_moduli(args, cfg: RunConfig) -> dict:
    rng = random.Random(cfg.seed)
    count = args.count
    recs = []
    if args.family == "tf-star":
        conds = ("torsion_free", "star_compatible")
        points = [(None, gc.sample_tf_star(rng)) for _ in range(count)]
        ref = "three-angle parametrization of torsion-free star-compatible connections"
    else:
        conds = ("torsion_free", "cotorsion_free", "star_compatible")
        points = [((r, st, sd), gc.r_line_params(r, st, sd)) for r, st, sd in gc.r_line_samples(rng, count)]
        ref = "one-parameter r line, 1/3 <= r <= 2/3, with sign choices"
    F = field_by_name("cdouble", cfg.tol)
    for k, (label, p) in enumerate(points):
        conn = gc.s3_connection(p.coerce(F), F)
        res = {c: gc.check(conn, c)[1] for c in conds}
        wit = {"params": p.format(F), "residuals": {c: float(f"{v:.3e}") for c, v in res.items()}}
        if label is not None:
            wit["r"], wit["sign_theta"], wit["sign_delta"] = label
        recs.append(_rec(f"{args.family}-{k}", ref, all(v < cfg.tol for v in res.values()), wit))
    return _report(f"sample-moduli {args.family}", cfg, [{"name": args.family, "records": recs}])


def _parse_assignments(text: str | None, field) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        key, sep, val = item.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in qc.PARAMS:
            raise UsageError(f"expected name=value with name in {list(qc.PARAMS)}, got {item!r}")
        out[key] = field.parse(val.strip())
    return out


def cmd_sigma_dump(args, cfg: RunConfig) -> dict:
    if args.geometry == "s3":
        F = field_by_name(cfg.backend, cfg.tol)
        if F is QRAT:
            F = GAUSS
        vals = [F.parse(v.strip()) for v in (args.params or "1,0,0,1,0").split(",")]
        if len(vals) != 5:
            raise UsageError("s3 needs five parameters a,b,c,d,e")
        conn = gc.s3_connection(vals, F)
        mat = conn.sigma
        desc = {"params": gc.S3Params(*vals).format(F),
                "index": "row/column 3*i+j for xi^i (x) xi^j, i and j over (12), (13), (23)"}
    else:
        F = QRAT
        if args.point == "braided":
            conn = qc.braided_points(None, QRAT)[0]
        else:
            conn = qc.QSU2Connection.make(**_parse_assignments(args.params, F))
        mat = qc.sigma9(conn)
        desc = {"params": conn.format(), "index": "row/column 3*i+j for e^i (x) e^j, order (+,0,-)"}
    rows = [[F.format(x) for x in row] for row in mat.to_rows()]
    rec = _rec("sigma", "generalized braiding matrix, M[out, in]", True, {"rows": rows, **desc})
    return _report(f"sigma-dump {args.geometry}", cfg, [{"name": "sigma", "records": [rec]}])


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("gauss", "qratfn", "cdouble"), default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="tolerance (numeric backends only)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="ncriem", parents=[common],
                                description="Bimodule connections on C(S3) and C_q[SU2]: verify, classify, solve.")
    p.add_argument("--version", action="version", version=f"ncriem {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    v.add_argument("suite", help=f"one of {', '.join(SUITES)} or 'all'")

    c = sub.add_parser("classify", parents=[common], help="certify the solution set of a condition conjunction")
    c.add_argument("geometry", choices=("s3", "qsu2"))
    c.add_argument("--conditions", required=True, help="comma-separated, e.g. metric,star,torsion-compat")
    c.add_argument("--samples", type=int, default=None)
    c.add_argument("--q", type=float, default=0.9, help="numeric q for the qsu2 torsion-free points")
    c.add_argument("--metric", default=None, help="g++,g00,g-- for qsu2 (default 1,1,1)")

    s = sub.add_parser("solve-lc", parents=[common], help="torsion-free points of the metric star-compatible family")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--metric", default="1,1,1")

    m = sub.add_parser("sample-moduli", parents=[common], help="sample the S3 angle and r-line moduli")
    m.add_argument("family", choices=("tf-star", "r-line"))
    m.add_argument("--count", type=int, default=20)

    d = sub.add_parser("sigma-dump", parents=[common], help="print a sigma matrix in the scalar text format")
    d.add_argument("geometry", choices=("s3", "qsu2"))
    d.add_argument("--params", default=None, help="s3: a,b,c,d,e   qsu2: name=value,... (q symbolic)")
    d.add_argument("--point", choices=("braided", "custom"), default="custom")
    return p


COMMANDS = {"verify": cmd_verify, "classify": cmd_classify, "solve-lc": cmd_solve_lc,
            "sample-moduli": cmd_sample_moduli, "sigma-dump": cmd_sigma_dump}


def _config(args) -> RunConfig:
    seed = getattr(args, "seed", 0)
    env = os.environ.get("NCRIEM_SEED")
    if env is not None and env.strip():
        try:
            seed = int(env)
        except ValueError as exc:
            raise UsageError(f"NCRIEM_SEED must be an integer, got {env!r}") from exc
    return RunConfig(backend=getattr(args, "backend", "gauss"), tol=getattr(args, "tol", 1e-10), seed=seed)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "json")
    try:
        cfg = _config(args)
        if args.command == "verify" and args.suite != "all" and args.suite not in SUITES:
            raise UnknownSuite(f"unknown suite {args.suite!r}; expected one of {', '.join(SUITES)} or all")
        report = COMMANDS[args.command](args, cfg)
    except (UnknownSuite, gc.UnknownCondition, qc.BadQ, qc.BadMetric, UsageError, ParseError) as exc:
        print(f"ncriem: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report, fmt)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["ok"] else EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
