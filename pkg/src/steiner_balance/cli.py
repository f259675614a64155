"""Command-line driver: construct designs, compute metrics and bounds, search
labelings, reproduce the small-order target table, simulate storage loads,
and verify designs against every applicable bound.

Data goes to standard output (JSON or CSV, locale independent); errors go to
standard error as single-line JSON.  Exit code 0 iff all requested checks
pass.  All randomness flows from --seed (default 0), so identical commands
give byte-identical output apart from the wall-time manifest field.  The
environment variable STEINER_BALANCE_THREADS caps internal parallelism; the
current implementation is single-threaded, so any value is honored trivially.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from importlib.metadata import PackageNotFoundError, version as pkg_version

from . import constructions as C
from . import independence as I
from . import metrics as M
from . import search as S
from . import storage as ST
from .design import (
    Design,
    DesignError,
    Labeling,
    duplicated_t_subsets,
    identity_labeling,
    read_design,
    read_labeling,
    validate,
    write_design,
    write_labeling,
)
from .serialize import to_jsonable


def _version() -> str:
    try:
        return pkg_version("steiner-balance")
    except PackageNotFoundError:
        return "unknown"


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


class Run:
    """Collects the reproducibility manifest embedded in every JSON output."""

    def __init__(self, argv: list[str], seed: int | None):
        self.argv = argv
        self.seed = seed
        self.inputs: dict[str, str] = {}
        self.outputs: dict[str, str] = {}
        self.t0 = time.monotonic()

    def read_design(self, path: str) -> Design:
        self.inputs[path] = _digest(path)
        with open(path, "r", encoding="utf-8") as fh:
            return read_design(fh.read())

    def read_labeling(self, path: str) -> Labeling:
        self.inputs[path] = _digest(path)
        with open(path, "r", encoding="utf-8") as fh:
            return read_labeling(fh.read())

    def write_file(self, path: str, text: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        self.outputs[path] = _digest(path)

    def manifest(self) -> dict:
        return {
            "argv": self.argv,
            "seed": self.seed,
            "package": "steiner-balance",
            "version": _version(),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "wall_time_s": round(time.monotonic() - self.t0, 6),
        }

    def emit(self, payload: dict) -> None:
        payload = dict(payload)
        payload["manifest"] = self.manifest()
        json.dump(payload, sys.stdout, indent=2, ensure_ascii=True)
        sys.stdout.write("\n")


def _labeling_or_identity(run: Run, design: Design, path: str | None) -> Labeling:
    if path is None:
        return identity_labeling(design.v)
    labeling = run.read_labeling(path)
    if labeling.v != design.v:
        raise DesignError(f"labeling has {labeling.v} ranks, design has {design.v} points")
    return labeling


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(run: Run, args) -> int:
    name = args.name
    if name.startswith("catalog:"):
        design, labeling = C.catalog(name.split(":", 1)[1])
    elif name == "sum-class":
        _need(args, "t", "v", "sigma")
        design = C.sum_class_packing(args.t, args.v, args.sigma)
        labeling = identity_labeling(design.v)
    elif name == "fourpack":
        _need(args, "v")
        design = C.fourpack(args.v)
        labeling = identity_labeling(design.v)
    elif name == "sw-special":
        _need(args, "v")
        design, labeling = C.sw_complete_special(args.v)
    elif name == "sw-general":
        _need(args, "v")
        design, labeling = C.sw_complete_general(args.v)
    elif name == "bose":
        _need(args, "v")
        design = C.bose(args.v)
        labeling = identity_labeling(design.v)
    elif name == "skolem":
        _need(args, "v")
        design = C.skolem(args.v)
        labeling = identity_labeling(design.v)
    else:
        raise DesignError(
            f"unknown construction {name!r}; use sum-class, fourpack, sw-special, "
            f"sw-general, bose, skolem, or catalog:<name>")
    text = write_design(design)
    if args.out:
        run.write_file(args.out, text)
    else:
        sys.stdout.write(text)
    if args.labeling_out:
        run.write_file(args.labeling_out, write_labeling(labeling))
    return 0


def _need(args, *names) -> None:
    for n in names:
        if getattr(args, n, None) is None:
            raise DesignError(f"construction requires --{n}")


def cmd_metrics(run: Run, args) -> int:
    design = run.read_design(args.design)
    labeling = _labeling_or_identity(run, design, args.labeling)
    report = M.metric_report(design, labeling)
    run.emit({"metric_report": to_jsonable(report)})
    return 0


def cmd_bounds(run: Run, args) -> int:
    sheet = M.basic_bounds(args.t, args.k, args.v)
    run.emit({"bound_sheet": to_jsonable(sheet)})
    return 0


def cmd_independence(run: Run, args) -> int:
    design = run.read_design(args.design)
    out: dict = {}
    if args.greedy:
        wit = I.greedy_independent_set(design, seed=args.seed)
        out["greedy_independent_set"] = list(wit)
        out["size"] = len(wit)
    elif args.pair:
        pair = I.independent_pair(design)
        out["independent_pair"] = to_jsonable(pair)
        out["bounds"] = to_jsonable(
            I.indep_bounds(design, _alpha(design), pair))
    else:
        wit = I.max_independent_set(design)
        out["max_independent_set"] = list(wit)
        out["alpha"] = len(wit)
        out["bounds"] = to_jsonable(I.indep_bounds(design, len(wit)))
    run.emit(out)
    return 0


def _alpha(design: Design) -> int:
    return len(I.max_independent_set(design))


def cmd_label(run: Run, args) -> int:
    design = run.read_design(args.design)
    if args.from_pair:
        pair = I.independent_pair(design)
        labeling = I.labeling_from_pair(design, pair)
        report = M.metric_report(design, labeling)
        payload = {"labeling": list(labeling.ranks),
                   "pair": to_jsonable(pair),
                   "metric_report": to_jsonable(report)}
    else:
        if args.objective is None:
            raise DesignError("label needs --from-pair or --objective")
        if args.exact:
            if design.v <= S.EXHAUSTIVE_CAP:
                result = S.exhaustive_labeling(design, args.objective)
            else:
                result = S.bb_labeling(design, args.objective)
        else:
            result = S.anneal_labeling(design, args.objective,
                                       seed=args.seed, budget=args.budget)
        labeling = result.labeling
        payload = {"search_result": to_jsonable(result)}
    if args.out:
        run.write_file(args.out, write_labeling(labeling))
    run.emit(payload)
    return 0


def cmd_table(run: Run, args) -> int:
    v_range = None
    if args.v_range:
        a, _, b = args.v_range.partition("..")
        v_range = (int(a), int(b) if b else int(a))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=[
        "v", "target_minsum", "target_maxsum", "status",
        "achieved_minsum", "achieved_maxsum", "steps", "seed"])
    writer.writeheader()
    all_hit = True
    for row in S.run_table(v_range=v_range, seed=args.seed, budget=args.budget):
        writer.writerow(row)
        all_hit = all_hit and row["status"] == "hit"
    sys.stdout.write(buf.getvalue())
    return 0 if all_hit else 1


def _parse_profile(run: Run, spec: str, v: int) -> ST.AccessProfile:
    if spec == "uniform":
        return ST.uniform_profile(v)
    if spec == "linear":
        return ST.linear_profile(v)
    if spec.startswith("zipf:"):
        return ST.zipf_profile(v, float(spec.split(":", 1)[1]))
    run.inputs[spec] = _digest(spec)
    with open(spec, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    kind = data.get("kind")
    if kind == "uniform":
        return ST.uniform_profile(v)
    if kind == "linear":
        return ST.linear_profile(v)
    if kind == "zipf":
        return ST.zipf_profile(v, data["exponent"])
    if kind == "custom":
        return ST.custom_profile(data["weights"])
    raise DesignError(f"unknown profile kind {kind!r}")


def cmd_simulate(run: Run, args) -> int:
    design = run.read_design(args.design)
    labeling = run.read_labeling(args.labeling)
    profile = _parse_profile(run, args.profile, design.v)
    report = ST.access_load(design, labeling, profile)
    payload = {"profile": profile.kind,
               "load_report": to_jsonable(report),
               "recovery": to_jsonable(ST.recovery_uniformity(design))}
    if args.frc_rate is not None:
        payload["frc_rate"] = ST.frc_rate(design, args.frc_rate)
    run.emit(payload)
    return 0


def cmd_verify(run: Run, args) -> int:
    design = run.read_design(args.design)
    labeling = _labeling_or_identity(run, design, args.labeling) if args.labeling else None
    rows = verify_rows(design, labeling)
    ok = all(r["ok"] for r in rows)
    run.emit({"checks": rows, "pass": ok})
    return 0 if ok else 1


def verify_rows(design: Design, labeling: Labeling | None) -> list[dict]:
    """Consolidated pass/fail rows for every bound that applies to the design
    (and labeling, when given)."""
    rows: list[dict] = []
    status = validate(design)

    def row(name: str, ok: bool, detail: str) -> None:
        rows.append({"check": name, "ok": bool(ok), "detail": detail})

    dup = [] if status.is_packing else duplicated_t_subsets(design)
    row("packing", status.is_packing,
        "no repeated t-subset" if status.is_packing
        else f"repeated t-subsets: {dup[:5]}")

    prov = design.provenance.split()
    kind = prov[0] if prov else ""
    params = dict(p.split("=", 1) for p in prov[1:] if "=" in p)
    expects_steiner = kind in ("sw-special", "sw-general", "bose", "skolem") or (
        kind == "catalog")
    if expects_steiner:
        row("steiner", status.is_steiner,
            f"uncovered t-subsets: {status.uncovered_t_subsets}")

    v, t, k = design.v, design.t, design.k
    if labeling is not None and design.blocks:
        report = M.metric_report(design, labeling)
        if status.is_steiner:
            sheet = M.basic_bounds(t, k, v)
            row("minsum-cap", report.min_sum <= sheet.minsum_upper,
                f"MinSum {report.min_sum} <= {sheet.minsum_upper}")
            row("maxsum-floor", report.max_sum >= sheet.maxsum_lower,
                f"MaxSum {report.max_sum} >= {sheet.maxsum_lower}")
            row("diffsum-floor", report.diff_sum >= sheet.diffsum_lower,
                f"DiffSum {report.diff_sum} >= {sheet.diffsum_lower}")
            if sheet.sts_refined is not None:
                d_lo, r_lo = sheet.sts_refined
                row("sts-diffsum-floor", report.diff_sum >= d_lo,
                    f"DiffSum {report.diff_sum} >= {d_lo}")
                if report.ratio_sum is not None:
                    row("sts-ratiosum-floor", report.ratio_sum >= r_lo,
                        f"RatioSum {report.ratio_sum} >= {r_lo}")
        if v <= I.MIS_EXACT_CAP:
            alpha = len(I.max_independent_set(design))
            bound = k * alpha - (k * (k - 1)) // 2
            row("independence-minsum-cap", report.min_sum <= bound,
                f"MinSum {report.min_sum} <= k*alpha - C(k,2) = {bound}")

        if kind == "sw-special":
            row("construction-minsum", report.min_sum >= v - 2,
                f"MinSum {report.min_sum} >= v-2 = {v - 2}")
            row("construction-maxsum", report.max_sum <= 2 * v + 2,
                f"MaxSum {report.max_sum} <= 2v+2 = {2 * v + 2}")
            row("construction-diffsum", report.diff_sum <= v + 4,
                f"DiffSum {report.diff_sum} <= v+4 = {v + 4}")
        elif kind == "sw-general":
            row("construction-minsum", report.min_sum >= v - 5,
                f"MinSum {report.min_sum} >= v-5 = {v - 5}")
            row("construction-maxsum", report.max_sum <= 2 * v + 2,
                f"MaxSum {report.max_sum} <= 2v+2 = {2 * v + 2}")
            row("construction-diffsum", report.diff_sum <= v + 7,
                f"DiffSum {report.diff_sum} <= v+7 = {v + 7}")
        elif kind == "sum-class" and "sigma" in params:
            sigma = int(params["sigma"])
            expected_min, expected_max = v + sigma, (k - 1) * v + sigma
            low = -((t + 2) * (t + 1)) // 2 + 1
            window = low <= sigma < (t + 1) * t // 2
            big_enough = v > ((t + 2) * (t + 1) + (t + 1) * t) // 2
            if window and big_enough:
                row("construction-minsum", report.min_sum == expected_min,
                    f"MinSum {report.min_sum} == v+sigma = {expected_min}")
                row("construction-maxsum", report.max_sum == expected_max,
                    f"MaxSum {report.max_sum} == tv+sigma = {expected_max}")
        elif kind == "fourpack":
            row("construction-minsum", report.min_sum == v + 2,
                f"MinSum {report.min_sum} == v+2 = {v + 2}")
            row("construction-maxsum", report.max_sum == 3 * v - 6,
                f"MaxSum {report.max_sum} == 3v-6 = {3 * v - 6}")

    if kind == "sum-class":
        expected = math.comb(v, k) // v
        row("construction-blockcount", design.b == expected,
            f"blocks {design.b} == C(v,{k})/v = {expected}")
    if kind == "fourpack":
        expected = (v - 4) * math.comb(v, 3) // ((v - 1) * 4)
        row("construction-blockcount", design.b == expected,
            f"blocks {design.b} == (v-4)/(v-1)*C(v,3)/4 = {expected}")
    return rows


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="steiner-balance",
        description="Partial Steiner systems, access-balanced labelings, and storage-load simulation")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a design and print/write its file")
    p.add_argument("name", help="sum-class | fourpack | sw-special | sw-general | bose | skolem | catalog:<name>")
    p.add_argument("--t", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--sigma", type=int)
    p.add_argument("--out")
    p.add_argument("--labeling-out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("metrics", help="block-sum metrics of a labeled design")
    p.add_argument("design")
    p.add_argument("--labeling")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("bounds", help="closed-form bound sheet for S(t,k,v)")
    p.add_argument("t", type=int)
    p.add_argument("k", type=int)
    p.add_argument("v", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("independence", help="independent-set witnesses and bounds")
    p.add_argument("design")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="exact maximum independent set (default)")
    g.add_argument("--greedy", action="store_true")
    g.add_argument("--pair", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_independence)

    p = sub.add_parser("label", help="produce a labeling by search or from a pair")
    p.add_argument("design")
    p.add_argument("--from-pair", action="store_true")
    p.add_argument("--objective", choices=list(S.OBJECTIVES))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--anneal", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("table", help="reproduce the published small-order target table as CSV")
    p.add_argument("--v-range")
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simulate", help="per-node load under an access profile")
    p.add_argument("design")
    p.add_argument("labeling")
    p.add_argument("--profile", required=True, help="<file>|zipf:<s>|uniform|linear")
    p.add_argument("--frc-rate", type=int)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="pass/fail every applicable bound")
    p.add_argument("design")
    p.add_argument("--labeling")
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    run = Run(argv, getattr(args, "seed", None))
    try:
        return args.func(run, args)
    except (DesignError, ValueError, OSError, json.JSONDecodeError) as exc:
        json.dump({"error": type(exc).__name__, "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
