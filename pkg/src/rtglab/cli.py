"""Command-line interface.

Exit codes: 0 all properties hold, 1 a property is violated, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import functions as fn
from . import generators as gen
from . import groups as gr
from . import haar as hr
from . import linalg as la
from . import measures as ms
from . import rtg as R
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CSV_COLUMNS = ["instance", "group", "property", "status", "witness", "detail"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=1)


def read_instance_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            d = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {type(exc).__name__}: {exc}") from exc
    if not isinstance(d, dict):
        raise UsageError(f"{path}: instance must be a JSON object")
    d.setdefault("name", Path(path).stem)
    return d


def load_instance(path: str) -> R.RtGroup:
    d = read_instance_json(path)
    try:
        return R.rtg_from_json(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: {type(exc).__name__}: {exc}") from exc


def _labels(G, xs):
    return [G.label(x) for x in xs]


def _partition(G, T):
    return [_labels(G, c) for c in T.cells()]


# ---------------------------------------------------------------- analyze


def analyze(r: R.RtGroup, functions: bool = False) -> dict:
    G = r.group
    quot = []
    for K in gr.normal_subgroups(G):
        q = R.quotient_rtg(r, K)
        quot.append({"K": _labels(G, K.elements), **q.flags.as_dict()})
    haar, dim = ms.haar_solver(r)
    out = {
        "instance": r.ident,
        "order": G.order,
        "cone": _labels(G, r.cone.elements),
        "lambda": _labels(G, R.topological_center(r).elements),
        "admissible": R.is_admissible(r),
        "topological": R.is_topological(r),
        "tau_partition": _partition(G, r.tau),
        "sigma_partition": _partition(G, r.sigma),
        "sigma_sigma_partition": _partition(G, r.sigma_data().sigma_sigma),
        "n_of_g": _labels(G, r.n_of_G.elements),
        "quotient_flags": quot,
        "measures": {
            "M_C": ms.mc_subspace(r).dim,
            "M_sigma": ms.msigma_subspace(r).dim,
            "M_W": ms.mw_subspace(r).dim,
            "L_C": ms.lc_measures(r).dim,
            "L_G": ms.lg_measures(r).dim,
        },
        "haar": {"canonical": [la.fmt(x) for x in haar.canonical(r)], "uniqueness_dim": dim},
    }
    if functions:
        spaces = {
            "C_tau": fn.continuous_functions(r, "tau"),
            "C_sigma": fn.continuous_functions(r, "sigma"),
            "LC": fn.lc_space(r),
            "D": fn.d_space(r),
        }
        out["functions"] = {k: v.to_json() for k, v in spaces.items()}
        out["functions"]["fix_C_sigma"] = _labels(G, fn.fix(r, spaces["C_sigma"]).elements)
    return out


def cmd_analyze(args) -> int:
    r = load_instance(args.instance)
    print(_dump(analyze(r, args.functions)))
    return EXIT_OK


# ---------------------------------------------------------------- verify


def _run_json(payload):
    d, suite = payload
    r = R.rtg_from_json(d)
    return V.run_instance(r, V.properties(suite))


def _run_catalog(payload):
    idx, max_order, suite = payload
    pairs = gen._pairs(max_order)
    G, H = pairs[idx]
    r = R.make_rtg(G, H, gen.instance_name(G, H))
    return V.run_instance(r, V.properties(suite))


def _instance_files(paths: list[str]) -> list[str]:
    files = []
    for p in paths:
        if os.path.isdir(p):
            files += sorted(str(f) for f in Path(p).glob("*.json"))
        else:
            files.append(p)
    return files


def cmd_verify(args) -> int:
    V.properties(args.suite)  # validates the suite name
    if args.max_order < 1:
        raise UsageError("--max-order must be positive")
    t0 = time.perf_counter()
    if args.instances:
        payloads = []
        for f in _instance_files(args.instances):
            load_instance(f)  # input errors exit 2 before any checks run
            payloads.append((read_instance_json(f), args.suite))
        work, items = _run_json, payloads
    else:
        try:
            n = gen.count_instances(args.max_order)
        except gr.OrderTooLarge as exc:
            raise UsageError(str(exc)) from exc
        idx = list(range(n))
        if args.sample is not None:
            if args.sample < 1:
                raise UsageError("--sample must be positive")
            idx = sorted(random.Random(args.seed).sample(idx, min(args.sample, n)))
        work, items = _run_catalog, [(i, args.max_order, args.suite) for i in idx]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(work, items, chunksize=4))
    else:
        results = [work(it) for it in items]
    report = {
        "suite": args.suite,
        "max_order": args.max_order,
        "sample": None if args.instances else args.sample,
        "seed": args.seed if args.sample is not None and not args.instances else None,
        "properties": [p.id for p in V.properties(args.suite)],
        "instances": results,
        "summary": V.summarize(results),
    }
    doc = {"report": report}
    if args.timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - t0, 3), "jobs": args.jobs}
    text = _dump(doc if args.timing else report)
    if args.out:
        _write(args.out, text)
    else:
        print(text)
    for f in report["summary"]["failures"]:
        print(f"FAIL {f['instance']} {f['property']} witness={json.dumps(f['witness'], sort_keys=True)}", file=sys.stderr)
    return EXIT_FAIL if report["summary"]["failures"] else EXIT_OK


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------- enumerate


def cmd_enumerate(args) -> int:
    try:
        insts = list(gen.enumerate_instances(args.max_order))
    except gr.OrderTooLarge as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        out = Path(args.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise UsageError(f"cannot create {out}: {exc}") from exc
        for k, r in enumerate(insts):
            fname = f"{k:04d}_{r.group.name.replace(':', '_').replace('<', '').replace('>', '')}_H{'-'.join(map(str, r.cone.elements))}.json"
            _write(str(out / fname), json.dumps(r.to_json(), sort_keys=True))
    print(json.dumps({"max_order": args.max_order, "count": len(insts)}))
    return EXIT_OK


# ---------------------------------------------------------------- haar


def cmd_haar(args) -> int:
    r = load_instance(args.instance)
    modes = [hr.STRICT, hr.RELAXED] if args.mode == "both" else [args.mode]
    solver = ms.haar_solver(r)[0]
    systems = []
    disagree = False
    for mode in modes:
        for s in hr.find_normal_systems(r, mode):
            mu = hr.construct_haar(r, s)
            agree = mu.radon_equal(solver, r)
            disagree |= not agree
            systems.append({**s.to_json(r.group), "measure": [la.fmt(x) for x in mu.canonical(r)], "agrees_with_solver": agree})
    print(_dump({"instance": r.ident, "solver": [la.fmt(x) for x in solver.canonical(r)], "systems": systems}))
    return EXIT_FAIL if disagree else EXIT_OK


# ---------------------------------------------------------------- measures


def cmd_measures(args) -> int:
    r = load_instance(args.instance)
    rep = ms.measure_report(r)
    rep["instance"] = r.ident
    rep["haar_weights"] = ms.haar_solver(r)[0].to_json()["weights"]
    print(_dump(rep))
    return EXIT_OK


# ---------------------------------------------------------------- make-schreier


def _parse_base(s: str) -> gr.GroupTable:
    s = s.strip().lower()
    if not s.startswith("z") or not s[1:].isdigit():
        raise UsageError(f"--base must look like z12, got {s!r}")
    n = int(s[1:])
    if not 1 <= n <= gr.HARD_MAX_ORDER:
        raise UsageError(f"modulus {n} out of range")
    return gr.cyclic(n)


def cmd_make_schreier(args) -> int:
    A = _parse_base(args.base)
    try:
        units = [int(u) for u in args.auts.split(",") if u.strip()]
    except ValueError as exc:
        raise UsageError(f"--auts must be comma-separated integers: {exc}") from exc
    if 1 not in [u % A.order for u in units]:
        units = [1] + units
    try:
        G = gen.schreier_product(gen.unit_group_spec(A.order, units))
    except (gen.NotAutomorphism, gen.NotClosed, gr.NotAGroup, gr.OrderTooLarge) as exc:
        raise UsageError(str(exc)) from exc
    text = json.dumps(G.to_json(), sort_keys=True)
    if args.out:
        _write(args.out, text)
    else:
        print(text)
    return EXIT_OK


# ---------------------------------------------------------------- report


def report_rows(report: dict) -> list[list[str]]:
    rows = []
    for inst in report.get("instances", []):
        for rec in inst["records"]:
            rows.append(
                [
                    inst["instance"],
                    inst.get("group", ""),
                    rec["property"],
                    rec["status"],
                    json.dumps(rec.get("witness"), sort_keys=True) if "witness" in rec else "",
                    json.dumps(rec.get("detail"), sort_keys=True) if "detail" in rec else "",
                ]
            )
    return rows


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(report_rows(report))
    return buf.getvalue()


def cmd_report(args) -> int:
    try:
        if args.input == "-":
            raw = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                raw = fh.read()
        doc = json.loads(raw) if raw.strip() else {"instances": []}
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read report: {exc}") from exc
    report = doc.get("report", doc)
    if not isinstance(report, dict) or not isinstance(report.get("instances", []), list):
        raise UsageError("input is not a verification report")
    text = render_csv(report) if args.format == "csv" else _dump(report)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rtglab", description="Finite right topological groups: σ-topologies, function spaces, measures, Haar.")
    p.add_argument("--seed", type=int, default=0, help="seed for commands that draw random instances")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="structural report for one instance")
    a.add_argument("instance")
    a.add_argument("--functions", action="store_true", help="include function-space bases")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run property suites over the catalog or given instances")
    v.add_argument("--suite", default="all", choices=("all",) + V.SUITES)
    v.add_argument("--max-order", type=int, default=gr.DEFAULT_MAX_ORDER)
    v.add_argument("--instances", nargs="*", help="instance JSON files or directories instead of the catalog")
    v.add_argument("--out")
    v.add_argument("--timing", action="store_true", help="wrap the report in an envelope with wall time")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--sample", type=int, help="check this many catalog instances drawn with --seed")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="write every catalog instance as JSON")
    e.add_argument("--max-order", type=int, default=gr.DEFAULT_MAX_ORDER)
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    h = sub.add_parser("haar", help="normal systems and the constructed Haar measure")
    h.add_argument("instance")
    h.add_argument("--mode", choices=(hr.STRICT, hr.RELAXED, "both"), default="both")
    h.set_defaults(func=cmd_haar)

    m = sub.add_parser("measures", help="dimensions of the measure algebras and the Haar measure")
    m.add_argument("instance")
    m.set_defaults(func=cmd_measures)

    s = sub.add_parser("make-schreier", help="Z_n extended by multiplication automorphisms")
    s.add_argument("--base", required=True, help="cyclic base group, e.g. z12")
    s.add_argument("--auts", required=True, help="comma-separated units u acting by v -> u v")
    s.add_argument("--out")
    s.set_defaults(func=cmd_make_schreier)

    rp = sub.add_parser("report", help="re-emit a verification report as JSON or CSV")
    rp.add_argument("input", nargs="?", default="-")
    rp.add_argument("--format", choices=("json", "csv"), default="json")
    rp.add_argument("--out")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rtglab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream reader closed early (e.g. `| head`); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
