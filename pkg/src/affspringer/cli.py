"""Command-line driver: run checks per (type, l) and emit table, JSON or CSV reports.

Exit status is 0 when every counted check passes, 1 when one fails and 2 on
invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd
from typing import Any, Callable

from .blocks import (
    admissibility_problems,
    check_admissible,
    check_lattice_identity,
    count_by_facet_type,
    enumerate_xi_sc,
    parabolic_order,
    xi_orbits,
)
from .errors import InputError, InvariantViolation, ResourceError
from .formulas import (
    admissible_progression,
    block_sum_identity,
    bott_check,
    ehrhart_fit,
    poly_to_str,
    type_a_binomial,
)
from .rootdata import enumerate_weyl, exponents_from_heights, root_datum

DEFAULT_MATRIX = {
    "A1": [3, 5, 7],
    "A2": [5, 7],
    "A3": [5],
    "B2": [5, 7],
    "C2": [5, 7],
    "G2": [7],
}
GKM_MATRIX = {"A1": [3, 5], "A2": [5]}

DEFAULTS = {
    "type": None,
    "ell": None,
    "window": None,
    "trunc": 2,
    "quiver_k": 5,
    "quiver_n": 3,
    "threads": None,
    "format": "table",
    "output": None,
    "force": False,
    "timings": False,
}

PASS, FAIL, SKIPPED, EXCLUDED = "PASS", "FAIL", "SKIPPED", "EXCLUDED"


# ------------------------------------------------------------------ helpers


def to_jsonable(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool) or v is None or isinstance(v, (int, float, str)):
        return v
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_jsonable(x) for x in v]
    if isinstance(v, (set, frozenset)):
        return sorted(to_jsonable(x) for x in v)
    return str(v)


def make_check(name: str, inputs: dict, lhs, rhs, passed: bool | None, status: str | None = None, **extra) -> dict:
    if status is None:
        status = PASS if passed else FAIL
    c = {"name": name, "inputs": inputs, "lhs": lhs, "rhs": rhs, "pass": passed, "status": status, "runtime_ms": None}
    c.update(extra)
    return c


def skipped(name: str, inputs: dict, reason: str) -> dict:
    return make_check(name, inputs, None, None, None, SKIPPED, reason=reason)


def facet_str(J) -> str:
    return "{" + ",".join(f"s{j}" for j in sorted(J)) + "}"


# ------------------------------------------------------------------- tasks
# each task takes (label, ell, opts) and returns (checks, rows)


def task_info(label: str, ell, opts: dict):
    rd = root_datum(label)
    inp = {"type": label}
    checks = [
        make_check("exponents_from_heights", inp, list(rd.exponents), list(exponents_from_heights(rd)),
                   rd.exponents == exponents_from_heights(rd)),
        make_check("coxeter_number", inp, rd.coxeter_number, 2 * len(rd.positive_roots) // rd.rank,
                   rd.coxeter_number * rd.rank == 2 * len(rd.positive_roots)),
        make_check("sum_of_exponents", inp, sum(rd.exponents), len(rd.positive_roots),
                   sum(rd.exponents) == len(rd.positive_roots)),
    ]
    prod_inv = 1
    for d in rd.pi1_invariants:
        prod_inv *= d
    checks.append(make_check("pi1_order_vs_smith_form", inp, rd.pi1_order, prod_inv, rd.pi1_order == prod_inv))
    if rd.weyl_order <= 10**5:
        n = len(enumerate_weyl(rd))
        checks.append(make_check("weyl_order", inp, rd.weyl_order, n, n == rd.weyl_order))
    else:
        checks.append(skipped("weyl_order", inp, f"|W|={rd.weyl_order} above the enumeration limit of this command"))
    if rd.rank <= 3:
        checks.append(make_check("bott_series", {**inp, "D": 12}, True, bott_check(rd, 12), bott_check(rd, 12)))
    rows = [{
        "type": label,
        "h": rd.coxeter_number,
        "exponents": list(rd.exponents),
        "weyl_order": rd.weyl_order,
        "e": rd.pi1_order,
        "pi1": list(rd.pi1_invariants),
        "highest_root": list(rd.highest_root),
    }]
    return checks, rows


def task_blocks(label: str, ell: int, opts: dict):
    rd = root_datum(label)
    force = opts["force"]
    inp = {"type": label, "ell": ell}
    pts = enumerate_xi_sc(rd, ell, force)
    rows = [
        {"omega": list(p.omega), "facet": facet_str(p.facet_type), "stab_order": p.stabilizer_order,
         "stab_type": p.stabilizer_type}
        for p in pts
    ]
    checks = []
    try:
        orbits = xi_orbits(rd, ell, force, points=pts)
        sizes = sorted({len(o) for o in orbits})
        checks.append(make_check("xi_sc_equals_e_times_xi", inp, len(pts), rd.pi1_order * len(orbits),
                                 len(pts) == rd.pi1_order * len(orbits), orbit_sizes=sizes))
    except InvariantViolation as exc:
        checks.append(make_check("xi_sc_equals_e_times_xi", inp, len(pts), None, False, reason=str(exc)))
    ok = all(p.stabilizer_order == parabolic_order(rd, p.facet_type, ell) for p in pts)
    checks.append(make_check("stabilizer_orders", inp, "reflection subgroup", "parabolic", ok))
    counts = count_by_facet_type(pts)
    checks.append(make_check("facet_type_partition", inp, sum(counts.values()), len(pts), sum(counts.values()) == len(pts)))
    lat = check_lattice_identity(rd, ell)
    coprime = gcd(ell, rd.pi1_order) == 1
    checks.append(make_check("lattice_identity", inp, lat, coprime, lat == coprime))
    return checks, rows


def task_verify_dim(label: str, ell: int, opts: dict):
    rd = root_datum(label)
    force = opts["force"]
    inp = {"type": label, "ell": ell}
    admissible = not admissibility_problems(rd, ell)
    try:
        rep = block_sum_identity(rd, ell, force)
    except InvariantViolation as exc:
        status = EXCLUDED if not admissible else FAIL
        return [make_check("theorem_c", inp, None, None, False, status, reason=str(exc))], []
    per = [{"omega": list(o), "stabilizer": t, "sign_multiplicity": m} for o, t, m in rep.per_block]
    status = None if admissible else EXCLUDED
    checks = [make_check(
        "theorem_c", inp, rep.closed_form, rep.block_sum_route, rep.passed, status,
        closed_form=rep.closed_form, sommers=rep.sommers_route, block_sum=rep.block_sum_route, per_block=per,
    )]
    if rd.cartan_type == "A":
        val = type_a_binomial(rd.rank, ell)
        checks.append(make_check("type_a_binomial", inp, rep.closed_form, val, val == rep.closed_form, status))
    return checks, []


def task_verify_gkm(label: str, ell: int, opts: dict):
    from .gkm import build_center_graph, build_gkm_graph, partitions_equivalent

    rd = root_datum(label)
    check_admissible(rd, ell, opts["force"])
    B = opts["window"] or 3 * ell * rd.coxeter_number
    side = 2 * (B + 2 * ell * rd.coxeter_number) + 1
    if side ** rd.rank > 2 * 10**6:
        raise ResourceError(f"window box of {side}^{rd.rank} points is too large")
    checks = []
    for orbit in xi_orbits(rd, ell, opts["force"]):
        p = orbit[0]
        g = build_gkm_graph(rd, p, ell, B)
        c = build_center_graph(rd, p, ell, B)
        for a in rd.positive_roots:
            inp = {"type": label, "ell": ell, "omega": list(p.omega), "root": list(a), "window": B}
            ok = partitions_equivalent(g, c, a)
            checks.append(make_check("gkm_center_partition", inp, "GKM", "CENTER", ok))
    return checks, []


def task_springer(label: str, ell, opts: dict):
    from .springer import alcove_region_count, sim_classes

    rd = root_datum(label)
    radius = opts["window"] or rd.coxeter_number
    inp = {"type": label, "radius": radius}
    bound = (rd.coxeter_number + 1) ** rd.rank
    if rd.weyl_order * (2 * radius + 1) ** rd.rank > 5 * 10**6:
        raise ResourceError("window too large for the class enumeration")
    rep = sim_classes(rd, radius)
    region = alcove_region_count(rd)
    checks = [
        make_check("sim_classes_stable", inp, rep.counts[-1], rep.counts[-2] if len(rep.counts) > 1 else None,
                   rep.stable, None if rep.stable else FAIL, counts=rep.counts),
        make_check("sim_classes_le_region", inp, rep.count, region, rep.count <= region),
        make_check("region_le_bound", {"type": label}, region, bound, region <= bound),
    ]
    if rd.cartan_type == "A":
        checks.append(make_check("sim_classes_eq_bound", inp, rep.count, bound, rep.count == bound))
        checks.append(make_check("region_eq_bound", {"type": label}, region, bound, region == bound))
    return checks, []


def task_rankone(label, ell, opts: dict):
    from .rankone import center_report

    K, N = opts["quiver_k"], opts["quiver_n"]
    rep = center_report(K, N)
    inp = {"K": K, "N": N}
    checks = [
        make_check("interior_congruences", inp, rep["congruences"], True, rep["congruences"]),
        make_check("product_rule", inp, rep["product_rule"], True, rep["product_rule"]),
        make_check("interior_center_dim", inp, rep["interior_dim"], rep["predicted_interior_dim"],
                   rep["interior_dim"] == rep["predicted_interior_dim"]),
    ]
    return checks, [rep]


def task_ehrhart(label: str, ell, opts: dict):
    from .blocks import facet_type_counts

    rd = root_datum(label)
    start = admissible_progression(rd, 1)[0]
    checks = []
    rows = []
    for J in sorted(facet_type_counts(rd, start), key=lambda s: (len(s), sorted(s))):
        ells = admissible_progression(rd, rd.rank - len(J) + 3)
        inp = {"type": label, "facet": facet_str(J), "ells": ells}
        try:
            fit = ehrhart_fit(rd, J, ells)
            checks.append(make_check("ehrhart_fit", inp, fit.degree, fit.expected_degree, fit.passed,
                                     polynomial=poly_to_str(fit.coeffs), counts=fit.counts))
            rows.append({"type": label, "facet": facet_str(J), "polynomial": poly_to_str(fit.coeffs),
                         "degree": fit.degree})
        except InvariantViolation as exc:
            checks.append(make_check("ehrhart_fit", inp, None, None, False, reason=str(exc)))
    return checks, rows


TASKS: dict[str, tuple[Callable, bool]] = {
    # name: (function, needs l)
    "info": (task_info, False),
    "blocks": (task_blocks, True),
    "verify-dim": (task_verify_dim, True),
    "verify-gkm": (task_verify_gkm, True),
    "springer-classes": (task_springer, False),
    "rankone-center": (task_rankone, False),
    "ehrhart": (task_ehrhart, False),
}


def run_task(item):
    """Worker entry point; never raises for resource limits."""
    name, label, ell, opts = item
    fn = TASKS[name][0]
    t0 = time.perf_counter()
    try:
        checks, rows = fn(label, ell, opts)
    except ResourceError as exc:
        inp = {"type": label} if label else {}
        if ell is not None:
            inp["ell"] = ell
        checks, rows = [skipped(name, inp, str(exc))], []
    except InvariantViolation as exc:
        inp = {"type": label} if label else {}
        if ell is not None:
            inp["ell"] = ell
        checks, rows = [make_check(name, inp, None, None, False, reason=str(exc))], []
    ms = round((time.perf_counter() - t0) * 1000, 3)
    if opts["timings"]:
        for c in checks:
            c["runtime_ms"] = ms
    return name, label, ell, checks, rows


# ---------------------------------------------------------------- plumbing


def parse_ells(values) -> list[int] | None:
    if values is None:
        return None
    out = []
    for v in values if isinstance(values, list) else [values]:
        for part in str(v).replace(",", " ").split():
            try:
                out.append(int(part))
            except ValueError:
                raise InputError(f"bad l value {part!r}")
    return out


def parse_types(values) -> list[str] | None:
    if values is None:
        return None
    out = []
    for v in values if isinstance(values, list) else [values]:
        for part in str(v).replace(",", " ").split():
            rd = root_datum(part)
            out.append(rd.label)
    return out


def read_config(path: str) -> dict:
    cfg = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InputError(f"{path}:{n}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            k = k.lstrip("-").replace("-", "_").lower()
            if k not in DEFAULTS:
                raise InputError(f"{path}:{n}: unknown key {k!r}")
            cfg[k] = v
    return cfg


def _coerce(key: str, value):
    if value is None:
        return None
    if key in ("force", "timings"):
        if isinstance(value, bool):
            return value
        return str(value).lower() in ("1", "true", "yes", "on")
    if key in ("window", "trunc", "quiver_k", "quiver_n", "threads"):
        try:
            v = int(value)
        except (TypeError, ValueError):
            raise InputError(f"{key} must be an integer")
        if v <= 0:
            raise InputError(f"{key} must be positive")
        return v
    return value


def resolve_config(args: argparse.Namespace) -> dict:
    file_cfg = read_config(args.config) if args.config else {}
    cfg = {}
    for key, default in DEFAULTS.items():
        v = getattr(args, key, None)
        if v is None:
            v = file_cfg.get(key, default)
        cfg[key] = _coerce(key, v) if v is not None else default
    cfg["type"] = parse_types(cfg["type"])
    cfg["ell"] = parse_ells(cfg["ell"])
    if cfg["threads"] is None:
        env = os.environ.get("AFFSPRINGER_THREADS")
        cfg["threads"] = _coerce("threads", env) if env else (os.cpu_count() or 1)
    if cfg["format"] not in ("table", "json", "csv"):
        raise InputError("format must be table, json or csv")
    return cfg


def work_items(command: str, cfg: dict) -> list[tuple]:
    opts = {k: cfg[k] for k in ("window", "trunc", "quiver_k", "quiver_n", "force", "timings")}
    types = cfg["type"]
    ells = cfg["ell"]

    def pairs_for(matrix):
        if types is None:
            return [(t, l) for t, ls in matrix.items() for l in (ells or ls)]
        out = []
        for t in types:
            ls = ells or matrix.get(t) or admissible_progression(root_datum(t), 1)
            out.extend((t, l) for l in ls)
        return out

    def check_ells(pairs):
        if cfg["force"]:
            return
        for t, l in pairs:
            check_admissible(root_datum(t), l)

    items = []
    if command == "report":
        tlist = types or list(DEFAULT_MATRIX)
        for t in tlist:
            items.append(("info", t, None, opts))
        pairs = pairs_for(DEFAULT_MATRIX)
        check_ells(pairs)
        for t, l in pairs:
            items.append(("blocks", t, l, opts))
            items.append(("verify-dim", t, l, opts))
        gkm_pairs = pairs_for(GKM_MATRIX) if types is None else [(t, l) for t, l in pairs if root_datum(t).rank <= 2]
        for t, l in gkm_pairs:
            items.append(("verify-gkm", t, l, opts))
        for t in tlist:
            items.append(("springer-classes", t, None, opts))
            if root_datum(t).rank <= 3:
                items.append(("ehrhart", t, None, opts))
        items.append(("rankone-center", None, None, opts))
        return items
    fn, needs_ell = TASKS[command]
    if command == "rankone-center":
        return [(command, None, None, opts)]
    if types is None:
        raise InputError(f"{command} needs --type")
    if needs_ell:
        pairs = pairs_for(GKM_MATRIX if command == "verify-gkm" else DEFAULT_MATRIX)
        check_ells(pairs)
        return [(command, t, l, opts) for t, l in pairs]
    return [(command, t, None, opts) for t in types]


def execute(items: list[tuple], threads: int) -> list[tuple]:
    if threads <= 1 or len(items) <= 1:
        return [run_task(it) for it in items]
    with ProcessPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(run_task, items))


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows = doc.get("rows") or []
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            keys = list(rows[0])
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(keys)
            for r in rows:
                w.writerow([json.dumps(r[k]) if isinstance(r[k], (list, dict)) else r[k] for k in keys])
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["name", "inputs", "lhs", "rhs", "pass", "status", "runtime_ms"])
            for c in doc["checks"]:
                w.writerow([c["name"], json.dumps(c["inputs"], sort_keys=True), json.dumps(c["lhs"]),
                            json.dumps(c["rhs"]), c["pass"], c["status"], c["runtime_ms"]])
        return buf.getvalue()
    lines = []
    if rows:
        keys = list(rows[0])
        table = [keys] + [[json.dumps(r[k]) if isinstance(r[k], (list, dict)) else str(r[k]) for k in keys] for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(keys))]
        for row in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        lines.append("")
    for c in doc["checks"]:
        inputs = " ".join(f"{k}={json.dumps(v)}" for k, v in sorted(c["inputs"].items()))
        line = f"[{c['status']:>8}] {c['name']:<26} {inputs}  lhs={json.dumps(c['lhs'])} rhs={json.dumps(c['rhs'])}"
        if c.get("reason"):
            line += f"  ({c['reason']})"
        lines.append(line)
    s = doc["summary"]
    lines.append(f"{s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped, {s['excluded']} excluded")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", nargs="+", help="Cartan type(s), e.g. A2 or A1,B2")
    common.add_argument("--ell", nargs="+", help="values of l (space or comma separated)")
    common.add_argument("--window", type=int, help="window radius B")
    common.add_argument("--trunc", type=int, help="truncation order N for section spaces")
    common.add_argument("--quiver-K", dest="quiver_k", type=int, help="vertex range of the rank-one quiver")
    common.add_argument("--quiver-N", dest="quiver_n", type=int, help="h-truncation order of the quiver algebra")
    common.add_argument("--threads", type=int, help="worker processes (env AFFSPRINGER_THREADS)")
    common.add_argument("--format", choices=["table", "json", "csv"], help="output format")
    common.add_argument("--output", help="write the report to this path")
    common.add_argument("--force", action="store_true", default=None, help="allow l outside the admissible range")
    common.add_argument("--config", help="flat key=value file mirroring the flags")
    common.add_argument("--timings", action="store_true", default=None, help="record runtime_ms per check")
    p = argparse.ArgumentParser(prog="affspringer", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ["info", "blocks", "verify-dim", "verify-gkm", "springer-classes", "rankone-center", "ehrhart", "report"]:
        aliases = ["verify"] if name == "verify-dim" else []
        sub.add_parser(name, parents=[common], aliases=aliases)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    command = "verify-dim" if args.command == "verify" else args.command
    try:
        cfg = resolve_config(args)
        items = work_items(command, cfg)
        results = execute(items, cfg["threads"])
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    checks, rows = [], []
    for _, _, _, cs, rs in results:
        checks.extend(cs)
        rows.extend(rs)
    checks = [to_jsonable(c) for c in checks]
    summary = {
        "passed": sum(c["status"] == PASS for c in checks),
        "failed": sum(c["status"] == FAIL for c in checks),
        "skipped": sum(c["status"] == SKIPPED for c in checks),
        "excluded": sum(c["status"] == EXCLUDED for c in checks),
    }
    config = {k: cfg[k] for k in DEFAULTS if k not in ("output", "threads", "timings")}
    config["command"] = command
    doc = {"config": to_jsonable(config), "checks": checks, "summary": summary}
    if rows and command not in ("report",):
        doc["rows"] = to_jsonable(rows)
    text = render(doc, cfg["format"])
    if cfg["output"]:
        with open(cfg["output"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if summary["failed"] else 0


if __name__ == "__main__":
    sys.exit(main())
