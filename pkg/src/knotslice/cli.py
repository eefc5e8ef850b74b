"""Command-line front end: ``knotslice {poly,tables,transport,verify}``.

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import combinatorics as comb
from . import fibered, transport, verify
from .braid import BraidParseError, parse_braid
from .skein import sl_n_polynomial
from .slice import NoConvergence

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3
OUT_ENV = "KNOTSLICE_OUT"
DEFAULT_OUT = "knotslice-out"


class UsageError(Exception):
    pass


def round_floats(obj, digits: int = 12):
    """Recursively round floats to ``digits`` significant digits; complex becomes [re, im]."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.{digits}g}")
    if isinstance(obj, (complex, np.complexfloating)):
        return [round_floats(obj.real, digits), round_floats(obj.imag, digits)]
    if isinstance(obj, np.ndarray):
        return round_floats(obj.tolist(), digits)
    if isinstance(obj, dict):
        return {str(k): round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(round_floats(obj), indent=2, sort_keys=True)


class Settings:
    """Flag values with config-file and default fallbacks (flags > config > defaults)."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = {}
        if getattr(args, "config", None):
            try:
                self.config = json.loads(Path(args.config).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read config {args.config}: {exc}") from exc
            if not isinstance(self.config, dict):
                raise UsageError("config file must hold a JSON object")

    def get(self, name: str, default=None):
        val = getattr(self.args, name, None)
        if val is None:
            val = self.config.get(name, default)
        if name == "tol" and val is not None and not val > 0:
            raise UsageError("--tol must be positive")
        return val

    def ints(self, name: str, default):
        val = self.get(name, default)
        if isinstance(val, str):
            try:
                return tuple(int(x) for x in val.split(",") if x.strip())
            except ValueError as exc:
                raise UsageError(f"--{name} expects comma-separated integers") from exc
        if isinstance(val, int):
            return (val,)
        return tuple(int(x) for x in val)

    def out_dir(self) -> Path:
        path = Path(self.get("out") or os.environ.get(OUT_ENV) or DEFAULT_OUT)
        path.mkdir(parents=True, exist_ok=True)
        return path


def _common(p: argparse.ArgumentParser, *, n_help="n (comma-separated list where a command takes several)"):
    p.add_argument("--n", type=str, default=None, help=n_help)
    p.add_argument("--m", type=str, default=None)
    p.add_argument("--d", type=float, default=None)
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.add_argument("--out", default=None, help=f"output directory or file (default ${OUT_ENV} or ./{DEFAULT_OUT})")
    p.add_argument("--config", default=None, help="JSON file of default parameter values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotslice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="sl(n) polynomial of a braid closure")
    p.add_argument("braid", help="braid word, e.g. B2:-1,-1,-1")
    p.add_argument("degree", type=int, help="n")
    _common(p)

    p = sub.add_parser("tables", help="CSV of Kostka numbers, LIS counts and Spaltenstein dimensions")
    _common(p, n_help="largest n")

    p = sub.add_parser("transport", help="numerical transport experiments")
    p.add_argument("experiment", choices=("rex", "vanishing", "trefoil", "gradient", "moment", "monodromy"))
    p.add_argument("--t", type=float, default=None, help="thick eigenvalue of the start fiber")
    p.add_argument("--end", type=float, default=None, help="radial end fraction")
    _common(p)

    p = sub.add_parser("verify", help="run acceptance suites")
    p.add_argument("suite", choices=tuple(verify.SUITES) + ("all",))
    p.add_argument("--quick", action="store_true")
    p.add_argument("--trials", type=int, default=None)
    _common(p)
    return parser


def cmd_poly(s: Settings) -> int:
    try:
        b = parse_braid(s.args.braid)
    except BraidParseError as exc:
        raise UsageError(f"{exc}\n  {s.args.braid}\n  {' ' * exc.position}^") from exc
    n = s.args.degree
    if n < 1:
        raise UsageError("n must be at least 1")
    P = sl_n_polynomial(b, n)
    value = P.eval_at_minus_one()
    if (s.get("format") or "text") == "json":
        print(dumps({"braid": b.to_text(), "n": n, "polynomial": str(P),
                     "coefficients": {str(k): c for k, c in P.terms.items()}, "p_minus_one": value}))
    else:
        print(P)
        print(f"P(-1) = {value}")
    return EXIT_PASS


TABLE_HEADER = ["m", "n", "kostka", "lis_count", "spaltenstein_dim", "equal"]


def table_rows(max_m: int, max_n: int) -> list[list]:
    rows = []
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            k = comb.kostka(comb.rectangle(m, n), comb.thin_thick_type(m, n).parts)
            lis = comb.lis_count(m, n)
            dim = comb.spaltenstein_dim(comb.rectangle(m, n), comb.thin_thick_type(m, n))
            rows.append([m, n, k, lis, dim, str(k == lis).lower()])
    return rows


def cmd_tables(s: Settings) -> int:
    max_m = s.ints("m", 6)[0]
    max_n = s.ints("n", 4)[0]
    if max_m < 1 or max_n < 1:
        raise UsageError("--m and --n must be positive")
    try:
        rows = table_rows(max_m, max_n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if (s.get("format") or "csv") == "json":
        print(dumps([dict(zip(TABLE_HEADER, r)) for r in rows]))
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(TABLE_HEADER)
        w.writerows(rows)
    return EXIT_PASS if all(r[-1] == "true" for r in rows) else EXIT_FAIL


def _rex(s: Settings, out: Path) -> dict:
    n, t = s.ints("n", 3)[0], s.get("t", 0.5)
    end = s.get("end", 0.1)
    tol = s.get("tol", 1e-6)
    seed = s.get("seed", 0)
    U = transport.unitary_group.rvs(n, random_state=seed)
    start = U @ transport.e_matrix(n, t) @ U.conj().T
    trace = transport.transport_m1(n, start, t, end)
    (out / "rex_trace.csv").write_text(trace.to_csv())
    if trace.status != transport.COMPLETED:
        raise transport.TransportError(f"{trace.status} at s={trace.s[-1]:.6g}: {trace.message}")
    target = U @ transport.e_matrix(n, end * t) @ U.conj().T
    dev = float(np.abs(trace.final_ambient.reshape(n, n) - target).max())
    return {"n": n, "t": t, "end_fraction": end, "deviation": dev, "tol": tol, "steps": len(trace.s),
            "max_residual": max(trace.residuals), "passed": dev <= tol}


def _vanishing(s: Settings, out: Path) -> dict:
    n, t = s.ints("n", 3)[0], s.get("t", 0.5)
    seed = s.get("seed", 0)
    U = transport.unitary_group.rvs(n, random_state=seed)
    on = transport.vanishing_classification(n, U @ transport.e_matrix(n, t) @ U.conj().T, t)
    Y = transport.off_orbit_point(n, t, 1.0, seed=seed)
    off = transport.vanishing_classification(n, Y, t)
    trace = transport.transport_m1(n, Y, t, 0.0, s_end=1 - min(transport.LADDER))
    (out / "vanishing_control_trace.csv").write_text(trace.to_csv())
    return {"n": n, "t": t,
            "orbit": {"classification": on.classification, "norms": on.norms, "thresholds": on.thresholds},
            "control": {"classification": off.classification, "norms": off.norms, "thresholds": off.thresholds},
            "passed": on.classification == transport.VANISHING and off.classification == transport.NON_VANISHING}


def _trefoil(s: Settings, out: Path) -> dict:
    n, d, z = s.ints("n", 3)[0], s.get("d", 0.3), s.get("z", 0.01)
    try:
        paths = fibered.trefoil_paths(n, d, z)
    except fibered.PathError as exc:
        raise UsageError(str(exc)) from exc
    rep = fibered.trefoil_intersection_report(n, d, z, seed=s.get("seed", 0))
    with open(out / "trefoil_paths.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["path", "re", "im"])
        for name, pts in (("delta1", paths.delta1), ("delta3", paths.delta3)):
            for p in pts:
                w.writerow([name, f"{p.real:.12g}", f"{p.imag:.12g}"])
    summary = rep.to_json()
    dims = [st["fiber_dimension"] for st in rep.strata]
    summary["passed"] = len(paths.intersections) == 2 and dims == [0, 2 * n - 3]
    return summary


def _gradient(s: Settings, out: Path) -> dict:
    samples, seed = s.get("samples", 1000), s.get("seed", 0)
    rows = []
    for n in s.ints("n", (3, 4)):
        for d in ([s.get("d")] if s.get("d") is not None else [0.1, 0.5]):
            a = fibered.gradient_bound_scan(n, d, samples, seed=seed)
            b = fibered.gradient_bound_scan(n, d, 2 * samples, seed=seed + 1)
            rows.append({"n": n, "d": d, "nu": a.nu, "nu_doubled": b.nu,
                         "ok": a.nu > 0 and b.nu > 0 and max(a.nu, b.nu) <= 2 * min(a.nu, b.nu)})
    with open(out / "gradient_scan.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "d", "nu", "nu_doubled", "ok"])
        for r in rows:
            w.writerow([r["n"], r["d"], f"{r['nu']:.12g}", f"{r['nu_doubled']:.12g}", str(r["ok"]).lower()])
    return {"samples": samples, "rows": rows, "passed": all(r["ok"] for r in rows)}


def _moment(s: Settings, out: Path) -> dict:
    d, seed = s.get("d", 0.3), s.get("seed", 0)
    rows = []
    for n in s.ints("n", (2, 3, 4)):
        for f in fibered.moment_chart(n, d, seed=seed):
            row = f.to_json()
            row["n"] = n
            row["ok"] = (f.classification == verify.chart_label(f.c1, f.c2)
                         and f.dimension == f.expected_dimension and f.stable)
            rows.append(row)
    with open(out / "moment_chart.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "c1", "c2", "classification", "dimension", "expected_dimension", "ok"])
        for r in rows:
            w.writerow([r["n"], complex(*r["c1"]), complex(*r["c2"]), r["classification"], r["dimension"],
                        r["expected_dimension"], str(r["ok"]).lower()])
    return {"d": d, "rows": rows, "passed": all(r["ok"] for r in rows)}


def _monodromy(s: Settings, out: Path) -> dict:
    n, d, z = s.ints("n", 2)[0], s.get("d", 0.3), s.get("z", 0.01)
    res = fibered.monodromy_swap(n, d, z, seed=s.get("seed", 0))
    if res.status != transport.COMPLETED:
        raise transport.TransportError(f"monodromy transport ended with {res.status}")
    return {"n": n, "d": d, "z": z, "start": res.start, "end": res.end, "swapped": res.swapped,
            "passed": res.swapped}


EXPERIMENTS = {"rex": _rex, "vanishing": _vanishing, "trefoil": _trefoil, "gradient": _gradient,
               "moment": _moment, "monodromy": _monodromy}


def _emit(s: Settings, summary: dict, text_lines: list[str]) -> None:
    if (s.get("format") or "json") == "text":
        print("\n".join(text_lines))
    else:
        print(dumps(summary))


def cmd_transport(s: Settings) -> int:
    out = s.out_dir()
    kind = s.args.experiment
    summary = EXPERIMENTS[kind](s, out)
    summary["experiment"] = kind
    (out / f"{kind}_summary.json").write_text(dumps(summary) + "\n")
    _emit(s, summary, [f"{'PASS' if summary['passed'] else 'FAIL'} transport {kind}"])
    return EXIT_PASS if summary["passed"] else EXIT_FAIL


def _suite_kwargs(name: str, s: Settings, seed: int) -> dict:
    params = inspect.signature(verify.SUITES[name]).parameters
    kw = {}
    if "seed" in params:
        kw["seed"] = seed
    if "trials" in params and s.get("trials") is not None:
        kw["trials"] = s.get("trials")
    if "samples" in params and s.get("samples") is not None:
        kw["samples"] = s.get("samples")
    if "ns" in params and s.get("n") is not None:
        kw["ns"] = s.ints("n", None)
    return kw


def cmd_verify(s: Settings) -> int:
    names = list(verify.SUITES) if s.args.suite == "all" else [s.args.suite]
    master = s.get("seed", 0)
    results = []
    for name in names:
        seed = master if len(names) == 1 else verify.seed_for(master, name)
        r = verify.run_suite(name, quick=s.args.quick, **_suite_kwargs(name, s, seed))
        results.append(r)
        if (s.get("format") or "text") == "text":
            print(r.line(), flush=True)
    payload = {"seed": master, "quick": s.args.quick, "passed": all(r.passed for r in results),
               "results": [{k: v for k, v in r.to_json().items() if k != "seconds"} for r in results]}
    (s.out_dir() / f"verify_{s.args.suite}.json").write_text(dumps(payload) + "\n")
    if (s.get("format") or "text") != "text":
        print(dumps(payload))
    return EXIT_PASS if payload["passed"] else EXIT_FAIL


COMMANDS = {"poly": cmd_poly, "tables": cmd_tables, "transport": cmd_transport, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](Settings(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (transport.TransportError, NoConvergence) as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
