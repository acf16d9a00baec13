"""Command-line interface.

Six subcommands over declarative files: graph (matrix exports),
consensus (left null vector and value prediction), simulate
(trajectory integration), robustness (edge margins and sweeps), salvo
(cooperative interception runs), reproduce (recompute a bundled
artifact and diff it against expected values).

Conventions: exit 0 on success, 2 on bad input, 3 on infeasible or
diverged results, 4 on internal numerical failures; errors are
one-line JSON objects on stderr; every run emits a RunManifest (next
to the first output file, or to stderr for stdout-only runs, or to
--manifest FILE). Data outputs are byte-deterministic for fixed
inputs; manifests carry wall-clock duration and are exempt.
"""
from __future__ import annotations

import json
import os
import sys
import time
from argparse import ArgumentParser
from importlib import resources

import numpy as np

from . import __version__, dynamics, io, robustness, spectral
from .errors import InputError, NumericalError, PugraphError
from .graph import incidence_set, laplacian, path_graph, validate
from .guidance import simulate_salvo
from .spectral import consensus_feasible, consensus_value, l_star

_ARTIFACTS = ("p2-tfs", "p3-tfs", "p4-tfs", "p5-tfs", "fig3-sweeps",
              "salvo-positive", "salvo-negative")
_SWEEP_SPECS = (
    ("fig3-leading.csv", "leading:1", (3, 21)),
    ("fig3-central.csv", "central", (5, 21)),
    ("fig3-trailing1.csv", "trailing:1", (4, 21)),
    ("fig3-trailing2.csv", "trailing:2", (6, 21)),
    ("fig3-trailing3.csv", "trailing:3", (8, 21)),
)


class _Parser(ArgumentParser):
    """argparse that reports usage problems as InputError (exit 2)."""

    def error(self, message):
        raise InputError(message)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"bad float list {text!r}") from exc


def _parse_edge(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"edge must be 'tail,head', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise InputError(f"edge must be two integers, got {text!r}") from exc


def _parse_span(text: str) -> range:
    parts = text.split(":")
    if len(parts) != 2:
        raise InputError(f"sweep span must be 'nmin:nmax', got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise InputError(f"sweep span must be integers, got {text!r}") from exc
    if lo < 2 or hi < lo:
        raise InputError(f"bad sweep span {text!r}")
    return range(lo, hi + 1)


def _load_vector(arg: str) -> np.ndarray:
    """Initial-state vector: JSON-array file or inline comma list."""
    if os.path.isfile(arg):
        doc = io.read_json(arg)
        if not isinstance(doc, list):
            raise InputError(f"{arg}: expected a JSON array")
        return np.asarray([float(v) for v in doc])
    return np.asarray(_parse_floats(arg))


def _resolve_graph(args):
    if getattr(args, "graph", None):
        return io.read_graph(args.graph), [args.graph]
    if getattr(args, "path", None):
        if args.forward is None or args.reverse is None:
            raise InputError("--path needs --forward and --reverse")
        return path_graph(args.path, _parse_floats(args.forward),
                          _parse_floats(args.reverse)), []
    raise InputError("provide --graph FILE or --path N --forward ... --reverse ...")


def _print_or_write(text: str, path: str | None, outputs: list[str]) -> None:
    if path:
        io.write_text(path, text if text.endswith("\n") else text + "\n")
        outputs.append(path)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _spectrum_pairs(spectrum: np.ndarray) -> list[list[float]]:
    return [[float(np.real(z)), float(np.imag(z))] for z in spectrum]


# --- subcommand handlers; each returns (exit_code, inputs, params, outputs)

def _cmd_graph(args):
    g, inputs = _resolve_graph(args)
    outputs: list[str] = []
    params = {"emit": args.emit, "epsilon": args.epsilon}
    cols = ("columns: forward edges in declaration order, "
            "then reversed edges in the same order")
    if args.emit == "graph":
        _print_or_write(io.dumps_json(io.graph_to_dict(g)), args.out, outputs)
    elif args.emit == "diagnostics":
        d = validate(g)
        doc = {"n": g.n, "m": g.m, "connected": d.connected,
               "negative_weights": d.negative_weights,
               "out_degree": d.out_degree, "in_degree": d.in_degree}
        _print_or_write(io.dumps_json(doc), args.out, outputs)
    else:
        if args.emit == "laplacian":
            M = laplacian(g).matrix
            note = "out-Laplacian, row-major; row/col k = node k (1-based)"
        elif args.emit == "lstar":
            M = l_star(g, args.epsilon)
            note = "eventual-positivity certificate, row-major; row/col k = node k"
        else:
            inc = incidence_set(g)
            M = {"incidence": inc.E, "out-incidence": inc.E_out,
                 "tree-incidence": inc.E_tau, "cycle-basis": inc.R}[args.emit]
            note = {
                "incidence": f"full incidence, row-major; rows = nodes 1..n; {cols}",
                "out-incidence": f"out-incidence, row-major; rows = nodes 1..n; {cols}",
                "tree-incidence": ("spanning-tree incidence, row-major; rows = nodes "
                                   "1..n; columns: tree edges in declaration order"),
                "cycle-basis": ("tree-to-edge map R, row-major; rows: tree edges in "
                                f"declaration order; {cols}"),
            }[args.emit]
        _print_or_write("\n".join(io.matrix_csv_lines(M, note)), args.out, outputs)
    return 0, inputs, params, outputs


def _cmd_consensus(args):
    g, inputs = _resolve_graph(args)
    L = laplacian(g)
    feas = consensus_feasible(L)
    if args.method == "projection":
        nv = spectral.left_null_vector_projection(g)
    elif args.method == "path":
        nv = spectral.left_null_vector_path(L)
    else:
        nv = spectral.left_null_vector_direct(L)
    doc = {
        "method": args.method,
        "p": nv.p,
        "sum_p": float(np.sum(nv.p)),
        "residual": nv.residual,
        "feasible": feas.feasible,
        "spectrum": _spectrum_pairs(feas.spectrum),
    }
    params = {"method": args.method}
    if args.x0 is not None:
        x0 = _load_vector(args.x0)
        if os.path.isfile(args.x0):
            inputs.append(args.x0)
        cv = consensus_value(nv, x0)
        doc["x0"] = x0
        doc["value"] = cv.value
        doc["in_hull"] = cv.in_hull
    outputs: list[str] = []
    _print_or_write(io.dumps_json(doc), args.out, outputs)
    return (0 if feas.feasible else 3), inputs, params, outputs


def _cmd_simulate(args):
    g, inputs = _resolve_graph(args)
    L = laplacian(g)
    x0 = _load_vector(args.x0)
    if os.path.isfile(args.x0):
        inputs.append(args.x0)
    traj = dynamics.simulate(L, x0, dt=args.dt, t_max=args.t_max, tol=args.tol)
    outputs: list[str] = []
    if args.csv:
        lines = ["t," + ",".join(f"x{i}" for i in range(1, g.n + 1))]
        for t, row in zip(traj.times, traj.states):
            lines.append(",".join([io.format_float(t)]
                                  + [io.format_float(v) for v in row]))
        io.write_csv(args.csv, lines)
        outputs.append(args.csv)
    summary = {
        "verdict": traj.verdict.kind,
        "value": traj.verdict.value,
        "time": traj.verdict.time,
        "steps": int(traj.times.size),
    }
    feas = consensus_feasible(L)
    summary["feasible"] = feas.feasible
    if feas.feasible:
        cv = consensus_value(spectral.left_null_vector_direct(L), x0)
        summary["predicted"] = cv.value
        summary["in_hull"] = cv.in_hull
        if traj.verdict.kind == "converged":
            gap = abs(traj.verdict.value - cv.value)
            summary["abs_gap"] = gap
            summary["rel_gap"] = gap / max(1.0, abs(cv.value))
    _print_or_write(io.dumps_json(summary), args.summary, outputs)
    params = {"dt": args.dt, "t_max": args.t_max, "tol": args.tol}
    return (3 if traj.verdict.kind == "diverged" else 0), inputs, params, outputs


def _cmd_robustness(args):
    outputs: list[str] = []
    if args.sweep:
        if not args.cls:
            raise InputError("--sweep requires --class")
        table = robustness.margin_sweep(_parse_span(args.sweep), args.cls)
        lines = ["n,margin,omega_pc"]
        for row in table.rows:
            lines.append(",".join([str(row.n), io.format_float(row.margin),
                                   io.format_float(row.omega_pc)]))
        _print_or_write("\n".join(lines), args.csv, outputs)
        return 0, [], {"sweep": args.sweep, "class": args.cls}, outputs
    if not args.edge:
        raise InputError("provide --edge a,b (or --sweep with --class)")
    g, inputs = _resolve_graph(args)
    edge = _parse_edge(args.edge)
    tf = robustness.edge_transfer_function(g, edge)
    report = robustness.gain_margin(tf)
    doc = {
        "edge": list(edge),
        "num": tf.num,
        "den": tf.den,
        "crossovers": [{"omega_pc": c.omega_pc, "magnitude": c.magnitude}
                       for c in report.crossovers],
        "effective_margin": report.effective_margin,
    }
    if args.oracle:
        doc["oracle_delta"] = robustness.critical_perturbation_oracle(g, edge)
    _print_or_write(io.dumps_json(doc), args.out, outputs)
    return 0, inputs, {"edge": args.edge, "oracle": args.oracle}, outputs


def _cmd_salvo(args):
    config = io.salvo_config_from_dict(io.read_json(args.config))
    result = simulate_salvo(config)
    outputs: list[str] = []
    if args.csv:
        io.write_csv(args.csv, io.salvo_trajectories_csv_lines(result))
        outputs.append(args.csv)
    _print_or_write(io.dumps_json(io.salvo_summary_dict(result)),
                    args.summary, outputs)
    return (3 if result.failed else 0), [args.config], {}, outputs


def _expected_text(name: str) -> str:
    ref = resources.files("pugraph").joinpath("data", "expected", name)
    return ref.read_text()


def _scenario_doc(name: str) -> dict:
    ref = resources.files("pugraph").joinpath("data", "scenarios", name)
    return json.loads(ref.read_text())


def _tf_catalog(n: int) -> dict:
    g = path_graph(n, [1.0] * (n - 1), [1.0] * (n - 1))
    entries = []
    for edge in g.edge_order:
        tf = robustness.edge_transfer_function(g, edge)
        entries.append({"edge": list(edge), "num": tf.num, "den": tf.den})
    return {"n": n, "transfer_functions": entries}


def _tf_equivalent(num_a, den_a, num_b, den_b) -> float:
    """Max cross-multiplication defect of num_a/den_a vs num_b/den_b.

    Handles catalog entries printed in cancelled (lower-degree) form.
    """
    lhs = np.polymul(np.asarray(num_a, float), np.asarray(den_b, float))
    rhs = np.polymul(np.asarray(num_b, float), np.asarray(den_a, float))
    width = max(lhs.size, rhs.size)
    lhs = np.pad(lhs, (width - lhs.size, 0))
    rhs = np.pad(rhs, (width - rhs.size, 0))
    return float(np.max(np.abs(lhs - rhs)))


def _reproduce_tfs(name: str, outdir: str) -> tuple[dict, list[str]]:
    n = int(name[1])
    computed = _tf_catalog(n)
    expected = json.loads(_expected_text(f"{name}.json"))
    exp_by_edge = {tuple(e["edge"]): e for e in expected["transfer_functions"]}
    worst = 0.0
    mismatches = []
    for entry in computed["transfer_functions"]:
        exp = exp_by_edge[tuple(entry["edge"])]
        dev = _tf_equivalent(entry["num"], entry["den"], exp["num"], exp["den"])
        worst = max(worst, dev)
        if dev > 1e-9:
            mismatches.append({"edge": entry["edge"], "deviation": dev})
    out = os.path.join(outdir, f"{name}.json")
    io.write_json(out, computed)
    report = {"artifact": name, "max_deviation": worst,
              "tolerance": 1e-9, "mismatches": mismatches,
              "status": "ok" if not mismatches else "mismatch"}
    return report, [out]


def _parse_sweep_csv(text: str) -> np.ndarray:
    rows = [line for line in text.strip().splitlines()
            if line and not line.startswith(("#", "n,"))]
    return np.array([[float(v) for v in line.split(",")] for line in rows])


def _reproduce_sweeps(outdir: str) -> tuple[dict, list[str]]:
    worst = 0.0
    mismatches = []
    outs = []
    for fname, selector, (lo, hi) in _SWEEP_SPECS:
        table = robustness.margin_sweep(range(lo, hi + 1), selector)
        lines = ["n,margin,omega_pc"]
        for row in table.rows:
            lines.append(",".join([str(row.n), io.format_float(row.margin),
                                   io.format_float(row.omega_pc)]))
        path = os.path.join(outdir, fname)
        io.write_csv(path, lines)
        outs.append(path)
        got = _parse_sweep_csv("\n".join(lines))
        want = _parse_sweep_csv(_expected_text(fname))
        if got.shape != want.shape:
            mismatches.append({"file": fname, "reason": "shape"})
            continue
        dev = float(np.max(np.abs(got - want)))
        worst = max(worst, dev)
        if dev > 1e-6:
            mismatches.append({"file": fname, "deviation": dev})
    report = {"artifact": "fig3-sweeps", "max_deviation": worst,
              "tolerance": 1e-6, "mismatches": mismatches,
              "status": "ok" if not mismatches else "mismatch"}
    return report, outs


def _reproduce_salvo(name: str, outdir: str) -> tuple[dict, list[str]]:
    config = io.salvo_config_from_dict(_scenario_doc(f"{name}.json"))
    result = simulate_salvo(config)
    summary = io.salvo_summary_dict(result)
    csv_path = os.path.join(outdir, f"{name}-trajectories.csv")
    sum_path = os.path.join(outdir, f"{name}-summary.json")
    io.write_csv(csv_path, io.salvo_trajectories_csv_lines(result))
    io.write_json(sum_path, summary)
    expected = json.loads(_expected_text(f"{name}.json"))
    mismatches = []
    worst = 0.0
    for key in ("impact_times", "spread", "prediction", "saturation_fraction"):
        got = np.atleast_1d(np.asarray(summary[key], dtype=float))
        want = np.atleast_1d(np.asarray(expected[key], dtype=float))
        dev = float(np.max(np.abs(got - want) / np.maximum(1.0, np.abs(want))))
        worst = max(worst, dev)
        if dev > 1e-5:
            mismatches.append({"field": key, "deviation": dev})
    if bool(summary["in_hull"]) != bool(expected["in_hull"]):
        mismatches.append({"field": "in_hull", "deviation": "boolean mismatch"})
    report = {"artifact": name, "max_relative_deviation": worst,
              "tolerance": 1e-5, "in_hull": summary["in_hull"],
              "mismatches": mismatches,
              "status": "ok" if not mismatches else "mismatch"}
    return report, [csv_path, sum_path]


def _cmd_reproduce(args):
    outdir = args.outdir or os.path.join("artifacts", args.name)
    os.makedirs(outdir, exist_ok=True)
    if args.name.endswith("-tfs"):
        report, outputs = _reproduce_tfs(args.name, outdir)
    elif args.name == "fig3-sweeps":
        report, outputs = _reproduce_sweeps(outdir)
    else:
        report, outputs = _reproduce_salvo(args.name, outdir)
    sys.stdout.write(io.dumps_json(report))
    if report["status"] != "ok":
        raise NumericalError(f"artifact {args.name} deviates from expected values")
    return 0, [], {"artifact": args.name}, outputs


def _add_graph_source(p: ArgumentParser) -> None:
    p.add_argument("--graph", help="graph JSON file")
    p.add_argument("--path", type=int, help="unit-path shortcut: node count")
    p.add_argument("--forward", help="comma list of forward weights (with --path)")
    p.add_argument("--reverse", help="comma list of reverse weights (with --path)")


def build_parser() -> ArgumentParser:
    top = _Parser(prog="pugraph",
                  description="consensus analysis on pseudo-undirected graphs")
    top.add_argument("--version", action="version",
                     version=f"pugraph {__version__}")
    sub = top.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("graph", help="emit graph matrices or diagnostics")
    _add_graph_source(p)
    p.add_argument("--emit", default="laplacian",
                   choices=["graph", "laplacian", "lstar", "incidence",
                            "out-incidence", "tree-incidence", "cycle-basis",
                            "diagnostics"])
    p.add_argument("--epsilon", type=float, default=1.0,
                   help="diagonal shift for --emit lstar")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--manifest", help="write the run manifest here")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("consensus", help="left null vector and consensus value")
    _add_graph_source(p)
    p.add_argument("--x0", help="initial states: JSON-array file or comma list")
    p.add_argument("--method", default="direct",
                   choices=["direct", "path", "projection"])
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_consensus)

    p = sub.add_parser("simulate", help="integrate the consensus dynamics")
    _add_graph_source(p)
    p.add_argument("--x0", required=True)
    p.add_argument("--dt", type=float)
    p.add_argument("--t-max", type=float, default=50.0)
    p.add_argument("--tol", type=float)
    p.add_argument("--csv", help="trajectory CSV file")
    p.add_argument("--summary", help="summary JSON file (default stdout)")
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("robustness", help="edge gain margins and sweeps")
    _add_graph_source(p)
    p.add_argument("--edge", help="perturbed directed edge 'tail,head'")
    p.add_argument("--oracle", action="store_true",
                   help="also bisect the exact feasibility boundary")
    p.add_argument("--sweep", help="path-size span 'nmin:nmax'")
    p.add_argument("--class", dest="cls",
                   help="sweep edge class: leading:L | central | trailing:K")
    p.add_argument("--out", help="JSON output file (default stdout)")
    p.add_argument("--csv", help="sweep CSV file (default stdout)")
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_robustness)

    p = sub.add_parser("salvo", help="cooperative interception run")
    p.add_argument("--config", required=True, help="salvo config JSON")
    p.add_argument("--csv", help="trajectories CSV file")
    p.add_argument("--summary", help="summary JSON file (default stdout)")
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_salvo)

    p = sub.add_parser("reproduce", help="recompute a bundled artifact and diff")
    p.add_argument("name", choices=list(_ARTIFACTS))
    p.add_argument("--outdir", help="artifact directory (default artifacts/NAME)")
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_reproduce)
    return top


def _error_json(exc: Exception, code: int) -> None:
    doc = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    sys.stderr.write(json.dumps(doc) + "\n")


def _emit_manifest(manifest: dict, path: str | None, outputs: list[str]) -> None:
    if path is None and outputs:
        path = outputs[0] + ".manifest.json"
    if path:
        io.write_json(path, manifest)
    else:
        sys.stderr.write(io.dumps_json(manifest))


def dispatch(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except PugraphError as exc:
        _error_json(exc, exc.exit_code)
        return exc.exit_code
    start = time.monotonic()
    try:
        code, inputs, params, outputs = args.func(args)
    except PugraphError as exc:
        _error_json(exc, exc.exit_code)
        return exc.exit_code
    except OSError as exc:
        _error_json(exc, 2)
        return 2
    manifest = {
        "subcommand": args.subcommand,
        "inputs": inputs,
        "parameters": {k: v for k, v in params.items() if v is not None},
        "outputs": outputs,
        "tool_version": __version__,
        "duration_s": time.monotonic() - start,
    }
    _emit_manifest(manifest, getattr(args, "manifest", None), outputs)
    return code


def main() -> None:
    sys.exit(dispatch())
