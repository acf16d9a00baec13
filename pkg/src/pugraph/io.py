"""File formats: graph JSON, config JSON, CSV tables, atomic writes.

Every float is serialized with 17 significant digits so that emitted
files round-trip bit-exactly; all writes go through a temp-file-and-
rename so readers never observe partial output. Angles are degrees in
files and radians in memory.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from typing import Any, Iterable

import numpy as np

from .errors import GraphDefinitionError, InvalidParameter
from .graph import EdgePair, PseudoGraph, path_graph, pseudo_graph
from .guidance import EngagementState, SalvoConfig, SalvoResult

__all__ = [
    "format_float",
    "dumps_json",
    "write_json",
    "read_json",
    "write_text",
    "write_csv",
    "matrix_csv_lines",
    "graph_to_dict",
    "graph_from_dict",
    "read_graph",
    "write_graph",
    "salvo_config_to_dict",
    "salvo_config_from_dict",
    "salvo_summary_dict",
    "salvo_trajectories_csv_lines",
]


def format_float(x: float) -> str:
    """17-significant-digit decimal form (round-trip exact)."""
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _json_float(x: float) -> str:
    return format_float(x)


def dumps_json(obj: Any) -> str:
    """JSON text with fixed float formatting and stable key order."""
    # the pure-Python encoder accepts a float formatter; the C encoder
    # does not, so build the iterencoder directly
    enc = json.JSONEncoder(indent=2, sort_keys=True)
    iterencode = json.encoder._make_iterencode(
        {}, enc.default, json.encoder.encode_basestring_ascii, enc.indent,
        _json_float, enc.key_separator, enc.item_separator, enc.sort_keys,
        enc.skipkeys, False)
    return "".join(iterencode(_plain(obj), 0)) + "\n"


def _plain(obj: Any) -> Any:
    """Recursively convert numpy containers to JSON-friendly types."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def write_text(path: str, text: str) -> None:
    """Atomic write: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".pugraph-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: str, obj: Any) -> None:
    write_text(path, dumps_json(obj))


def read_json(path: str) -> Any:
    with open(path) as fh:
        return json.load(fh)


def write_csv(path: str, lines: Iterable[str]) -> None:
    write_text(path, "\n".join(lines) + "\n")


def matrix_csv_lines(M: np.ndarray, note: str) -> list[str]:
    """Row-major CSV with a one-line ordering header."""
    M = np.asarray(M, dtype=float)
    lines = [f"# {note}"]
    for row in M:
        lines.append(",".join(format_float(v) for v in row))
    return lines


def graph_to_dict(g: PseudoGraph) -> dict:
    return {
        "n": g.n,
        "pairs": [
            {"a": p.a, "b": p.b, "w_ab": p.w_ab, "w_ba": p.w_ba}
            for p in g.pairs
        ],
    }


def graph_from_dict(d: dict) -> PseudoGraph:
    """Parse {"n", "pairs": [...]} or the {"path": {...}} shortcut."""
    if not isinstance(d, dict):
        raise GraphDefinitionError("graph document must be a JSON object")
    if "path" in d:
        spec = d["path"]
        try:
            return path_graph(int(spec["n"]), spec["forward"], spec["reverse"])
        except (KeyError, TypeError) as exc:
            raise GraphDefinitionError(f"malformed path shortcut: {exc}") from exc
    try:
        pairs = [
            EdgePair(a=int(p["a"]), b=int(p["b"]),
                     w_ab=float(p["w_ab"]), w_ba=float(p["w_ba"]))
            for p in d["pairs"]
        ]
        return pseudo_graph(int(d["n"]), pairs)
    except (KeyError, TypeError) as exc:
        raise GraphDefinitionError(f"malformed graph document: {exc}") from exc


def read_graph(path: str) -> PseudoGraph:
    try:
        doc = read_json(path)
    except json.JSONDecodeError as exc:
        raise GraphDefinitionError(f"{path}: invalid JSON ({exc})") from exc
    return graph_from_dict(doc)


def write_graph(path: str, g: PseudoGraph) -> None:
    write_json(path, graph_to_dict(g))


def salvo_config_to_dict(config: SalvoConfig) -> dict:
    st = config.state
    doc = {
        "graph": graph_to_dict(config.graph),
        "state": {
            "r": list(st.r),
            "theta_deg": list(np.rad2deg(st.theta)),
            "gamma_m_deg": list(np.rad2deg(st.gamma_m)),
            "v_m": list(st.v_m),
            "v_t": st.v_t,
            "gamma_t_deg": math.degrees(st.gamma_t),
        },
        "t_go_provider": config.t_go_provider,
        "a_max": config.a_max,
        "capture_radius": config.capture_radius,
        "dt": config.dt,
        "t_max": config.t_max,
        "sample_stride": config.sample_stride,
        "allow_infeasible": config.allow_infeasible,
    }
    if config.injected_t_go is not None:
        doc["injected_t_go"] = list(config.injected_t_go)
    return doc


def salvo_config_from_dict(d: dict) -> SalvoConfig:
    """Parse a salvo config document (angles in degrees)."""
    try:
        g = graph_from_dict(d["graph"])
        s = d["state"]
        n = g.n
        v_m = s["v_m"]
        if not isinstance(v_m, (list, tuple)):
            v_m = [float(v_m)] * n
        state = EngagementState(
            r=np.asarray(s["r"], dtype=float),
            theta=np.deg2rad(np.asarray(s["theta_deg"], dtype=float)),
            gamma_m=np.deg2rad(np.asarray(s["gamma_m_deg"], dtype=float)),
            v_m=np.asarray(v_m, dtype=float),
            v_t=float(s["v_t"]),
            gamma_t=math.radians(float(s["gamma_t_deg"])),
        )
        kwargs = {}
        for key in ("t_go_provider", "a_max", "capture_radius", "dt", "t_max",
                    "sample_stride", "allow_infeasible"):
            if key in d:
                kwargs[key] = d[key]
        if "injected_t_go" in d:
            kwargs["injected_t_go"] = tuple(float(v) for v in d["injected_t_go"])
        return SalvoConfig(graph=g, state=state, **kwargs)
    except (KeyError, TypeError) as exc:
        raise InvalidParameter(f"malformed salvo config: {exc}") from exc


def salvo_summary_dict(result: SalvoResult) -> dict:
    return {
        "impact_times": result.impact_times,
        "spread": result.spread,
        "prediction": result.consensus_prediction,
        "in_hull": result.in_hull,
        "saturation_fraction": result.saturation_fraction,
        "kinematic_capture_times": result.kinematic_capture_times,
        "initial_t_go": result.initial_t_go,
        "failed": result.failed,
        "notes": list(result.notes),
    }


def salvo_trajectories_csv_lines(result: SalvoResult) -> list[str]:
    """Sampled histories: t then r, theta, gamma_m, a_m, t_go per agent."""
    n = result.t_go_histories.shape[1] if result.t_go_histories.ndim == 2 else 0
    cols = ["t"]
    for i in range(1, n + 1):
        cols += [f"r_{i}", f"theta_deg_{i}", f"gamma_m_deg_{i}",
                 f"a_m_{i}", f"t_go_{i}"]
    lines = [",".join(cols)]
    th = np.rad2deg(result.theta_histories)
    gm = np.rad2deg(result.gamma_m_histories)
    for k, t in enumerate(result.times):
        row = [format_float(t)]
        for i in range(n):
            row += [format_float(result.r_histories[k, i]),
                    format_float(th[k, i]),
                    format_float(gm[k, i]),
                    format_float(result.a_m_histories[k, i]),
                    format_float(result.t_go_histories[k, i])]
        lines.append(",".join(row))
    return lines
