"""Flat CSV trace format.

Header `round,agent_id,x_0,...,x_{d-1},v_t`, then one row per (round, honest
agent); v_t is repeated on every row of its round and left empty when the
honest optimum is not unique. Floats are written with repr (shortest
round-trip form), so equal runs produce byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ceopt.netsim import RoundTrace


def _fmt(x: float) -> str:
    return repr(float(x))


def write_trace(trace: list[RoundTrace], path) -> None:
    if not trace:
        raise ValueError("trace is empty")
    d = len(next(iter(trace[0].estimates.values())))
    header = "round,agent_id," + ",".join(f"x_{c}" for c in range(d)) + ",v_t"
    lines = [header]
    for rt in trace:
        v = "" if rt.v_t is None else _fmt(rt.v_t)
        for i in sorted(rt.estimates):
            coords = ",".join(_fmt(c) for c in rt.estimates[i])
            lines.append(f"{rt.round},{i},{coords},{v}")
    Path(path).write_text("\n".join(lines) + "\n")


@dataclass
class TraceData:
    """Parsed trace: per-round v_t plus per-round per-agent estimates."""

    rounds: list[int]
    v_t: list[float | None]
    estimates: dict[int, dict[int, list[float]]]


def read_trace(path) -> TraceData:
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise ValueError(f"{path}: empty trace file")
    header = lines[0].split(",")
    if header[:2] != ["round", "agent_id"] or header[-1] != "v_t":
        raise ValueError(f"{path}: unrecognized trace header {lines[0]!r}")
    d = len(header) - 3
    rounds: list[int] = []
    v_t: list[float | None] = []
    estimates: dict[int, dict[int, list[float]]] = {}
    for ln, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != d + 3:
            raise ValueError(f"{path}:{ln}: expected {d + 3} fields, got {len(parts)}")
        t, aid = int(parts[0]), int(parts[1])
        coords = [float(x) for x in parts[2:-1]]
        v = None if parts[-1] == "" else float(parts[-1])
        if t not in estimates:
            estimates[t] = {}
            rounds.append(t)
            v_t.append(v)
        estimates[t][aid] = coords
    return TraceData(rounds=rounds, v_t=v_t, estimates=estimates)
