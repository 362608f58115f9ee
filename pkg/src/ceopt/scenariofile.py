"""Scenario (de)serialization: the JSON experiment description.

Format, one object with keys:

  dimension      int, d
  agents         list of {"id", "a_matrix" (row-major nested), "b_vector"}
                 -- the non-faulty agents and their quadratic costs
  faulty         list of {"id", "strategy", "strategy_params"}
  f              optional fault budget, >= len(faulty); defaults to len(faulty)
  eta            step size
  max_rounds     round cap
  tolerance      early-stop threshold on v_t (0 disables early stop)
  seed           unsigned 64-bit RNG seed
  filter_enabled bool
  seed_points    optional {"id": vector} initialization overrides

Ids must be unique and partition 1..n. Structural problems raise
ScenarioFormatError (CLI exit 2); semantic ones surface as ConfigurationError
from Scenario.validate (CLI exit 3).
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from ceopt.adversary import strategy_from_config
from ceopt.costmodel import QuadraticCost
from ceopt.errors import ScenarioFormatError
from ceopt.netsim import Scenario

_TOP_KEYS = {
    "dimension", "agents", "faulty", "f", "eta", "max_rounds",
    "tolerance", "seed", "filter_enabled", "seed_points",
}


def _fail(field: str, message: str):
    raise ScenarioFormatError(f"field '{field}': {message}")


def _require(doc: dict, field: str, kind, where: str = ""):
    label = f"{where}{field}"
    if field not in doc:
        _fail(label, "missing")
    value = doc[field]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            _fail(label, f"expected a number, got {type(value).__name__}")
        if not math.isfinite(value):
            _fail(label, "must be finite")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            _fail(label, f"expected an integer, got {type(value).__name__}")
        return value
    if not isinstance(value, kind):
        _fail(label, f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _numeric_list(value, field: str) -> list[float]:
    if not isinstance(value, list) or not value:
        _fail(field, "expected a nonempty list of numbers")
    out = []
    for k, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            _fail(f"{field}[{k}]", "expected a finite number")
        out.append(float(x))
    return out


def parse_scenario(doc: dict) -> Scenario:
    """Build a Scenario from a parsed JSON document (no semantic validation)."""
    if not isinstance(doc, dict):
        raise ScenarioFormatError("top level must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        _fail(", ".join(sorted(unknown)), "unknown key(s)")
    d = _require(doc, "dimension", int)
    if d < 1:
        _fail("dimension", "must be at least 1")

    agents = _require(doc, "agents", list)
    costs = {}
    for k, entry in enumerate(agents):
        where = f"agents[{k}]."
        if not isinstance(entry, dict):
            _fail(f"agents[{k}]", "expected an object")
        aid = _require(entry, "id", int, where)
        rows = _require(entry, "a_matrix", list, where)
        if not rows:
            _fail(where + "a_matrix", "must have at least one row")
        matrix = []
        for r, row in enumerate(rows):
            vals = _numeric_list(row, f"{where}a_matrix[{r}]")
            if len(vals) != d:
                _fail(f"{where}a_matrix[{r}]", f"row length {len(vals)} != dimension {d}")
            matrix.append(vals)
        b = _numeric_list(_require(entry, "b_vector", list, where), where + "b_vector")
        if len(b) != len(matrix):
            _fail(where + "b_vector", f"length {len(b)} != {len(matrix)} matrix rows")
        if aid in costs:
            _fail(where + "id", f"duplicate agent id {aid}")
        costs[aid] = (matrix, b)

    faulty = _require(doc, "faulty", list)
    strategies = {}
    for k, entry in enumerate(faulty):
        where = f"faulty[{k}]."
        if not isinstance(entry, dict):
            _fail(f"faulty[{k}]", "expected an object")
        fid = _require(entry, "id", int, where)
        name = _require(entry, "strategy", str, where)
        params = entry.get("strategy_params", {})
        if not isinstance(params, dict):
            _fail(where + "strategy_params", "expected an object")
        if fid in strategies or fid in costs:
            _fail(where + "id", f"duplicate agent id {fid}")
        try:
            strategies[fid] = strategy_from_config(name, params)
        except (ValueError, TypeError) as exc:
            _fail(where + "strategy", str(exc))

    n = len(costs) + len(strategies)
    f = doc.get("f", len(strategies))
    if isinstance(f, bool) or not isinstance(f, int):
        _fail("f", "expected an integer")
    if f < len(strategies):
        _fail("f", f"budget {f} below the {len(strategies)} listed faulty agents")

    seed_points = {}
    if "seed_points" in doc:
        raw = _require(doc, "seed_points", dict)
        for key, vec in raw.items():
            try:
                sid = int(key)
            except ValueError:
                _fail(f"seed_points.{key}", "key must be an agent id")
            vals = _numeric_list(vec, f"seed_points.{key}")
            if len(vals) != d:
                _fail(f"seed_points.{key}", f"length {len(vals)} != dimension {d}")
            seed_points[sid] = vals

    try:
        cost_objs = {i: QuadraticCost(m, b) for i, (m, b) in costs.items()}
    except ValueError as exc:
        raise ScenarioFormatError(f"agent cost: {exc}") from exc

    return Scenario(
        n=n,
        f=f,
        faulty_ids=frozenset(strategies),
        costs=cost_objs,
        strategies=strategies,
        eta=_require(doc, "eta", float),
        max_rounds=_require(doc, "max_rounds", int),
        tolerance=_require(doc, "tolerance", float) if "tolerance" in doc else 0.0,
        seed=_require(doc, "seed", int),
        filter_enabled=_require(doc, "filter_enabled", bool) if "filter_enabled" in doc else True,
        seed_points=seed_points,
    )


def serialize_scenario(scenario: Scenario) -> dict:
    """Inverse of parse_scenario (parse(serialize(s)) reproduces s)."""
    return {
        "dimension": scenario.dimension,
        "agents": [
            {
                "id": i,
                "a_matrix": scenario.costs[i].a_matrix.tolist(),
                "b_vector": scenario.costs[i].b_vector.tolist(),
            }
            for i in scenario.honest_ids
        ],
        "faulty": [
            {
                "id": i,
                "strategy": scenario.strategies[i].name,
                "strategy_params": scenario.strategies[i].params(),
            }
            for i in sorted(scenario.faulty_ids)
        ],
        "f": scenario.f,
        "eta": scenario.eta,
        "max_rounds": scenario.max_rounds,
        "tolerance": scenario.tolerance,
        "seed": scenario.seed,
        "filter_enabled": scenario.filter_enabled,
        "seed_points": {
            str(i): list(map(float, p)) for i, p in sorted(scenario.seed_points.items())
        },
    }


def load_scenario(path) -> Scenario:
    """Read and parse a scenario file; JSON errors carry line/column info."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"
        ) from exc
    return parse_scenario(doc)


def save_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(json.dumps(serialize_scenario(scenario), indent=2) + "\n")
