import numpy as np
import pytest

from ceopt import QuadraticCost, Scenario, run_simulation
from ceopt.traceio import read_trace, write_trace


def test_round_trip_preserves_values(tmp_path, paper_scenario):
    import dataclasses

    trace = run_simulation(dataclasses.replace(paper_scenario, max_rounds=20))
    path = tmp_path / "t.csv"
    write_trace(trace, path)
    data = read_trace(path)
    assert data.rounds == list(range(21))
    for rt in trace:
        assert data.v_t[rt.round] == rt.v_t
        for i, est in rt.estimates.items():
            assert np.array_equal(data.estimates[rt.round][i], est)


def test_absent_error_column(tmp_path):
    # two identical lines: the honest optimum is not unique, so v_t is absent
    costs = {1: QuadraticCost([[1.0, 0.0]], [1.0]), 2: QuadraticCost([[1.0, 0.0]], [1.0])}
    scenario = Scenario(
        n=2, f=0, faulty_ids=frozenset(), costs=costs, strategies={},
        eta=0.1, max_rounds=3, seed=0,
    )
    trace = run_simulation(scenario)
    assert all(rt.v_t is None for rt in trace)
    path = tmp_path / "t.csv"
    write_trace(trace, path)
    assert ",\n" in path.read_text() or path.read_text().endswith(",\n")
    data = read_trace(path)
    assert data.v_t == [None] * 4


def test_empty_trace_rejected(tmp_path):
    with pytest.raises(ValueError):
        write_trace([], tmp_path / "t.csv")


def test_unrecognized_header_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("time,node,value\n1,2,3\n")
    with pytest.raises(ValueError):
        read_trace(path)
