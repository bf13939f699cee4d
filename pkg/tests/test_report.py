import csv
import json
import math

import pytest

from starcert.criteria import Verdict, check_t1, check_t2
from starcert.harness import FunctionFamily, FuzzReport, example1_report, fuzz_theorem
from starcert.report import (
    SCHEMA_VERSION,
    THRESHOLD_HEADER,
    fmt,
    parse_report,
    serialize_report,
    write_threshold_csv,
)
from starcert.series import HClassFunction, PowerSeries
from starcert.subordination import RotatedHalfPlaneTarget, mm_witness


def _rounded(report):
    """A report re-encoded once, so every real carries 12 significant digits."""
    return parse_report(serialize_report(report))


def test_fmt():
    assert fmt(math.pi) == 3.14159265359
    assert fmt(float("nan")) is None
    assert fmt(None) is None


def test_theorem_report_round_trip(small_grid):
    rep = check_t1(HClassFunction(PowerSeries([1, 0, 0.05]), 2), PowerSeries([1, 1 / 3]), math.pi / 4, None, small_grid)
    once = _rounded(rep)
    assert parse_report(serialize_report(once)) == once
    assert once.verdict is rep.verdict
    assert once.hypothesis_margin == pytest.approx(rep.hypothesis_margin, rel=1e-11)
    assert once.conclusion_sup_arg.location.radius == pytest.approx(rep.conclusion_sup_arg.location.radius, rel=1e-11)


def test_precondition_report_round_trip(small_grid):
    rep = check_t2(HClassFunction(PowerSeries([1, -2]), 1), 0.0, small_grid)
    once = _rounded(rep)
    assert once.verdict is Verdict.PRECONDITION_FAILS
    assert parse_report(serialize_report(once)) == once


def test_witness_serialization():
    w = mm_witness(PowerSeries([1, -2]), RotatedHalfPlaneTarget(0.0))
    doc = json.loads(serialize_report(w))
    assert doc["kind"] == "witness"
    assert f"{doc['report']['m']:.12f}" == "2.000000000000"
    assert parse_report(serialize_report(w)).m == pytest.approx(2.0)


def test_fuzz_report_schema(small_grid):
    rep = fuzz_theorem("T3", FunctionFamily("poly_p", 1, 0.2), small_grid, 1, 3)
    doc = json.loads(serialize_report(rep, seed=1, grid=small_grid, tolerance=1e-7, command="fuzz"))
    assert doc["report"]["counterexample_count"] == 0
    assert doc["grid"] == {"radial": 64, "angular": 256, "max_radius": 0.999}
    once = parse_report(json.dumps(doc))
    assert isinstance(once, FuzzReport)
    assert parse_report(serialize_report(once)) == once
    assert once.worst_conclusion_margin == pytest.approx(rep.worst_conclusion_margin, rel=1e-11)


def test_envelope_order_and_version(small_grid):
    rep = check_t2(HClassFunction(PowerSeries([1, 0.1]), 1), 0.0, small_grid)
    doc = json.loads(serialize_report(rep, command="check", grid=small_grid, seed=0, tolerance=1e-7, timestamp="t"))
    assert list(doc) == ["schema_version", "tool", "version", "kind", "command", "timestamp", "seed", "grid", "tolerance", "report"]
    assert doc["schema_version"] == SCHEMA_VERSION and doc["tool"] == "starcert"
    assert list(doc["report"])[:3] == ["theorem_id", "verdict", "params"]


def test_deterministic_text(small_grid):
    rep = check_t2(HClassFunction(PowerSeries([1, 0.1]), 1), 0.0, small_grid)
    assert serialize_report(rep, timestamp="x") == serialize_report(rep, timestamp="x")


def test_example_reconciliation_round_trip(small_grid):
    _, rec = example1_report(2, 0.05, small_grid)
    once = parse_report(serialize_report(rec))
    assert parse_report(serialize_report(once)) == once
    assert once.k_max == pytest.approx(7 / 88, rel=1e-11)


def test_threshold_csv(tmp_path):
    rows = [{"n": 1, "alpha": 0.0, "mu": 1.0, "A": None, "threshold_low": -math.sqrt(3), "threshold_high": math.sqrt(3)}]
    write_threshold_csv(rows, tmp_path / "t.csv")
    with open(tmp_path / "t.csv") as fh:
        got = list(csv.reader(fh))
    assert got[0] == THRESHOLD_HEADER
    assert got[1] == ["1", "0", "1", "", "-1.73205080757", "1.73205080757"]
