"""JSON and CSV encodings of reports.

Every JSON document is an envelope::

    {"schema_version": 1, "tool": "starcert", "version": ..., "kind": ...,
     "command": ..., "timestamp": ..., "seed": ..., "grid": {...},
     "tolerance": ..., "report": {...}}

Field order is fixed and every real is written with 12 significant digits.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, fields

import numpy as np

from . import __version__
from .criteria import TheoremReport, Verdict
from .disk import ExtremumEstimate
from .harness import Example1Reconciliation, FuzzReport
from .series import DiskPoint
from .subordination import Witness

SCHEMA_VERSION = 1
THRESHOLD_HEADER = ["n", "alpha", "mu", "A", "threshold_low", "threshold_high"]


def fmt(x):
    """Round a real to 12 significant digits; non-finite values become None."""
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def _clean(obj):
    if isinstance(obj, Verdict):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [fmt(obj.real), fmt(obj.imag)]
    if isinstance(obj, ExtremumEstimate):
        return extremum_to_dict(obj)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def extremum_to_dict(e: ExtremumEstimate | None):
    if e is None:
        return None
    return {
        "value": fmt(e.value),
        "location": {"r": fmt(e.location.radius), "theta": fmt(e.location.angle)},
        "refined": bool(e.refined),
        "samples_used": int(e.samples_used),
    }


def _point(r, theta):
    # Rounding may push a radius to 1.0; keep it inside the open disk.
    return DiskPoint.polar(min(r, math.nextafter(1.0, 0.0)), theta)


def extremum_from_dict(d):
    if d is None:
        return None
    loc = d["location"]
    return ExtremumEstimate(d["value"], _point(loc["r"], loc["theta"]), d["refined"], d["samples_used"])


def theorem_report_to_dict(r: TheoremReport):
    return {
        "theorem_id": r.theorem_id,
        "verdict": r.verdict.value,
        "params": _clean(r.params),
        "hypothesis_extremum": extremum_to_dict(r.hypothesis_extremum),
        "hypothesis_margin": fmt(r.hypothesis_margin),
        "threshold_low": fmt(r.threshold_low),
        "threshold_high": fmt(r.threshold_high),
        "conclusion_sup_arg": extremum_to_dict(r.conclusion_sup_arg),
        "conclusion_bound": fmt(r.conclusion_bound),
        "conclusion_margin": fmt(r.conclusion_margin),
        "boundary": bool(r.boundary),
        "auxiliary": {k: extremum_to_dict(v) for k, v in r.auxiliary.items()},
        "notes": list(r.notes),
    }


def theorem_report_from_dict(d):
    return TheoremReport(
        theorem_id=d["theorem_id"],
        params=dict(d["params"]),
        verdict=Verdict(d["verdict"]),
        hypothesis_extremum=extremum_from_dict(d["hypothesis_extremum"]),
        hypothesis_margin=d["hypothesis_margin"],
        threshold_low=d["threshold_low"],
        threshold_high=d["threshold_high"],
        conclusion_sup_arg=extremum_from_dict(d["conclusion_sup_arg"]),
        conclusion_bound=d["conclusion_bound"],
        conclusion_margin=d["conclusion_margin"],
        boundary=d["boundary"],
        auxiliary={k: extremum_from_dict(v) for k, v in d["auxiliary"].items()},
        notes=list(d["notes"]),
    )


def witness_to_dict(w: Witness | None):
    if w is None:
        return None
    return {
        "z0_r": fmt(w.z0.radius),
        "z0_theta": fmt(w.z0.angle),
        "zeta0_re": fmt(w.zeta0.real),
        "zeta0_im": fmt(w.zeta0.imag),
        "rho": fmt(w.rho),
        "sigma": fmt(w.sigma),
        "m": fmt(w.m),
        "residual": fmt(w.residual),
    }


def witness_from_dict(d):
    if d is None:
        return None
    return Witness(
        _point(d["z0_r"], d["z0_theta"]), complex(d["zeta0_re"], d["zeta0_im"]),
        d["rho"], d["sigma"], d["m"], d["residual"],
    )


def fuzz_report_to_dict(r: FuzzReport):
    return {
        "theorem_id": r.theorem_id,
        "trials": r.trials,
        "seed": r.seed,
        "certified_count": r.certified_count,
        "hypothesis_fail_count": r.hypothesis_fail_count,
        "precondition_fail_count": r.precondition_fail_count,
        "counterexample_count": r.counterexample_count,
        "worst_conclusion_margin": fmt(r.worst_conclusion_margin),
        "family": _clean(r.family),
        "params": _clean(r.params),
        "counterexamples": _clean(r.counterexamples),
    }


def fuzz_report_from_dict(d):
    return FuzzReport(**{f.name: d[f.name] for f in fields(FuzzReport)})


def reconciliation_to_dict(rec: Example1Reconciliation):
    return _clean(asdict(rec))


def reconciliation_from_dict(d):
    return Example1Reconciliation(**d)


_ENCODERS = [
    (TheoremReport, "theorem_report", theorem_report_to_dict),
    (FuzzReport, "fuzz_report", fuzz_report_to_dict),
    (Witness, "witness", witness_to_dict),
    (Example1Reconciliation, "example1", reconciliation_to_dict),
]
_DECODERS = {
    "theorem_report": theorem_report_from_dict,
    "fuzz_report": fuzz_report_from_dict,
    "witness": witness_from_dict,
    "example1": reconciliation_from_dict,
}


def report_to_dict(report):
    for cls, kind, enc in _ENCODERS:
        if isinstance(report, cls):
            return kind, enc(report)
    raise TypeError(f"cannot serialize {type(report).__name__}")


def envelope(kind, body, *, command=None, grid=None, seed=None, tolerance=None, timestamp=None):
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "starcert",
        "version": __version__,
        "kind": kind,
        "command": command,
        "timestamp": timestamp,
        "seed": seed,
        "grid": None if grid is None else _clean(grid.as_dict()),
        "tolerance": fmt(tolerance),
        "report": body,
    }


def serialize_report(report, *, command=None, grid=None, seed=None, tolerance=None, timestamp=None, kind=None) -> str:
    """Encode a report (or a pre-built dict with an explicit ``kind``) as JSON text."""
    if kind is None:
        kind, body = report_to_dict(report)
    else:
        body = _clean(report)
    doc = envelope(kind, body, command=command, grid=grid, seed=seed, tolerance=tolerance, timestamp=timestamp)
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def parse_report(text):
    """Inverse of :func:`serialize_report` for the single-report kinds."""
    doc = json.loads(text)
    kind = doc["kind"]
    if kind not in _DECODERS:
        raise ValueError(f"no decoder for report kind {kind!r}")
    return _DECODERS[kind](doc["report"])


def write_threshold_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(THRESHOLD_HEADER)
        for row in rows:
            w.writerow(["" if row.get(k) is None else (row[k] if k == "n" else f"{row[k]:.12g}") for k in THRESHOLD_HEADER])
