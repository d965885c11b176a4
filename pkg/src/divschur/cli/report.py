"""Reports and their deterministic serialization."""
from __future__ import annotations

import csv
import json
import io
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .. import __version__
from ..errors import IoFailure
from ..schur.fourier import FOURIER_CONVENTION


def fmt_float(x: float) -> str:
    """17 significant digits; non-finite values as JSON strings."""
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _plain(x):
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def to_json(obj, indent=0) -> str:
    obj = _plain(obj)
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + to_json(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [pad + json.dumps(str(k)) + ": " + to_json(v, indent + 1) for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def le_case(label, lhs, rhs, **info) -> dict:
    """Record ``lhs <= rhs``; ``rhs`` already includes any slack."""
    lhs, rhs = float(lhs), float(rhs)
    ok = bool(lhs <= rhs) and math.isfinite(lhs)
    return {"label": label, **info, "lhs": lhs, "rhs": rhs, "slack": rhs - lhs, "passed": ok}


def close_case(label, lhs, rhs, tol, scale=1.0, **info) -> dict:
    """Record ``|lhs - rhs| <= tol * scale``."""
    err = abs(complex(lhs) - complex(rhs))
    bound = tol * scale
    rec = {"label": label, **info, "lhs": _plain(lhs), "rhs": _plain(rhs), "error": err,
           "bound": bound, "slack": bound - err, "passed": bool(err <= bound)}
    return rec


@dataclass
class Report:
    config: dict
    cases: list = field(default_factory=list)
    extra_summary: dict = field(default_factory=dict)
    provenance_extra: dict = field(default_factory=dict)
    series: tuple | None = None  # (header, rows) for CSV
    error: dict | None = None

    @property
    def violations(self) -> list:
        return [c for c in self.cases if not c.get("passed", True)]

    @property
    def passed(self) -> bool:
        return self.error is None and not self.violations

    def summary(self) -> dict:
        slacks = [c["slack"] for c in self.cases if "slack" in c]
        bad = self.violations
        out = {"cases": len(self.cases), "violations": len(bad),
               "max_violation": max((-c["slack"] for c in bad), default=0.0),
               "min_slack": min(slacks) if slacks else None,
               "passed": self.passed}
        out.update(self.extra_summary)
        if bad:
            out["first_violation"] = bad[0]
        return out

    def provenance(self) -> dict:
        return {"version": __version__, "fourier_convention": FOURIER_CONVENTION,
                **self.provenance_extra}

    def as_dict(self) -> dict:
        d = {"config": self.config, "summary": self.summary(), "provenance": self.provenance(),
             "cases": [dict(index=i, **c) for i, c in enumerate(self.cases)]}
        if self.error is not None:
            d["error"] = self.error
        return d


CASE_COLUMNS = ("index", "label", "lhs", "rhs", "slack", "passed")


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return to_json(report.as_dict()) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        if report.series is not None:
            header, rows = report.series
            wr.writerow(header)
            for row in rows:
                wr.writerow([_cell(v) for v in row])
        else:
            wr.writerow(CASE_COLUMNS)
            for i, c in enumerate(report.cases):
                wr.writerow([_cell(v) for v in (i, c.get("label"), c.get("lhs"), c.get("rhs"),
                                                c.get("slack"), c.get("passed"))])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def _cell(v):
    v = _plain(v)
    if isinstance(v, float):
        return fmt_float(v).strip('"')
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v)
    return v


def emit(report: Report, fmt: str, path) -> str:
    """Write the report as ``json`` or ``csv`` to ``path``; returns the path."""
    text = render(report, fmt)
    try:
        parent = os.path.dirname(os.fspath(path))
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return os.fspath(path)
