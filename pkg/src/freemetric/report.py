"""Report rows and their JSON / CSV / text serializations.

JSON layout::

    {"version": ..., "config": {...},
     "rows": [{"id", "anchor", "status", "value", "bound", "margin",
               "witness", "note", "hard"}, ...],
     "summary": {"total", "pass", "fail", "warn", "info", "hard_failures"}}
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

STATUSES = ("pass", "fail", "warn", "info")
ROW_FIELDS = ("id", "anchor", "status", "value", "bound", "margin", "witness", "note", "hard")


@dataclass
class Row:
    id: str
    anchor: str
    status: str
    value: Any = None
    bound: Any = None
    margin: Any = None
    witness: Any = None
    note: str = ""
    hard: bool = True

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def failed(self) -> bool:
        return self.status == "fail" and self.hard


def _status(ok: bool, hard: bool) -> str:
    return "pass" if ok else ("fail" if hard else "warn")


def check_row(id, anchor, value, bound, *, witness=None, tol=1e-9, hard=True, note="") -> Row:
    """Row asserting ``value <= bound`` up to ``tol``; soft rows warn instead of failing."""
    ok = value <= bound + tol
    return Row(id, anchor, _status(ok, hard), value, bound, bound - value, witness, note, hard)


def equal_row(id, anchor, value, expected, *, witness=None, tol=0.0, hard=True, note="") -> Row:
    ok = abs(value - expected) <= tol
    return Row(id, anchor, _status(ok, hard), value, expected, -abs(value - expected),
               witness, note, hard)


def _clean(v):
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return str(v)
        return v
    if isinstance(v, (list, tuple)):
        return [_clean(u) for u in v]
    if isinstance(v, dict):
        return {str(k): _clean(u) for k, u in v.items()}
    if hasattr(v, "item") and callable(v.item):
        return _clean(v.item())
    if v is None or isinstance(v, (bool, int, str)):
        return v
    return str(v)


@dataclass
class Report:
    version: str
    config: dict
    rows: list[Row] = field(default_factory=list)

    def summary(self) -> dict:
        counts = {s: 0 for s in STATUSES}
        for r in self.rows:
            counts[r.status] += 1
        return {"total": len(self.rows), **counts, "hard_failures": sum(r.failed for r in self.rows)}

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": _clean(self.config),
            "rows": [_clean(asdict(r)) for r in self.rows],
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        return rows_to_csv(self.rows)

    def to_text(self) -> str:
        lines = []
        width = max([len(r.id) for r in self.rows] + [2])
        for r in self.rows:
            lines.append(
                f"{r.status.upper():5} {r.id:<{width}}  value={_fmt(r.value)} "
                f"bound={_fmt(r.bound)} margin={_fmt(r.margin)}"
                + (f"  witness={_fmt(r.witness)}" if r.witness not in (None, "", []) else "")
                + (f"  [{r.note}]" if r.note else "")
            )
        s = self.summary()
        lines.append(
            f"-- {s['total']} rows: {s['pass']} pass, {s['fail']} fail, {s['warn']} warn, {s['info']} info"
        )
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(int(v)) if v.is_integer() and abs(v) < 1e15 else repr(v)
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_fmt(u) for u in v) + ")"
    return str(v)


def rows_to_csv(rows: Sequence[Row]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ROW_FIELDS)
    for r in rows:
        d = _clean(asdict(r))
        writer.writerow(
            [json.dumps(d[k]) if isinstance(d[k], (list, dict)) else d[k] for k in ROW_FIELDS]
        )
    return buf.getvalue()


def table_to_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_clean(v) for v in row])
    return buf.getvalue()
