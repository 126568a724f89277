"""Report records and their JSON-lines / CSV / plain renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

RECORD_FIELDS = ("name", "value", "tail_bound", "terms_used", "elapsed_us", "pass")
BENCH_FIELDS = (
    "index",
    "method",
    "elapsed_us",
    "num_bits",
    "den_bits",
    "cumulative_us",
    "cross_equal",
)
FORMATS = ("plain", "json", "csv")


@dataclass(frozen=True)
class ReportRecord:
    """One computed quantity or verified identity.

    ``passed`` is None for plain computations and a bool for verifications;
    the ``pass`` key is emitted only in the latter case.
    """

    name: str
    value: str
    tail_bound: str = "0"
    terms_used: int = 0
    elapsed_us: int = 0
    passed: bool | None = None

    def as_dict(self) -> dict:
        d = {
            "name": self.name,
            "value": self.value,
            "tail_bound": self.tail_bound,
            "terms_used": self.terms_used,
            "elapsed_us": self.elapsed_us,
        }
        if self.passed is not None:
            d["pass"] = self.passed
        return d


@dataclass(frozen=True)
class BenchRow:
    index: int
    method: str
    elapsed_us: int
    num_bits: int
    den_bits: int
    cumulative_us: int
    cross_equal: bool | None = None

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "method": self.method,
            "elapsed_us": self.elapsed_us,
            "num_bits": self.num_bits,
            "den_bits": self.den_bits,
            "cumulative_us": self.cumulative_us,
            "cross_equal": self.cross_equal,
        }


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def render(rows: Sequence, fmt: str) -> str:
    """Render records (ReportRecord or BenchRow) in ``fmt``."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    dicts = [r.as_dict() for r in rows]
    if fmt == "json":
        return "".join(json.dumps(d) + "\n" for d in dicts)
    if fmt == "csv":
        fields = BENCH_FIELDS if rows and isinstance(rows[0], BenchRow) else RECORD_FIELDS
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for d in dicts:
            writer.writerow([_csv_cell(d.get(k)) for k in fields])
        return buf.getvalue()
    return _plain(rows)


def _plain(rows: Iterable) -> str:
    lines = []
    for r in rows:
        if isinstance(r, BenchRow):
            eq = "" if r.cross_equal is None else ("  equal" if r.cross_equal else "  MISMATCH")
            lines.append(
                f"B_{r.index:<5d} {r.method:8s} {r.elapsed_us:>10d} us  "
                f"num {r.num_bits:>6d} bits  den {r.den_bits:>4d} bits{eq}"
            )
            continue
        status = ""
        if r.passed is not None:
            status = "PASS " if r.passed else "FAIL "
        extra = f"  (bound {r.tail_bound}, {r.terms_used} terms)" if r.tail_bound != "0" else ""
        lines.append(f"{status}{r.name} = {r.value}{extra}")
    return "".join(line + "\n" for line in lines)
