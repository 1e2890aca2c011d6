"""Aggregate standard records into disease statistics and emit report files.

Counts are grouped by ICD category, by (category, gender), by (category,
age bin), and by diagnosis (year, month). Rows with NA ICD fields count
toward the totals and the month map but are excluded from the category maps.
Emission is deterministic: maps are serialized in sorted key order, so the
same report always produces byte-identical files.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import MalformedFile, UnwritablePath
from .linker import StandardRecord

CSV_FILES = (
    "by_category.csv",
    "by_category_gender.csv",
    "by_category_agebin.csv",
    "by_month.csv",
    "summary.csv",
)


@dataclass
class StatsReport:
    by_category: dict[str, int] = field(default_factory=dict)
    by_category_gender: dict[tuple[str, str], int] = field(default_factory=dict)
    by_category_agebin: dict[tuple[str, str], int] = field(default_factory=dict)
    by_month: dict[tuple[int, int], int] = field(default_factory=dict)
    total_rows: int = 0
    na_rows: int = 0

    def validate(self) -> None:
        if sum(self.by_category.values()) + self.na_rows != self.total_rows:
            raise ValueError("category counts plus NA rows must equal the total")
        for (category, _), count in self.by_category_gender.items():
            if count > self.by_category.get(category, 0):
                raise ValueError(f"gender count exceeds category count for {category}")
        for (category, _), count in self.by_category_agebin.items():
            if count > self.by_category.get(category, 0):
                raise ValueError(f"age-bin count exceeds category count for {category}")


def bin_age(age_years: int) -> str:
    """Bins of width 20 anchored at 10 ("10-29", "30-49", ...), "1-9" for children."""
    if age_years < 1:
        raise ValueError(f"age must be >= 1, got {age_years}")
    if age_years <= 9:
        return "1-9"
    if age_years >= 90:
        return "90+"
    low = 10 + 20 * ((age_years - 10) // 20)
    return f"{low}-{low + 19}"


def aggregate(rows: Iterable[StandardRecord]) -> StatsReport:
    """Count rows into the report maps; permutation-invariant over the input."""
    report = StatsReport()
    for row in rows:
        report.total_rows += 1
        month_key = (row.diagnosis_date.year, row.diagnosis_date.month)
        report.by_month[month_key] = report.by_month.get(month_key, 0) + 1
        if row.icd10_category is None:
            report.na_rows += 1
            continue
        category = row.icd10_category
        report.by_category[category] = report.by_category.get(category, 0) + 1
        gender_key = (category, row.gender)
        report.by_category_gender[gender_key] = (
            report.by_category_gender.get(gender_key, 0) + 1
        )
        bin_key = (category, bin_age(row.age_years))
        report.by_category_agebin[bin_key] = (
            report.by_category_agebin.get(bin_key, 0) + 1
        )
    report.validate()
    return report


def emit_report(report: StatsReport, out_dir, fmt: str = "csv") -> list[Path]:
    """Write the report as CSV files or a single structured JSON document."""
    report.validate()
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            return _emit_csv(report, out_dir)
        if fmt == "json":
            return _emit_json(report, out_dir)
    except OSError as exc:
        raise UnwritablePath(out_dir, str(exc)) from exc
    raise ValueError(f"unknown report format {fmt!r}")


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _emit_csv(report: StatsReport, out_dir: Path) -> list[Path]:
    paths = [out_dir / name for name in CSV_FILES]
    _write_csv(
        paths[0],
        ["Category", "Count"],
        [[c, str(n)] for c, n in sorted(report.by_category.items())],
    )
    _write_csv(
        paths[1],
        ["Category", "Gender", "Count"],
        [[c, g, str(n)] for (c, g), n in sorted(report.by_category_gender.items())],
    )
    _write_csv(
        paths[2],
        ["Category", "AgeBin", "Count"],
        [[c, b, str(n)] for (c, b), n in sorted(report.by_category_agebin.items())],
    )
    _write_csv(
        paths[3],
        ["Year", "Month", "Count"],
        [[str(y), str(m), str(n)] for (y, m), n in sorted(report.by_month.items())],
    )
    _write_csv(
        paths[4],
        ["Key", "Value"],
        [["na_rows", str(report.na_rows)], ["total_rows", str(report.total_rows)]],
    )
    return paths


def _emit_json(report: StatsReport, out_dir: Path) -> list[Path]:
    document = {
        "by_category": dict(sorted(report.by_category.items())),
        "by_category_gender": _nest(report.by_category_gender),
        "by_category_agebin": _nest(report.by_category_agebin),
        "by_month": _nest(
            {(str(y), str(m)): n for (y, m), n in report.by_month.items()}
        ),
        "total_rows": report.total_rows,
        "na_rows": report.na_rows,
    }
    path = out_dir / "report.json"
    path.write_text(
        json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    return [path]


def _nest(pairs: dict[tuple[str, str], int]) -> dict[str, dict[str, int]]:
    nested: dict[str, dict[str, int]] = {}
    for (outer, inner), count in sorted(pairs.items()):
        nested.setdefault(outer, {})[inner] = count
    return nested


def read_report(out_dir) -> StatsReport:
    """Parse back a CSV report directory (inverse of the csv emission)."""
    out_dir = Path(out_dir)
    report = StatsReport()
    report.by_category = {
        row[0]: int(row[1]) for row in _read_csv(out_dir / "by_category.csv", 2)
    }
    report.by_category_gender = {
        (row[0], row[1]): int(row[2])
        for row in _read_csv(out_dir / "by_category_gender.csv", 3)
    }
    report.by_category_agebin = {
        (row[0], row[1]): int(row[2])
        for row in _read_csv(out_dir / "by_category_agebin.csv", 3)
    }
    report.by_month = {
        (int(row[0]), int(row[1])): int(row[2])
        for row in _read_csv(out_dir / "by_month.csv", 3)
    }
    summary = {row[0]: int(row[1]) for row in _read_csv(out_dir / "summary.csv", 2)}
    report.total_rows = summary["total_rows"]
    report.na_rows = summary["na_rows"]
    report.validate()
    return report


def _read_csv(path: Path, width: int) -> list[list[str]]:
    with path.open(encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise MalformedFile(path, 1, "missing header row")
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != width:
            raise MalformedFile(path, n, f"expected {width} cells")
    return rows[1:]
