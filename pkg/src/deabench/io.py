"""CSV ingestion, the bundled fixture tables, and atomic file output."""
from __future__ import annotations

import csv
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .panels import IndicatorPanel, PanelError, SpendPanel, Table
from .regions import UnknownRegionError, is_region, normalize_region

FIXTURE_ENV = "DEABENCH_FIXTURES"
FIXTURE_NAMES = (
    "tab_1_1", "tab_2_1", "tab_2_2", "tab_2_3", "tab_3_1", "tab_3_2",
    "tab_4_1", "tab_4_2", "tab_4_3", "tab_4_4", "tab_4_5", "tab_4_6",
)
PANEL_HEADER = ["region", "year", "indicator", "value"]
STUDY_YEARS = (2010, 2011, 2012, 2013)
SPEND_YEARS = tuple(range(2008, 2015))


class DataError(ValueError):
    """Malformed input file; message carries ``path:line``."""


def _open_rows(path):
    # newline="" lets csv handle both LF and CRLF
    with open(path, newline="", encoding="utf-8") as fh:
        yield from enumerate(csv.reader(fh), start=1)


def load_panel(path) -> IndicatorPanel:
    """Read a long-format ``region,year,indicator,value`` CSV."""
    panel = IndicatorPanel()
    seen: dict[tuple, int] = {}
    rows = _open_rows(path)
    try:
        _, header = next(rows)
    except StopIteration:
        raise DataError(f"{path}: empty file") from None
    if [h.strip().lower() for h in header] != PANEL_HEADER:
        raise DataError(f"{path}:1: expected header {','.join(PANEL_HEADER)}, got {','.join(header)}")
    for lineno, row in rows:
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            raise DataError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
        name, year, indicator, value = (c.strip() for c in row)
        try:
            region = normalize_region(name)
        except UnknownRegionError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from None
        try:
            year_i = int(year)
        except ValueError:
            raise DataError(f"{path}:{lineno}: year {year!r} is not an integer") from None
        try:
            val = float(value)
        except ValueError:
            raise DataError(f"{path}:{lineno}: value {value!r} is not numeric") from None
        key = (region, year_i, indicator)
        if key in seen:
            raise DataError(f"{path}:{lineno}: duplicate {key} (first at line {seen[key]})")
        seen[key] = lineno
        try:
            panel.add(region, year_i, indicator, val)
        except PanelError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from None
    return panel


def read_table(path, name: str | None = None) -> Table:
    """Read a wide ``region,<year>,<year>,...`` CSV."""
    rows = _open_rows(path)
    try:
        _, header = next(rows)
    except StopIteration:
        raise DataError(f"{path}: empty file") from None
    try:
        years = tuple(int(h) for h in header[1:])
    except ValueError:
        raise DataError(f"{path}:1: year columns must be integers: {header[1:]}") from None
    body: dict[str, tuple[float, ...]] = {}
    for lineno, row in rows:
        if not row:
            continue
        label = row[0].strip()
        if len(row) != len(years) + 1:
            raise DataError(f"{path}:{lineno}: expected {len(years) + 1} fields, got {len(row)}")
        try:
            label = normalize_region(label) if is_region(label) else label
        except UnknownRegionError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from None
        if label in body:
            raise DataError(f"{path}:{lineno}: duplicate row {label!r}")
        try:
            body[label] = tuple(float(v) for v in row[1:])
        except ValueError:
            raise DataError(f"{path}:{lineno}: non-numeric value in {row[1:]}") from None
    return Table(name or Path(path).stem, years, body)


def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    if env:
        return Path(env)
    return Path(__file__).with_name("fixtures")


@dataclass
class DatasetBundle:
    """The twelve printed tables plus an optional user indicator panel."""

    tables: dict[str, Table]
    panel: IndicatorPanel | None = None
    source: Path | None = field(default=None, compare=False)

    def __getitem__(self, name: str) -> Table:
        return self.tables[name]

    def spend_panel(self) -> SpendPanel:
        spend = {(r, y): v for r, row in self["tab_4_1"].regional().items()
                 for y, v in zip(self["tab_4_1"].years, row)}
        share = {}
        if "tab_4_2" in self.tables:
            t = self["tab_4_2"]
            share = {(r, y): v for r, row in t.regional().items() for y, v in zip(t.years, row)}
        return SpendPanel(spend, share)


def check_bundle_shape(tables: dict[str, Table]) -> None:
    for name, t in tables.items():
        expected = SPEND_YEARS if name in ("tab_1_1", "tab_2_3") else STUDY_YEARS
        if t.years != expected:
            raise DataError(f"{name}: years {t.years}, expected {expected}")
        if len(t.regional()) != 21:
            raise DataError(f"{name}: {len(t.regional())} regional rows, expected 21")


def load_bundle(directory=None, panel_path=None) -> DatasetBundle:
    directory = Path(directory) if directory else fixture_dir()
    tables = {}
    for name in FIXTURE_NAMES:
        path = directory / f"{name}.csv"
        if not path.exists():
            raise DataError(f"fixture {path} not found")
        tables[name] = read_table(path, name)
    check_bundle_shape(tables)
    panel = load_panel(panel_path) if panel_path else None
    return DatasetBundle(tables, panel, directory)


def atomic_write(path, text: str) -> Path:
    """Write ``text`` via a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def format_csv(header, rows) -> str:
    out = [",".join(header)]
    for row in rows:
        out.append(",".join(_csv_cell(c) for c in row))
    return "\n".join(out) + "\n"


def _csv_cell(value) -> str:
    s = str(value)
    if any(ch in s for ch in ',"\n'):
        s = '"' + s.replace('"', '""') + '"'
    return s
