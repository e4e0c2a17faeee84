"""Region x year containers: raw indicator panels, score series, spend panels, wide tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .regions import REGIONS, normalize_region


class MissingDataError(KeyError):
    def __str__(self):
        return str(self.args[0])


class PanelError(ValueError):
    pass


@dataclass
class IndicatorPanel:
    """Raw values keyed by ``(region, year, indicator)``."""

    values: dict[tuple[str, int, str], float] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[str, int, str, float]]) -> "IndicatorPanel":
        panel = cls()
        for region, year, indicator, value in rows:
            panel.add(region, year, indicator, value)
        return panel

    def add(self, region: str, year: int, indicator: str, value: float) -> None:
        region = normalize_region(region)
        key = (region, int(year), indicator)
        if key in self.values:
            raise PanelError(f"duplicate entry for {key}")
        value = float(value)
        if not value >= 0:
            raise PanelError(f"{key}: value must be >= 0, got {value}")
        self.values[key] = value

    def get(self, region: str, year: int, indicator: str) -> float:
        try:
            return self.values[(region, int(year), indicator)]
        except KeyError:
            raise MissingDataError(
                f"missing value: region={region!r} indicator={indicator!r} year={year}") from None

    def years(self) -> list[int]:
        return sorted({y for _, y, _ in self.values})

    def regions(self, year: int | None = None) -> list[str]:
        return sorted({r for r, y, _ in self.values if year is None or y == year})

    def indicators(self) -> list[str]:
        return sorted({i for _, _, i in self.values})


@dataclass
class ScoreSeries:
    """One index (or efficiency score) per ``(region, year)``."""

    name: str
    values: dict[tuple[str, int], float] = field(default_factory=dict)

    @classmethod
    def from_wide(cls, name: str, table: Mapping[str, Iterable[float]], years: Iterable[int]) -> "ScoreSeries":
        years = list(years)
        values = {}
        for region, row in table.items():
            row = list(row)
            if len(row) != len(years):
                raise PanelError(f"{name}: row {region!r} has {len(row)} values for {len(years)} years")
            for y, v in zip(years, row):
                values[(region, int(y))] = float(v)
        return cls(name, values)

    def years(self) -> list[int]:
        return sorted({y for _, y in self.values})

    def regions(self) -> list[str]:
        return sorted({r for r, _ in self.values})

    def year(self, year: int) -> dict[str, float]:
        out = {r: v for (r, y), v in self.values.items() if y == year}
        if not out:
            raise MissingDataError(f"{self.name}: no values for year {year}")
        return dict(sorted(out.items()))

    def get(self, region: str, year: int) -> float:
        try:
            return self.values[(region, year)]
        except KeyError:
            raise MissingDataError(f"{self.name}: no value for {region!r} {year}") from None

    def keys(self) -> set[tuple[str, int]]:
        return set(self.values)

    def merge(self, other: "ScoreSeries") -> "ScoreSeries":
        clash = self.keys() & other.keys()
        if clash:
            raise PanelError(f"overlapping keys when merging {self.name}: {sorted(clash)[:3]}")
        return ScoreSeries(self.name, {**self.values, **other.values})

    def wide(self) -> dict[str, list[float]]:
        years = self.years()
        return {r: [self.values.get((r, y), float("nan")) for y in years] for r in self.regions()}


@dataclass
class SpendPanel:
    """Per-capita spend (euro per inhabitant) and optional household share (percent)."""

    spend: dict[tuple[str, int], float]
    household_share: dict[tuple[str, int], float] = field(default_factory=dict)

    def __post_init__(self):
        for k, v in self.spend.items():
            if not v > 0:
                raise PanelError(f"spend for {k} must be > 0, got {v}")
        for k, v in self.household_share.items():
            if not 0 <= v <= 100:
                raise PanelError(f"household share for {k} outside [0, 100]: {v}")

    def years(self) -> list[int]:
        return sorted({y for _, y in self.spend})


@dataclass
class Table:
    """A wide printed table: labelled rows, one column per year.

    Rows whose label is a known region are keyed by canonical name;
    aggregate rows ("ITALIA", group totals, ...) keep their printed label.
    """

    name: str
    years: tuple[int, ...]
    rows: dict[str, tuple[float, ...]]

    def regional(self) -> dict[str, tuple[float, ...]]:
        return {k: v for k, v in self.rows.items() if k in REGIONS}

    def extras(self) -> dict[str, tuple[float, ...]]:
        return {k: v for k, v in self.rows.items() if k not in REGIONS}

    def series(self, name: str | None = None) -> ScoreSeries:
        return ScoreSeries.from_wide(name or self.name, self.regional(), self.years)

    def value(self, label: str, year: int) -> float:
        return self.rows[label][self.years.index(year)]
