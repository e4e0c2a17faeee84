"""Descriptive layer: yearly moments, quadrant maps, colour buckets, group sums, rank association."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import spearmanr

from .panels import PanelError, ScoreSeries, Table
from .regions import REGIONS

QUADRANTS = ("high_cov_high_qual", "low_cov_high_qual", "low_cov_low_qual", "high_cov_low_qual")
QUADRANT_LABELS = {
    "high_cov_high_qual": "high coverage, high quality",
    "low_cov_high_qual": "low coverage, high quality",
    "low_cov_low_qual": "low coverage, low quality",
    "high_cov_low_qual": "high coverage, low quality",
}


@dataclass(frozen=True)
class YearlyStats:
    year: int
    mean: float
    std_dev: float  # population (divisor n)
    n: int


def yearly_stats(series: ScoreSeries) -> list[YearlyStats]:
    out = []
    for year in series.years():
        vals = np.array(list(series.year(year).values()))
        if vals.size < 2:
            raise PanelError(f"{series.name} {year}: need at least 2 regions, got {vals.size}")
        out.append(YearlyStats(year, float(vals.mean()), float(vals.std(ddof=0)), int(vals.size)))
    return out


@dataclass(frozen=True)
class QuadrantAssignment:
    region: str
    quadrant: str
    split_rule: str
    split_point_x: float
    split_point_y: float
    x: float
    y: float


def split_point(values, rule: str) -> float:
    """Mean, or median (central value for odd n, mean of the two central ones for even n)."""
    vals = np.asarray(list(values), dtype=float)
    if rule == "mean":
        return float(vals.mean())
    if rule == "median":
        return float(np.median(vals))
    raise ValueError(f"split rule must be 'mean' or 'median', got {rule!r}")


def classify(x: float, y: float, sx: float, sy: float) -> str:
    """Quadrant code; a value equal to its split point counts as high."""
    hx, hy = x >= sx, y >= sy
    if hx and hy:
        return "high_cov_high_qual"
    if hy:
        return "low_cov_high_qual"
    if hx:
        return "high_cov_low_qual"
    return "low_cov_low_qual"


def _assign(xs: dict[str, float], ys: dict[str, float], rule: str) -> list[QuadrantAssignment]:
    if set(xs) != set(ys):
        raise PanelError(f"series cover different regions: {sorted(set(xs) ^ set(ys))}")
    sx, sy = split_point(xs.values(), rule), split_point(ys.values(), rule)
    return [QuadrantAssignment(r, classify(xs[r], ys[r], sx, sy), rule, sx, sy, xs[r], ys[r])
            for r in sorted(xs)]


def quadrants(coverage: ScoreSeries, quality: ScoreSeries, year: int,
              split_rule: str = "mean") -> list[QuadrantAssignment]:
    return _assign(coverage.year(year), quality.year(year), split_rule)


def cross_domain_quadrants(series_a: ScoreSeries, series_b: ScoreSeries, split_rule: str = "mean",
                           years=None) -> list[QuadrantAssignment]:
    """Quadrants of per-region multi-year means (``series_a`` on x, ``series_b`` on y)."""
    years = list(years) if years is not None else series_a.years()

    def means(s: ScoreSeries) -> dict[str, float]:
        out = {}
        for r in s.regions():
            out[r] = float(np.mean([s.get(r, y) for y in years]))
        return out

    return _assign(means(series_a), means(series_b), split_rule)


def color_bucket(value: float, column_min: float, column_max: float, levels: int = 9) -> int:
    """Equal-width bucket index in ``0 .. levels-1``; a flat column maps to the middle bucket."""
    if column_max < column_min:
        raise ValueError("column_max < column_min")
    if column_max == column_min:
        return levels // 2
    frac = (value - column_min) / (column_max - column_min)
    return int(min(max(np.floor(frac * levels), 0), levels - 1))


@dataclass(frozen=True)
class RegionGroup:
    group_name: str
    members: tuple[str, ...]
    label: str = ""  # row label in the spend table

    def __post_init__(self):
        unknown = [m for m in self.members if m not in REGIONS]
        if unknown:
            raise ValueError(f"group {self.group_name}: unknown regions {unknown}")


# memberships reconstructed by matching the printed group totals exactly
SPEND_GROUPS = (
    RegionGroup("statuto_speciale",
                ("Valle d'Aosta", "Alto Adige", "Trentino", "Friuli-Venezia Giulia", "Sardegna"),
                "regioni a statuto speciale"),
    RegionGroup("commissariate", ("Lazio", "Abruzzo", "Molise", "Campania", "Calabria"),
                "regioni in piano di rientro e commissariate"),
    RegionGroup("piano_di_rientro", ("Piemonte", "Puglia", "Sicilia"), "regioni in piano di rientro"),
)


def group_spend_sums(table: Table, groups=SPEND_GROUPS) -> dict[tuple[str, int], int]:
    """Exact integer totals (thousand euro) per ``(group, year)``."""
    regional = table.regional()
    out = {}
    for g in groups:
        missing = [m for m in g.members if m not in regional]
        if missing:
            raise PanelError(f"group {g.group_name}: {missing} absent from {table.name}")
        for k, year in enumerate(table.years):
            out[(g.group_name, year)] = int(sum(int(round(regional[m][k])) for m in g.members))
    return out


def mobility_association(index: ScoreSeries, mobility: Table, year: int) -> float:
    """Spearman rank correlation (ties mid-ranked) between an index and the mobility balance."""
    scores = index.year(year)
    balance = mobility.regional()
    k = mobility.years.index(year)
    common = sorted(set(scores) & set(balance))
    if len(common) < 3:
        raise PanelError(f"only {len(common)} regions in common; need at least 3")
    rho = spearmanr([scores[r] for r in common], [balance[r][k] for r in common]).statistic
    return float(rho)
