"""Cost split, per-domain envelopment efficiency and composite sums."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dea import envelopment_input_oriented
from .panels import PanelError, ScoreSeries, SpendPanel
from .validation import check_rts


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class MacroShares:
    """Hospital / district / prevention shares of national spend, per year.

    ``default`` applies to any year without an explicit entry.
    """

    by_year: dict[int, tuple[float, float, float]] = field(default_factory=dict)
    default: tuple[float, float, float] | None = (0.45, 0.50, 0.05)

    def __post_init__(self):
        for key, shares in [*self.by_year.items(), ("default", self.default)]:
            if shares is None:
                continue
            if len(shares) != 3 or not all(0 <= s <= 1 for s in shares) or min(shares[:2]) <= 0:
                raise ConfigError(
                    f"shares for {key}: need hospital, district in (0, 1] and prevention in [0, 1], got {shares}")
            if abs(sum(shares) - 1.0) > 1e-9:
                raise ConfigError(f"shares for {key} sum to {sum(shares)}, not 1")

    def shares(self, year: int) -> tuple[float, float, float]:
        if year in self.by_year:
            return self.by_year[year]
        if self.default is None:
            raise ConfigError(f"no macro shares configured for {year}")
        return self.default

    def multipliers(self, year: int) -> tuple[float, float]:
        """Hospital and district fractions once prevention is spread over both."""
        h, d, _ = self.shares(year)
        return h / (h + d), d / (h + d)


@dataclass(frozen=True)
class CompositeWeights:
    hospital_weight: float
    district_weight: float

    def __post_init__(self):
        if abs(self.hospital_weight + self.district_weight - 2.0) > 1e-9:
            raise ConfigError(
                f"composite weights must sum to 2, got {self.hospital_weight} + {self.district_weight}")

    @classmethod
    def from_shares(cls, hospital: float, district: float) -> "CompositeWeights":
        """Rescale two funding shares so they sum to 2."""
        total = hospital + district
        return cls(2 * hospital / total, 2 * district / total)


DEFAULT_WEIGHTS = CompositeWeights.from_shares(0.44, 0.51)


def split_costs(spend: SpendPanel, shares: MacroShares) -> dict[tuple[str, int], tuple[float, float]]:
    """Per ``(region, year)``: ``(hospital_cost, district_cost)``."""
    out = {}
    for (region, year), value in sorted(spend.spend.items()):
        mh, md = shares.multipliers(year)
        out[(region, year)] = (value * mh, value * md)
    return out


def efficiency_scores(domain: str, year: int, costs, coverage: ScoreSeries, quality: ScoreSeries,
                      rts: str = "CRS") -> ScoreSeries:
    """Input-oriented efficiency of each region's domain cost given (coverage, quality)."""
    if domain not in ("hospital", "district"):
        raise ValueError(f"domain must be 'hospital' or 'district', got {domain!r}")
    mode = check_rts(rts)
    col = 0 if domain == "hospital" else 1
    cov, qual = coverage.year(year), quality.year(year)
    regions = sorted(r for r, y in costs if y == year)
    if set(regions) != set(cov) or set(regions) != set(qual):
        missing = (set(cov) | set(qual)) ^ set(regions)
        raise PanelError(f"{domain} {year}: regions differ between costs and outputs: {sorted(missing)}")
    x = np.array([costs[(r, year)][col] for r in regions])
    Y = np.array([[cov[r], qual[r]] for r in regions])
    name = f"theta_{domain}_{mode.lower()}"
    return ScoreSeries(name, {(r, year): envelopment_input_oriented(x, Y, i, mode).theta
                              for i, r in enumerate(regions)})


def efficiency_table(domain: str, costs, coverage: ScoreSeries, quality: ScoreSeries,
                     rts: str = "CRS") -> ScoreSeries:
    """:func:`efficiency_scores` for every year the outputs cover."""
    out = None
    for year in coverage.years():
        s = efficiency_scores(domain, year, costs, coverage, quality, rts)
        out = s if out is None else out.merge(s)
    return out


def composite_efficiency(hospital: ScoreSeries, district: ScoreSeries,
                         weights: CompositeWeights | str | None = "simple") -> ScoreSeries:
    """``h + d`` (``weights="simple"``) or ``w_h h + w_d d``."""
    if hospital.keys() != district.keys():
        diff = sorted(hospital.keys() ^ district.keys())
        raise PanelError(f"hospital and district series cover different keys, e.g. {diff[:3]}")
    if weights is None or weights == "simple":
        wh = wd = 1.0
        name = "composite_simple"
    elif isinstance(weights, CompositeWeights):
        wh, wd = weights.hospital_weight, weights.district_weight
        name = "composite_weighted"
    else:
        raise ValueError(f"weights must be 'simple' or CompositeWeights, got {weights!r}")
    return ScoreSeries(name, {k: wh * hospital.values[k] + wd * district.values[k]
                              for k in sorted(hospital.keys())})
