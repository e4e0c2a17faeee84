"""The four service indices: hospital/district coverage and quality.

Coverage (both domains) and district quality are benefit-of-the-doubt
scores computed year by year; hospital quality is the plain mean of three
satisfaction percentages.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .dea import DmuSet, bod_scores
from .panels import IndicatorPanel, PanelError, ScoreSeries

EPSILON_RATIO = 1e-6

DOMAINS = ("hospital_coverage", "hospital_quality", "district_coverage", "district_quality")


@dataclass(frozen=True)
class IndicatorSpec:
    name: str
    domain: str
    direction: str = "benefit"
    unit: str = ""

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.direction not in ("benefit", "cost"):
            raise ValueError(f"direction must be 'benefit' or 'cost', got {self.direction!r}")


HOSPITAL_COVERAGE = (
    IndicatorSpec("day_hospital_beds", "hospital_coverage", unit="per 10,000 inhabitants"),
    IndicatorSpec("ordinary_beds", "hospital_coverage", unit="per 10,000 inhabitants"),
    IndicatorSpec("physicians_dentists", "hospital_coverage", unit="per 10,000 inhabitants"),
    IndicatorSpec("nursing_staff", "hospital_coverage", unit="per 10,000 inhabitants"),
    IndicatorSpec("rehabilitation_staff", "hospital_coverage", unit="per 10,000 inhabitants"),
    IndicatorSpec("technical_health_staff", "hospital_coverage", unit="per 10,000 inhabitants"),
)
HOSPITAL_QUALITY = (
    IndicatorSpec("very_satisfied_medical_care", "hospital_quality", unit="% of inpatients"),
    IndicatorSpec("very_satisfied_nursing_care", "hospital_quality", unit="% of inpatients"),
    IndicatorSpec("very_satisfied_hygiene", "hospital_quality", unit="% of inpatients"),
)
DISTRICT_COVERAGE = (
    IndicatorSpec("on_call_services", "district_coverage", unit="per 1,000 inhabitants"),
    IndicatorSpec("general_practitioners", "district_coverage", unit="per 10,000 inhabitants"),
    IndicatorSpec("paediatricians", "district_coverage", unit="per 10,000 inhabitants"),
    IndicatorSpec("residential_care_beds", "district_coverage", unit="per 10,000 inhabitants"),
    IndicatorSpec("district_facilities", "district_coverage", unit="per 10,000 inhabitants"),
)
DISTRICT_QUALITY = (
    IndicatorSpec("on_call_doctors_per_service", "district_quality", "benefit", "mean count"),
    IndicatorSpec("gps_over_1500_patients", "district_quality", "cost", "% of GPs"),
    IndicatorSpec("paediatricians_over_800_patients", "district_quality", "cost", "% of paediatricians"),
)

CATALOGS = {
    "hospital_coverage": HOSPITAL_COVERAGE,
    "hospital_quality": HOSPITAL_QUALITY,
    "district_coverage": DISTRICT_COVERAGE,
    "district_quality": DISTRICT_QUALITY,
}


class DirectionTransformer(TransformerMixin, BaseEstimator):
    """Turn raw indicator columns into strictly positive "more is better" values.

    Cost-direction percentages ``p`` become ``100 - p``; afterwards every
    column is floored at ``epsilon_ratio`` times its (fitted) maximum so that
    logarithms exist.
    """

    def __init__(self, directions=None, epsilon_ratio: float = EPSILON_RATIO):
        self.directions = directions
        self.epsilon_ratio = epsilon_ratio

    def _complement(self, X):
        X = check_array(X, dtype=np.float64)
        if np.any(X < 0):
            raise ValueError("raw indicator values must be >= 0")
        dirs = self.directions or ("benefit",) * X.shape[1]
        if len(dirs) != X.shape[1]:
            raise ValueError(f"{len(dirs)} directions for {X.shape[1]} columns")
        X = X.copy()
        for j, d in enumerate(dirs):
            if d == "cost":
                if np.any(X[:, j] > 100):
                    raise ValueError(f"column {j}: cost percentages must lie in [0, 100]")
                X[:, j] = 100.0 - X[:, j]
        return X

    def fit(self, X, y=None):
        Xc = self._complement(X)
        colmax = Xc.max(axis=0)
        # an all-zero column carries no ranking information; any constant will do
        self.floor_ = np.where(colmax > 0, self.epsilon_ratio * colmax, 1.0)
        self.n_features_in_ = Xc.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "floor_")
        return np.maximum(self._complement(X), self.floor_)


def _matrix(panel: IndicatorPanel, catalog, year: int) -> tuple[list[str], np.ndarray]:
    regions = panel.regions(year)
    if not regions:
        raise PanelError(f"no data for year {year}")
    X = np.array([[panel.get(r, year, spec.name) for spec in catalog] for r in regions])
    return regions, X


def transform_for_bod(panel: IndicatorPanel, catalog, year: int,
                      epsilon_ratio: float = EPSILON_RATIO) -> DmuSet:
    """Direction-adjusted, floored one-year matrix ready for the DEA layer."""
    regions, X = _matrix(panel, catalog, year)
    tr = DirectionTransformer(tuple(s.direction for s in catalog), epsilon_ratio)
    return DmuSet(year, tuple(regions), tr.fit_transform(X), tuple(s.name for s in catalog))


def _bod_series(name: str, panel, catalog, year, weight_floor) -> ScoreSeries:
    dmu_set = transform_for_bod(panel, catalog, year)
    return ScoreSeries(name, {(s.dmu_id, year): s.score for s in bod_scores(dmu_set, weight_floor)})


def compute_coverage_index(panel: IndicatorPanel, domain: str, year: int,
                           weight_floor: float = 0.0, catalog=None) -> ScoreSeries:
    """ICSO (``domain="hospital"``) or ICSD (``"district"``) for one year."""
    if domain not in ("hospital", "district"):
        raise ValueError(f"domain must be 'hospital' or 'district', got {domain!r}")
    name = "ICSO" if domain == "hospital" else "ICSD"
    return _bod_series(name, panel, catalog or CATALOGS[f"{domain}_coverage"], year, weight_floor)


def compute_iqso(panel: IndicatorPanel, year: int, catalog=HOSPITAL_QUALITY) -> ScoreSeries:
    """Arithmetic mean of the three hospital satisfaction percentages."""
    regions, X = _matrix(panel, catalog, year)
    bad = np.argwhere((X < 0) | (X > 100))
    if bad.size:
        i, j = bad[0]
        raise PanelError(f"{regions[i]} {year} {catalog[j].name}: {X[i, j]} is not a percentage")
    return ScoreSeries("IQSO", {(r, year): float(np.mean(row)) for r, row in zip(regions, X)})


def compute_iqsd(panel: IndicatorPanel, year: int, weight_floor: float = 0.0,
                 catalog=DISTRICT_QUALITY) -> ScoreSeries:
    return _bod_series("IQSD", panel, catalog, year, weight_floor)


def build_indices(panel: IndicatorPanel, weight_floor: float = 0.0) -> dict[str, ScoreSeries]:
    """All four indices for every year in the panel."""
    out: dict[str, ScoreSeries] = {}
    for year in panel.years():
        for name, series in (
            ("ICSO", compute_coverage_index(panel, "hospital", year, weight_floor)),
            ("IQSO", compute_iqso(panel, year)),
            ("ICSD", compute_coverage_index(panel, "district", year, weight_floor)),
            ("IQSD", compute_iqsd(panel, year, weight_floor)),
        ):
            out[name] = out[name].merge(series) if name in out else series
    return out
