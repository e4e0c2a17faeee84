"""Reproduction checks against the bundled printed tables.

Each ``criterion_*`` returns a :class:`CriterionResult`; hard criteria gate
the exit status of ``deabench reproduce``, soft ones are reported only.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import spearmanr

from .analysis import SPEND_GROUPS, group_spend_sums, quadrants, yearly_stats
from .efficiency import DEFAULT_WEIGHTS, CompositeWeights, MacroShares, composite_efficiency, efficiency_table, split_costs
from .io import DatasetBundle
from .properties import run_property_suite

CELL_TOL = 0.005
# tiny slack for binary representation of two-decimal printed values
FLOAT_SLACK = 1e-9

NARRATED_MEANS = {
    "ICSO": {2010: 0.64, 2011: 0.68, 2013: 0.60},
    "ICSD": {2010: 0.66, 2013: 0.73},
    "IQSD": {2010: 0.71, 2013: 0.64},
}
IQSO_MEAN_BAND = (38.0, 40.0)
ICSO_SD_BAND = (0.235, 0.265)
IQSO_SD_BAND = (11.5, 15.5)
NARRATED_SD = {"ICSD": {2010: 0.27, 2013: 0.30}, "IQSD": {2010: 0.22, 2013: 0.19}}
SD_TOL = 0.015

GROUP_ROWS = {g.group_name: g.label for g in SPEND_GROUPS}

HIGH_HIGH_2010 = ("Trentino", "Alto Adige", "Valle d'Aosta", "Friuli-Venezia Giulia",
                  "Liguria", "Piemonte", "Lombardia", "Emilia-Romagna")

RHO_MIN = 0.9
MAD_MAX = 0.05

INDEX_TABLES = {"ICSO": "tab_2_1", "IQSO": "tab_2_2", "ICSD": "tab_3_1", "IQSD": "tab_3_2"}


@dataclass
class CriterionResult:
    number: int
    title: str
    hard: bool
    passed: bool
    lines: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def summary(self) -> str:
        kind = "hard" if self.hard else "soft"
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number} ({kind}): {self.title}"


def _cell_check(number, title, derived, printed, label) -> CriterionResult:
    failures, worst = [], 0.0
    for (region, year) in sorted(printed.keys()):
        d, p = derived.get(region, year), printed.get(region, year)
        dev = abs(d - p)
        worst = max(worst, dev)
        if dev > CELL_TOL + FLOAT_SLACK:
            failures.append(f"{region} {year}: {label} {d:.4f} vs printed {p:.2f} (|dev| {dev:.4f})")
    lines = [f"{len(printed.keys()) - len(failures)}/{len(printed.keys())} cells within ±{CELL_TOL}",
             f"largest deviation {worst:.4f}"]
    return CriterionResult(number, title, True, not failures, lines, failures)


def criterion_1(bundle: DatasetBundle) -> CriterionResult:
    h, d = bundle["tab_4_3"].series(), bundle["tab_4_4"].series()
    return _cell_check(1, "simple composite of Tab 4.3 + Tab 4.4 reproduces Tab 4.5",
                       composite_efficiency(h, d, "simple"), bundle["tab_4_5"].series(), "sum")


def criterion_2(bundle: DatasetBundle, weights: CompositeWeights = DEFAULT_WEIGHTS) -> CriterionResult:
    h, d = bundle["tab_4_3"].series(), bundle["tab_4_4"].series()
    res = _cell_check(2, f"weighted composite ({weights.hospital_weight:.6f}, {weights.district_weight:.6f}) "
                         "reproduces Tab 4.6",
                      composite_efficiency(h, d, weights), bundle["tab_4_6"].series(), "weighted sum")
    return res


def index_stats(bundle: DatasetBundle) -> dict[str, dict[int, tuple[float, float]]]:
    return {name: {s.year: (s.mean, s.std_dev) for s in yearly_stats(bundle[tab].series(name))}
            for name, tab in INDEX_TABLES.items()}


def criterion_3(bundle: DatasetBundle) -> CriterionResult:
    stats = index_stats(bundle)
    lines, failures = [], []
    for name, targets in NARRATED_MEANS.items():
        for year, target in targets.items():
            mean = stats[name][year][0]
            ok = abs(mean - target) <= CELL_TOL + FLOAT_SLACK
            lines.append(f"{name} {year}: mean {mean:.4f} vs narrated {target:.2f} -> {'ok' if ok else 'off'}")
            if not ok:
                failures.append(f"{name} {year}: mean {mean:.4f} not within ±{CELL_TOL} of {target:.2f}")
    lo, hi = IQSO_MEAN_BAND
    for year, (mean, _) in sorted(stats["IQSO"].items()):
        ok = lo <= mean <= hi
        lines.append(f"IQSO {year}: mean {mean:.4f} vs band [{lo:g}, {hi:g}] -> {'ok' if ok else 'off'}")
        if not ok:
            failures.append(f"IQSO {year}: mean {mean:.4f} outside [{lo:g}, {hi:g}]")
    return CriterionResult(3, "yearly means match the narrated series", True, not failures, lines, failures)


def criterion_4(bundle: DatasetBundle) -> CriterionResult:
    stats = index_stats(bundle)
    lines, failures = [], []

    def band(name, year, sd, lo, hi):
        ok = lo - FLOAT_SLACK <= sd <= hi + FLOAT_SLACK
        lines.append(f"{name} {year}: sd {sd:.4f} vs [{lo:.3f}, {hi:.3f}] -> {'ok' if ok else 'off'}")
        if not ok:
            failures.append(f"{name} {year}: population sd {sd:.4f} outside [{lo:.3f}, {hi:.3f}]")

    for year, (_, sd) in sorted(stats["ICSO"].items()):
        band("ICSO", year, sd, *ICSO_SD_BAND)
    for year, (_, sd) in sorted(stats["IQSO"].items()):
        band("IQSO", year, sd, *IQSO_SD_BAND)
    for name, targets in NARRATED_SD.items():
        for year, target in targets.items():
            band(name, year, stats[name][year][1], target - SD_TOL, target + SD_TOL)
    return CriterionResult(4, "dispersion within the narrated bands", True, not failures, lines, failures)


def criterion_5(bundle: DatasetBundle) -> CriterionResult:
    table = bundle["tab_1_1"]
    sums = group_spend_sums(table)
    lines, failures = [], []
    for group, label in GROUP_ROWS.items():
        bad = [y for y in table.years if sums[(group, y)] != int(round(table.value(label, y)))]
        lines.append(f"{label}: {len(table.years) - len(bad)}/{len(table.years)} years exact")
        failures.extend(f"{label} {y}: sum {sums[(group, y)]} vs printed {int(table.value(label, y))}" for y in bad)
    return CriterionResult(5, "Tab 1.1 group rows reproduced exactly", True, not failures, lines, failures)


DEA_TARGETS = {
    "hospital": ("tab_2_1", "tab_2_2", "tab_4_3"),
    "district": ("tab_3_1", "tab_3_2", "tab_4_4"),
}


def dea_reconstruction(bundle: DatasetBundle, shares: MacroShares | None = None) -> dict:
    """Derived efficiency tables and their per-column agreement with the printed ones."""
    costs = split_costs(bundle.spend_panel(), shares or MacroShares())
    out = {}
    for domain, (cov, qual, target) in DEA_TARGETS.items():
        printed = bundle[target].series()
        for mode in ("CRS", "VRS"):
            derived = efficiency_table(domain, costs, bundle[cov].series(), bundle[qual].series(), mode)
            per_year = {}
            for year in printed.years():
                p, d = printed.year(year), derived.year(year)
                regions = sorted(p)
                pv = np.array([p[r] for r in regions])
                dv = np.array([d[r] for r in regions])
                per_year[year] = (float(spearmanr(dv, pv).statistic), float(np.mean(np.abs(dv - pv))))
            pooled = float(np.mean([abs(derived.values[k] - printed.values[k]) for k in printed.values]))
            out[(domain, mode)] = {"derived": derived, "printed": printed, "per_year": per_year, "mad": pooled}
    return out


def criterion_6(bundle: DatasetBundle, shares: MacroShares | None = None,
                mode: str | None = None) -> CriterionResult:
    """``mode`` forces CRS or VRS instead of picking the better-matching one."""
    recon = dea_reconstruction(bundle, shares)
    lines, failures, best_modes = [], [], {}
    for domain in DEA_TARGETS:
        for m in ("CRS", "VRS"):
            r = recon[(domain, m)]
            cols = ", ".join(f"{y}: rho {rho:.3f} MAD {mad:.3f}" for y, (rho, mad) in sorted(r["per_year"].items()))
            lines.append(f"{domain} {m}: pooled MAD {r['mad']:.4f} | {cols}")
        best = mode or min(("CRS", "VRS"), key=lambda m: recon[(domain, m)]["mad"])
        best_modes[domain] = best
        r = recon[(domain, best)]
        low_rho = [y for y, (rho, _) in r["per_year"].items() if rho < RHO_MIN]
        lines.append(f"{domain}: {'forced' if mode else 'better-matching'} mode {best}")
        if low_rho:
            failures.append(f"{domain} {best}: Spearman rho below {RHO_MIN} in {low_rho}")
        if r["mad"] > MAD_MAX:
            failures.append(f"{domain} {best}: pooled MAD {r['mad']:.4f} > {MAD_MAX}")
    res = CriterionResult(6, "DEA tables reconstructed from index and spend tables", False, not failures,
                          lines, failures)
    res.extra = {"reconstruction": recon, "best_modes": best_modes}
    return res


def criterion_7(bundle: DatasetBundle) -> CriterionResult:
    assign = {a.region: a for a in quadrants(bundle["tab_2_1"].series(), bundle["tab_2_2"].series(), 2010, "mean")}
    any_a = next(iter(assign.values()))
    lines = [f"mean split: ICSO {any_a.split_point_x:.4f}, IQSO {any_a.split_point_y:.4f}"]
    failures = []
    for region in HIGH_HIGH_2010:
        a = assign[region]
        lines.append(f"{region}: ({a.x:.3f}, {a.y:.3f}) -> {a.quadrant}")
        if a.quadrant != "high_cov_high_qual":
            failures.append(f"{region}: expected high_cov_high_qual, got {a.quadrant} "
                            f"(ICSO {a.x:.3f} vs {a.split_point_x:.4f}, IQSO {a.y:.3f} vs {a.split_point_y:.4f})")
    m = assign["Molise"]
    lines.append(f"Molise: ({m.x:.3f}, {m.y:.3f}) -> {m.quadrant}")
    if m.quadrant != "high_cov_low_qual":
        failures.append(f"Molise: expected high_cov_low_qual, got {m.quadrant}")
    return CriterionResult(7, "2010 hospital mean-split quadrants match the narrative", True, not failures,
                           lines, failures)


def criterion_8(seed: int = 0) -> CriterionResult:
    outcomes = run_property_suite(seed)
    lines = [f"{o.name}: {o.checked} instances, worst {o.worst:.3g} -> {'ok' if o.passed else 'FAIL'}"
             for o in outcomes]
    failures = [f"{o.name}: {f}" for o in outcomes for f in o.failures]
    return CriterionResult(8, "model property suite", True, not failures, lines, failures)


def run_all(bundle: DatasetBundle, shares: MacroShares | None = None,
            weights: CompositeWeights = DEFAULT_WEIGHTS, seed: int = 0,
            mode: str | None = None) -> list[CriterionResult]:
    return [
        criterion_1(bundle),
        criterion_2(bundle, weights),
        criterion_3(bundle),
        criterion_4(bundle),
        criterion_5(bundle),
        criterion_6(bundle, shares, mode),
        criterion_7(bundle),
        criterion_8(seed),
    ]


def hard_pass(results: list[CriterionResult]) -> bool:
    return all(r.passed for r in results if r.hard)
