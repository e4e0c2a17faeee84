import csv

import numpy as np
import pytest

from deabench.analysis import (SPEND_GROUPS, RegionGroup, classify, color_bucket, cross_domain_quadrants,
                               group_spend_sums, mobility_association, quadrants, split_point, yearly_stats)
from deabench.io import fixture_dir
from deabench.panels import PanelError, ScoreSeries, Table


def _raw_column(name, year):
    """Values read straight from the fixture CSV, bypassing the package loaders."""
    with open(fixture_dir() / f"{name}.csv", newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    k = rows[0].index(str(year))
    return {r[0]: float(r[k]) for r in rows[1:]}


@pytest.mark.parametrize("year,expected", [(2010, "0.641"), (2013, "0.604")])
def test_icso_yearly_mean(bundle, year, expected):
    stats = {s.year: s for s in yearly_stats(bundle["tab_2_1"].series())}
    raw = _raw_column("tab_2_1", year)
    assert len(raw) == 21
    assert stats[year].mean == pytest.approx(sum(raw.values()) / 21, abs=1e-12)
    assert f"{stats[year].mean:.3f}" == expected
    assert stats[year].n == 21


def test_population_sd_and_constant_series():
    s = ScoreSeries("x", {("Lazio", 2010): 1.0, ("Molise", 2010): 3.0})
    assert yearly_stats(s)[0].std_dev == pytest.approx(1.0)  # divisor n, not n - 1
    c = ScoreSeries("c", {(r, 2010): 0.5 for r in ("Lazio", "Molise", "Puglia")})
    assert yearly_stats(c)[0].std_dev == 0.0


def test_stats_need_two_regions():
    with pytest.raises(PanelError):
        yearly_stats(ScoreSeries("x", {("Lazio", 2010): 1.0}))


def test_split_points():
    assert split_point([1, 2, 3, 10], "mean") == 4.0
    assert split_point([1, 2, 3, 10], "median") == 2.5
    assert split_point([5, 1, 3], "median") == 3.0
    with pytest.raises(ValueError):
        split_point([1.0], "mode")


def test_tie_counts_as_high():
    assert classify(0.5, 40.0, 0.5, 40.0) == "high_cov_high_qual"


def test_hospital_2010_quadrants(bundle):
    a = {q.region: q for q in quadrants(bundle["tab_2_1"].series(), bundle["tab_2_2"].series(), 2010, "mean")}
    lomb = a["Lombardia"]
    assert (lomb.x, lomb.y) == (0.798, 45.363)
    assert lomb.split_point_x == pytest.approx(sum(_raw_column("tab_2_1", 2010).values()) / 21)
    assert round(lomb.split_point_y, 2) == 39.29
    assert lomb.quadrant == "high_cov_high_qual"
    assert (a["Molise"].x, a["Molise"].y) == (1.0, 31.437)
    assert a["Molise"].quadrant == "high_cov_low_qual"
    assert len(a) == 21


def test_cross_domain_quadrants(bundle):
    a = {q.region: q for q in cross_domain_quadrants(bundle["tab_2_1"].series(), bundle["tab_3_1"].series())}
    er = a["Emilia-Romagna"]
    assert er.x == pytest.approx(np.mean([1.000, 1.000, 0.925, 0.828]))
    assert er.y == pytest.approx(np.mean([0.931, 0.973, 1.000, 0.847]))
    assert er.quadrant == "high_cov_high_qual"
    camp = a["Campania"]
    assert camp.quadrant == "low_cov_low_qual"
    low_low = [q for q in a.values() if q.quadrant == "low_cov_low_qual"]
    assert max(low_low, key=lambda q: q.split_point_y - q.y).region == "Campania"


def test_identical_series_sit_on_diagonal(bundle):
    s = bundle["tab_2_1"].series()
    for q in cross_domain_quadrants(s, s):
        assert q.x == q.y
        assert q.quadrant in ("high_cov_high_qual", "low_cov_low_qual")


def test_quadrants_region_mismatch():
    a = ScoreSeries("a", {("Lazio", 2010): 1.0, ("Molise", 2010): 2.0})
    b = ScoreSeries("b", {("Lazio", 2010): 1.0, ("Puglia", 2010): 2.0})
    with pytest.raises(PanelError):
        quadrants(a, b, 2010)


@pytest.mark.parametrize("value,lo,hi,expected", [(0.5, 0, 1, 4), (1, 0, 1, 8), (0.251, 0.251, 1.0, 0),
                                                  (0.0, 0, 1, 0), (0.3, 0.3, 0.3, 4)])
def test_color_bucket(value, lo, hi, expected):
    assert color_bucket(value, lo, hi, 9) == expected


def test_color_bucket_bad_bounds():
    with pytest.raises(ValueError):
        color_bucket(0.5, 1.0, 0.0)


def test_group_sums_2008(bundle):
    sums = group_spend_sums(bundle["tab_1_1"])
    assert sums[("statuto_speciale", 2008)] == 260_879 + 1_108_183 + 995_402 + 2_316_504 + 2_944_030 == 7_624_998
    assert sums[("commissariate", 2008)] == 27_482_491
    assert sums[("piano_di_rientro", 2008)] == 8_168_765 + 7_131_501 + 8_341_115 == 23_641_381


def test_group_sums_all_years_match_printed_rows(bundle):
    t = bundle["tab_1_1"]
    sums = group_spend_sums(t)
    for g in SPEND_GROUPS:
        raw = {y: _raw_column("tab_1_1", y)[g.label] for y in t.years}
        assert all(sums[(g.group_name, y)] == raw[y] for y in t.years)


def test_group_with_unknown_member():
    with pytest.raises(ValueError):
        RegionGroup("x", ("Atlantide",))


def test_group_missing_member_in_table():
    t = Table("t", (2010,), {"Lazio": (1.0,)})
    with pytest.raises(PanelError):
        group_spend_sums(t, (RegionGroup("g", ("Lazio", "Molise")),))


def _mobility(values):
    regions = ("Abruzzo", "Basilicata", "Calabria", "Campania", "Lazio")
    return regions, Table("m", (2010,), {r: (v,) for r, v in zip(regions, values)})


def test_mobility_rank_identity_and_reversal():
    regions, table = _mobility([-5.0, 1.0, 3.0, 10.0, 20.0])
    up = ScoreSeries("i", {(r, 2010): float(k) for k, r in enumerate(regions)})
    down = ScoreSeries("i", {(r, 2010): float(-k) for k, r in enumerate(regions)})
    assert mobility_association(up, table, 2010) == pytest.approx(1.0)
    assert mobility_association(down, table, 2010) == pytest.approx(-1.0)


def test_mobility_ties_mid_ranked():
    regions, table = _mobility([1.0, 2.0, 3.0, 4.0, 5.0])
    s = ScoreSeries("i", {(r, 2010): v for r, v in zip(regions, [1.0, 1.0, 2.0, 3.0, 4.0])})
    # ranks (1.5, 1.5, 3, 4, 5) vs (1..5): Pearson on ranks
    x = np.array([1.5, 1.5, 3, 4, 5])
    y = np.arange(1, 6)
    assert mobility_association(s, table, 2010) == pytest.approx(np.corrcoef(x, y)[0, 1])


def test_icso_vs_mobility_positive(bundle):
    assert mobility_association(bundle["tab_2_1"].series(), bundle["tab_2_3"], 2010) > 0


def test_mobility_needs_overlap():
    _, table = _mobility([1.0] * 5)
    with pytest.raises(PanelError):
        mobility_association(ScoreSeries("i", {("Molise", 2010): 1.0}), table, 2010)
