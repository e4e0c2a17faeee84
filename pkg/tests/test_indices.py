import numpy as np
import pytest

from deabench.indices import (DISTRICT_COVERAGE, DISTRICT_QUALITY, HOSPITAL_COVERAGE, HOSPITAL_QUALITY, DirectionTransformer,
                              build_indices, compute_coverage_index, compute_iqsd, compute_iqso,
                              transform_for_bod)
from deabench.oracles import bod_grid_oracle
from deabench.panels import IndicatorPanel, MissingDataError, PanelError

REGIONS5 = ("Abruzzo", "Basilicata", "Calabria", "Campania", "Lazio")


def _panel(catalog, values, year=2010, regions=REGIONS5):
    rows = [(r, year, spec.name, v) for r, row in zip(regions, values) for spec, v in zip(catalog, row)]
    return IndicatorPanel.from_rows(rows)


# ---- direction transform

def test_benefit_value_unchanged():
    assert DirectionTransformer(("benefit",)).fit_transform([[12.5], [20.0]])[0, 0] == 12.5


def test_cost_percentage_complemented():
    assert DirectionTransformer(("cost",)).fit_transform([[30.0], [10.0]])[0, 0] == pytest.approx(70.0)


def test_full_cost_percentage_floored_not_zero():
    out = DirectionTransformer(("cost",)).fit_transform([[100.0], [10.0]])
    assert out[0, 0] == pytest.approx(1e-6 * 90.0)
    assert out[0, 0] > 0


def test_direction_transformer_rejects_bad_input():
    with pytest.raises(ValueError):
        DirectionTransformer(("cost",)).fit([[120.0]])
    with pytest.raises(ValueError):
        DirectionTransformer(("benefit",)).fit([[-1.0]])
    with pytest.raises(ValueError):
        DirectionTransformer(("benefit", "cost")).fit([[1.0]])


def test_transform_for_bod_orders_regions_and_indicators():
    vals = np.arange(1, 16, dtype=float).reshape(5, 3) * 3
    d = transform_for_bod(_panel(DISTRICT_QUALITY, vals), DISTRICT_QUALITY, 2010)
    assert d.dmu_ids == REGIONS5
    assert d.indicators == tuple(s.name for s in DISTRICT_QUALITY)
    assert d.values[0, 1] == pytest.approx(100 - 6)


# ---- coverage and district quality (BoD)

def test_column_max_everywhere_scores_one():
    catalog = HOSPITAL_COVERAGE[:3]
    vals = [[9.0, 9.0, 9.0], [1.0, 5.0, 2.0], [4.0, 2.0, 8.0]]
    s = compute_coverage_index(_panel(catalog, vals, regions=REGIONS5[:3]), "hospital", 2010, catalog=catalog)
    assert s.name == "ICSO"
    assert s.get("Abruzzo", 2010) == pytest.approx(1.0)


def test_coverage_against_grid_oracle():
    rng = np.random.default_rng(11)
    catalog = HOSPITAL_COVERAGE[:3]
    vals = rng.uniform(1, 50, (5, 3))
    s = compute_coverage_index(_panel(catalog, vals), "hospital", 2010, catalog=catalog)
    for i, r in enumerate(REGIONS5):
        g = bod_grid_oracle(vals, i, 0.002)
        assert -1e-9 <= s.get(r, 2010) - g <= 5e-3


def test_iqsd_against_grid_oracle_on_transformed_values():
    rng = np.random.default_rng(12)
    vals = np.column_stack([rng.uniform(1, 5, 5), rng.uniform(0, 60, 5), rng.uniform(0, 60, 5)])
    s = compute_iqsd(_panel(DISTRICT_QUALITY, vals), 2010)
    # the oracle works on the complemented cost columns directly
    t = vals.copy()
    t[:, 1:] = 100 - t[:, 1:]
    for i, r in enumerate(REGIONS5):
        g = bod_grid_oracle(t, i, 0.002)
        assert -1e-9 <= s.get(r, 2010) - g <= 5e-3
        assert 0 < s.get(r, 2010) <= 1


def test_region_best_on_all_quality_indicators_scores_one():
    vals = [[5.0, 10.0, 10.0], [2.0, 40.0, 30.0], [3.0, 20.0, 50.0]]
    s = compute_iqsd(_panel(DISTRICT_QUALITY, vals, regions=REGIONS5[:3]), 2010)
    assert s.get("Abruzzo", 2010) == pytest.approx(1.0)


def test_bad_domain():
    with pytest.raises(ValueError):
        compute_coverage_index(IndicatorPanel(), "prevention", 2010)


def test_missing_indicator_is_reported():
    catalog = HOSPITAL_COVERAGE[:3]
    p = _panel(catalog[:2], [[1.0, 2.0]] * 5)
    with pytest.raises(MissingDataError, match="physicians_dentists"):
        compute_coverage_index(p, "hospital", 2010, catalog=catalog)


# ---- hospital quality (plain mean)

@pytest.mark.parametrize("triple,expected", [((30, 30, 30), 30.0), ((0, 0, 0), 0.0),
                                             ((50.0, 56.33, 62.66), 56.33)])
def test_iqso_mean(triple, expected):
    p = _panel(HOSPITAL_QUALITY, [triple], regions=("Alto Adige",))
    v = compute_iqso(p, 2010).get("Alto Adige", 2010)
    assert v == pytest.approx(expected)
    assert f"{v:.3f}" == f"{expected:.3f}"


def test_iqso_rejects_non_percentages():
    p = _panel(HOSPITAL_QUALITY, [(30, 130, 30)], regions=("Lazio",))
    with pytest.raises(PanelError):
        compute_iqso(p, 2010)


def test_build_indices_two_years():
    rng = np.random.default_rng(5)
    rows = []
    for year in (2010, 2011):
        for r in REGIONS5:
            for cat in (HOSPITAL_COVERAGE, HOSPITAL_QUALITY, DISTRICT_QUALITY):
                rows += [(r, year, s.name, float(rng.uniform(1, 60))) for s in cat]
            rows += [(r, year, s.name, float(rng.uniform(1, 60))) for s in DISTRICT_COVERAGE]
    out = build_indices(IndicatorPanel.from_rows(rows))
    assert set(out) == {"ICSO", "IQSO", "ICSD", "IQSD"}
    for name in ("ICSO", "ICSD", "IQSD"):
        for year in (2010, 2011):
            col = out[name].year(year)
            assert max(col.values()) == pytest.approx(1.0)  # frontier is never empty


# ---- printed index tables obey the same contracts

def test_printed_icso_has_frontier_each_year(bundle):
    s = bundle["tab_2_1"].series()
    for year in s.years():
        assert max(s.year(year).values()) == 1.0
    assert s.get("Alto Adige", 2010) == 1.0
    assert s.get("Calabria", 2011) == 1.0
    assert s.get("Valle d'Aosta", 2012) == s.get("Valle d'Aosta", 2013) == 1.0


def test_printed_iqsd_in_unit_interval(bundle):
    s = bundle["tab_3_2"].series()
    assert all(0 < v <= 1 for v in s.values.values())
    assert s.get("Basilicata", 2010) == 1.0
    assert s.get("Trentino", 2012) == 0.236


def test_printed_iqso_entry(bundle):
    assert f"{bundle['tab_2_2'].series().get('Alto Adige', 2010):.3f}" == "56.330"
