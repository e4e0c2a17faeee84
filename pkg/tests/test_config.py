import pytest

from deabench.config import RunConfig, load_config, parse_config
from deabench.efficiency import ConfigError


def test_defaults():
    c = RunConfig()
    assert c.rts == "CRS"
    assert (c.index_precision, c.efficiency_precision) == (3, 2)
    assert c.shares.shares(2013) == (0.45, 0.50, 0.05)
    assert round(c.weights.hospital_weight, 6) == 0.926316


def test_parse_all_keys(tmp_path):
    text = """
    # comment line
    rts = vrs
    weight_floor = 0.05   # trailing comment
    split.hospital = median
    split.district = mean
    shares.default = 0.4, 0.55, 0.05
    shares.2011 = 0.5, 0.5, 0
    weights.from_shares = 0.5, 0.5
    composite.source = model
    precision.index = 4
    precision.efficiency = 3
    out_dir = results
    """
    c = parse_config(text, tmp_path)
    assert c.rts == "VRS"
    assert c.weight_floor == 0.05
    assert (c.split_hospital, c.split_district) == ("median", "mean")
    assert c.shares.shares(2010) == (0.4, 0.55, 0.05)
    assert c.shares.multipliers(2011) == (0.5, 0.5)
    assert (c.weights.hospital_weight, c.weights.district_weight) == (1.0, 1.0)
    assert c.composite_source == "model"
    assert (c.index_precision, c.efficiency_precision) == (4, 3)
    assert c.out_dir == tmp_path / "results"


@pytest.mark.parametrize("text", ["rts = nirs", "bogus = 1", "no equals sign", "shares.2011 = 0.5, 0.6, 0",
                                  "weights = 1.0, 1.5", "shares.x = 0.45, 0.5, 0.05", "precision.index = two",
                                  "weight_floor = 1.5", "shares.default = 0.5, 0.5"])
def test_invalid(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_error_names_line(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("rts = crs\n\nsplit.hospital = mode\n")
    with pytest.raises(ConfigError, match=r"run\.cfg:3"):
        load_config(p)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.cfg")


def test_overrides_skip_none():
    c = RunConfig().with_overrides(rts=None, index_precision=5)
    assert c.rts == "CRS" and c.index_precision == 5
