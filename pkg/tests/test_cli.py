import shutil

import pytest

from deabench.cli import main
from deabench.io import fixture_dir, read_table


def run(args, out):
    return main([*args, "--out", str(out)])


def test_composite_simple_abruzzo(tmp_path):
    assert run(["composite"], tmp_path) == 0
    line = next(l for l in (tmp_path / "composite_simple.csv").read_text().splitlines() if l.startswith("Abruzzo"))
    assert line.split(",")[1] == "1.48"
    assert "| Abruzzo | 1.48 [" in (tmp_path / "composite_simple.md").read_text()


def test_quadrants_hospital_2010(tmp_path):
    assert run(["quadrants", "--domain", "hospital", "--year", "2010", "--split", "mean"], tmp_path) == 0
    svg = (tmp_path / "quadrants_hospital_2010_mean.svg").read_text()
    assert 'data-region="Lombardia" data-quadrant="high_cov_high_qual"' in svg


def test_quadrants_cross_domain(tmp_path):
    assert run(["quadrants", "--kind", "coverage"], tmp_path) == 0
    md = (tmp_path / "quadrants_cross_coverage_mean.md").read_text()
    assert "Emilia-Romagna" in md.split("high coverage, high quality:")[1].splitlines()[0]


def test_stats_icso(tmp_path):
    assert run(["stats", "--domain", "hospital", "--kind", "coverage"], tmp_path) == 0
    lines = (tmp_path / "stats_ICSO.csv").read_text().splitlines()
    means = [l.split(",")[2] for l in lines[1:]]
    assert means[0] == "0.641" and means[-1] == "0.604"
    assert round(float(means[1]), 2) == 0.68
    assert (tmp_path / "stats_ICSO.svg").exists()


def test_indices_and_efficiency(tmp_path):
    assert run(["indices", "--domain", "district"], tmp_path) == 0
    assert {p.name for p in tmp_path.iterdir()} >= {"indices_ICSD.csv", "indices_IQSD.csv"}
    assert run(["efficiency", "--domain", "hospital", "--rts", "vrs", "--year", "2010"], tmp_path) == 0
    t = read_table(tmp_path / "efficiency_hospital_vrs.csv")
    assert t.years == (2010,)
    assert len(t.regional()) == 21


def test_csv_round_trip_at_declared_precision(tmp_path, bundle):
    assert run(["indices"], tmp_path) == 0
    for name, tab in (("ICSO", "tab_2_1"), ("IQSO", "tab_2_2"), ("ICSD", "tab_3_1"), ("IQSD", "tab_3_2")):
        back = read_table(tmp_path / f"indices_{name}.csv").series()
        assert back.values == bundle[tab].series().values


def test_byte_identical_reruns(tmp_path):
    for sub in ("a", "b"):
        for args in (["indices"], ["efficiency"], ["composite"], ["stats"],
                     ["quadrants", "--domain", "district"], ["quadrants", "--kind", "quality"]):
            assert run(args, tmp_path / sub) == 0
        run(["reproduce"], tmp_path / sub)
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    for n in names:
        a, b = (tmp_path / "a" / n).read_bytes(), (tmp_path / "b" / n).read_bytes()
        if n == "reproduce.md":
            # only the header line may carry a timestamp
            a, b = a.split(b"\n", 1)[1], b.split(b"\n", 1)[1]
        assert a == b, n


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("precision.efficiency = 3\nweights = 1.0, 1.0\n")
    assert main(["composite", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    simple = (tmp_path / "composite_simple.csv").read_text()
    assert simple == (tmp_path / "composite_weighted.csv").read_text()
    assert "Abruzzo,1.480," in simple


def test_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 1
    assert run(["quadrants"], tmp_path) == 1
    bad = tmp_path / "bad.cfg"
    bad.write_text("rts = nirs\n")
    assert main(["stats", "--config", str(bad)]) == 3
    assert run(["efficiency", "--year", "1999"], tmp_path) == 2


def _corrupt_copy(tmp_path, table, old, new):
    d = tmp_path / "fx"
    shutil.copytree(fixture_dir(), d)
    p = d / f"{table}.csv"
    text = p.read_text()
    assert old in text
    p.write_text(text.replace(old, new, 1))
    return d


def test_data_error_exit(tmp_path, monkeypatch):
    monkeypatch.setenv("DEABENCH_FIXTURES", str(_corrupt_copy(tmp_path, "tab_4_5", "Abruzzo,1.48", "Abruzzo,x")))
    assert run(["stats"], tmp_path / "out") == 2


def test_reproduce_fault_injection(tmp_path, monkeypatch):
    monkeypatch.setenv("DEABENCH_FIXTURES", str(_corrupt_copy(tmp_path, "tab_4_5", "Abruzzo,1.48", "Abruzzo,1.68")))
    assert run(["reproduce"], tmp_path / "out") == 5
    text = (tmp_path / "out" / "reproduce.md").read_text()
    assert "Abruzzo 2010: sum 1.4800 vs printed 1.68" in text


def test_reproduce_forced_vrs(tmp_path):
    code = run(["reproduce", "--rts", "vrs"], tmp_path)
    assert code in (0, 5)
    text = (tmp_path / "reproduce.md").read_text()
    assert "Selected for hospital: forced mode VRS" in text
    assert "Tab 4.3 (hospital) under VRS" in text
    assert "█" in text.split("Tab 4.3 (hospital) under VRS")[1].split("####")[0]


def test_reproduce_report_sections(tmp_path):
    run(["reproduce"], tmp_path)
    text = (tmp_path / "reproduce.md").read_text()
    for mode in ("CRS", "VRS"):
        assert f"Tab 4.3 (hospital) under {mode}" in text
        assert f"Tab 4.4 (district) under {mode}" in text
    assert "Selected for hospital: better-matching mode CRS" in text
    assert text.count("] criterion ") >= 16


def test_reproduce_clean_checkout_exits_zero(tmp_path):
    assert run(["reproduce"], tmp_path) == 0
