import re
import xml.etree.ElementTree as ET

import pytest

from deabench import report
from deabench.analysis import quadrants, yearly_stats
from deabench.io import read_table
from deabench.panels import ScoreSeries


def _series():
    return ScoreSeries("demo", {("Lazio", 2010): 0.5, ("Molise", 2010): 1.0, ("Abruzzo", 2010): 0.0,
                                ("Lazio", 2011): 1.0, ("Molise", 2011): 0.5, ("Abruzzo", 2011): -0.0001})


def test_fmt_has_no_negative_zero():
    assert report.fmt(-0.0001, 3) == "0.000"
    assert report.fmt(-0.5, 1) == "-0.5"


def test_csv_sorted_and_round_trips(tmp_path):
    text = report.series_csv(_series(), 3)
    assert text.splitlines()[0] == "region,2010,2011"
    assert [l.split(",")[0] for l in text.splitlines()[1:]] == ["Abruzzo", "Lazio", "Molise"]
    p = tmp_path / "demo.csv"
    p.write_text(text)
    back = read_table(p).series()
    for k, v in _series().values.items():
        assert back.values[k] == pytest.approx(round(v, 3), abs=1e-12)


def test_markdown_buckets():
    md = report.series_markdown(_series(), 3, "demo")
    assert "| Lazio | 0.500 [4] | 1.000 [8] |" in md
    assert "| Molise | 1.000 [8] | 0.500 [4] |" in md
    assert "| Abruzzo | 0.000 [0] | 0.000 [0] |" in md
    assert "Bucket" in md


def test_quadrant_svg_is_valid_xml_with_upper_right_high_high(bundle):
    a = quadrants(bundle["tab_2_1"].series(), bundle["tab_2_2"].series(), 2010, "mean")
    svg = report.quadrant_svg(a, "t", "ICSO", "IQSO")
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    circles = {c.get("data-region"): c for c in root.iter(ns + "circle")}
    assert len(circles) == 21
    vx = float(next(l for l in root.iter(ns + "line") if l.get("class") == "split-x").get("x1"))
    hy = float(next(l for l in root.iter(ns + "line") if l.get("class") == "split-y").get("y1"))
    lomb = circles["Lombardia"]
    # SVG y grows downward, so "upper" means smaller cy
    assert float(lomb.get("cx")) > vx and float(lomb.get("cy")) < hy
    labels = {t.text for t in root.iter(ns + "text")}
    assert "Valle d'Aosta" in labels


def test_line_chart(bundle):
    stats = {"ICSO": yearly_stats(bundle["tab_2_1"].series())}
    svg = report.line_chart_svg(stats, "means")
    root = ET.fromstring(svg)
    assert ">0.641<" in svg and ">0.604<" in svg
    poly = next(root.iter("{http://www.w3.org/2000/svg}polyline"))
    assert len(poly.get("points").split()) == 4


def test_heat_marks():
    assert [report.heat_mark(d) for d in (0.0, -0.02, 0.07, 0.15, -0.5)] == ["·", "░", "▒", "▓", "█"]


def test_emitters_are_pure(bundle):
    a = quadrants(bundle["tab_2_1"].series(), bundle["tab_2_2"].series(), 2010, "median")
    assert report.quadrant_svg(a, "t", "x", "y") == report.quadrant_svg(a, "t", "x", "y")
    assert not re.search(r"\d{4}-\d{2}-\d{2}T", report.quadrant_markdown(a, 3, "t"))
