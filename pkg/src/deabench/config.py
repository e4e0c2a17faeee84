"""Run configuration read from a flat ``key = value`` text file.

Recognised keys::

    rts                  = crs | vrs
    weight_floor         = 0.0
    split.hospital       = mean | median
    split.district       = mean | median
    shares.default       = 0.45, 0.50, 0.05
    shares.<year>        = h, d, p
    weights              = 0.926316, 1.073684
    weights.from_shares  = 0.44, 0.51
    composite.source     = tables | model
    precision.index      = 3
    precision.efficiency = 2
    out_dir              = deabench-out
    fixtures             = path/to/fixture/dir
    panel                = path/to/indicator_panel.csv

Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from .efficiency import DEFAULT_WEIGHTS, CompositeWeights, ConfigError, MacroShares


@dataclass(frozen=True)
class RunConfig:
    shares: MacroShares = field(default_factory=MacroShares)
    weights: CompositeWeights = DEFAULT_WEIGHTS
    rts: str = "CRS"
    weight_floor: float = 0.0
    split_hospital: str = "mean"
    split_district: str = "median"
    composite_source: str = "tables"
    index_precision: int = 3
    efficiency_precision: int = 2
    out_dir: Path = Path("deabench-out")
    fixtures: Path | None = None
    panel: Path | None = None

    def with_overrides(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


def _floats(text: str, n: int, key: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.replace(";", ",").split(","))
    except ValueError:
        raise ConfigError(f"{key}: expected {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n:
        raise ConfigError(f"{key}: expected {n} numbers, got {len(vals)}")
    return vals


def _choice(text: str, options, key: str) -> str:
    if text.lower() not in options:
        raise ConfigError(f"{key}: expected one of {sorted(options)}, got {text!r}")
    return text.lower()


def parse_config(text: str, base_dir: Path | None = None, source: str = "<config>") -> RunConfig:
    base_dir = base_dir or Path.cwd()
    kw: dict = {}
    by_year: dict[int, tuple[float, float, float]] = {}
    default_shares = MacroShares().default
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (p.strip() for p in line.split("=", 1))
        where = f"{source}:{lineno}: {key}"
        if key == "rts":
            kw["rts"] = _choice(value, {"crs", "vrs"}, where).upper()
        elif key == "weight_floor":
            kw["weight_floor"] = _floats(value, 1, where)[0]
        elif key in ("split.hospital", "split.district"):
            kw["split_" + key.split(".")[1]] = _choice(value, {"mean", "median"}, where)
        elif key == "shares.default":
            default_shares = _floats(value, 3, where)
        elif key.startswith("shares."):
            try:
                year = int(key.split(".", 1)[1])
            except ValueError:
                raise ConfigError(f"{where}: shares key needs a year") from None
            by_year[year] = _floats(value, 3, where)
        elif key == "weights":
            kw["weights"] = CompositeWeights(*_floats(value, 2, where))
        elif key == "weights.from_shares":
            kw["weights"] = CompositeWeights.from_shares(*_floats(value, 2, where))
        elif key == "composite.source":
            kw["composite_source"] = _choice(value, {"tables", "model"}, where)
        elif key in ("precision.index", "precision.efficiency"):
            try:
                kw[key.split(".")[1] + "_precision"] = int(value)
            except ValueError:
                raise ConfigError(f"{where}: expected an integer") from None
        elif key in ("out_dir", "fixtures", "panel"):
            p = Path(value)
            kw[key] = p if p.is_absolute() else base_dir / p
        else:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
    kw["shares"] = MacroShares(by_year, default_shares)
    cfg = RunConfig(**kw)
    if not 0 <= cfg.weight_floor < 1:
        raise ConfigError(f"weight_floor out of range: {cfg.weight_floor}")
    return cfg


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, path.parent, str(path))
