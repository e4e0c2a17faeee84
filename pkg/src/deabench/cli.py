"""``deabench`` command line.

Exit codes: 0 ok, 1 usage, 2 data, 3 config, 4 internal, 5 reproduce failure.
"""
from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import report
from .acceptance import INDEX_TABLES, hard_pass, run_all
from .analysis import cross_domain_quadrants, quadrants, yearly_stats
from .config import RunConfig, load_config
from .dea import DeaInternalError
from .efficiency import ConfigError, composite_efficiency, efficiency_table, split_costs
from .indices import build_indices
from .io import DataError, DatasetBundle, atomic_write, load_bundle
from .panels import MissingDataError, PanelError, ScoreSeries
from .regions import UnknownRegionError
from .validation import ContractViolation

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CONFIG, EXIT_INTERNAL, EXIT_REPRODUCE = 0, 1, 2, 3, 4, 5
COMMANDS = ("indices", "efficiency", "composite", "quadrants", "stats", "reproduce")

INDEX_NAMES = {("hospital", "coverage"): "ICSO", ("hospital", "quality"): "IQSO",
               ("district", "coverage"): "ICSD", ("district", "quality"): "IQSD"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="deabench", description="DEA benchmarking of regional health services.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--domain", choices=("hospital", "district"))
    p.add_argument("--kind", choices=("coverage", "quality"))
    p.add_argument("--rts", choices=("crs", "vrs"))
    p.add_argument("--split", choices=("mean", "median"))
    p.add_argument("--year", type=int)
    p.add_argument("--config", type=Path)
    p.add_argument("--out", type=Path)
    return p


def _bundle(config: RunConfig) -> DatasetBundle:
    return load_bundle(config.fixtures, config.panel)


def index_series(config: RunConfig, bundle: DatasetBundle) -> dict[str, ScoreSeries]:
    """Indices computed from the indicator panel when one is configured, else the printed tables."""
    if bundle.panel is not None:
        return build_indices(bundle.panel, config.weight_floor)
    return {name: bundle[tab].series(name) for name, tab in INDEX_TABLES.items()}


def _select(pairs, domain, kind) -> list[str]:
    return [INDEX_NAMES[(d, k)] for d, k in pairs
            if (domain is None or d == domain) and (kind is None or k == kind)]


def _only_year(series: ScoreSeries, year: int | None) -> ScoreSeries:
    if year is None:
        return series
    if year not in series.years():
        raise DataError(f"{series.name}: no data for {year} (have {series.years()})")
    return ScoreSeries(series.name, {k: v for k, v in series.values.items() if k[1] == year})


def _write(out_dir: Path, files: dict[str, str]) -> list[Path]:
    return [atomic_write(out_dir / name, text) for name, text in sorted(files.items())]


def cmd_indices(config: RunConfig, domain=None, kind=None, year=None) -> list[Path]:
    bundle = _bundle(config)
    series = index_series(config, bundle)
    files = {}
    for name in _select(INDEX_NAMES, domain, kind):
        s = _only_year(series[name], year)
        files[f"indices_{name}.csv"] = report.series_csv(s, config.index_precision)
        files[f"indices_{name}.md"] = report.series_markdown(s, config.index_precision, name)
    return _write(config.out_dir, files)


def _efficiency(config: RunConfig, bundle: DatasetBundle, domain: str, rts: str) -> ScoreSeries:
    idx = index_series(config, bundle)
    costs = split_costs(bundle.spend_panel(), config.shares)
    if domain == "hospital":
        return efficiency_table(domain, costs, idx["ICSO"], idx["IQSO"], rts)
    return efficiency_table(domain, costs, idx["ICSD"], idx["IQSD"], rts)


def cmd_efficiency(config: RunConfig, domain=None, rts=None, year=None) -> list[Path]:
    bundle = _bundle(config)
    mode = (rts or config.rts).upper()
    files = {}
    for d in ([domain] if domain else ["hospital", "district"]):
        s = _only_year(_efficiency(config, bundle, d, mode), year)
        stem = f"efficiency_{d}_{mode.lower()}"
        files[stem + ".csv"] = report.series_csv(s, config.efficiency_precision)
        files[stem + ".md"] = report.series_markdown(s, config.efficiency_precision,
                                                     f"{d} efficiency ({mode}, input-oriented)")
    return _write(config.out_dir, files)


def cmd_composite(config: RunConfig, mode=None, year=None) -> list[Path]:
    """Composite efficiency; ``composite.source`` picks printed tables or freshly computed scores."""
    bundle = _bundle(config)
    if config.composite_source == "tables":
        h, d = bundle["tab_4_3"].series("theta_hospital"), bundle["tab_4_4"].series("theta_district")
    else:
        h = _efficiency(config, bundle, "hospital", config.rts)
        d = _efficiency(config, bundle, "district", config.rts)
    files = {}
    for m in ([mode] if mode else ["simple", "weighted"]):
        s = composite_efficiency(h, d, "simple" if m == "simple" else config.weights)
        s = _only_year(s, year)
        files[f"composite_{m}.csv"] = report.series_csv(s, config.efficiency_precision)
        files[f"composite_{m}.md"] = report.series_markdown(s, config.efficiency_precision,
                                                            f"{m} composite efficiency")
    return _write(config.out_dir, files)


def cmd_quadrants(config: RunConfig, domain=None, kind=None, split=None, year=None) -> list[Path]:
    """Per-year coverage/quality quadrants for one domain, or cross-domain ones for one kind."""
    bundle = _bundle(config)
    idx = index_series(config, bundle)
    prec = config.index_precision
    files = {}
    if domain is not None:
        cov = idx[INDEX_NAMES[(domain, "coverage")]]
        qual = idx[INDEX_NAMES[(domain, "quality")]]
        rule = split or (config.split_hospital if domain == "hospital" else config.split_district)
        for y in ([year] if year is not None else cov.years()):
            if y not in cov.years():
                raise DataError(f"{cov.name}: no data for {y}")
            a = quadrants(cov, qual, y, rule)
            stem = f"quadrants_{domain}_{y}_{rule}"
            title = f"{domain} {y}: {cov.name} vs {qual.name} ({rule} split)"
            files[stem + ".csv"] = report.quadrant_csv(a, prec)
            files[stem + ".md"] = report.quadrant_markdown(a, prec, title)
            files[stem + ".svg"] = report.quadrant_svg(a, title, cov.name, qual.name)
    elif kind is not None:
        xa, yb = idx[INDEX_NAMES[("hospital", kind)]], idx[INDEX_NAMES[("district", kind)]]
        rule = split or "mean"
        years = [year] if year is not None else None
        a = cross_domain_quadrants(xa, yb, rule, years)
        stem = f"quadrants_cross_{kind}_{rule}"
        span = str(year) if year is not None else f"{xa.years()[0]}-{xa.years()[-1]}"
        title = f"{kind} {span} means: {xa.name} vs {yb.name} ({rule} split)"
        files[stem + ".csv"] = report.quadrant_csv(a, prec)
        files[stem + ".md"] = report.quadrant_markdown(a, prec, title)
        files[stem + ".svg"] = report.quadrant_svg(a, title, xa.name, yb.name)
    else:
        raise UsageError("quadrants needs --domain, or --kind for the cross-domain map")
    return _write(config.out_dir, files)


def cmd_stats(config: RunConfig, domain=None, kind=None) -> list[Path]:
    bundle = _bundle(config)
    idx = index_series(config, bundle)
    names = _select(INDEX_NAMES, domain, kind)
    stats = {n: yearly_stats(idx[n]) for n in names}
    stem = "stats_" + "_".join(names)
    return _write(config.out_dir, {
        stem + ".csv": report.stats_csv(stats, config.index_precision),
        stem + ".md": report.stats_markdown(stats, config.index_precision),
        stem + ".svg": report.line_chart_svg(stats, "yearly means: " + ", ".join(names)),
    })


def cmd_reproduce(config: RunConfig, rts=None, seed: int = 0) -> tuple[int, Path]:
    """Run every acceptance check; exit code 0 iff all hard criteria pass, else 5."""
    bundle = _bundle(config)
    mode = rts.upper() if rts else None
    results = run_all(bundle, config.shares, config.weights, seed, mode)
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    text = report.reproduce_report(results, f"# deabench reproduction report ({stamp})", mode)
    path = atomic_write(config.out_dir / "reproduce.md", text)
    for r in results:
        print(r.summary())
    return (EXIT_OK if hard_pass(results) else EXIT_REPRODUCE), path


def _dispatch(args) -> int:
    config = load_config(args.config) if args.config else RunConfig()
    config = config.with_overrides(out_dir=args.out)
    if args.command == "indices":
        paths = cmd_indices(config, args.domain, args.kind, args.year)
    elif args.command == "efficiency":
        paths = cmd_efficiency(config, args.domain, args.rts, args.year)
    elif args.command == "composite":
        paths = cmd_composite(config, year=args.year)
    elif args.command == "quadrants":
        paths = cmd_quadrants(config, args.domain, args.kind, args.split, args.year)
    elif args.command == "stats":
        paths = cmd_stats(config, args.domain, args.kind)
    else:
        code, path = cmd_reproduce(config, args.rts)
        print(path)
        return code
    for p in paths:
        print(p)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"deabench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"deabench: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataError, PanelError, MissingDataError, UnknownRegionError, ContractViolation) as exc:
        print(f"deabench: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DeaInternalError, Exception) as exc:  # noqa: BLE001
        print(f"deabench: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
