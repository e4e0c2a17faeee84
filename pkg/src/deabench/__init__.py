"""Benefit-of-the-doubt indices and DEA efficiency benchmarking for regional health services."""
from .analysis import (QuadrantAssignment, RegionGroup, YearlyStats, color_bucket, cross_domain_quadrants,
                       group_spend_sums, mobility_association, quadrants, yearly_stats)
from .config import RunConfig, load_config, parse_config
from .dea import BodScore, DmuSet, EnvelopmentScore, bod_multiplicative, bod_scores, envelopment_input_oriented
from .efficiency import (CompositeWeights, ConfigError, MacroShares, composite_efficiency, efficiency_scores,
                         efficiency_table, split_costs)
from .estimators import BenefitOfTheDoubt, InputOrientedDEA
from .indices import (DirectionTransformer, IndicatorSpec, build_indices, compute_coverage_index, compute_iqsd,
                      compute_iqso, transform_for_bod)
from .io import DataError, DatasetBundle, load_bundle, load_panel, read_table
from .lp import Constraint, LpProblem, LpSolution, make_problem, solve
from .panels import IndicatorPanel, ScoreSeries, SpendPanel, Table
from .regions import REGIONS, normalize_region

__version__ = "0.1.0"

__all__ = [
    "BenefitOfTheDoubt", "BodScore", "CompositeWeights", "ConfigError", "Constraint", "DataError",
    "DatasetBundle", "DirectionTransformer", "DmuSet", "EnvelopmentScore", "IndicatorPanel", "IndicatorSpec",
    "InputOrientedDEA", "LpProblem", "LpSolution", "MacroShares", "QuadrantAssignment", "REGIONS",
    "RegionGroup", "RunConfig", "ScoreSeries", "SpendPanel", "Table", "YearlyStats", "bod_multiplicative",
    "bod_scores", "build_indices", "color_bucket", "composite_efficiency", "compute_coverage_index",
    "compute_iqsd", "compute_iqso", "cross_domain_quadrants", "efficiency_scores", "efficiency_table",
    "envelopment_input_oriented", "group_spend_sums", "load_bundle", "load_config", "load_panel",
    "make_problem", "mobility_association", "normalize_region", "parse_config", "quadrants", "read_table",
    "solve", "split_costs", "transform_for_bod", "yearly_stats",
]
