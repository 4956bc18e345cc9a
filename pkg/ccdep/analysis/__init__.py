"""
Ecosystem statistics, vulnerability matching and evaluation over scan reports.
"""

from .ecosystem import (
    DbCoverage,
    EcosystemStats,
    EmptyInputError,
    PopularityStats,
    UsageIntensity,
    VersionSpecRates,
    combos_table,
    compute_stats,
    cross_phase_share,
    db_coverage,
    gini,
    latest_adoption,
    library_reach,
    make_only_share,
    modern_repo_share,
    phase_stats,
    popularity,
    popularity_and_gini,
    popularity_table,
    records_frame,
    require_unique_repo_ids,
    system_library_share,
    tool_usage,
    tool_usage_table,
    toolchain_class_adoption,
    toolchain_combinations,
    topk_share,
    topk_shares,
    usage_intensity,
    version_spec_rates,
)
from .vulnerability import (
    ExposureSummary,
    MatchMode,
    VulnAssessment,
    VulnerabilityMatcher,
    VulnFinding,
    exposure_summary,
    findings_table,
    match_constrained,
    match_unconstrained,
)
from .evaluation import (
    EvalResult,
    GroundTruth,
    Label,
    evaluate,
    evaluate_many,
    f1_score,
    load_ground_truth,
    results_table,
)

__all__ = [
    "DbCoverage",
    "EcosystemStats",
    "EmptyInputError",
    "PopularityStats",
    "UsageIntensity",
    "VersionSpecRates",
    "combos_table",
    "compute_stats",
    "cross_phase_share",
    "db_coverage",
    "gini",
    "latest_adoption",
    "library_reach",
    "make_only_share",
    "modern_repo_share",
    "phase_stats",
    "popularity",
    "popularity_and_gini",
    "popularity_table",
    "records_frame",
    "require_unique_repo_ids",
    "system_library_share",
    "tool_usage",
    "tool_usage_table",
    "toolchain_class_adoption",
    "toolchain_combinations",
    "topk_share",
    "topk_shares",
    "usage_intensity",
    "version_spec_rates",
    "ExposureSummary",
    "MatchMode",
    "VulnAssessment",
    "VulnerabilityMatcher",
    "VulnFinding",
    "exposure_summary",
    "findings_table",
    "match_constrained",
    "match_unconstrained",
    "EvalResult",
    "GroundTruth",
    "Label",
    "evaluate",
    "evaluate_many",
    "f1_score",
    "load_ground_truth",
    "results_table",
]
