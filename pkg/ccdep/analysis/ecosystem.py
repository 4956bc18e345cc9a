#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Ecosystem statistics over a collection of scan reports.

Counting rules:
- Phase, tool and version-specification metrics count records.
- Popularity counts distinct repositories per library, so a library
  declared in several manifests of one repository counts once.
- Toolchain combinations pair every Install-phase tool with every
  Build-phase tool among a repository's ``tools_seen``; repositories
  without an Install-phase tool contribute ``(None, build tool)``.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..config import Config
from ..model import Phase, ScanReport, ToolchainClass, ToolKind, Version
from ..utils.naming import NameNormalizer

logger = logging.getLogger(__name__)

RECORD_COLUMNS = ["repo", "library", "tool", "phase", "specified", "system"]
MAKE_ONLY = "Make Only"


class EmptyInputError(ValueError):
    """Raised when a statistic is requested over no input."""


def require_reports(reports: Sequence[ScanReport]) -> None:
    if not reports:
        raise EmptyInputError("No scan reports given")
    require_unique_repo_ids(reports)


def require_unique_repo_ids(reports: Iterable[ScanReport]) -> None:
    """
    Check that no two reports share a repo_id.

    Raises:
        ValueError: Naming the first repeated repo_id
    """
    seen = set()
    for report in reports:
        if report.repo_id in seen:
            raise ValueError(f"Duplicate repo_id {report.repo_id!r} in scan reports")
        seen.add(report.repo_id)


def records_frame(reports: Sequence[ScanReport], normalizer: Optional[NameNormalizer] = None) -> pd.DataFrame:
    """
    Flatten reports into one row per record.

    The ``repo`` column is the report's position, so reports sharing a
    repo_id stay distinct.
    """
    rows = []
    for position, report in enumerate(reports):
        for record in report.records:
            library = normalizer.canonical(record.library) if normalizer else record.library
            rows.append((position, library, record.tool.value, record.phase.value,
                         record.constraint.is_specified, record.system))
    # Typed even when empty, so groupby means work on report sets without records
    return pd.DataFrame(rows, columns=RECORD_COLUMNS).astype({"repo": int, "specified": bool, "system": bool})


def _share(part: float, whole: float) -> float:
    return float(part) / float(whole) if whole else 0.0


# --- Phases and tools -------------------------------------------------------

def phase_stats(reports: Sequence[ScanReport]) -> Tuple[Dict[Phase, float], Dict[Phase, float]]:
    """
    Get the share of dependencies and of repositories per phase.

    Returns:
        (dependency share per phase, repository share per phase)

    Raises:
        EmptyInputError: If there are no reports
    """
    require_reports(reports)
    frame = records_frame(reports)
    dep_share = {}
    repo_share = {}
    for phase in Phase:
        in_phase = frame[frame["phase"] == phase.value]
        dep_share[phase] = _share(len(in_phase), len(frame))
        repo_share[phase] = _share(in_phase["repo"].nunique(), len(reports))
    return dep_share, repo_share


def tool_usage(reports: Sequence[ScanReport]) -> Dict[ToolKind, Tuple[float, float]]:
    """
    Get each tool's share of all dependencies and of all repositories.

    Shares over tools may sum to more than 1 when one library is declared
    through several tools.

    Raises:
        EmptyInputError: If there are no reports
    """
    require_reports(reports)
    frame = records_frame(reports)
    dep_counts = frame.groupby("tool").size()
    repo_counts = frame.groupby("tool")["repo"].nunique()
    return {
        tool: (
            _share(dep_counts.get(tool.value, 0), len(frame)),
            _share(repo_counts.get(tool.value, 0), len(reports)),
        )
        for tool in ToolKind
    }


def make_only_share(reports: Sequence[ScanReport]) -> Tuple[float, float]:
    """
    Get the share of dependencies and repositories handled by Make alone.

    A repository is Make-only when Make is its only Build-phase tool with
    records.
    """
    require_reports(reports)
    frame = records_frame(reports)
    build = frame[frame["phase"] == Phase.BUILD.value]
    tools_per_repo = build.groupby("repo")["tool"].agg(frozenset)
    make_only = [repo for repo, tools in tools_per_repo.items() if tools == frozenset({ToolKind.MAKE.value})]
    deps = build[build["repo"].isin(make_only)]
    return _share(len(deps), len(frame)), _share(len(make_only), len(reports))


def toolchain_combinations(reports: Sequence[ScanReport]) -> Dict[Tuple[Optional[ToolKind], ToolKind], int]:
    """
    Count repositories per (Install tool, Build tool) pair.

    Raises:
        EmptyInputError: If there are no reports
    """
    require_reports(reports)
    combos: Dict[Tuple[Optional[ToolKind], ToolKind], int] = {}
    for report in reports:
        installs = [tool for tool in report.tools_seen if tool.phase is Phase.INSTALL] or [None]
        builds = [tool for tool in report.tools_seen if tool.phase is Phase.BUILD]
        for install in installs:
            for build in builds:
                combos[(install, build)] = combos.get((install, build), 0) + 1
    return combos


def toolchain_class_adoption(reports: Sequence[ScanReport]) -> Dict[ToolchainClass, float]:
    """Get the share of repositories with records from each toolchain class."""
    require_reports(reports)
    adoption = {}
    for toolchain_class in ToolchainClass:
        using = sum(
            1 for report in reports
            if any(record.tool.toolchain_class is toolchain_class for record in report.records)
        )
        adoption[toolchain_class] = _share(using, len(reports))
    return adoption


def modern_repo_share(reports: Sequence[ScanReport]) -> float:
    """Get the share of repositories using at least one modern tool."""
    require_reports(reports)
    return _share(sum(1 for report in reports if any(tool.is_modern for tool in report.tools_seen)), len(reports))


# --- Popularity -------------------------------------------------------------

def gini(counts: Iterable[float]) -> float:
    """
    Gini coefficient of non-negative counts.

    Uses the sorted form ``sum((2i - n - 1) * x_i) / (n * sum(x))``, which
    equals the mean absolute difference over twice the mean.

    Raises:
        EmptyInputError: If counts is empty
        ValueError: If a count is negative
    """
    values = np.sort(np.asarray(list(counts), dtype=float))
    n = values.size
    if n == 0:
        raise EmptyInputError("Gini coefficient of an empty distribution")
    if (values < 0).any():
        raise ValueError("Gini coefficient needs non-negative counts")
    total = values.sum()
    if total == 0:
        return 0.0
    index = np.arange(1, n + 1)
    return float(np.sum((2 * index - n - 1) * values) / (n * total))


def topk_share(counts: Iterable[float], k: float) -> float:
    """
    Share of the total held by the top ``k`` percent of entries.

    The top ``ceil(n * k / 100)`` entries are taken.

    Raises:
        EmptyInputError: If counts is empty
        ValueError: If k is outside (0, 100]
    """
    if not 0 < k <= 100:
        raise ValueError(f"Percentile must be within (0, 100]: {k}")
    values = np.sort(np.asarray(list(counts), dtype=float))[::-1]
    if values.size == 0:
        raise EmptyInputError("Top-k share of an empty distribution")
    total = values.sum()
    if total == 0:
        return 0.0
    top = math.ceil(values.size * k / 100)
    return float(values[:top].sum() / total)


def topk_shares(counts: Iterable[float], percentiles: Sequence[float] = Config.TOPK_PERCENTILES) -> Dict[float, float]:
    values = list(counts)
    return {k: topk_share(values, k) for k in percentiles}


def popularity(
    reports: Sequence[ScanReport],
    exclude: Iterable[str] = (),
    normalizer: Optional[NameNormalizer] = None,
) -> Dict[str, int]:
    """
    Count the distinct repositories reusing each library.

    Returns:
        Mapping library -> repository count, most popular first (ties by name)
    """
    require_reports(reports)
    frame = records_frame(reports, normalizer)
    excluded = {normalizer.canonical(name) if normalizer else name for name in exclude}
    frame = frame[~frame["library"].isin(excluded)]
    counts = frame.groupby("library")["repo"].nunique()
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return {library: int(count) for library, count in ordered}


@dataclass(frozen=True)
class PopularityStats:
    popularity: Dict[str, int]
    gini: float
    topk_shares: Dict[float, float]
    mean: float
    median: float


def popularity_and_gini(
    reports: Sequence[ScanReport],
    exclude: Iterable[str] = (),
    normalizer: Optional[NameNormalizer] = None,
    percentiles: Sequence[float] = Config.TOPK_PERCENTILES,
) -> PopularityStats:
    """
    Get library popularity and its concentration.

    Raises:
        EmptyInputError: If there are no reports or no libraries
    """
    counts = popularity(reports, exclude=exclude, normalizer=normalizer)
    if not counts:
        raise EmptyInputError("No libraries to compute popularity over")
    values = np.asarray(list(counts.values()), dtype=float)
    return PopularityStats(
        popularity=counts,
        gini=gini(values),
        topk_shares=topk_shares(values, percentiles),
        mean=float(values.mean()),
        median=float(np.median(values)),
    )


def library_reach(
    reports: Sequence[ScanReport],
    top_n: Sequence[int] = Config.REACH_TOP_N,
    normalizer: Optional[NameNormalizer] = None,
) -> Dict[int, float]:
    """Get the share of repositories depending on at least one of the N most popular libraries."""
    counts = popularity(reports, normalizer=normalizer)
    frame = records_frame(reports, normalizer)
    ranked = list(counts)
    reach = {}
    for n in top_n:
        top = set(ranked[:n])
        reach[n] = _share(frame[frame["library"].isin(top)]["repo"].nunique(), len(reports))
    return reach


@dataclass(frozen=True)
class DbCoverage:
    """Database coverage per popularity batch and over all dependencies."""

    batches: List[float]
    covered_dependency_share: float


def db_coverage(
    reports: Sequence[ScanReport],
    database: Iterable[str],
    batch_size: int = Config.COVERAGE_BATCH_SIZE,
    normalizer: Optional[NameNormalizer] = None,
) -> DbCoverage:
    """
    Measure how well a library database covers the libraries in use.

    Libraries are ordered by popularity (ties by name) and cut into
    batches of ``batch_size``; each batch's coverage is the share of its
    libraries present in the database. Dependencies are counted as
    distinct (repository, library) pairs.
    """
    if batch_size < 1:
        raise ValueError(f"batch_size must be positive: {batch_size}")
    counts = popularity(reports, normalizer=normalizer)
    known = set(database)
    ranked = list(counts)
    batches = []
    for start in range(0, len(ranked), batch_size):
        batch = ranked[start:start + batch_size]
        batches.append(_share(sum(1 for library in batch if library in known), len(batch)))
    covered = sum(count for library, count in counts.items() if library in known)
    return DbCoverage(batches=batches, covered_dependency_share=_share(covered, sum(counts.values())))


# --- Versions ---------------------------------------------------------------

@dataclass(frozen=True)
class VersionSpecRates:
    overall: float
    by_phase: Dict[Phase, float]
    by_tool: Dict[ToolKind, float]


def version_spec_rates(reports: Sequence[ScanReport]) -> VersionSpecRates:
    """
    Get the share of records that specify a version, overall and per phase and tool.

    Phases and tools without records are left out.
    """
    require_reports(reports)
    frame = records_frame(reports)
    by_phase = frame.groupby("phase")["specified"].mean()
    by_tool = frame.groupby("tool")["specified"].mean()
    return VersionSpecRates(
        overall=float(frame["specified"].mean()) if len(frame) else 0.0,
        by_phase={Phase(phase): float(rate) for phase, rate in by_phase.items()},
        by_tool={ToolKind(tool): float(rate) for tool, rate in by_tool.items()},
    )


def latest_adoption(reports: Sequence[ScanReport], latest: Mapping[str, Version]) -> Optional[float]:
    """
    Get the share of version-constrained records that admit the library's latest version.

    Only records on libraries listed in ``latest`` count.

    Returns:
        The share, or None when no record qualifies
    """
    require_reports(reports)
    eligible = [
        record for report in reports for record in report.records
        if record.constraint.is_specified and record.library in latest
    ]
    if not eligible:
        return None
    adopting = sum(1 for record in eligible if record.constraint.contains(latest[record.library]))
    return adopting / len(eligible)


# --- Other shares -----------------------------------------------------------

@dataclass(frozen=True)
class UsageIntensity:
    mean_per_repo: float
    no_dependency_share: float
    at_most_10_share: float
    over_50_share: float


def usage_intensity(reports: Sequence[ScanReport], normalizer: Optional[NameNormalizer] = None) -> UsageIntensity:
    """Summarize distinct libraries per repository."""
    require_reports(reports)
    frame = records_frame(reports, normalizer)
    per_repo = frame.groupby("repo")["library"].nunique().reindex(range(len(reports)), fill_value=0)
    return UsageIntensity(
        mean_per_repo=float(per_repo.mean()),
        no_dependency_share=float((per_repo == 0).mean()),
        at_most_10_share=float((per_repo <= 10).mean()),
        over_50_share=float((per_repo > 50).mean()),
    )


def cross_phase_share(reports: Sequence[ScanReport], normalizer: Optional[NameNormalizer] = None) -> float:
    """
    Get the share of (repository, library) dependencies that appear in both
    the Install and the Build phase.
    """
    require_reports(reports)
    frame = records_frame(reports, normalizer)
    if frame.empty:
        return 0.0
    phases = frame.groupby(["repo", "library"])["phase"].agg(frozenset)
    both = phases.apply(lambda seen: Phase.INSTALL.value in seen and Phase.BUILD.value in seen)
    return float(both.mean())


def system_library_share(reports: Sequence[ScanReport]) -> float:
    """Get the share of records on OS-default system libraries."""
    require_reports(reports)
    frame = records_frame(reports)
    return float(frame["system"].mean()) if len(frame) else 0.0


# --- Summary ----------------------------------------------------------------

@dataclass(frozen=True)
class EcosystemStats:
    """All ecosystem metrics of one report collection."""

    dep_count: int
    repo_count: int
    phase_dep_share: Dict[Phase, float]
    phase_repo_share: Dict[Phase, float]
    tool_usage: Dict[ToolKind, Tuple[float, float]]
    make_only: Tuple[float, float]
    toolchain_combos: Dict[Tuple[Optional[ToolKind], ToolKind], int]
    popularity: Dict[str, int]
    gini: Optional[float]
    topk_shares: Dict[float, float]
    popularity_mean: Optional[float]
    popularity_median: Optional[float]
    version_spec_rate: float
    version_spec_by_phase: Dict[Phase, float]
    version_spec_by_tool: Dict[ToolKind, float]
    usage_intensity: UsageIntensity
    toolchain_class_adoption: Dict[ToolchainClass, float]
    modern_repo_share: float
    library_reach: Dict[int, float]
    cross_phase_share: float
    system_library_share: float
    excluded: Tuple[str, ...] = field(default=())

    def to_dict(self) -> Dict:
        """Get a JSON-serializable document with stable key order."""
        return {
            "dep_count": self.dep_count,
            "repo_count": self.repo_count,
            "phase_dep_share": {phase.value: share for phase, share in self.phase_dep_share.items()},
            "phase_repo_share": {phase.value: share for phase, share in self.phase_repo_share.items()},
            "tool_usage": {
                tool.value: {"dep_share": dep, "repo_share": repo} for tool, (dep, repo) in self.tool_usage.items()
            },
            "make_only": {"dep_share": self.make_only[0], "repo_share": self.make_only[1]},
            "toolchain_combos": [
                {"install": install.value if install else None, "build": build.value, "repos": count}
                for (install, build), count in sorted(self.toolchain_combos.items(), key=_combo_sort_key)
            ],
            "popularity": self.popularity,
            "gini": self.gini,
            "topk_shares": {str(k): share for k, share in self.topk_shares.items()},
            "popularity_mean": self.popularity_mean,
            "popularity_median": self.popularity_median,
            "version_spec_rate": self.version_spec_rate,
            "version_spec_by_phase": {phase.value: rate for phase, rate in self.version_spec_by_phase.items()},
            "version_spec_by_tool": {tool.value: rate for tool, rate in sorted(self.version_spec_by_tool.items(), key=lambda i: i[0].value)},
            "usage_intensity": {
                "mean_per_repo": self.usage_intensity.mean_per_repo,
                "no_dependency_share": self.usage_intensity.no_dependency_share,
                "at_most_10_share": self.usage_intensity.at_most_10_share,
                "over_50_share": self.usage_intensity.over_50_share,
            },
            "toolchain_class_adoption": {cls.value: share for cls, share in self.toolchain_class_adoption.items()},
            "modern_repo_share": self.modern_repo_share,
            "library_reach": {str(n): share for n, share in self.library_reach.items()},
            "cross_phase_share": self.cross_phase_share,
            "system_library_share": self.system_library_share,
            "excluded": list(self.excluded),
        }


def _combo_sort_key(item):
    (install, build), count = item
    return (-count, install.value if install else "", build.value)


def compute_stats(
    reports: Sequence[ScanReport],
    exclude: Iterable[str] = (),
    normalizer: Optional[NameNormalizer] = None,
) -> EcosystemStats:
    """
    Compute every ecosystem metric.

    Args:
        reports: Scan reports, one per repository
        exclude: Libraries left out of the popularity metrics
        normalizer: Alias table applied to library names

    Raises:
        EmptyInputError: If there are no reports
    """
    require_reports(reports)
    exclude = tuple(sorted(set(exclude)))
    dep_share, repo_share = phase_stats(reports)
    rates = version_spec_rates(reports)

    counts = popularity(reports, exclude=exclude, normalizer=normalizer)
    if counts:
        pop = popularity_and_gini(reports, exclude=exclude, normalizer=normalizer)
        gini_value, shares, mean, median = pop.gini, pop.topk_shares, pop.mean, pop.median
    else:
        gini_value, shares, mean, median = None, {}, None, None

    stats = EcosystemStats(
        dep_count=sum(len(report.records) for report in reports),
        repo_count=len(reports),
        phase_dep_share=dep_share,
        phase_repo_share=repo_share,
        tool_usage=tool_usage(reports),
        make_only=make_only_share(reports),
        toolchain_combos=toolchain_combinations(reports),
        popularity=counts,
        gini=gini_value,
        topk_shares=shares,
        popularity_mean=mean,
        popularity_median=median,
        version_spec_rate=rates.overall,
        version_spec_by_phase=rates.by_phase,
        version_spec_by_tool=rates.by_tool,
        usage_intensity=usage_intensity(reports, normalizer),
        toolchain_class_adoption=toolchain_class_adoption(reports),
        modern_repo_share=modern_repo_share(reports),
        library_reach=library_reach(reports, normalizer=normalizer),
        cross_phase_share=cross_phase_share(reports, normalizer),
        system_library_share=system_library_share(reports),
        excluded=exclude,
    )
    logger.info("Computed statistics over %d repositories and %d dependencies", stats.repo_count, stats.dep_count)
    return stats


# --- Tables -----------------------------------------------------------------

def _percent(value: float) -> float:
    return round(value * 100, 2)


def popularity_table(stats: EcosystemStats) -> pd.DataFrame:
    """Get a ``library,count`` table, most popular first."""
    return pd.DataFrame(list(stats.popularity.items()), columns=["library", "count"])


def combos_table(stats: EcosystemStats) -> pd.DataFrame:
    rows = [
        (install.value if install else "None", build.value, count)
        for (install, build), count in sorted(stats.toolchain_combos.items(), key=_combo_sort_key)
    ]
    return pd.DataFrame(rows, columns=["install", "build", "repos"])


def tool_usage_table(stats: EcosystemStats) -> pd.DataFrame:
    """
    Lay out tool usage side by side: Install tools on the left, Build
    tools and the Make-only row on the right, each sorted by dependency
    share. Shares are percentages.
    """
    def side(phase):
        rows = [
            (tool.value, _percent(dep), _percent(repo))
            for tool, (dep, repo) in stats.tool_usage.items()
            if tool.phase is phase
        ]
        return sorted(rows, key=lambda row: (-row[1], row[0]))

    install = side(Phase.INSTALL)
    build = side(Phase.BUILD) + [(MAKE_ONLY, _percent(stats.make_only[0]), _percent(stats.make_only[1]))]
    height = max(len(install), len(build))
    blank = ("", None, None)
    rows = [
        (install[i] if i < len(install) else blank) + (build[i] if i < len(build) else blank)
        for i in range(height)
    ]
    return pd.DataFrame(rows, columns=["Install", "Install Dep%", "Install Repo%", "Build", "Build Dep%", "Build Repo%"])
