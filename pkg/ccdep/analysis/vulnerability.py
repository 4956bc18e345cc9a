#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Matching scanned dependencies against vulnerability advisories.

Records with a version constraint match an advisory when the constraint's
version set intersects the affected range. Records without one are
assumed to use the version the operating system ships (from the OS
catalog); libraries missing from the catalog cannot be matched.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import pandas as pd

from ..database.advisories import Advisory, AdvisoryDatabase
from ..model import DependencyRecord, ScanReport, Version
from .ecosystem import require_reports

logger = logging.getLogger(__name__)


class MatchMode(str, Enum):
    CONSTRAINT_OVERLAP = "ConstraintOverlap"
    ASSUMED_LATEST = "AssumedLatest"


@dataclass(frozen=True)
class VulnFinding:
    """
    A dependency record matched to an advisory.

    Attributes:
        repo_id: Repository the record belongs to
        record: The matched record
        advisory_id: Advisory identifier
        match_mode: How the record's version was decided
        assumed_version: Catalog version used for AssumedLatest matches
    """

    repo_id: str
    record: DependencyRecord
    advisory_id: str
    match_mode: MatchMode
    assumed_version: Optional[Version] = None

    def __post_init__(self):
        unconstrained = not self.record.constraint.is_specified
        if (self.match_mode is MatchMode.ASSUMED_LATEST) != unconstrained:
            raise ValueError(f"{self.match_mode.value} finding does not fit record constraint {self.record.constraint}")

    @property
    def sort_key(self):
        return (self.repo_id, self.record.sort_key, self.advisory_id)

    def to_dict(self) -> Dict:
        return {
            "repo_id": self.repo_id,
            "library": self.record.library,
            "tool": self.record.tool.value,
            "path": self.record.evidence.path,
            "line": self.record.evidence.line,
            "constraint": str(self.record.constraint),
            "advisory_id": self.advisory_id,
            "match_mode": self.match_mode.value,
            "assumed_version": None if self.assumed_version is None else str(self.assumed_version),
        }


def _candidates(record: DependencyRecord, advisories: Iterable[Advisory]) -> List[Advisory]:
    if isinstance(advisories, AdvisoryDatabase):
        candidates = advisories.for_library(record.library)
    else:
        candidates = [advisory for advisory in advisories if advisory.library == record.library]
    return sorted(candidates, key=lambda advisory: advisory.id)


def match_constrained(record: DependencyRecord, advisories: Iterable[Advisory], repo_id: str = "") -> List[VulnFinding]:
    """
    Match a version-constrained record.

    Raises:
        ValueError: If the record has no version constraint
    """
    if not record.constraint.is_specified:
        raise ValueError(f"Record {record.library} has no version constraint")
    return [
        VulnFinding(repo_id, record, advisory.id, MatchMode.CONSTRAINT_OVERLAP)
        for advisory in _candidates(record, advisories)
        if advisory.overlaps(record.constraint)
    ]


def match_unconstrained(
    record: DependencyRecord,
    advisories: Iterable[Advisory],
    os_catalog: Mapping[str, Version],
    repo_id: str = "",
) -> List[VulnFinding]:
    """
    Match a record without a version constraint using the OS-shipped version.

    Raises:
        ValueError: If the record has a version constraint
    """
    if record.constraint.is_specified:
        raise ValueError(f"Record {record.library} has a version constraint")
    version = os_catalog.get(record.library)
    if version is None:
        return []
    return [
        VulnFinding(repo_id, record, advisory.id, MatchMode.ASSUMED_LATEST, assumed_version=version)
        for advisory in _candidates(record, advisories)
        if advisory.affects(version)
    ]


@dataclass(frozen=True)
class ExposureSummary:
    vulnerable_dep_share: float
    affected_repo_share: float
    vulnerable_deps: int
    affected_repos: int
    findings: int

    def to_dict(self) -> Dict:
        return {
            "vulnerable_dep_share": self.vulnerable_dep_share,
            "affected_repo_share": self.affected_repo_share,
            "vulnerable_deps": self.vulnerable_deps,
            "affected_repos": self.affected_repos,
            "findings": self.findings,
        }


def exposure_summary(findings: Iterable[VulnFinding], reports: Sequence[ScanReport]) -> ExposureSummary:
    """
    Get the share of records with a finding and of repositories with a finding.

    Raises:
        EmptyInputError: If there are no reports
        ValueError: If two reports share a repo_id
    """
    require_reports(reports)
    findings = list(findings)
    total = sum(len(report.records) for report in reports)
    records = {(finding.repo_id, finding.record.identity) for finding in findings}
    repos = {finding.repo_id for finding in findings}
    return ExposureSummary(
        vulnerable_dep_share=len(records) / total if total else 0.0,
        affected_repo_share=len(repos) / len(reports),
        vulnerable_deps=len(records),
        affected_repos=len(repos),
        findings=len(findings),
    )


@dataclass(frozen=True)
class VulnAssessment:
    """
    Findings over a report collection.

    Attributes:
        findings: Sorted findings
        summary: Exposure summary
        unmatched: Unconstrained records whose library has no catalog version
        constrained_vulnerable_share: Among constrained records on libraries
            with advisories, the share with a finding (None if there are none)
    """

    findings: Tuple[VulnFinding, ...]
    summary: ExposureSummary
    unmatched: int
    constrained_vulnerable_share: Optional[float]

    def to_dict(self) -> Dict:
        return {
            "summary": self.summary.to_dict(),
            "unmatched": self.unmatched,
            "constrained_vulnerable_share": self.constrained_vulnerable_share,
            "findings": [finding.to_dict() for finding in self.findings],
        }


class VulnerabilityMatcher:
    """
    Matcher of scan reports against an advisory database.
    """

    def __init__(self, advisories: AdvisoryDatabase, os_catalog: Optional[Mapping[str, Version]] = None):
        """
        Initialize vulnerability matcher.

        Args:
            advisories: Loaded advisory database
            os_catalog: Versions shipped by the operating system
        """
        self.advisories = advisories
        self.os_catalog = dict(os_catalog or {})
        self.unmatched = 0

    def match_record(self, record: DependencyRecord, repo_id: str = "") -> List[VulnFinding]:
        if record.constraint.is_specified:
            return match_constrained(record, self.advisories, repo_id)
        if record.library not in self.os_catalog:
            self.unmatched += 1
            return []
        return match_unconstrained(record, self.advisories, self.os_catalog, repo_id)

    def match_report(self, report: ScanReport) -> List[VulnFinding]:
        findings = []
        for record in report.records:
            findings.extend(self.match_record(record, report.repo_id))
        return findings

    def assess(self, reports: Sequence[ScanReport]) -> VulnAssessment:
        """
        Match every record of every report.

        Raises:
            EmptyInputError: If there are no reports
            ValueError: If two reports share a repo_id
        """
        require_reports(reports)
        self.unmatched = 0
        findings = []
        for report in reports:
            findings.extend(self.match_report(report))
        findings.sort(key=lambda finding: finding.sort_key)

        covered = set(self.advisories.libraries)
        constrained = {
            (report.repo_id, record.identity)
            for report in reports for record in report.records
            if record.constraint.is_specified and record.library in covered
        }
        vulnerable = {
            (finding.repo_id, finding.record.identity)
            for finding in findings if finding.match_mode is MatchMode.CONSTRAINT_OVERLAP
        }
        share = len(vulnerable) / len(constrained) if constrained else None

        assessment = VulnAssessment(
            findings=tuple(findings),
            summary=exposure_summary(findings, reports),
            unmatched=self.unmatched,
            constrained_vulnerable_share=share,
        )
        logger.info(
            "%d findings in %d repositories (%d unconstrained records without catalog version)",
            len(findings), assessment.summary.affected_repos, self.unmatched,
        )
        return assessment


def findings_table(findings: Iterable[VulnFinding]) -> pd.DataFrame:
    columns = ["repo_id", "library", "tool", "path", "line", "constraint", "advisory_id", "match_mode", "assumed_version"]
    return pd.DataFrame([finding.to_dict() for finding in findings], columns=columns)
