#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Precision/recall evaluation of scan reports against labelled ground truth.

Ground-truth file (JSON)::

    {"repos": [
        {"repo_id": "demo",
         "labels": ["zlib", {"library": "png", "tool": "Conan", "version": "1.6.37"}],
         "supported": ["png", "zlib"]}
    ]}

A label is a library name or an object with ``library`` and optional
``tool`` and ``version``. ``supported`` optionally restricts the
supported-subset recall to libraries the scanner is expected to find.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Union

import pandas as pd

from ..model import ScanReport, ToolKind, Version
from ..utils.io import ReportReader
from ..utils.naming import NameNormalizer
from .ecosystem import EmptyInputError, require_unique_repo_ids

logger = logging.getLogger(__name__)

MATCH_MODES = ("name", "name+tool")


@dataclass(frozen=True)
class Label:
    """One labelled dependency of a ground-truth repository."""

    library: str
    tool: Optional[ToolKind] = None
    version: Optional[Version] = None

    @classmethod
    def from_data(cls, data: Union[str, Dict]) -> "Label":
        """
        Raises:
            ValueError: If the label has no library or an unknown tool
        """
        if isinstance(data, str):
            data = {"library": data}
        library = str(data.get("library") or "").strip().lower()
        if not library:
            raise ValueError(f"Ground-truth label without library: {data!r}")
        tool = ToolKind.from_name(data["tool"]) if data.get("tool") else None
        version = Version.parse(str(data["version"])) if data.get("version") else None
        return cls(library, tool, version)


@dataclass(frozen=True)
class GroundTruth:
    repo_id: str
    labeled: FrozenSet[Label]
    supported_subset: Optional[FrozenSet[str]] = None

    def __post_init__(self):
        if not self.labeled:
            raise ValueError(f"Ground truth for {self.repo_id!r} has no labels")


@dataclass(frozen=True)
class EvalResult:
    """
    Detection counts and metrics.

    ``precision`` is None when nothing was detected; ``recall_supported``
    is None when no label falls inside the supported subset.
    """

    tp: int
    fp: int
    fn: int
    precision: Optional[float]
    recall_full: float
    recall_supported: Optional[float]
    f1: Optional[float]
    supported_tp: int = 0
    supported_total: int = 0

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int, supported_tp: int, supported_total: int) -> "EvalResult":
        precision = tp / (tp + fp) if tp + fp else None
        recall = tp / (tp + fn) if tp + fn else 0.0
        return cls(
            tp=tp,
            fp=fp,
            fn=fn,
            precision=precision,
            recall_full=recall,
            recall_supported=supported_tp / supported_total if supported_total else None,
            f1=None if precision is None else f1_score(precision, recall),
            supported_tp=supported_tp,
            supported_total=supported_total,
        )

    def to_dict(self) -> Dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall_full": self.recall_full,
            "recall_supported": self.recall_supported,
            "f1": self.f1,
        }


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall (0 when both are 0)."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _label_matches(label: Label, library: str, tool: ToolKind, match_on: str) -> bool:
    if label.library != library:
        return False
    return match_on == "name" or label.tool is None or label.tool is tool


def evaluate(
    report: ScanReport,
    truth: GroundTruth,
    match_on: str = "name",
    version_aware: bool = False,
    normalizer: Optional[NameNormalizer] = None,
) -> EvalResult:
    """
    Evaluate one report against its ground truth.

    Detections are the distinct libraries (``match_on="name"``) or
    (library, tool) pairs (``match_on="name+tool"``) of the report. A
    label is found when some detection matches it; a detection that
    matches no label is a false positive. With ``version_aware``, a label
    carrying a version also needs a matching record whose (specified)
    constraint contains that version.

    Args:
        report: Scan report
        truth: Labelled dependencies of the same repository
        match_on: "name" or "name+tool"
        version_aware: Also compare label versions
        normalizer: Alias table applied to both sides

    Raises:
        ValueError: If match_on is unknown
    """
    if match_on not in MATCH_MODES:
        raise ValueError(f"match_on must be one of {MATCH_MODES}: {match_on!r}")
    canonical = normalizer.canonical if normalizer else (lambda name: name)

    detections: Dict[tuple, list] = {}
    for record in report.records:
        library = canonical(record.library)
        key = (library,) if match_on == "name" else (library, record.tool)
        detections.setdefault(key, []).append(record)

    labels = sorted(
        {Label(canonical(label.library), label.tool, label.version) for label in truth.labeled},
        key=lambda label: (label.library, label.tool.value if label.tool else "", str(label.version or "")),
    )

    def found_by(label: Label, key: tuple) -> bool:
        records = detections[key]
        if not any(_label_matches(label, key[0], record.tool, match_on) for record in records):
            return False
        if version_aware and label.version is not None:
            return any(
                record.constraint.is_specified and record.constraint.contains(label.version) for record in records
            )
        return True

    matched_keys = set()
    found = set()
    for label in labels:
        for key in detections:
            if found_by(label, key):
                matched_keys.add(key)
                found.add(label)

    tp = len(found)
    fp = len(detections) - len(matched_keys)
    fn = len(labels) - tp
    if truth.supported_subset is None:
        supported = labels
    else:
        subset = {canonical(library) for library in truth.supported_subset}
        supported = [label for label in labels if label.library in subset]
    supported_tp = sum(1 for label in supported if label in found)
    return EvalResult.from_counts(tp, fp, fn, supported_tp, len(supported))


def evaluate_many(
    reports: Iterable[ScanReport],
    truths: Iterable[GroundTruth],
    match_on: str = "name",
    version_aware: bool = False,
    normalizer: Optional[NameNormalizer] = None,
) -> Dict[str, EvalResult]:
    """
    Evaluate reports against ground truth, paired by repo_id.

    A repository with ground truth but no report counts as an empty report;
    reports without ground truth are ignored. The ``"*"`` entry holds the
    micro-average (counts summed over repositories).

    Raises:
        EmptyInputError: If there is no ground truth
        ValueError: If two reports share a repo_id
    """
    truths = list(truths)
    if not truths:
        raise EmptyInputError("No ground truth given")
    reports = list(reports)
    require_unique_repo_ids(reports)
    by_repo = {report.repo_id: report for report in reports}

    results = {}
    for truth in truths:
        report = by_repo.get(truth.repo_id)
        if report is None:
            logger.warning("No report for ground-truth repository %s", truth.repo_id)
            report = ScanReport.assemble(truth.repo_id, [])
        results[truth.repo_id] = evaluate(report, truth, match_on, version_aware, normalizer)

    values = list(results.values())
    results["*"] = EvalResult.from_counts(
        tp=sum(r.tp for r in values),
        fp=sum(r.fp for r in values),
        fn=sum(r.fn for r in values),
        supported_tp=sum(r.supported_tp for r in values),
        supported_total=sum(r.supported_total for r in values),
    )
    return results


def load_ground_truth(path: Union[str, Path]) -> List[GroundTruth]:
    """
    Load a ground-truth file.

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If the document is malformed
    """
    data = ReportReader.read_json(path)
    if not isinstance(data, dict) or not isinstance(data.get("repos"), list):
        raise ValueError(f"{path}: ground truth needs a 'repos' list")
    truths = []
    for entry in data["repos"]:
        if not isinstance(entry, dict) or not entry.get("repo_id"):
            raise ValueError(f"{path}: ground-truth entry without repo_id")
        supported = entry.get("supported")
        truths.append(GroundTruth(
            repo_id=str(entry["repo_id"]),
            labeled=frozenset(Label.from_data(label) for label in entry.get("labels") or ()),
            supported_subset=None if supported is None else frozenset(str(s).strip().lower() for s in supported),
        ))
    return truths


def results_table(results: Dict[str, EvalResult]) -> pd.DataFrame:
    """Get a P/R1/R2/F1 table, one row per repository."""
    rows = []
    for repo_id, result in results.items():
        rows.append({"repo_id": repo_id, "tp": result.tp, "fp": result.fp, "fn": result.fn,
                     "P": result.precision, "R1": result.recall_full, "R2": result.recall_supported, "F1": result.f1})
    return pd.DataFrame(rows, columns=["repo_id", "tp", "fp", "fn", "P", "R1", "R2", "F1"])
