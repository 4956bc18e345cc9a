#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
File I/O utilities for ccdep.

Handles reading and writing the formats ccdep produces and consumes:
- Scan reports (JSON, one document per repository)
- Stats documents (JSON)
- Tables (CSV / plain text via pandas)
- Whitespace-separated key/value catalogs
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

import pandas as pd

from ..model import ScanReport

logger = logging.getLogger(__name__)


class ReportReader:
    """
    Unified reader for ccdep input files.
    """

    @staticmethod
    def read_json(file_path: Union[str, Path]) -> Any:
        """
        Read a JSON document.

        Raises:
            ValueError: If the file is not valid JSON
        """
        with open(file_path, "r", encoding="utf-8") as f:
            try:
                return json.load(f)
            except json.JSONDecodeError as e:
                raise ValueError(f"{file_path}: invalid JSON ({e.msg} at line {e.lineno})") from e

    @staticmethod
    def read_report(file_path: Union[str, Path]) -> ScanReport:
        """
        Read one scan report.

        Args:
            file_path: Path to a report written by ReportWriter.write_report

        Returns:
            ScanReport

        Raises:
            ValueError: If the file is not a report
        """
        data = ReportReader.read_json(file_path)
        if not isinstance(data, dict):
            raise ValueError(f"{file_path}: report must be a JSON object")
        try:
            return ScanReport.from_dict(data)
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"{file_path}: not a ccdep report ({e})") from e

    @staticmethod
    def expand_report_paths(paths: Iterable[Union[str, Path]]) -> List[Path]:
        """
        Expand directories into the ``*.json`` files they contain.

        Returns:
            Sorted, de-duplicated list of report files
        """
        found = set()
        for path in paths:
            path = Path(path)
            if path.is_dir():
                found.update(p for p in path.glob("*.json") if p.is_file())
            else:
                found.add(path)
        return sorted(found)

    @staticmethod
    def read_reports(paths: Iterable[Union[str, Path]]) -> List[ScanReport]:
        """
        Read every report named by ``paths`` (files or directories).

        Raises:
            ValueError: If a file is not a report, or two reports share a repo_id
        """
        reports = []
        sources: Dict[str, Path] = {}
        for path in ReportReader.expand_report_paths(paths):
            report = ReportReader.read_report(path)
            if report.repo_id in sources:
                raise ValueError(f"{path}: repo_id {report.repo_id!r} was already read from {sources[report.repo_id]}")
            sources[report.repo_id] = path
            reports.append(report)
        logger.info("Loaded %d reports", len(reports))
        return reports

    @staticmethod
    def read_key_values(file_path: Union[str, Path]) -> Dict[str, str]:
        """
        Read ``key value`` lines; blank lines and ``#`` comments are ignored.

        Malformed lines are skipped with a warning.
        """
        pairs = {}
        with open(file_path, "r", encoding="utf-8") as f:
            for number, line in enumerate(f, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != 2:
                    logger.warning("%s:%d: expected two fields, got %r", file_path, number, line)
                    continue
                pairs[parts[0]] = parts[1]
        return pairs


class ReportWriter:
    """
    Unified writer for ccdep output files.
    """

    @staticmethod
    def to_json(data: Any) -> str:
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"

    @staticmethod
    def report_path(report: ScanReport, output: Union[str, Path]) -> Path:
        """Resolve where a report goes: into ``output`` if it is a directory, else ``output`` itself."""
        output = Path(output)
        if output.is_dir():
            return output / f"{_safe_filename(report.repo_id)}.json"
        return output

    @staticmethod
    def write_report(report: ScanReport, output: Union[str, Path], include_timestamp: bool = True) -> Path:
        """
        Write a scan report as JSON.

        Args:
            report: Report to write
            output: File path, or existing directory to write ``<repo_id>.json`` into
            include_timestamp: Keep ``scanned_at`` (False gives byte-stable output)

        Returns:
            Path written
        """
        path = ReportWriter.report_path(report, output)
        ReportWriter.write_text(ReportWriter.to_json(report.to_dict(include_timestamp)), path)
        return path

    @staticmethod
    def write_json(data: Any, file_path: Union[str, Path]) -> None:
        ReportWriter.write_text(ReportWriter.to_json(data), file_path)

    @staticmethod
    def write_text(text: str, file_path: Union[str, Path]) -> None:
        path = Path(file_path)
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)

    @staticmethod
    def table_to_csv(df: pd.DataFrame) -> str:
        """Render a DataFrame as CSV text without the index."""
        return df.to_csv(index=False, lineterminator="\n")

    @staticmethod
    def table_to_text(df: pd.DataFrame, title: Optional[str] = None) -> str:
        """Render a DataFrame as an aligned plain-text table."""
        body = "(empty)" if df.empty else df.to_string(index=False)
        return f"{title}\n{body}\n" if title else f"{body}\n"


def _safe_filename(repo_id: str) -> str:
    cleaned = "".join(c if c.isalnum() or c in "-_." else "_" for c in repo_id)
    return cleaned.strip(".") or "report"
