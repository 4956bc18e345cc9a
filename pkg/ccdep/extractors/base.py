#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Base extractor abstract class for ccdep.

All extractor implementations inherit from BaseExtractor and implement
``parse``. Extraction is a pure function of (file text, path): extractors
hold no per-file state between calls and never raise on malformed input.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from ..model import (
    DependencyRecord,
    Evidence,
    ExtractionWarning,
    ToolKind,
    Version,
    VersionConstraint,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtractionResult:
    """Records and warnings produced from one file by one extractor."""

    records: Tuple[DependencyRecord, ...] = ()
    warnings: Tuple[ExtractionWarning, ...] = ()

    def __len__(self):
        return len(self.records)

    @property
    def libraries(self) -> List[str]:
        return [record.library for record in self.records]


@dataclass
class RecordSink:
    """
    Collects records and warnings while one file is parsed.

    Names that fail normalization become warnings, so parsers can hand
    over whatever they found without checking it first.
    """

    tool: ToolKind
    path: str
    records: List[DependencyRecord] = field(default_factory=list)
    warnings: List[ExtractionWarning] = field(default_factory=list)

    def add(
        self,
        raw_name: str,
        line: int,
        constraint: Optional[VersionConstraint] = None,
        source_url: Optional[str] = None,
        components: Iterable[str] = (),
        library: Optional[str] = None,
    ) -> Optional[DependencyRecord]:
        try:
            record = DependencyRecord.create(
                raw_name=raw_name,
                tool=self.tool,
                evidence=Evidence(self.path, line),
                constraint=constraint,
                source_url=source_url,
                components=components,
                library=library,
            )
        except ValueError as e:
            self.warn(line, f"skipped dependency {raw_name!r}: {e}")
            return None
        self.records.append(record)
        return record

    def warn(self, line: int, message: str) -> None:
        self.warnings.append(ExtractionWarning(self.path, line, message))

    def result(self) -> ExtractionResult:
        return ExtractionResult(records=tuple(self.records), warnings=tuple(self.warnings))


class BaseExtractor(ABC):
    """
    Abstract base class for all extractors in ccdep.

    Subclasses set ``tool`` and ``patterns`` and implement ``parse``.
    """

    tool: ToolKind
    patterns: Tuple[str, ...] = ()

    # Filename patterns are matched case-insensitively (Makefile/makefile)
    case_insensitive: bool = False

    def __init__(self, **kwargs):
        """
        Initialize the extractor.

        Args:
            **kwargs: Extractor-specific options
        """
        self.config: Dict[str, Any] = kwargs

    @abstractmethod
    def parse(self, text: str, sink: RecordSink) -> None:
        """
        Parse one manifest and feed records and warnings into ``sink``.

        Args:
            text: Decoded file content
            sink: Collector bound to this extractor's tool and the file path

        Implementations may raise on malformed input; ``extract`` turns
        any exception into a warning.
        """
        pass

    def accepts(self, path: str, text: str, siblings: Iterable[str] = ()) -> bool:
        """
        Decide whether a file whose name matched ``patterns`` belongs to this tool.

        Args:
            path: Repository-relative path
            text: Decoded file content
            siblings: Names of the other files in the same directory

        Returns:
            True if the file should be extracted
        """
        return True

    def extract(self, text: Union[str, bytes], path: str) -> ExtractionResult:
        """
        Extract dependencies from one file.

        Args:
            text: File content (bytes are decoded as UTF-8 with replacement)
            path: Repository-relative path, used for evidence

        Returns:
            ExtractionResult; on a parser failure, zero records and one warning
        """
        if isinstance(text, bytes):
            text = text.decode("utf-8", errors="replace")
        sink = RecordSink(tool=self.tool, path=str(path))
        try:
            self.parse(text, sink)
        except Exception as e:  # extractors are total
            logger.debug("%s extractor failed on %s: %s", self.tool.value, path, e)
            return ExtractionResult(
                records=(),
                warnings=tuple(sink.warnings)
                + (ExtractionWarning(str(path), 0, f"{self.tool.value}: could not parse file ({type(e).__name__}: {e})"),),
            )
        result = sink.result()
        if result.records:
            logger.debug("%s: %d records from %s", self.tool.value, len(result.records), path)
        return result


def tag_constraint(tag: Optional[str]) -> Optional[VersionConstraint]:
    """Pin an exact version when a git tag reads as one (``v1.14.0``)."""
    if not tag:
        return None
    if Version.is_version_like(tag):
        try:
            return VersionConstraint.exact(Version.parse(tag), raw=tag)
        except ValueError:
            pass
    return VersionConstraint.unspecified(tag)
