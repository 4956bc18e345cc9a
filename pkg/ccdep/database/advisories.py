#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Vulnerability advisory and OS version catalog loading.

Advisory file: JSON Lines, one advisory per line::

    {"id": "CVE-2019-7317", "library": "png", "affected": "<1.6.37",
     "fixed_in": "1.6.37", "severity": "medium"}

``affected`` is constraint text in any syntax :meth:`VersionConstraint.parse`
understands, or a constraint object with ``kind``/``lower``/``upper``
fields. Without ``affected``, ``fixed_in`` alone means every version before
it. ``"all_versions": true`` marks an advisory that affects every version.

OS catalog: one ``<library> <version>`` pair per line, the version the
operating system currently ships.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from ..model import ConstraintKind, Version, VersionConstraint

logger = logging.getLogger(__name__)


def canonical_library(name: str) -> str:
    """Lowercase a library name and join inner whitespace with ``-``."""
    name = re.sub(r"\s+", "-", (name or "").strip()).lower()
    if not name:
        raise ValueError("Library name must not be empty")
    return name


@dataclass(frozen=True)
class Advisory:
    """
    One vulnerability affecting a range of library versions.

    Attributes:
        id: Advisory identifier (e.g. a CVE id)
        library: Normalized library name
        affected: Vulnerable versions
        fixed_in: First fixed version, if known
        severity: Free-text severity
        all_versions: Every version is affected (``affected`` is then Unspecified)
    """

    id: str
    library: str
    affected: VersionConstraint
    fixed_in: Optional[Version] = None
    severity: Optional[str] = None
    all_versions: bool = False

    def __post_init__(self):
        if not self.id:
            raise ValueError("Advisory id must not be empty")
        if self.library != canonical_library(self.library):
            raise ValueError(f"Advisory library name is not normalized: {self.library!r}")
        if self.all_versions and self.affected.is_specified:
            raise ValueError(f"Advisory {self.id} affects all versions but declares a range")
        if not self.all_versions and not self.affected.is_specified:
            raise ValueError(f"Advisory {self.id} needs an affected range or all_versions=true")

    def affects(self, version: Version) -> bool:
        return self.all_versions or self.affected.contains(version)

    def overlaps(self, constraint: VersionConstraint) -> bool:
        return self.all_versions or self.affected.intersects(constraint)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Advisory":
        """
        Build an advisory from one decoded JSON line.

        Raises:
            ValueError: If a required field is missing or invalid
        """
        if not isinstance(data, dict):
            raise ValueError("Advisory must be a JSON object")
        for key in ("id", "library"):
            if not data.get(key):
                raise ValueError(f"Advisory is missing '{key}'")

        fixed_in = Version.parse(str(data["fixed_in"])) if data.get("fixed_in") else None
        all_versions = bool(data.get("all_versions", False))
        affected_data = data.get("affected")
        if isinstance(affected_data, dict):
            affected = VersionConstraint.from_dict(affected_data)
        elif isinstance(affected_data, str) and affected_data.strip():
            affected = VersionConstraint.parse(affected_data)
            if not affected.is_specified:
                raise ValueError(f"Cannot parse affected range {affected_data!r}")
        elif affected_data is None and fixed_in is not None and not all_versions:
            affected = VersionConstraint(
                kind=ConstraintKind.RANGE,
                upper=fixed_in,
                upper_inclusive=False,
                raw=f"<{fixed_in}",
            )
        else:
            affected = VersionConstraint.unspecified()

        return cls(
            id=str(data["id"]),
            library=canonical_library(str(data["library"])),
            affected=affected,
            fixed_in=fixed_in,
            severity=data.get("severity"),
            all_versions=all_versions,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "library": self.library,
            "affected": self.affected.to_dict(),
            "all_versions": self.all_versions,
            "fixed_in": None if self.fixed_in is None else str(self.fixed_in),
            "severity": self.severity,
        }


@dataclass(frozen=True)
class AdvisoryDatabase:
    """Loaded advisories with a per-library index."""

    advisories: Tuple[Advisory, ...] = ()
    skipped: int = 0
    _index: Dict[str, Tuple[Advisory, ...]] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        index: Dict[str, List[Advisory]] = {}
        for advisory in self.advisories:
            index.setdefault(advisory.library, []).append(advisory)
        object.__setattr__(self, "_index", {library: tuple(items) for library, items in index.items()})

    def __len__(self):
        return len(self.advisories)

    def __iter__(self) -> Iterator[Advisory]:
        return iter(self.advisories)

    @property
    def libraries(self) -> List[str]:
        return sorted(self._index)

    def for_library(self, library: str) -> Tuple[Advisory, ...]:
        return self._index.get(library, ())


def load_advisories(path: Union[str, Path]) -> AdvisoryDatabase:
    """
    Load a JSON Lines advisory file.

    Malformed lines are skipped with a warning and counted in
    ``AdvisoryDatabase.skipped``.

    Raises:
        FileNotFoundError: If the file does not exist
    """
    advisories = []
    skipped = 0
    with open(path, "r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                advisories.append(Advisory.from_dict(json.loads(line)))
            except (ValueError, TypeError) as e:
                # json.JSONDecodeError is a ValueError
                logger.warning("%s:%d: skipping advisory: %s", path, number, e)
                skipped += 1
    logger.info("Loaded %d advisories (%d skipped)", len(advisories), skipped)
    return AdvisoryDatabase(tuple(advisories), skipped)


def load_os_catalog(path: Union[str, Path]) -> Dict[str, Version]:
    """
    Load the versions shipped by the operating system.

    Returns:
        Mapping from normalized library name to version

    Raises:
        FileNotFoundError: If the file does not exist
    """
    catalog: Dict[str, Version] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                logger.warning("%s:%d: expected '<library> <version>', got %r", path, number, line)
                continue
            try:
                catalog[canonical_library(parts[0])] = Version.parse(parts[1])
            except ValueError as e:
                logger.warning("%s:%d: %s", path, number, e)
    logger.debug("Loaded %d OS catalog entries", len(catalog))
    return catalog
