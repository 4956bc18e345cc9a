#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Versions and version constraints.

Versions follow Debian's shape, ``[epoch:]upstream[-revision]``; plain
semantic versions are the special case with epoch 0 and no revision.
Ordering compares epoch, then the dot-separated release segments, then the
revision. Each segment is split into digit and non-digit runs; digit runs
compare numerically and sort before alphabetic runs. As in Debian, a run
starting with ``~`` sorts before anything, even the end of the version, so
``1.0~rc1`` is older than ``1.0``. Trailing ``.0`` segments are
insignificant, so ``1.2`` and ``1.2.0`` are equal.

Every manifest comparator is mapped into one constraint algebra so that
analytics and advisory matching work across tools.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering
from typing import List, Optional, Tuple


_SEGMENT_RE = re.compile(r"^[A-Za-z0-9_+~\-]+$")
_RUN_RE = re.compile(r"\d+|~[^\d~]*|[^\d~]+")
_VERSION_LIKE_RE = re.compile(r"^[vV]?\d+(?:[.\-+~:_][A-Za-z0-9]+)*$")


def _run_key(run: str) -> Tuple[int, object]:
    if run.isdigit():
        return (1, int(run))
    if run.startswith("~"):
        return (-2, run[1:])
    return (2, run)


def _segment_key(segment: str) -> Tuple[Tuple[int, object], ...]:
    # (0,) closes the segment: "~" runs sort below it, everything else above
    return tuple(_run_key(run) for run in _RUN_RE.findall(segment)) + ((0,),)


_ZERO_SEGMENT = _segment_key("0")
# Closes the release; sorts between "0~rc1" and "0" so missing segments act as zeros
_END_OF_RELEASE = ((1, 0), (-1,))


@total_ordering
@dataclass(frozen=True, eq=False)
class Version:
    """
    A parsed version.

    Attributes:
        epoch: Debian epoch (default 0)
        release: Dot-separated upstream identifiers
        revision: Distribution revision, e.g. the ``4`` in ``1.6.36-4``
    """

    epoch: int
    release: Tuple[str, ...]
    revision: Optional[str] = None

    def __post_init__(self):
        if self.epoch < 0:
            raise ValueError(f"Version epoch must be non-negative: {self.epoch}")
        if not self.release:
            raise ValueError("Version release must not be empty")
        for segment in self.release:
            if not _SEGMENT_RE.match(segment):
                raise ValueError(f"Invalid version segment: {segment!r}")
        if self.revision is not None and not self.revision:
            raise ValueError("Version revision must not be empty when present")

    @classmethod
    def parse(cls, text: str) -> "Version":
        """
        Parse ``[epoch:]release[-revision]``; a leading ``v`` is dropped.

        Raises:
            ValueError: If the text is not a version
        """
        raw = text.strip()
        if not raw:
            raise ValueError("Empty version string")

        epoch = 0
        colon = raw.find(":")
        if colon >= 0:
            epoch_text = raw[:colon]
            if not epoch_text.isdigit():
                raise ValueError(f"Invalid version epoch in {text!r}")
            epoch = int(epoch_text)
            raw = raw[colon + 1:]

        revision = None
        hyphen = raw.rfind("-")
        if hyphen >= 0:
            revision = raw[hyphen + 1:]
            raw = raw[:hyphen]
            if not revision:
                raise ValueError(f"Invalid version revision in {text!r}")

        if len(raw) > 1 and raw[0] in "vV" and raw[1].isdigit():
            raw = raw[1:]
        if not raw or not raw[0].isdigit():
            raise ValueError(f"Version must start with a digit: {text!r}")

        return cls(epoch=epoch, release=tuple(raw.split(".")), revision=revision)

    @staticmethod
    def is_version_like(text: str) -> bool:
        """Check whether a tag or token reads as a version (``1.2``, ``v3.0.1``)."""
        if not _VERSION_LIKE_RE.match(text.strip()):
            return False
        try:
            Version.parse(text)
        except ValueError:
            return False
        return True

    @property
    def sort_key(self):
        release = [_segment_key(segment) for segment in self.release]
        while len(release) > 1 and release[-1] == _ZERO_SEGMENT:
            release.pop()
        revision = (0,) if self.revision is None else (1, _segment_key(self.revision))
        release.append(_END_OF_RELEASE)
        return (self.epoch, tuple(release), revision)

    def numeric_prefix(self) -> List[int]:
        """Get the leading purely numeric release segments (for caret/tilde bumps)."""
        numbers = []
        for segment in self.release:
            if not segment.isdigit():
                break
            numbers.append(int(segment))
        return numbers

    def __eq__(self, other):
        if not isinstance(other, Version):
            return NotImplemented
        return self.sort_key == other.sort_key

    def __lt__(self, other):
        if not isinstance(other, Version):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __hash__(self):
        return hash(self.sort_key)

    def __str__(self):
        text = ".".join(self.release)
        if self.epoch:
            text = f"{self.epoch}:{text}"
        if self.revision is not None:
            text = f"{text}-{self.revision}"
        return text


def compare_versions(a: Version, b: Version) -> int:
    """
    Compare two versions.

    Returns:
        -1 if a < b, 0 if equal, 1 if a > b
    """
    ka, kb = a.sort_key, b.sort_key
    if ka == kb:
        return 0
    return -1 if ka < kb else 1


class ConstraintKind(str, Enum):
    """How a manifest constrains a dependency's version."""

    UNSPECIFIED = "Unspecified"
    EXACT = "Exact"
    RANGE = "Range"
    CARET = "Caret"
    TILDE = "Tilde"
    WILDCARD = "Wildcard"


@dataclass(frozen=True)
class VersionConstraint:
    """
    A version constraint as an interval with optional bounds.

    Caret, tilde and wildcard constraints keep their kind but store the
    interval they denote, so containment and intersection only look at
    bounds.
    """

    kind: ConstraintKind = ConstraintKind.UNSPECIFIED
    lower: Optional[Version] = None
    lower_inclusive: bool = False
    upper: Optional[Version] = None
    upper_inclusive: bool = False
    raw: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind is ConstraintKind.UNSPECIFIED:
            if self.lower is not None or self.upper is not None:
                raise ValueError("Unspecified constraint must not carry bounds")
        elif self.kind is ConstraintKind.EXACT:
            if (
                self.lower is None
                or self.upper is None
                or self.lower != self.upper
                or not (self.lower_inclusive and self.upper_inclusive)
            ):
                raise ValueError("Exact constraint needs equal inclusive bounds")
        elif self.lower is None and self.upper is None:
            raise ValueError(f"{self.kind.value} constraint needs at least one bound")
        if self.lower is not None and self.upper is not None and self.upper < self.lower:
            raise ValueError(f"Constraint lower bound {self.lower} exceeds upper {self.upper}")

    @classmethod
    def unspecified(cls, raw: str = "") -> "VersionConstraint":
        return cls(kind=ConstraintKind.UNSPECIFIED, raw=raw)

    @classmethod
    def exact(cls, version: Version, raw: Optional[str] = None) -> "VersionConstraint":
        return cls(
            kind=ConstraintKind.EXACT,
            lower=version,
            lower_inclusive=True,
            upper=version,
            upper_inclusive=True,
            raw=str(version) if raw is None else raw,
        )

    @classmethod
    def at_least(cls, version: Version, raw: Optional[str] = None) -> "VersionConstraint":
        return cls(
            kind=ConstraintKind.RANGE,
            lower=version,
            lower_inclusive=True,
            raw=f">={version}" if raw is None else raw,
        )

    @classmethod
    def parse(cls, text: Optional[str]) -> "VersionConstraint":
        """
        Parse constraint text in any supported manifest syntax.

        Unknown syntax is kept in ``raw`` with kind Unspecified.
        """
        raw = (text or "").strip()
        try:
            return _parse_constraint(raw)
        except ValueError:
            return cls.unspecified(raw)

    @property
    def is_specified(self) -> bool:
        return self.kind is not ConstraintKind.UNSPECIFIED

    def contains(self, version: Version) -> bool:
        """Check whether a version satisfies this constraint."""
        if self.lower is not None:
            if version < self.lower or (version == self.lower and not self.lower_inclusive):
                return False
        if self.upper is not None:
            if version > self.upper or (version == self.upper and not self.upper_inclusive):
                return False
        return True

    def intersects(self, other: "VersionConstraint") -> bool:
        """Check whether two constraints admit at least one common version."""
        lower, lower_inc = _tighter_lower(self, other)
        upper, upper_inc = _tighter_upper(self, other)
        if lower is None or upper is None:
            return True
        if lower < upper:
            return True
        return lower == upper and lower_inc and upper_inc

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "lower": None if self.lower is None else str(self.lower),
            "lower_inclusive": self.lower_inclusive,
            "upper": None if self.upper is None else str(self.upper),
            "upper_inclusive": self.upper_inclusive,
            "raw": self.raw,
        }

    @classmethod
    def from_dict(cls, data) -> "VersionConstraint":
        lower = data.get("lower")
        upper = data.get("upper")
        return cls(
            kind=ConstraintKind(data.get("kind", ConstraintKind.UNSPECIFIED.value)),
            lower=None if lower is None else Version.parse(lower),
            lower_inclusive=bool(data.get("lower_inclusive", False)),
            upper=None if upper is None else Version.parse(upper),
            upper_inclusive=bool(data.get("upper_inclusive", False)),
            raw=data.get("raw") or "",
        )

    def __str__(self):
        return self.raw or self.kind.value


def constraint_contains(constraint: VersionConstraint, version: Version) -> bool:
    """Check whether ``version`` satisfies ``constraint``."""
    return constraint.contains(version)


def _tighter_lower(a: VersionConstraint, b: VersionConstraint):
    if a.lower is None:
        return b.lower, b.lower_inclusive
    if b.lower is None or a.lower > b.lower:
        return a.lower, a.lower_inclusive
    if b.lower > a.lower:
        return b.lower, b.lower_inclusive
    return a.lower, a.lower_inclusive and b.lower_inclusive


def _tighter_upper(a: VersionConstraint, b: VersionConstraint):
    if a.upper is None:
        return b.upper, b.upper_inclusive
    if b.upper is None or a.upper < b.upper:
        return a.upper, a.upper_inclusive
    if b.upper < a.upper:
        return b.upper, b.upper_inclusive
    return a.upper, a.upper_inclusive and b.upper_inclusive


# --- constraint syntax -------------------------------------------------------

_OPERATORS = {
    ">=": (">", True),
    ">>": (">", False),
    ">": (">", False),
    "<=": ("<", True),
    "<<": ("<", False),
    "<": ("<", False),
    "==": ("=", True),
    "=": ("=", True),
}
_COMPARATOR_RE = re.compile(r"(>=|<=|==|>>|<<|>|<|=)\s*([^\s,<>=]+)")
_INTERVAL_RE = re.compile(r"^([\[(])\s*([vV]?\d[^\s,]*)\s*[\s,]\s*([vV]?\d[^\s,\])]*)\s*([\])])$")
_CMAKE_RANGE_RE = re.compile(r"^([^.\s]+(?:\.[^.\s]+)*?)\.\.\.(<?)(\S+)$")
_WILDCARD_RE = re.compile(r"^(\d+(?:\.\d+)*)\.[*xX]$")


def _parse_constraint(raw: str) -> VersionConstraint:
    text = raw
    if text in ("", "*", "latest", "any"):
        return VersionConstraint.unspecified(raw)

    # Conan wraps expressions in brackets: [>=1.0 <2.0], [~1.2]
    if text.startswith("[") and text.endswith("]") and not _INTERVAL_RE.match(text):
        text = text[1:-1].strip()
        if not text:
            return VersionConstraint.unspecified(raw)

    interval = _INTERVAL_RE.match(text)
    if interval:
        opening, low, high, closing = interval.groups()
        return VersionConstraint(
            kind=ConstraintKind.RANGE,
            lower=Version.parse(low),
            lower_inclusive=opening == "[",
            upper=Version.parse(high),
            upper_inclusive=closing == "]",
            raw=raw,
        )

    cmake_range = _CMAKE_RANGE_RE.match(text)
    if cmake_range:
        low, exclusive, high = cmake_range.groups()
        return VersionConstraint(
            kind=ConstraintKind.RANGE,
            lower=Version.parse(low),
            lower_inclusive=True,
            upper=Version.parse(high),
            upper_inclusive=not exclusive,
            raw=raw,
        )

    if text[0] == "^":
        return _bumped(ConstraintKind.CARET, text[1:].strip(), 0, raw)
    if text[0] == "~" and not text.startswith("~>"):
        return _bumped(ConstraintKind.TILDE, text[1:].lstrip("=").strip(), 1, raw)
    if text.startswith("~>"):
        # Pessimistic operator: ~>1.2 allows >=1.2 <2, ~>1.2.3 allows >=1.2.3 <1.3
        version = Version.parse(text[2:].strip())
        position = max(len(version.numeric_prefix()) - 2, 0)
        return _bumped(ConstraintKind.TILDE, text[2:].strip(), position, raw)

    wildcard = _WILDCARD_RE.match(text)
    if wildcard:
        prefix = [int(part) for part in wildcard.group(1).split(".")]
        upper = prefix[:-1] + [prefix[-1] + 1]
        return VersionConstraint(
            kind=ConstraintKind.WILDCARD,
            lower=Version(0, tuple(str(p) for p in prefix + [0])),
            lower_inclusive=True,
            upper=Version(0, tuple(str(p) for p in upper + [0])),
            upper_inclusive=False,
            raw=raw,
        )

    if text[0] not in "<>=":
        return VersionConstraint.exact(Version.parse(text), raw=raw)

    lower = upper = None
    lower_inc = upper_inc = False
    consumed = _COMPARATOR_RE.sub("", text).replace(",", "").replace("&&", "").strip()
    if consumed:
        raise ValueError(f"Unsupported constraint syntax: {raw!r}")
    for op, version_text in _COMPARATOR_RE.findall(text):
        direction, inclusive = _OPERATORS[op]
        version = Version.parse(version_text)
        if direction == "=":
            return VersionConstraint.exact(version, raw=raw)
        if direction == ">":
            if lower is None or version > lower or (version == lower and not inclusive):
                lower, lower_inc = version, inclusive
        else:
            if upper is None or version < upper or (version == upper and not inclusive):
                upper, upper_inc = version, inclusive
    return VersionConstraint(
        kind=ConstraintKind.RANGE,
        lower=lower,
        lower_inclusive=lower_inc,
        upper=upper,
        upper_inclusive=upper_inc,
        raw=raw,
    )


def _bumped(kind: ConstraintKind, text: str, position: int, raw: str) -> VersionConstraint:
    """Build [v, bump(v)) where bump increments the numeric segment at ``position``."""
    version = Version.parse(text)
    numbers = version.numeric_prefix()
    if not numbers:
        raise ValueError(f"Cannot bump non-numeric version {text!r}")
    position = min(position, len(numbers) - 1)
    upper = numbers[:position] + [numbers[position] + 1, 0]
    return VersionConstraint(
        kind=kind,
        lower=version,
        lower_inclusive=True,
        upper=Version(0, tuple(str(n) for n in upper)),
        upper_inclusive=False,
        raw=raw,
    )
