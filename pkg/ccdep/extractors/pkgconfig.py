#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
pkg-config extractor (``*.pc``) and the module-list parser shared with
the build-script extractors.
"""

import re
from typing import Dict, List, Optional, Tuple

from ..config import Config
from ..model import ToolKind, VersionConstraint, normalize_name
from .base import BaseExtractor, RecordSink


_VARIABLE_RE = re.compile(r"^([A-Za-z0-9_.]+)\s*=\s*(.*)$")
_KEYWORD_RE = re.compile(r"^([A-Za-z0-9_.]+)\s*:\s*(.*)$")
_REFERENCE_RE = re.compile(r"\$\{([A-Za-z0-9_.]+)\}")
_OPERATOR_RE = re.compile(r"(<=|>=|!=|=|<|>)")


def parse_module_list(text: str) -> List[Tuple[int, str, VersionConstraint]]:
    """
    Parse a pkg-config module list such as ``glib-2.0 >= 2.40, zlib``.

    Returns:
        (offset, module, constraint) triples in order
    """
    tokens = [(m.start(), m.group()) for m in re.finditer(r"[^\s,]+", text)]
    split: List[Tuple[int, str]] = []
    for offset, token in tokens:
        # Operators may be glued to names or versions: "zlib>=1.2"
        for part in _OPERATOR_RE.split(token):
            if part:
                split.append((offset, part))
                offset += len(part)

    modules = []
    i = 0
    while i < len(split):
        offset, name = split[i]
        i += 1
        if _OPERATOR_RE.fullmatch(name):
            continue
        constraint = VersionConstraint.unspecified()
        if i < len(split) and _OPERATOR_RE.fullmatch(split[i][1]):
            operator = split[i][1]
            version = split[i + 1][1] if i + 1 < len(split) else ""
            i += 2
            constraint = VersionConstraint.parse(f"{operator}{version}") if version else VersionConstraint.unspecified(operator)
        modules.append((offset, name, constraint))
    return modules


def pkgconfig_library(module: str) -> Optional[str]:
    """Normalize a module name with the pkg-config rule, or None if it is empty."""
    try:
        return normalize_name(module, ToolKind.PKG_CONFIG)
    except ValueError:
        return None


class PkgConfigExtractor(BaseExtractor):
    """
    Extract ``Requires`` and ``Requires.private`` modules of a ``.pc`` file.

    ``${var}`` references resolve against the file's own variable lines.
    """

    tool = ToolKind.PKG_CONFIG
    patterns = ("*.pc",)

    REQUIRE_FIELDS = ("requires", "requires.private")

    def parse(self, text: str, sink: RecordSink) -> None:
        variables: Dict[str, str] = {}
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            variable = _VARIABLE_RE.match(line)
            if variable:
                variables[variable.group(1)] = self._expand(variable.group(2), variables, number, sink)
                continue
            keyword = _KEYWORD_RE.match(line)
            if not keyword:
                sink.warn(number, f"unrecognised line {line[:40]!r}")
                continue
            if keyword.group(1).lower() not in self.REQUIRE_FIELDS:
                continue
            value = self._expand(keyword.group(2), variables, number, sink)
            for _, module, constraint in parse_module_list(value):
                if "$" in module:
                    sink.warn(number, f"skipped module {module!r} with an unresolved reference")
                    continue
                sink.add(module, number, constraint=constraint)

    @staticmethod
    def _expand(value: str, variables: Dict[str, str], line: int, sink: RecordSink) -> str:
        for _ in range(Config.CMAKE_MAX_SUBSTITUTION_DEPTH):
            expanded = _REFERENCE_RE.sub(lambda m: variables.get(m.group(1), m.group(0)), value)
            if expanded == value:
                break
            value = expanded
        for unresolved in _REFERENCE_RE.findall(value):
            if unresolved not in variables:
                sink.warn(line, f"unresolved variable ${{{unresolved}}}")
        return value


def extract_pkgconfig(text, path):
    """Extract required modules from a pkg-config ``.pc`` file."""
    return PkgConfigExtractor().extract(text, path)
