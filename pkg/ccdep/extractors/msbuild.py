#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
MSBuild extractor (``*.vcxproj``, ``*.vbproj``, ``*.props``).

Linked libraries are the ``;``-separated entries of
``<AdditionalDependencies>`` elements. Windows SDK import libraries are
left out unless the extractor is built with ``include_system=True``.
"""

import re

from ..config import Config
from ..model import ToolKind
from .base import BaseExtractor, RecordSink
from .lexing import LineIndex


_ELEMENT_RE = re.compile(r"<AdditionalDependencies[^>]*>(.*?)</AdditionalDependencies>", re.DOTALL | re.IGNORECASE)
_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)


class MSBuildExtractor(BaseExtractor):
    """Extract ``<AdditionalDependencies>`` libraries of an MSBuild project."""

    tool = ToolKind.MSBUILD
    patterns = ("*.vcxproj", "*.vbproj", "*.props")

    @property
    def include_system(self) -> bool:
        return bool(self.config.get("include_system", False))

    def parse(self, text: str, sink: RecordSink) -> None:
        text = _COMMENT_RE.sub(lambda m: re.sub(r"[^\n]", " ", m.group()), text)
        index = LineIndex(text)
        for element in _ELEMENT_RE.finditer(text):
            offset = element.start(1)
            for entry in element.group(1).split(";"):
                line = index.line_of(offset + len(entry) - len(entry.lstrip()))
                offset += len(entry) + 1
                name = library_name(entry)
                if name is None:
                    continue
                if not self.include_system and name.lower() in Config.WINDOWS_SYSTEM_LIBRARIES:
                    continue
                sink.add(name, line)


def library_name(entry: str):
    """
    Get the library named by one ``AdditionalDependencies`` entry.

    Returns:
        Base name without directory and ``.lib`` suffix, or None for
        item metadata references and property macros
    """
    entry = entry.strip()
    if not entry or "%(" in entry or "$(" in entry:
        return None
    entry = re.split(r"[\\/]", entry)[-1]
    if entry.lower().endswith(".lib"):
        entry = entry[:-4]
    return entry or None


def extract_msbuild(text, path, include_system: bool = False):
    """Extract linked libraries from an MSBuild project file."""
    return MSBuildExtractor(include_system=include_system).extract(text, path)
