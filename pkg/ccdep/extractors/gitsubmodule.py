#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Git submodule extractor (``.gitmodules``).
"""

import re

from ..model import ToolKind
from .base import BaseExtractor, RecordSink


class GitSubmoduleExtractor(BaseExtractor):
    """
    Extract one record per ``[submodule "..."]`` section that has a url.

    The library name is the last segment of the url; the url is kept as
    ``source_url``. Submodules carry no version constraint.
    """

    tool = ToolKind.GIT_SUBMODULE
    patterns = (".gitmodules",)

    _SECTION_RE = re.compile(r'^\[\s*([A-Za-z][\w.\-]*)(?:\s+"((?:\\.|[^"\\])*)")?\s*\]$')
    _KEY_RE = re.compile(r"^([A-Za-z][\w\-]*)\s*=\s*(.*)$")

    def parse(self, text: str, sink: RecordSink) -> None:
        section = None
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line[0] in "#;":
                continue
            if line.startswith("["):
                self._close(section, sink)
                header = self._SECTION_RE.match(line)
                if header and header.group(1).lower() == "submodule":
                    section = {"name": header.group(2) or "", "line": number, "url": None}
                else:
                    if not header:
                        sink.warn(number, f"malformed section header {line!r}")
                    section = None
                continue
            if section is None:
                continue
            key = self._KEY_RE.match(line)
            if not key:
                sink.warn(number, f"malformed line in submodule {section['name']!r}")
                continue
            if key.group(1).lower() == "url" and section["url"] is None:
                section["url"] = (_unquote(key.group(2)), number)
        self._close(section, sink)

    @staticmethod
    def _close(section, sink: RecordSink) -> None:
        if section is None:
            return
        if section["url"] is None or not section["url"][0]:
            sink.warn(section["line"], f"submodule {section['name']!r} has no url")
            return
        url, line = section["url"]
        sink.add(url, line, source_url=url)


def _unquote(value: str) -> str:
    value = value.split(" #", 1)[0].split(" ;", 1)[0].strip()
    if len(value) >= 2 and value[0] == value[-1] == '"':
        value = value[1:-1]
    return value.strip()


def extract_gitsubmodule(text, path):
    """Extract submodules from ``.gitmodules``."""
    return GitSubmoduleExtractor().extract(text, path)
