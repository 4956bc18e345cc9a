#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Xrepo and Xmake extractors (``xmake.lua``).

``add_requires`` declares packages fetched by xrepo, xmake's package
manager; ``add_packages`` links them into targets. Xrepo reports the
former, Xmake both.
"""

import re
from typing import Optional, Tuple

from ..model import ToolKind, VersionConstraint
from .base import BaseExtractor, RecordSink
from .lexing import LineIndex, find_calls, mask_comments, split_top_level, string_literal, string_literals


_BARE_CALL_RE = re.compile(r"""(?<![\w.])(add_requires|add_packages)[ \t]*(?=["'])""")
_REQUIRES_RE = re.compile(r"""(?<![\w.:])add_requires\s*[("']""")


def parse_requirement(spec: str) -> Optional[Tuple[str, Optional[VersionConstraint]]]:
    """
    Parse one ``add_requires`` string: ``"zlib 1.2.x"``, ``"conan::fmt/9.1.0"``.

    Returns:
        (name, constraint), or None for an empty string
    """
    parts = spec.split(None, 1)
    if not parts:
        return None
    name = parts[0]
    version = parts[1].strip() if len(parts) > 1 else ""
    if "::" in name:
        name = name.split("::", 1)[1]
    if "/" in name:
        # Conan-style reference through a foreign package manager
        name, _, pinned = name.partition("/")
        version = version or pinned.split("@", 1)[0]
    if not name:
        return None
    return name, VersionConstraint.parse(version) if version else None


def mask_lua(text: str) -> str:
    return mask_comments(
        text,
        line_comments=("--",),
        block_comments=(("--[[", "]]"), ("--[=[", "]=]")),
        long_strings=(("[[", "]]"), ("[=[", "]=]")),
    )


class XmakeScriptExtractor(BaseExtractor):
    """Base for extractors reading package calls from ``xmake.lua``."""

    patterns = ("xmake.lua",)
    FUNCTIONS: Tuple[str, ...] = ()

    def parse(self, text: str, sink: RecordSink) -> None:
        masked = mask_lua(text)
        index = LineIndex(masked)
        pattern = re.compile(r"(?<![\w.:])(" + "|".join(self.FUNCTIONS) + r")\s*\(")

        def unbalanced(offset, name):
            sink.warn(index.line_of(offset), f"unbalanced parentheses in {name}()")

        for call in find_calls(masked, pattern, on_unbalanced=unbalanced):
            for offset, piece in split_top_level(call.args):
                value = string_literal(piece)
                if value is not None:
                    self._add(call.name, value, index.line_of(call.args_start + offset), sink)

        for match in _BARE_CALL_RE.finditer(masked):
            if match.group(1) not in self.FUNCTIONS:
                continue
            literals = string_literals(masked[match.end():])
            first = next(literals, None)
            if first is not None and first[0] == 0:
                self._add(match.group(1), first[1], index.line_of(match.start()), sink)

    @staticmethod
    def _add(function: str, value: str, line: int, sink: RecordSink) -> None:
        if function == "add_packages":
            if value.strip():
                sink.add(value.strip(), line)
            return
        parsed = parse_requirement(value)
        if parsed is None:
            sink.warn(line, "add_requires() with an empty package string")
            return
        name, constraint = parsed
        sink.add(name, line, constraint=constraint)


class XrepoExtractor(XmakeScriptExtractor):
    """Extract ``add_requires`` packages."""

    tool = ToolKind.XREPO
    FUNCTIONS = ("add_requires",)

    def accepts(self, path, text, siblings=()) -> bool:
        return _REQUIRES_RE.search(mask_lua(text)) is not None


class XmakeExtractor(XmakeScriptExtractor):
    """Extract ``add_requires`` and ``add_packages`` packages."""

    tool = ToolKind.XMAKE
    FUNCTIONS = ("add_requires", "add_packages")


def extract_xrepo(text, path):
    """Extract xrepo package requirements from ``xmake.lua``."""
    return XrepoExtractor().extract(text, path)


def extract_xmake(text, path):
    """Extract required and linked packages from ``xmake.lua``."""
    return XmakeExtractor().extract(text, path)
