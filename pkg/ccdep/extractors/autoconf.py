#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Autoconf extractor (``configure``, ``configure.ac``, ``configure.in``).

Library checks are m4 macro calls. Arguments are quoted with ``[ ]``;
parentheses inside quotes do not close the call.
"""

import re
from typing import List, Optional, Tuple

from ..model import ToolKind, Version, VersionConstraint
from .base import BaseExtractor, RecordSink
from .lexing import LineIndex, split_top_level
from .pkgconfig import parse_module_list, pkgconfig_library


_MACRO_RE = re.compile(
    r"(?<![\w$])(AC_CHECK_LIB|AC_SEARCH_LIBS|PKG_CHECK_MODULES(?:_STATIC)?|PKG_CHECK_EXISTS|AX_BOOST_[A-Z0-9_]+)\b"
)
_COMMENT_RE = re.compile(r"(?m)(?:^|(?<=\s))(?:dnl\b|#).*$")


def mask_m4_comments(text: str) -> str:
    """Blank ``dnl`` and ``#`` comments, keeping offsets."""
    return _COMMENT_RE.sub(lambda m: " " * len(m.group()), text)


def m4_close(text: str, open_pos: int) -> Optional[int]:
    """Find the parenthesis closing the macro call opened at ``open_pos``, skipping quoted text."""
    depth = 0
    quote = 0
    for i in range(open_pos, len(text)):
        ch = text[i]
        if ch == "[":
            quote += 1
        elif ch == "]":
            quote = max(quote - 1, 0)
        elif quote:
            continue
        elif ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return i
    return None


def unquote(argument: str) -> str:
    """Strip the outer m4 quotes of one argument."""
    argument = argument.strip()
    while len(argument) >= 2 and argument[0] == "[" and argument[-1] == "]":
        argument = argument[1:-1].strip()
    return argument


def m4_arguments(args: str) -> List[Tuple[int, str]]:
    """Split macro arguments on top-level commas; returns (offset, unquoted value)."""
    return [(offset, unquote(piece)) for offset, piece in split_top_level(args, ",", quotes="", brackets="([")]


class AutoconfExtractor(BaseExtractor):
    """
    Extract ``AC_CHECK_LIB``, ``AC_SEARCH_LIBS``, ``PKG_CHECK_MODULES``,
    ``PKG_CHECK_EXISTS`` and the ``AX_BOOST_*`` macros.
    """

    tool = ToolKind.AUTOCONF
    patterns = ("configure", "configure.*")

    def parse(self, text: str, sink: RecordSink) -> None:
        masked = mask_m4_comments(text)
        index = LineIndex(masked)
        pos = 0
        while True:
            match = _MACRO_RE.search(masked, pos)
            if not match:
                return
            macro = match.group(1)
            line = index.line_of(match.start())
            after = match.end()
            while after < len(masked) and masked[after] in " \t":
                after += 1

            if after >= len(masked) or masked[after] != "(":
                # AX_BOOST_SYSTEM and friends are usually called bare
                if macro.startswith("AX_BOOST_") and macro != "AX_BOOST_BASE":
                    self._boost_component(macro, line, sink)
                pos = match.end()
                continue

            close = m4_close(masked, after)
            if close is None:
                sink.warn(line, f"unterminated {macro} call")
                newline = masked.find("\n", match.end())
                if newline < 0:
                    return
                pos = newline + 1
                continue

            args = m4_arguments(masked[after + 1:close])
            self._handle(macro, args, after + 1, line, index, sink)
            pos = close + 1

    def _handle(self, macro, args, args_start, line, index, sink: RecordSink) -> None:
        values = [value for _, value in args]
        if macro == "AC_CHECK_LIB":
            if values:
                self._add(values[0], line, sink)
        elif macro == "AC_SEARCH_LIBS":
            if len(values) > 1:
                for name in values[1].split():
                    self._add(name, line, sink)
        elif macro.startswith("PKG_CHECK_MODULES"):
            if len(args) > 1:
                self._modules(args[1], args_start, index, sink)
        elif macro == "PKG_CHECK_EXISTS":
            if args:
                self._modules(args[0], args_start, index, sink)
        elif macro == "AX_BOOST_BASE":
            constraint = None
            if values and values[0]:
                try:
                    constraint = VersionConstraint.at_least(Version.parse(values[0]), raw=f">={values[0]}")
                except ValueError:
                    constraint = VersionConstraint.unspecified(values[0])
            sink.add("boost", line, constraint=constraint)
        else:
            self._boost_component(macro, line, sink)

    @staticmethod
    def _add(name: str, line: int, sink: RecordSink) -> None:
        if "$" in name:
            sink.warn(line, f"library {name!r} depends on a shell variable")
            return
        sink.add(name, line)

    @staticmethod
    def _modules(argument, args_start, index, sink: RecordSink) -> None:
        offset, value = argument
        for module_offset, module, constraint in parse_module_list(value):
            line = index.line_of(args_start + offset + module_offset)
            if "$" in module:
                sink.warn(line, f"module {module!r} depends on a shell variable")
                continue
            sink.add(module, line, constraint=constraint, library=pkgconfig_library(module))

    @staticmethod
    def _boost_component(macro: str, line: int, sink: RecordSink) -> None:
        component = macro[len("AX_BOOST_"):].lower()
        sink.add("boost", line, components=[component])


def extract_autoconf(text, path):
    """Extract library checks from ``configure.ac``."""
    return AutoconfExtractor().extract(text, path)
