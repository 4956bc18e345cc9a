#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Meson extractor (``meson.build``).
"""

import re

from ..model import ToolKind, VersionConstraint
from .base import BaseExtractor, RecordSink
from .lexing import LineIndex, find_calls, keyword_arguments, mask_comments, string_literal, string_literals


_CALL_RE = re.compile(r"((?<![\w.])dependency|(?<![\w.])subproject|(?<=\.)find_library)\s*\(")


class MesonExtractor(BaseExtractor):
    """
    Extract ``dependency()``, ``subproject()`` and ``compiler.find_library()``
    calls.

    ``version:`` takes a string or a list of comparators. Optional
    dependencies (``required: false``) are still dependencies.
    """

    tool = ToolKind.MESON
    patterns = ("meson.build",)

    def parse(self, text: str, sink: RecordSink) -> None:
        masked = mask_comments(text, line_comments=("#",), quotes="'", long_strings=(("'''", "'''"),))
        index = LineIndex(masked)

        def unbalanced(offset, name):
            sink.warn(index.line_of(offset), f"unbalanced parentheses in {name}()")

        for call in find_calls(masked, _CALL_RE, quotes="'", on_unbalanced=unbalanced):
            line = index.line_of(call.start)
            arguments = keyword_arguments(call.args, assign=":")
            if 0 not in arguments:
                sink.warn(line, f"{call.name}() without arguments")
                continue
            name = string_literal(arguments[0][1])
            if name is None:
                sink.warn(line, f"{call.name}() name is not a string literal")
                continue
            if not name.strip():
                sink.warn(line, f"{call.name}() with an empty name")
                continue

            constraint = None
            if "version" in arguments:
                comparators = [value for _, value in string_literals(arguments["version"][1])]
                constraint = VersionConstraint.parse(",".join(comparators)) if comparators else None
            sink.add(name, line, constraint=constraint)


def extract_meson(text, path):
    """Extract dependencies and subprojects from ``meson.build``."""
    return MesonExtractor().extract(text, path)
