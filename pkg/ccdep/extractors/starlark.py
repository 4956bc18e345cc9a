#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Bazel and Buck extractors.

Both tools describe builds in Starlark, a Python dialect, so files are read
with :mod:`ast` without being evaluated. Files that do not parse as Python
fall back to a lexical scan of top-level calls.
"""

import ast
import logging
import re
from dataclasses import dataclass, field
from pathlib import PurePosixPath
from typing import Dict, Iterator, List, Optional, Tuple

from ..config import Config
from ..model import ToolKind, Version, VersionConstraint
from .base import BaseExtractor, RecordSink, tag_constraint
from .lexing import LineIndex, find_calls, keyword_arguments, mask_comments, string_literal, string_literals

logger = logging.getLogger(__name__)


_CALL_RE = re.compile(r"(?<![\w.])([A-Za-z_]\w*)\s*\(")

DEPENDENCY_ATTRIBUTES = (
    "deps",
    "exported_deps",
    "implementation_deps",
    "dynamic_deps",
    "interface_deps",
    "exported_linker_flags_deps",
)


@dataclass(frozen=True)
class StarlarkArgument:
    """
    One call argument.

    Attributes:
        value: The argument's value when it is a single string literal
        strings: Every string literal inside it as (line, value); dict keys
            such as ``select()`` conditions are left out
    """

    value: Optional[str] = None
    strings: Tuple[Tuple[int, str], ...] = ()


@dataclass(frozen=True)
class StarlarkCall:
    name: str
    line: int
    args: Tuple[StarlarkArgument, ...] = ()
    kwargs: Dict[str, StarlarkArgument] = field(default_factory=dict)

    def string(self, key: str) -> Optional[str]:
        argument = self.kwargs.get(key)
        return argument.value if argument is not None else None

    def strings(self, key: str) -> Tuple[Tuple[int, str], ...]:
        argument = self.kwargs.get(key)
        return argument.strings if argument is not None else ()


def read_calls(text: str) -> List[StarlarkCall]:
    """Get every call in a Starlark file, in source order."""
    try:
        tree = ast.parse(text)
    except (SyntaxError, ValueError, RecursionError, MemoryError) as e:
        logger.debug("Starlark file is not valid Python (%s), scanning lexically", type(e).__name__)
        return list(_lexical_calls(text))

    calls = []
    for node in ast.walk(tree):
        if not isinstance(node, ast.Call):
            continue
        name = _callee(node.func)
        if name is None:
            continue
        calls.append((
            (node.lineno, node.col_offset),
            StarlarkCall(
                name=name,
                line=node.lineno,
                args=tuple(_argument(arg) for arg in node.args),
                kwargs={kw.arg: _argument(kw.value) for kw in node.keywords if kw.arg},
            ),
        ))
    return [call for _, call in sorted(calls, key=lambda item: item[0])]


def _callee(func) -> Optional[str]:
    if isinstance(func, ast.Name):
        return func.id
    if isinstance(func, ast.Attribute):
        # native.cc_library(...)
        return func.attr
    return None


def _argument(node) -> StarlarkArgument:
    value = node.value if isinstance(node, ast.Constant) and isinstance(node.value, str) else None
    return StarlarkArgument(value=value, strings=tuple(_strings(node)))


def _strings(node) -> Iterator[Tuple[int, str]]:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, str):
            yield node.lineno, node.value
        return
    if isinstance(node, ast.Dict):
        children = [value for value in node.values if value is not None]
    else:
        children = list(ast.iter_child_nodes(node))
    for child in children:
        yield from _strings(child)


def _lexical_calls(text: str) -> Iterator[StarlarkCall]:
    masked = mask_comments(text, line_comments=("#",), long_strings=(('"""', '"""'), ("'''", "'''")))
    index = LineIndex(masked)
    for call in find_calls(masked, _CALL_RE):
        args = []
        kwargs = {}
        for key, (offset, value_text) in keyword_arguments(call.args).items():
            base = call.args_start + offset
            strings = tuple(
                (index.line_of(base + position), literal)
                for position, literal in string_literals(value_text)
                if not re.match(r"\s*:", value_text[position + len(literal) + 2:])
            )
            argument = StarlarkArgument(value=string_literal(value_text), strings=strings)
            if isinstance(key, int):
                args.append(argument)
            else:
                kwargs[key] = argument
        yield StarlarkCall(name=call.name, line=index.line_of(call.start), args=tuple(args), kwargs=kwargs)


class StarlarkExtractor(BaseExtractor):
    """Base for extractors that read Starlark build files."""

    def parse(self, text: str, sink: RecordSink) -> None:
        for call in read_calls(text):
            self.handle(call, sink)

    def handle(self, call: StarlarkCall, sink: RecordSink) -> None:
        raise NotImplementedError

    def dependency_labels(self, call: StarlarkCall) -> Iterator[Tuple[int, str]]:
        for attribute in DEPENDENCY_ATTRIBUTES:
            yield from call.strings(attribute)


# --- Bazel ------------------------------------------------------------------

REPOSITORY_RULES = frozenset({"http_archive", "git_repository", "new_git_repository"})
_BAZEL_REPO_RE = re.compile(r"^@@?([A-Za-z0-9_.\-~+]+)(?://.*)?$")


class BazelExtractor(StarlarkExtractor):
    """
    Extract Bazel external repositories.

    ``http_archive``/``git_repository`` declarations and ``bazel_dep``
    entries name them directly; ``@repo//pkg:target`` labels in ``deps``
    reference them. Labels inside the workspace (``//pkg``, ``:target``)
    are not dependencies.
    """

    tool = ToolKind.BAZEL
    patterns = ("bazel.build", "BUILD", "BUILD.bazel", "WORKSPACE", "WORKSPACE.bazel", "MODULE.bazel")
    case_insensitive = True

    def handle(self, call: StarlarkCall, sink: RecordSink) -> None:
        if call.name in REPOSITORY_RULES:
            self._repository(call, sink)
        elif call.name == "bazel_dep":
            self._bazel_dep(call, sink)

        for line, label in self.dependency_labels(call):
            match = _BAZEL_REPO_RE.match(label)
            if match:
                sink.add(match.group(1), line)

    @staticmethod
    def _repository(call: StarlarkCall, sink: RecordSink) -> None:
        name = call.string("name")
        if not name:
            sink.warn(call.line, f"{call.name}() without a literal name")
            return
        urls = [value for _, value in call.strings("urls")]
        source_url = (urls or [call.string("url") or call.string("remote")])[0]
        tag = call.string("tag")
        sink.add(name, call.line, constraint=tag_constraint(tag), source_url=source_url)

    @staticmethod
    def _bazel_dep(call: StarlarkCall, sink: RecordSink) -> None:
        name = call.string("name") or (call.args[0].value if call.args else None)
        if not name:
            sink.warn(call.line, "bazel_dep() without a literal name")
            return
        version = call.string("version")
        constraint = None
        if version:
            try:
                constraint = VersionConstraint.exact(Version.parse(version), raw=version)
            except ValueError:
                constraint = VersionConstraint.unspecified(version)
        sink.add(name, call.line, constraint=constraint)


# --- Buck -------------------------------------------------------------------

_BUCK_CELL_RE = re.compile(r"^@?([A-Za-z0-9_.\-]+)//")


class BuckExtractor(StarlarkExtractor):
    """
    Extract Buck cells referenced from ``deps`` (``cell//path:target``) and
    ``prebuilt_cxx_library`` rules kept in a third-party directory.
    """

    tool = ToolKind.BUCK
    patterns = ("BUCK",)

    def handle(self, call: StarlarkCall, sink: RecordSink) -> None:
        if call.name == "prebuilt_cxx_library" and self._in_third_party(sink.path):
            name = call.string("name")
            if name:
                sink.add(name, call.line)
            else:
                sink.warn(call.line, "prebuilt_cxx_library() without a literal name")

        for line, label in self.dependency_labels(call):
            match = _BUCK_CELL_RE.match(label)
            if match:
                sink.add(match.group(1), line)

    @staticmethod
    def _in_third_party(path: str) -> bool:
        return any(part.lower() in Config.THIRD_PARTY_DIRS for part in PurePosixPath(path).parts[:-1])


def extract_bazel(text, path):
    """Extract external repositories from a Bazel BUILD/WORKSPACE/MODULE file."""
    return BazelExtractor().extract(text, path)


def extract_buck(text, path):
    """Extract cells and third-party prebuilt libraries from a ``BUCK`` file."""
    return BuckExtractor().extract(text, path)
