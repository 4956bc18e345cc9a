#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
CMake, CPM and Hunter extractors.

All three read ``CMakeLists.txt`` and share one command tokenizer.
``set()`` assignments feed a small evaluation context whose values are
substituted into later arguments. Conditions are not evaluated: commands
in every branch of ``if()``/``else()`` are mined.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from ..config import Config
from ..model import ToolKind, Version, VersionConstraint
from .base import BaseExtractor, RecordSink, tag_constraint
from .lexing import LineIndex, find_calls, mask_comments
from .pkgconfig import pkgconfig_library

logger = logging.getLogger(__name__)


_VARIABLE_RE = re.compile(r"\$\{([A-Za-z0-9_.+\-/]*)\}")
_COMMAND_RE = re.compile(r"(?<![\w$}.])([A-Za-z_][A-Za-z0-9_]*)[ \t]*\(")
_TOKEN_RE = re.compile(
    r'"((?:\\.|[^"\\])*)"'  # quoted argument
    r"|\[(=*)\[(.*?)\]\2\]"  # bracket argument
    r'|([^\s()"]+)',  # unquoted argument
    re.DOTALL,
)
_MODULE_SPEC_RE = re.compile(r"^([^<>=]+?)\s*(<=|>=|=|<|>)?\s*([^<>=]*)$")


@dataclass
class CMakeEvalContext:
    """
    Variables known while reading one CMake file.

    Substitution is repeated until nothing changes or
    ``max_substitution_depth`` passes have run; unknown variables stay as
    literal ``${NAME}`` text.
    """

    variables: Dict[str, str] = field(default_factory=dict)
    max_substitution_depth: int = Config.CMAKE_MAX_SUBSTITUTION_DEPTH

    def substitute(self, text: str) -> str:
        for _ in range(self.max_substitution_depth):
            expanded = _VARIABLE_RE.sub(lambda m: self.variables.get(m.group(1), m.group(0)), text)
            if expanded == text:
                break
            text = expanded
        return text

    def set(self, name: str, value: Optional[str]) -> None:
        if value is None:
            self.variables.pop(name, None)
        else:
            self.variables[name] = value


@dataclass(frozen=True)
class Command:
    """One command invocation with substituted arguments."""

    name: str
    args: Tuple[str, ...]
    arg_lines: Tuple[int, ...]
    line: int

    def values_after(self, keyword: str, keywords) -> List[str]:
        """Get the arguments following ``keyword`` up to the next keyword."""
        values: List[str] = []
        collecting = False
        for arg in self.args:
            if arg == keyword:
                collecting = True
                continue
            if collecting:
                if arg in keywords:
                    break
                values.append(arg)
        return values


def iter_commands(text: str, context: CMakeEvalContext, on_warning=None) -> Iterator[Command]:
    """
    Tokenize a CMake file and yield its commands in order.

    ``set()`` commands update ``context`` before later commands are
    substituted. Unbalanced parentheses are reported through
    ``on_warning(line, message)`` and reading resumes at the next line.
    """
    masked = mask_comments(
        text,
        line_comments=("#",),
        block_comments=(("#[[", "]]"), ("#[=[", "]=]"), ("#[==[", "]==]")),
        quotes='"',
        long_strings=(("[[", "]]"), ("[=[", "]=]"), ("[==[", "]==]")),
    )
    index = LineIndex(masked)

    def unbalanced(offset, name):
        if on_warning is not None:
            on_warning(index.line_of(offset), f"unbalanced parentheses in {name}()")

    for call in find_calls(masked, _COMMAND_RE, quotes='"', on_unbalanced=unbalanced):
        args: List[str] = []
        lines: List[int] = []
        for token in _TOKEN_RE.finditer(call.args):
            line = index.line_of(call.args_start + token.start())
            quoted, _, bracket, unquoted = token.groups()
            if quoted is not None:
                args.append(context.substitute(_unescape(quoted)))
                lines.append(line)
            elif bracket is not None:
                args.append(bracket)
                lines.append(line)
            else:
                for item in context.substitute(unquoted).split(";"):
                    if item:
                        args.append(item)
                        lines.append(line)
        command = Command(
            name=call.name.lower(),
            args=tuple(args),
            arg_lines=tuple(lines),
            line=index.line_of(call.start),
        )
        if command.name == "set" and command.args:
            _apply_set(command, context)
        yield command


def _unescape(value: str) -> str:
    return re.sub(r"\\(.)", lambda m: {"n": "\n", "t": "\t"}.get(m.group(1), m.group(1)), value)


def _apply_set(command: Command, context: CMakeEvalContext) -> None:
    name, values = command.args[0], list(command.args[1:])
    if "CACHE" in values:
        values = values[:values.index("CACHE")]
    if values and values[-1] == "PARENT_SCOPE":
        values = values[:-1]
    context.set(name, ";".join(values) if values else None)


class CMakeScriptExtractor(BaseExtractor):
    """Base for extractors that read CMake commands."""

    patterns = ("CMakeLists.txt",)
    COMMANDS: frozenset = frozenset()

    # Set for package managers that live inside another tool's CMakeLists.txt
    embedded: bool = False

    def accepts(self, path, text, siblings=()) -> bool:
        if not self.embedded:
            return True
        return any(command.name in self.COMMANDS for command in iter_commands(text, CMakeEvalContext()))

    def parse(self, text: str, sink: RecordSink) -> None:
        context = CMakeEvalContext()
        for command in iter_commands(text, context, on_warning=sink.warn):
            if command.name in self.COMMANDS:
                self.handle(command, sink)

    def handle(self, command: Command, sink: RecordSink) -> None:
        raise NotImplementedError


# --- CMake ------------------------------------------------------------------

FIND_PACKAGE_KEYWORDS = frozenset({
    "EXACT", "QUIET", "REQUIRED", "COMPONENTS", "OPTIONAL_COMPONENTS", "CONFIG", "MODULE",
    "NO_MODULE", "NO_POLICY_SCOPE", "GLOBAL", "NAMES", "CONFIGS", "HINTS", "PATHS",
    "PATH_SUFFIXES", "REGISTRY_VIEW", "NO_DEFAULT_PATH", "NO_PACKAGE_ROOT_PATH", "NO_CMAKE_PATH",
    "NO_CMAKE_ENVIRONMENT_PATH", "NO_SYSTEM_ENVIRONMENT_PATH", "NO_CMAKE_PACKAGE_REGISTRY",
    "NO_CMAKE_BUILDS_PATH", "NO_CMAKE_SYSTEM_PATH", "NO_CMAKE_INSTALL_PREFIX",
    "NO_CMAKE_SYSTEM_PACKAGE_REGISTRY", "CMAKE_FIND_ROOT_PATH_BOTH", "ONLY_CMAKE_FIND_ROOT_PATH",
    "NO_CMAKE_FIND_ROOT_PATH", "BYPASS_PROVIDER",
})
_COMPONENT_MODES = frozenset({"REQUIRED", "COMPONENTS", "OPTIONAL_COMPONENTS"})
_SKIP_MODES = frozenset({"NAMES", "CONFIGS", "HINTS", "PATHS", "PATH_SUFFIXES", "REGISTRY_VIEW"})

PKG_CHECK_KEYWORDS = frozenset({
    "REQUIRED", "QUIET", "IMPORTED_TARGET", "GLOBAL", "NO_CMAKE_PATH", "NO_CMAKE_ENVIRONMENT_PATH",
})
FIND_LIBRARY_KEYWORDS = frozenset({
    "NAMES", "NAMES_PER_DIR", "HINTS", "PATHS", "PATH_SUFFIXES", "DOC", "REQUIRED", "NO_CACHE",
    "NO_DEFAULT_PATH", "ENV", "REGISTRY_VIEW", "VALIDATOR",
})
FETCH_KEYWORDS = frozenset({
    "GIT_REPOSITORY", "GIT_TAG", "GIT_SHALLOW", "GIT_PROGRESS", "GIT_SUBMODULES", "URL", "URL_HASH",
    "URL_MD5", "SOURCE_DIR", "BINARY_DIR", "SOURCE_SUBDIR", "PATCH_COMMAND", "UPDATE_COMMAND",
    "CONFIGURE_COMMAND", "BUILD_COMMAND", "INSTALL_COMMAND", "TEST_COMMAND", "CMAKE_ARGS",
    "PREFIX", "FIND_PACKAGE_ARGS", "OVERRIDE_FIND_PACKAGE", "EXCLUDE_FROM_ALL", "SYSTEM",
    "DOWNLOAD_EXTRACT_TIMESTAMP", "SVN_REPOSITORY", "HG_REPOSITORY", "DEPENDS", "LOG_DOWNLOAD",
})


def version_constraint(version: str, exact: bool = False) -> VersionConstraint:
    """Map a find_package version argument (``1.1`` or ``1.0...<2.0``) to a constraint."""
    if "..." in version:
        return VersionConstraint.parse(version)
    try:
        parsed = Version.parse(version)
    except ValueError:
        return VersionConstraint.unspecified(version)
    if exact:
        return VersionConstraint.exact(parsed, raw=version)
    return VersionConstraint.at_least(parsed, raw=f">={version}")


def _is_resolved(name: str) -> bool:
    return bool(name) and "${" not in name and "$<" not in name


class CMakeExtractor(CMakeScriptExtractor):
    """
    Extract ``find_package``, ``pkg_check_modules``/``pkg_search_module``,
    ``find_library``, ``FetchContent_Declare`` and ``ExternalProject_Add``.
    """

    tool = ToolKind.CMAKE
    patterns = ("CMakeLists.txt", "*.cmake")
    COMMANDS = frozenset({
        "find_package",
        "pkg_check_modules",
        "pkg_search_module",
        "find_library",
        "fetchcontent_declare",
        "externalproject_add",
    })

    def handle(self, command: Command, sink: RecordSink) -> None:
        if command.name == "find_package":
            self._find_package(command, sink)
        elif command.name in ("pkg_check_modules", "pkg_search_module"):
            self._pkg_modules(command, sink)
        elif command.name == "find_library":
            self._find_library(command, sink)
        else:
            self._fetched(command, sink)

    def _find_package(self, command: Command, sink: RecordSink) -> None:
        if not command.args:
            sink.warn(command.line, "find_package() without a package name")
            return
        name = command.args[0]
        if name.upper() in FIND_PACKAGE_KEYWORDS or not _is_resolved(name):
            sink.warn(command.line, f"find_package() name {name!r} could not be resolved")
            return

        rest = list(command.args[1:])
        version = None
        if rest and rest[0] not in FIND_PACKAGE_KEYWORDS and ("..." in rest[0] or Version.is_version_like(rest[0])):
            version = rest.pop(0)

        components: List[str] = []
        mode = None
        for arg in rest:
            if arg in FIND_PACKAGE_KEYWORDS:
                mode = arg
                continue
            if mode in _COMPONENT_MODES and _is_resolved(arg):
                components.append(arg)

        constraint = version_constraint(version, exact="EXACT" in rest) if version else None
        sink.add(name, command.line, constraint=constraint, components=components)

    def _pkg_modules(self, command: Command, sink: RecordSink) -> None:
        for arg, line in list(zip(command.args, command.arg_lines))[1:]:
            if arg in PKG_CHECK_KEYWORDS:
                continue
            match = _MODULE_SPEC_RE.match(arg)
            if not match or not _is_resolved(match.group(1)):
                sink.warn(line, f"module spec {arg!r} could not be resolved")
                continue
            module, operator, version = match.groups()
            constraint = None
            if operator and version:
                constraint = VersionConstraint.parse(f"{operator}{version}")
            sink.add(module, line, constraint=constraint, library=pkgconfig_library(module))

    def _find_library(self, command: Command, sink: RecordSink) -> None:
        names = command.values_after("NAMES", FIND_LIBRARY_KEYWORDS)
        if not names and len(command.args) > 1 and command.args[1] not in FIND_LIBRARY_KEYWORDS:
            names = [command.args[1]]
        if not names or not _is_resolved(names[0]):
            sink.warn(command.line, "find_library() without a resolvable library name")
            return
        sink.add(names[0], command.line)

    def _fetched(self, command: Command, sink: RecordSink) -> None:
        if not command.args or not _is_resolved(command.args[0]):
            sink.warn(command.line, f"{command.name}() without a resolvable name")
            return
        repository = command.values_after("GIT_REPOSITORY", FETCH_KEYWORDS)
        urls = command.values_after("URL", FETCH_KEYWORDS)
        tag = command.values_after("GIT_TAG", FETCH_KEYWORDS)
        source_url = (repository or urls or [None])[0]
        sink.add(
            command.args[0],
            command.line,
            constraint=tag_constraint(tag[0] if tag else None),
            source_url=source_url,
        )


# --- CPM --------------------------------------------------------------------

CPM_KEYWORDS = frozenset({
    "NAME", "VERSION", "GIT_TAG", "GITHUB_REPOSITORY", "GITLAB_REPOSITORY", "BITBUCKET_REPOSITORY",
    "GIT_REPOSITORY", "URL", "URI", "OPTIONS", "DOWNLOAD_ONLY", "SOURCE_DIR", "EXCLUDE_FROM_ALL",
    "SYSTEM", "PATCHES", "GIT_SHALLOW", "FIND_PACKAGE_ARGUMENTS", "FORCE", "NO_CACHE", "URL_HASH",
    "SOURCE_SUBDIR", "CUSTOM_CACHE_KEY",
})
_HOSTS = {
    "gh": "https://github.com/",
    "gl": "https://gitlab.com/",
    "bb": "https://bitbucket.org/",
}
_SHORTHAND_RE = re.compile(r"^(gh|gl|bb):([^@#\s]+?)(?:@([^#\s]+))?(?:#(\S+))?$")
_GIT_URL_RE = re.compile(r"^(\S+?\.git)(?:@([^#\s]+))?(?:#(\S+))?$")


@dataclass(frozen=True)
class CpmPackage:
    name: Optional[str]
    version: Optional[str] = None
    tag: Optional[str] = None
    url: Optional[str] = None


def parse_cpm_uri(uri: str) -> Optional[CpmPackage]:
    """Parse CPM's shorthand ``gh:owner/name@version#tag`` or ``<git-url>@version``."""
    match = _SHORTHAND_RE.match(uri)
    if match:
        host, repository, version, tag = match.groups()
        repository = repository.rstrip("/")
        return CpmPackage(
            name=_repository_name(repository),
            version=version,
            tag=tag,
            url=_HOSTS[host] + repository,
        )
    match = _GIT_URL_RE.match(uri)
    if match:
        url, version, tag = match.groups()
        return CpmPackage(name=_repository_name(url), version=version, tag=tag, url=url)
    return None


def _repository_name(location: str) -> str:
    location = location.rstrip("/")
    if location.endswith(".git"):
        location = location[:-4]
    return re.split(r"[/:]", location)[-1]


class CpmExtractor(CMakeScriptExtractor):
    """Extract ``CPMAddPackage``/``CPMFindPackage``/``CPMDeclarePackage`` calls."""

    tool = ToolKind.CPM
    embedded = True
    COMMANDS = frozenset({"cpmaddpackage", "cpmfindpackage", "cpmdeclarepackage"})

    def handle(self, command: Command, sink: RecordSink) -> None:
        if not command.args:
            sink.warn(command.line, f"{command.name}() without arguments")
            return

        if command.args[0] not in CPM_KEYWORDS or command.args[0] == "URI":
            uri = command.args[0] if command.args[0] != "URI" else (command.args[1:] or [""])[0]
            package = parse_cpm_uri(uri)
            if package is None:
                sink.warn(command.line, f"unrecognised CPM package reference {uri!r}")
                return
            keyword_name = command.values_after("NAME", CPM_KEYWORDS)
            if keyword_name:
                package = CpmPackage(keyword_name[0], package.version, package.tag, package.url)
        else:
            package = self._keyword_package(command)

        if not package.name or not _is_resolved(package.name):
            sink.warn(command.line, f"{command.name}() without a resolvable package name")
            return
        if package.version and _is_resolved(package.version):
            constraint = tag_constraint(package.version)
        else:
            constraint = tag_constraint(package.tag if package.tag and _is_resolved(package.tag) else None)
        sink.add(package.name, command.line, constraint=constraint, source_url=package.url)

    @staticmethod
    def _keyword_package(command: Command) -> CpmPackage:
        def first(keyword):
            values = command.values_after(keyword, CPM_KEYWORDS)
            return values[0] if values else None

        url = None
        name = first("NAME")
        for keyword, host in (("GITHUB_REPOSITORY", "gh"), ("GITLAB_REPOSITORY", "gl"), ("BITBUCKET_REPOSITORY", "bb")):
            repository = first(keyword)
            if repository:
                url = _HOSTS[host] + repository
                name = name or _repository_name(repository)
        git = first("GIT_REPOSITORY")
        if git:
            url = url or git
            name = name or _repository_name(git)
        url = url or first("URL")
        return CpmPackage(name=name, version=first("VERSION"), tag=first("GIT_TAG"), url=url)


# --- Hunter -----------------------------------------------------------------

class HunterExtractor(CMakeScriptExtractor):
    """Extract ``hunter_add_package(Name [COMPONENTS ...])`` calls."""

    tool = ToolKind.HUNTER
    embedded = True
    COMMANDS = frozenset({"hunter_add_package"})

    def handle(self, command: Command, sink: RecordSink) -> None:
        if not command.args or not _is_resolved(command.args[0]):
            sink.warn(command.line, "hunter_add_package() without a package name")
            return
        components = command.values_after("COMPONENTS", frozenset({"COMPONENTS"}))
        sink.add(command.args[0], command.line, components=components)


def extract_cmake(text, path):
    """Extract find_package/pkg-config/find_library/FetchContent dependencies from CMake."""
    return CMakeExtractor().extract(text, path)


def extract_cpm(text, path):
    """Extract CPM.cmake packages from a ``CMakeLists.txt``."""
    return CpmExtractor().extract(text, path)


def extract_hunter(text, path):
    """Extract Hunter packages from a ``CMakeLists.txt``."""
    return HunterExtractor().extract(text, path)
