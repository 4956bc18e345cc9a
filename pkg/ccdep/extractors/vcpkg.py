#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Vcpkg manifest (``vcpkg.json``) extractor.
"""

import json

from ..model import ToolKind, Version, VersionConstraint
from .base import BaseExtractor, RecordSink
from .lexing import TokenLocator


class VcpkgExtractor(BaseExtractor):
    """
    Extract dependencies from a vcpkg manifest.

    ``dependencies`` entries are either port names or objects; an object's
    ``version>=`` becomes a lower bound. ``overrides`` pin exact versions.
    Dependencies declared by ``features`` are included.
    """

    tool = ToolKind.VCPKG
    patterns = ("vcpkg.json",)

    OVERRIDE_VERSION_KEYS = ("version", "version-semver", "version-date", "version-string")

    def parse(self, text: str, sink: RecordSink) -> None:
        try:
            manifest = json.loads(text)
        except ValueError as e:
            sink.warn(0, f"vcpkg.json is not well-formed JSON: {e}")
            return
        if not isinstance(manifest, dict):
            sink.warn(0, "vcpkg.json must contain a JSON object")
            return

        locator = TokenLocator(text)
        self._add_dependencies(manifest.get("dependencies"), locator, sink)

        features = manifest.get("features")
        if isinstance(features, dict):
            for feature in features.values():
                if isinstance(feature, dict):
                    self._add_dependencies(feature.get("dependencies"), locator, sink)

        for override in _as_list(manifest.get("overrides")):
            if not isinstance(override, dict) or not isinstance(override.get("name"), str):
                sink.warn(0, f"override entry without a name: {override!r}")
                continue
            name = override["name"]
            line = locator.line_of(name)
            version = next((override[k] for k in self.OVERRIDE_VERSION_KEYS if isinstance(override.get(k), str)), None)
            sink.add(name, line, constraint=_exact(version))

    def _add_dependencies(self, dependencies, locator: TokenLocator, sink: RecordSink) -> None:
        for entry in _as_list(dependencies):
            if isinstance(entry, str):
                sink.add(entry, locator.line_of(entry))
            elif isinstance(entry, dict) and isinstance(entry.get("name"), str):
                name = entry["name"]
                minimum = entry.get("version>=")
                constraint = None
                if isinstance(minimum, str):
                    constraint = VersionConstraint.parse(f">={minimum}")
                sink.add(name, locator.line_of(name), constraint=constraint)
            else:
                sink.warn(0, f"dependency entry without a name: {entry!r}")


def _as_list(value):
    return value if isinstance(value, list) else []


def _exact(version):
    if version is None:
        return None
    try:
        return VersionConstraint.exact(Version.parse(version), raw=version)
    except ValueError:
        return VersionConstraint.unspecified(version)


def extract_vcpkg(text, path):
    """Extract dependencies from a ``vcpkg.json`` manifest."""
    return VcpkgExtractor().extract(text, path)
