#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Package management tools and dependency lifecycle phases.

C/C++ dependencies move through two phases: packages are placed locally
during Install and located, compiled and linked during Build. Copied code
that no tool manages is reported under a separate Clone phase.
"""

from enum import Enum
from typing import Optional


class Phase(str, Enum):
    """Lifecycle phase a dependency is handled in."""

    INSTALL = "Install"
    BUILD = "Build"
    CLONE = "Clone"


class ToolchainClass(str, Enum):
    """Where an Install-phase tool retrieves libraries from."""

    SYSTEM_LIBRARY = "SystemLibrary"
    APPLICATION_LEVEL = "ApplicationLevel"
    CODE_CLONE = "CodeClone"


class ToolKind(str, Enum):
    """
    The 21 package management tools plus the clone-signature detector.

    Values are the canonical tool names used in reports.
    """

    # Install phase: package managers and submodules
    DEB = "Deb"
    CONAN = "Conan"
    VCPKG = "Vcpkg"
    CLIB = "Clib"
    CPM = "CPM"
    BUCKAROO = "Buckaroo"
    DDS = "Dds"
    HUNTER = "Hunter"
    CPPGET = "Cppget"
    XREPO = "Xrepo"
    GIT_SUBMODULE = "GitSubmodule"
    PKG_CONFIG = "PkgConfig"

    # Build phase: build systems
    MAKE = "Make"
    CMAKE = "CMake"
    AUTOCONF = "Autoconf"
    BAZEL = "Bazel"
    MESON = "Meson"
    MSBUILD = "MSBuild"
    XMAKE = "Xmake"
    BUILD2 = "Build2"
    BUCK = "Buck"

    # Copied code
    CLONE_SIG = "CloneSig"

    @property
    def phase(self) -> Phase:
        """Get the fixed lifecycle phase of this tool."""
        return _PHASES[self]

    @property
    def toolchain_class(self) -> Optional[ToolchainClass]:
        """Get the toolchain class of an Install-phase tool (None for build systems)."""
        return _TOOLCHAIN_CLASSES.get(self)

    @property
    def is_modern(self) -> bool:
        """True for application-level managers and build systems with an integrated manager."""
        return self.toolchain_class is ToolchainClass.APPLICATION_LEVEL or self in (
            ToolKind.XMAKE,
            ToolKind.BUILD2,
        )

    @classmethod
    def from_name(cls, name: str) -> "ToolKind":
        """
        Look up a tool by its value or member name, case-insensitively.

        Raises:
            ValueError: If no tool has that name
        """
        key = name.strip().lower().replace("-", "").replace("_", "")
        for tool in cls:
            if key in (tool.value.lower(), tool.name.lower().replace("_", "")):
                return tool
        raise ValueError(f"Unknown tool: {name!r}")

    @classmethod
    def package_tools(cls):
        """Get the 21 package management tools, without the clone detector."""
        return [tool for tool in cls if tool is not cls.CLONE_SIG]


_INSTALL_TOOLS = (
    ToolKind.DEB,
    ToolKind.CONAN,
    ToolKind.VCPKG,
    ToolKind.CLIB,
    ToolKind.CPM,
    ToolKind.BUCKAROO,
    ToolKind.DDS,
    ToolKind.HUNTER,
    ToolKind.CPPGET,
    ToolKind.XREPO,
    ToolKind.GIT_SUBMODULE,
    ToolKind.PKG_CONFIG,
)

_PHASES = {tool: Phase.INSTALL for tool in _INSTALL_TOOLS}
_PHASES.update({tool: Phase.BUILD for tool in ToolKind if tool not in _PHASES})
_PHASES[ToolKind.CLONE_SIG] = Phase.CLONE

_TOOLCHAIN_CLASSES = {
    ToolKind.DEB: ToolchainClass.SYSTEM_LIBRARY,
    ToolKind.PKG_CONFIG: ToolchainClass.SYSTEM_LIBRARY,
    ToolKind.GIT_SUBMODULE: ToolchainClass.CODE_CLONE,
    ToolKind.CLONE_SIG: ToolchainClass.CODE_CLONE,
}
_TOOLCHAIN_CLASSES.update({
    tool: ToolchainClass.APPLICATION_LEVEL
    for tool in _INSTALL_TOOLS
    if tool not in _TOOLCHAIN_CLASSES
})
