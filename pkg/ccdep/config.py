#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Configuration management for ccdep.
"""

from typing import FrozenSet


class Config:
    """Global configuration for ccdep."""

    # Environment variable prefix for every CLI flag (CCDEP_SCAN_CLONE_DB, ...)
    ENV_PREFIX = "CCDEP"

    # File format versions
    REPORT_FORMAT_VERSION = 1
    SIGNATURE_DB_FORMAT_VERSION = 1
    SIGNATURE_DB_MAGIC = "ccdep-signature-db"

    # Discovery defaults
    DEFAULT_IGNORE_DIRS = frozenset({".git", "build", "out"})
    DEFAULT_MAX_FILE_BYTES = 8 * 1024 * 1024
    DEFAULT_WORKERS = 4

    # CMake variable substitution
    CMAKE_MAX_SUBSTITUTION_DEPTH = 8

    # Clone detection
    CLONE_THRESHOLD_DEFAULT = 0.10
    MIN_FUNCTION_BYTES = 64
    CLONE_SOURCE_SUFFIXES = (".c", ".cc", ".cpp", ".cxx", ".h", ".hh", ".hpp", ".hxx")

    # Analytics
    TOPK_PERCENTILES = (1, 5, 10, 20)
    COVERAGE_BATCH_SIZE = 100
    REACH_TOP_N = (10, 100)

    # OS-default libraries that are tagged system=True instead of being dropped
    SYSTEM_LIBRARIES = frozenset({
        "threads",
        "pthread",
        "m",
        "dl",
        "rt",
        "nsl",
        "socket",
        "c",
        "stdc++",
        "util",
        "resolv",
    })

    # Windows SDK import libraries; MSBuild excludes these unless asked not to
    WINDOWS_SYSTEM_LIBRARIES = frozenset({
        "kernel32",
        "user32",
        "gdi32",
        "winspool",
        "comdlg32",
        "advapi32",
        "shell32",
        "ole32",
        "oleaut32",
        "uuid",
        "odbc32",
        "odbccp32",
        "ws2_32",
        "wsock32",
        "winmm",
        "comctl32",
        "crypt32",
        "secur32",
        "iphlpapi",
        "bcrypt",
        "shlwapi",
        "version",
        "dbghelp",
        "psapi",
        "setupapi",
        "userenv",
        "ntdll",
        "imm32",
        "opengl32",
        "glu32",
        "d3d11",
        "dxgi",
        "d3dcompiler",
        "mswsock",
        "netapi32",
        "wininet",
        "winhttp",
        "rpcrt4",
    })

    # Directory names that mark vendored third-party code (Buck prebuilt libraries)
    THIRD_PARTY_DIRS = frozenset({"third-party", "third_party", "thirdparty", "3rdparty", "external", "vendor"})

    @classmethod
    def system_libraries(cls) -> FrozenSet[str]:
        """Get the union of POSIX and Windows system library names."""
        return cls.SYSTEM_LIBRARIES | cls.WINDOWS_SYSTEM_LIBRARIES

    @classmethod
    def is_system_library(cls, library: str) -> bool:
        """Check whether a normalized library name is an OS-default library."""
        return library in cls.system_libraries()
