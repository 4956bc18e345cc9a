"""
Manifest and build-script extractors for ccdep.
"""

from .base import BaseExtractor, ExtractionResult, RecordSink
from .debian import DebControlExtractor, extract_deb_control
from .conan import ConanExtractor, extract_conan
from .vcpkg import VcpkgExtractor, extract_vcpkg
from .clib import ClibExtractor, extract_clib
from .cmake import CMakeEvalContext, CMakeExtractor, CpmExtractor, HunterExtractor, extract_cmake, extract_cpm, extract_hunter
from .buckaroo import BuckarooExtractor, extract_buckaroo
from .dds import DdsExtractor, extract_dds
from .build2 import Build2Extractor, CppgetExtractor, extract_build2, extract_cppget
from .xmake import XmakeExtractor, XrepoExtractor, extract_xmake, extract_xrepo
from .gitsubmodule import GitSubmoduleExtractor, extract_gitsubmodule
from .pkgconfig import PkgConfigExtractor, extract_pkgconfig
from .make import MakeExtractor, extract_make
from .autoconf import AutoconfExtractor, extract_autoconf
from .starlark import BazelExtractor, BuckExtractor, extract_bazel, extract_buck
from .meson import MesonExtractor, extract_meson
from .msbuild import MSBuildExtractor, extract_msbuild

# One extractor per manifest tool, Install phase first
EXTRACTORS = (
    DebControlExtractor,
    ConanExtractor,
    VcpkgExtractor,
    ClibExtractor,
    CpmExtractor,
    BuckarooExtractor,
    DdsExtractor,
    HunterExtractor,
    CppgetExtractor,
    XrepoExtractor,
    GitSubmoduleExtractor,
    PkgConfigExtractor,
    MakeExtractor,
    CMakeExtractor,
    AutoconfExtractor,
    BazelExtractor,
    MesonExtractor,
    MSBuildExtractor,
    XmakeExtractor,
    Build2Extractor,
    BuckExtractor,
)


__all__ = [
    "BaseExtractor",
    "ExtractionResult",
    "RecordSink",
    "EXTRACTORS",
    "CMakeEvalContext",
    "DebControlExtractor",
    "ConanExtractor",
    "VcpkgExtractor",
    "ClibExtractor",
    "CpmExtractor",
    "BuckarooExtractor",
    "DdsExtractor",
    "HunterExtractor",
    "CppgetExtractor",
    "XrepoExtractor",
    "GitSubmoduleExtractor",
    "PkgConfigExtractor",
    "MakeExtractor",
    "CMakeExtractor",
    "AutoconfExtractor",
    "BazelExtractor",
    "MesonExtractor",
    "MSBuildExtractor",
    "XmakeExtractor",
    "Build2Extractor",
    "BuckExtractor",
    "extract_deb_control",
    "extract_conan",
    "extract_vcpkg",
    "extract_clib",
    "extract_cpm",
    "extract_buckaroo",
    "extract_dds",
    "extract_hunter",
    "extract_cppget",
    "extract_xrepo",
    "extract_gitsubmodule",
    "extract_pkgconfig",
    "extract_make",
    "extract_cmake",
    "extract_autoconf",
    "extract_bazel",
    "extract_meson",
    "extract_msbuild",
    "extract_xmake",
    "extract_build2",
    "extract_buck",
]
