#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Unit tests for Install-phase extractors.
"""

from ccdep.extractors import (
    BuckarooExtractor,
    ClibExtractor,
    CppgetExtractor,
    Build2Extractor,
    extract_buckaroo,
    extract_clib,
    extract_conan,
    extract_cpm,
    extract_cppget,
    extract_dds,
    extract_deb_control,
    extract_gitsubmodule,
    extract_hunter,
    extract_pkgconfig,
    extract_vcpkg,
    extract_xrepo,
)
from ccdep.model import ConstraintKind, Phase, ToolKind, Version


def by_library(result):
    return {record.library: record for record in result.records}


class TestDebControl:
    """Test cases for the Debian control extractor."""

    CONTROL = (
        "Source: demo\n"
        "Build-Depends: debhelper-compat (= 13), libssl-dev (>= 1.1),\n"
        " zlib1g-dev [amd64], libcheck-dev <!nocheck>\n"
        "\n"
        "Package: demo\n"
        "Depends: ${misc:Depends}, libpng-dev | libjpeg-dev\n"
        "Description: not a dependency field, libfake-dev\n"
    )

    def test_relations(self):
        """Test every relation and alternative becomes a record."""
        result = extract_deb_control(self.CONTROL, "debian/control")
        assert sorted(result.libraries) == ["check", "debhelper-compat", "jpeg", "png", "ssl", "zlib1g"]
        assert all(record.tool is ToolKind.DEB and record.phase is Phase.INSTALL for record in result.records)

    def test_constraints(self):
        """Test version relations map to constraints."""
        records = by_library(extract_deb_control(self.CONTROL, "debian/control"))
        assert records["debhelper-compat"].constraint.kind is ConstraintKind.EXACT
        ssl = records["ssl"].constraint
        assert ssl.kind is ConstraintKind.RANGE
        assert ssl.lower == Version.parse("1.1") and ssl.lower_inclusive
        assert not records["png"].constraint.is_specified

    def test_continuation_lines(self):
        """Test records on continuation lines point at that line."""
        records = by_library(extract_deb_control(self.CONTROL, "debian/control"))
        assert records["ssl"].evidence.line == 2
        assert records["zlib1g"].evidence.line == 3
        assert records["png"].evidence.line == 6

    def test_substitution_variable_warns(self):
        """Test ${...} substitutions are skipped with a warning."""
        result = extract_deb_control(self.CONTROL, "debian/control")
        assert any("substitution variable" in warning.message for warning in result.warnings)


class TestConan:
    """Test cases for the Conan extractor."""

    def test_conanfile_txt(self):
        """Test [requires] and [tool_requires] are read, other sections are not."""
        text = (
            "[requires]\n"
            "zlib/1.2.13\n"
            "openssl/[>=1.1 <4]@conan/stable  # comment\n"
            "\n"
            "[tool_requires]\n"
            "cmake/3.25.1\n"
            "\n"
            "[generators]\n"
            "CMakeDeps\n"
        )
        records = by_library(extract_conan(text, "conanfile.txt"))
        assert sorted(records) == ["cmake", "openssl", "zlib"]
        assert records["zlib"].constraint.kind is ConstraintKind.EXACT
        assert records["openssl"].constraint.kind is ConstraintKind.RANGE
        assert records["openssl"].evidence.line == 3

    def test_conanfile_py(self):
        """Test recipe attributes and self.requires() calls are mined without running the recipe."""
        text = (
            "from conan import ConanFile\n"
            "\n"
            "class Demo(ConanFile):\n"
            "    requires = \"zlib/1.2.13\", \"fmt/9.1.0\"\n"
            "\n"
            "    def requirements(self):\n"
            "        self.requires(\"boost/1.81.0\")\n"
            "        # self.requires(\"ignored/1.0\")\n"
        )
        records = by_library(extract_conan(text, "conanfile.py"))
        assert sorted(records) == ["boost", "fmt", "zlib"]
        assert records["boost"].evidence.line == 7

    def test_conaninfo_placeholders(self):
        """Test semver-mode placeholders pin no version."""
        text = "[settings]\nos=Linux\n\n[requires]\nzlib/1.Y.Z\n"
        records = by_library(extract_conan(text, "conaninfo.txt"))
        assert list(records) == ["zlib"]
        assert not records["zlib"].constraint.is_specified

    def test_malformed_header(self):
        """Test a broken section header warns and skips its section."""
        result = extract_conan("[requires\nzlib/1.2.13\n", "conanfile.txt")
        assert len(result) == 0
        assert result.warnings


class TestVcpkg:
    """Test cases for the vcpkg extractor."""

    def test_dependencies(self, corpus_dir):
        """Test strings, objects and feature dependencies."""
        text = (corpus_dir / "vcpkg" / "vcpkg.json").read_text()
        records = by_library(extract_vcpkg(text, "vcpkg.json"))
        assert sorted(records) == ["boost-asio", "fmt", "gtest"]
        asio = records["boost-asio"].constraint
        assert asio.kind is ConstraintKind.RANGE and asio.lower == Version.parse("1.80.0")
        assert records["fmt"].evidence.line == 5

    def test_overrides(self):
        """Test overrides pin exact versions."""
        text = '{"dependencies": ["fmt"], "overrides": [{"name": "fmt", "version": "9.1.0"}]}'
        result = extract_vcpkg(text, "vcpkg.json")
        pinned = [record for record in result.records if record.constraint.is_specified]
        assert len(pinned) == 1
        assert pinned[0].constraint.kind is ConstraintKind.EXACT

    def test_invalid_json(self):
        """Test malformed JSON yields a warning and no records."""
        result = extract_vcpkg('{"dependencies": [', "vcpkg.json")
        assert len(result) == 0
        assert len(result.warnings) == 1


class TestClib:
    """Test cases for the clib extractor."""

    def test_clib_json(self, corpus_dir):
        """Test dependencies and development dependencies."""
        text = (corpus_dir / "clib" / "clib.json").read_text()
        records = by_library(extract_clib(text, "clib.json"))
        assert sorted(records) == ["buffer", "describe", "trim.c"]
        assert records["buffer"].source_url == "https://github.com/clibs/buffer"
        assert not records["trim.c"].constraint.is_specified

    def test_node_package_json_rejected(self):
        """Test a Node.js package.json is not taken for a clib manifest."""
        text = '{"name": "web", "dependencies": {"express": "^4.0.0"}}'
        assert not ClibExtractor().accepts("package.json", text)
        assert ClibExtractor().accepts("package.json", '{"repo": "a/b", "dependencies": {}}')


class TestCpm:
    """Test cases for the CPM extractor."""

    def test_shorthand_and_keywords(self, corpus_dir):
        """Test gh: shorthand and NAME/VERSION keyword forms."""
        text = (corpus_dir / "cpm" / "CMakeLists.txt").read_text()
        records = by_library(extract_cpm(text, "CMakeLists.txt"))
        assert sorted(records) == ["fmt", "nlohmann_json"]
        assert records["fmt"].constraint.kind is ConstraintKind.EXACT
        assert records["fmt"].source_url == "https://github.com/fmtlib/fmt"
        assert records["nlohmann_json"].constraint.lower == Version.parse("3.9.1")
        assert records["nlohmann_json"].source_url == "https://github.com/nlohmann/json"

    def test_version_suffix(self):
        """Test @version in the shorthand pins the version."""
        result = extract_cpm('CPMAddPackage("gh:catchorg/Catch2@3.1.0")\n', "CMakeLists.txt")
        assert result.libraries == ["catch2"]
        assert result.records[0].constraint.lower == Version.parse("3.1.0")

    def test_unresolved_name(self):
        """Test a name built from an unknown variable is skipped with a warning."""
        result = extract_cpm("CPMAddPackage(NAME ${DEP} VERSION 1.0)\n", "CMakeLists.txt")
        assert len(result) == 0
        assert result.warnings


class TestBuckaroo:
    """Test cases for the Buckaroo extractor."""

    def test_dependency_tables(self, corpus_dir):
        """Test [[dependency]] tables and git selectors."""
        text = (corpus_dir / "buckaroo" / "buckaroo.toml").read_text()
        records = by_library(extract_buckaroo(text, "buckaroo.toml"))
        assert sorted(records) == ["boost-config", "google-googletest"]
        assert not records["boost-config"].constraint.is_specified
        assert records["boost-config"].constraint.raw == "branch=master"
        assert records["google-googletest"].constraint.kind is ConstraintKind.EXACT
        assert records["google-googletest"].evidence.line == 6

    def test_invalid_toml(self):
        """Test broken TOML yields a warning."""
        result = BuckarooExtractor().extract("[[dependency]\npackage = ", "buckaroo.toml")
        assert len(result) == 0
        assert result.warnings


class TestDds:
    """Test cases for the dds extractor."""

    def test_depends(self, corpus_dir):
        """Test name^version and name@version entries."""
        text = (corpus_dir / "dds" / "package.json5").read_text()
        records = by_library(extract_dds(text, "package.json5"))
        assert sorted(records) == ["neo-sqlite3", "spdlog"]
        assert records["neo-sqlite3"].constraint.kind is ConstraintKind.CARET
        assert records["spdlog"].constraint.kind is ConstraintKind.EXACT

    def test_object_form(self):
        """Test the older {name: range} form."""
        result = extract_dds("{depends: {'fmt': '^7.0.0'}}", "package.json5")
        assert result.libraries == ["fmt"]


class TestHunter:
    """Test cases for the Hunter extractor."""

    def test_packages_and_components(self, corpus_dir):
        """Test hunter_add_package() with COMPONENTS."""
        text = (corpus_dir / "hunter" / "CMakeLists.txt").read_text()
        records = by_library(extract_hunter(text, "CMakeLists.txt"))
        assert sorted(records) == ["boost", "gtest"]
        assert records["boost"].components == ("system", "filesystem")
        assert records["boost"].evidence.line == 6


class TestBuild2Manifest:
    """Test cases for the Cppget and Build2 manifest extractors."""

    def test_cppget(self, corpus_dir):
        """Test toolchain requirements are skipped and lib prefixes dropped."""
        text = (corpus_dir / "cppget" / "manifest").read_text()
        records = by_library(extract_cppget(text, "manifest"))
        assert list(records) == ["hello"]
        assert records["hello"].constraint.kind is ConstraintKind.CARET

    def test_attribution_by_buildfile(self, corpus_dir):
        """Test a buildfile beside the manifest decides between the two tools."""
        text = (corpus_dir / "build2" / "manifest").read_text()
        assert Build2Extractor().accepts("manifest", text, ["manifest", "buildfile"])
        assert not CppgetExtractor().accepts("manifest", text, ["manifest", "buildfile"])
        assert CppgetExtractor().accepts("manifest", text, ["manifest"])

    def test_not_a_manifest(self):
        """Test unrelated files called manifest are ignored."""
        assert not CppgetExtractor().accepts("manifest", "Manifest-Version: 1.0\n", ["manifest"])

    def test_groups_and_alternatives(self):
        """Test {a b} groups and | alternatives."""
        text = ": 1\nname: demo\nversion: 1.0.0\ndepends: {libfoo libbar} ^1.0.0 | libbaz ; comment\n"
        assert sorted(extract_cppget(text, "manifest").libraries) == ["bar", "baz", "foo"]


class TestXrepo:
    """Test cases for the Xrepo extractor."""

    def test_add_requires(self, corpus_dir):
        """Test version ranges and foreign package manager prefixes."""
        text = (corpus_dir / "xmake" / "xmake.lua").read_text()
        records = by_library(extract_xrepo(text, "xmake.lua"))
        assert sorted(records) == ["fmt", "zlib"]
        assert records["zlib"].constraint.kind is ConstraintKind.WILDCARD
        assert records["fmt"].constraint.kind is ConstraintKind.EXACT

    def test_comment_ignored(self):
        """Test Lua comments are not mined."""
        result = extract_xrepo('-- add_requires("ignored")\nadd_requires("zlib")\n', "xmake.lua")
        assert result.libraries == ["zlib"]


class TestGitSubmodule:
    """Test cases for the .gitmodules extractor."""

    def test_submodules(self, corpus_dir):
        """Test one record per submodule named after its url."""
        text = (corpus_dir / "gitsubmodule" / ".gitmodules").read_text()
        records = by_library(extract_gitsubmodule(text, ".gitmodules"))
        assert sorted(records) == ["googletest", "json"]
        assert records["json"].source_url == "git@github.com:nlohmann/json.git"
        assert records["googletest"].evidence.line == 3

    def test_missing_url(self):
        """Test a submodule without url warns."""
        result = extract_gitsubmodule('[submodule "x"]\n\tpath = x\n', ".gitmodules")
        assert len(result) == 0
        assert result.warnings


class TestPkgConfig:
    """Test cases for the pkg-config extractor."""

    def test_requires(self, corpus_dir):
        """Test Requires and Requires.private modules."""
        text = (corpus_dir / "pkgconfig" / "demo.pc").read_text()
        records = by_library(extract_pkgconfig(text, "demo.pc"))
        assert sorted(records) == ["curl", "glib-2.0", "zlib"]
        glib = records["glib-2.0"].constraint
        assert glib.kind is ConstraintKind.RANGE and glib.lower == Version.parse("2.40")

    def test_variables(self):
        """Test ${var} references resolve and unknown ones warn."""
        text = "dep=zlib\nRequires: ${dep}, ${missing}\n"
        result = extract_pkgconfig(text, "demo.pc")
        assert result.libraries == ["zlib"]
        assert any("missing" in warning.message for warning in result.warnings)

    def test_unexpanded_module_warns(self):
        """Test a module left with a $ reference is dropped with a warning."""
        result = extract_pkgconfig("Requires: $dep, zlib\n", "demo.pc")
        assert result.libraries == ["zlib"]
        assert any("$dep" in warning.message for warning in result.warnings)
