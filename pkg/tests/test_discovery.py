#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for repository discovery and scanning.
"""

import logging
import shutil

import pytest

from ccdep.analysis import modern_repo_share, toolchain_combinations
from ccdep.model import Phase, ToolKind
from ccdep.scanner import ScanConfig, list_supported_tools, scan_repository
from ccdep.scanner.discovery import walk_files


class TestCorpusScan:
    """Test a scan of the fixture corpus against its hand-labelled records."""

    @pytest.fixture
    def report(self, corpus_dir):
        return scan_repository(ScanConfig(root=corpus_dir, workers=2))

    def test_records_match_labels(self, report, expected_records):
        """Test every labelled dependency is found and nothing else."""
        found = {(record.tool, record.library, record.evidence.path) for record in report.records}
        assert found == expected_records

    def test_every_tool_seen(self, report):
        """Test all manifest tools are present, including those sharing CMakeLists.txt."""
        manifest_tools = {tool for tool in ToolKind if tool is not ToolKind.CLONE_SIG}
        assert manifest_tools <= report.tools_seen
        assert ToolKind.CLONE_SIG not in report.tools_seen

    def test_report_is_sorted_and_unique(self, report):
        """Test records are sorted by evidence and carry no duplicates."""
        keys = [record.sort_key for record in report.records]
        assert keys == sorted(keys)
        identities = [record.identity for record in report.records]
        assert len(identities) == len(set(identities))

    def test_repo_id_defaults_to_directory_name(self, report):
        """Test the report is named after the scanned directory."""
        assert report.repo_id == "corpus"
        assert report.file_count >= 20

    def test_phases(self, report):
        """Test records carry their tool's phase."""
        assert {record.phase for record in report.records} == {Phase.INSTALL, Phase.BUILD}
        assert all(record.phase is record.tool.phase for record in report.records)


class TestScanOptions:
    """Test scan settings."""

    def test_enabled_tools(self, corpus_dir):
        """Test only the enabled extractors run."""
        report = scan_repository(ScanConfig(root=corpus_dir, enabled_tools={ToolKind.VCPKG}))
        assert {record.tool for record in report.records} == {ToolKind.VCPKG}
        assert report.tools_seen == {ToolKind.VCPKG}

    def test_oversized_files_skipped(self, tmp_path):
        """Test manifests above the size limit are counted and skipped."""
        (tmp_path / "vcpkg.json").write_text('{"dependencies": ["fmt"]}')
        report = scan_repository(ScanConfig(root=tmp_path, max_file_bytes=8))
        assert report.records == ()
        assert report.skipped_files == 1

    def test_ignored_directories(self, tmp_path):
        """Test default ignored directories are pruned."""
        for directory in ("build", ".git", "src"):
            (tmp_path / directory).mkdir()
            (tmp_path / directory / "vcpkg.json").write_text('{"dependencies": ["fmt"]}')
        report = scan_repository(ScanConfig(root=tmp_path))
        assert [record.evidence.path for record in report.records] == ["src/vcpkg.json"]

    def test_custom_ignore_dirs(self, tmp_path):
        """Test a custom ignore set replaces the default one."""
        (tmp_path / "build").mkdir()
        (tmp_path / "build" / "vcpkg.json").write_text('{"dependencies": ["fmt"]}')
        report = scan_repository(ScanConfig(root=tmp_path, ignore_dirs=frozenset()))
        assert len(report.records) == 1

    def test_repo_id_override(self, tmp_path):
        """Test an explicit repo id is used."""
        report = scan_repository(ScanConfig(root=tmp_path, repo_id="org/project"))
        assert report.repo_id == "org/project"
        assert report.records == ()

    def test_node_package_json_not_clib(self, tmp_path):
        """Test a Node.js package.json yields no Clib records."""
        (tmp_path / "package.json").write_text('{"name": "web", "dependencies": {"express": "^4.0.0"}}')
        report = scan_repository(ScanConfig(root=tmp_path))
        assert report.records == ()
        assert ToolKind.CLIB not in report.tools_seen

    def test_malformed_manifest_warns(self, tmp_path):
        """Test a broken manifest produces a warning, not an error."""
        (tmp_path / "vcpkg.json").write_text("{not json")
        report = scan_repository(ScanConfig(root=tmp_path))
        assert report.records == ()
        assert report.warnings
        assert ToolKind.VCPKG in report.tools_seen


class TestScanErrors:
    """Test invalid scan input."""

    def test_missing_root(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            scan_repository(ScanConfig(root=tmp_path / "missing"))

    def test_root_is_a_file(self, tmp_path):
        path = tmp_path / "file.txt"
        path.write_text("x")
        with pytest.raises(NotADirectoryError):
            scan_repository(ScanConfig(root=path))

    @pytest.mark.parametrize("kwargs", [{"max_file_bytes": 0}, {"workers": 0}])
    def test_invalid_config(self, tmp_path, kwargs):
        with pytest.raises(ValueError):
            ScanConfig(root=tmp_path, **kwargs)


def scan_files(root, files):
    """Write ``files`` under ``root`` and scan it."""
    for name, text in files.items():
        path = root / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return scan_repository(ScanConfig(root=root, workers=1))


PLAIN_CMAKE = "project(demo)\nfind_package(ZLIB REQUIRED)\n"


class TestToolDetection:
    """Test which tools a scan reports, and what the analytics make of them."""

    def test_plain_cmake(self, tmp_path):
        """Test a find_package-only CMakeLists.txt is CMake alone."""
        report = scan_files(tmp_path, {"CMakeLists.txt": PLAIN_CMAKE})
        assert [(record.library, record.tool) for record in report.records] == [("zlib", ToolKind.CMAKE)]
        assert report.tools_seen == {ToolKind.CMAKE}
        assert toolchain_combinations([report]) == {(None, ToolKind.CMAKE): 1}
        assert modern_repo_share([report]) == 0.0

    def test_cmake_with_cpm(self, tmp_path):
        text = 'include(cmake/CPM.cmake)\nCPMAddPackage("gh:fmtlib/fmt#7.1.3")\nfind_package(ZLIB REQUIRED)\n'
        report = scan_files(tmp_path, {"CMakeLists.txt": text})
        assert {(record.library, record.tool) for record in report.records} == {
            ("fmt", ToolKind.CPM),
            ("zlib", ToolKind.CMAKE),
        }
        assert report.tools_seen == {ToolKind.CMAKE, ToolKind.CPM}
        assert toolchain_combinations([report]) == {(ToolKind.CPM, ToolKind.CMAKE): 1}
        assert modern_repo_share([report]) == 1.0

    def test_build_only_beside_hunter(self, tmp_path):
        """Test a build-only repository keeps its (None, CMake) combination next to a Hunter one."""
        plain = scan_files(tmp_path / "plain", {"CMakeLists.txt": PLAIN_CMAKE})
        hunter = scan_files(
            tmp_path / "hunter",
            {"CMakeLists.txt": "hunter_add_package(GTest)\nfind_package(GTest CONFIG REQUIRED)\n"},
        )
        assert hunter.tools_seen == {ToolKind.CMAKE, ToolKind.HUNTER}
        assert toolchain_combinations([plain, hunter]) == {
            (None, ToolKind.CMAKE): 1,
            (ToolKind.HUNTER, ToolKind.CMAKE): 1,
        }
        assert modern_repo_share([plain, hunter]) == 0.5

    def test_commented_out_managers(self, tmp_path):
        text = '# CPMAddPackage("gh:fmtlib/fmt#7.1.3")\n#[[ hunter_add_package(GTest) ]]\n' + PLAIN_CMAKE
        report = scan_files(tmp_path, {"CMakeLists.txt": text})
        assert report.tools_seen == {ToolKind.CMAKE}

    def test_xmake_without_requires(self, tmp_path):
        """Test add_packages alone is Xmake, not Xrepo."""
        report = scan_files(tmp_path, {"xmake.lua": 'target("demo")\n    add_packages("zlib")\n'})
        assert report.tools_seen == {ToolKind.XMAKE}
        assert toolchain_combinations([report]) == {(None, ToolKind.XMAKE): 1}

    def test_xmake_with_requires(self, tmp_path):
        report = scan_files(tmp_path, {"xmake.lua": 'add_requires("zlib 1.2.x")\n'})
        assert report.tools_seen == {ToolKind.XMAKE, ToolKind.XREPO}
        assert toolchain_combinations([report]) == {(ToolKind.XREPO, ToolKind.XMAKE): 1}


class TestWalk:
    """Test directory walking."""

    def test_sorted_walk(self, tmp_path):
        """Test directories and files come out in sorted order."""
        for name in ("b", "a"):
            (tmp_path / name).mkdir()
            (tmp_path / name / "z.txt").write_text("")
            (tmp_path / name / "y.txt").write_text("")
        walked = [(directory.relative_to(tmp_path).as_posix(), files) for directory, files in walk_files(tmp_path)]
        assert walked == [(".", []), ("a", ["y.txt", "z.txt"]), ("b", ["y.txt", "z.txt"])]

    def test_unlistable_directory_logged(self, tmp_path, caplog):
        """Test a directory that cannot be listed is logged and skipped."""
        with caplog.at_level(logging.WARNING, logger="ccdep.scanner.discovery"):
            assert list(walk_files(tmp_path / "missing")) == []
        assert "missing" in caplog.text

    def test_supported_tools(self):
        """Test the tool listing with and without a clone database."""
        assert len(list_supported_tools()) == 21
        tools = list_supported_tools(clone_db_configured=True)
        assert len(tools) == 22
        assert tools[-1][0] is ToolKind.CLONE_SIG
        assert tools[-1][2] is Phase.CLONE


@pytest.mark.slow
class TestLargeTree:
    """Throughput and determinism on a large synthetic tree."""

    def test_ten_thousand_files(self, tmp_path, corpus_dir):
        """Test a wide tree scans the same way with one and many workers."""
        for i in range(100):
            directory = tmp_path / f"module{i:03d}"
            directory.mkdir()
            for j in range(99):
                (directory / f"source{j:02d}.c").write_text("int main(void) { return 0; }\n")
            shutil.copy(corpus_dir / "vcpkg" / "vcpkg.json", directory / "vcpkg.json")

        serial = scan_repository(ScanConfig(root=tmp_path, workers=1, repo_id="wide"))
        parallel = scan_repository(ScanConfig(root=tmp_path, workers=8, repo_id="wide"))
        assert serial.file_count == 10000
        assert len(serial.records) == 300
        assert serial.to_dict(include_timestamp=False) == parallel.to_dict(include_timestamp=False)
