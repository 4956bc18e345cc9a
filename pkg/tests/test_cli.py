#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for the command-line interface.
"""

import json
import logging

import pytest
from click.testing import CliRunner

from ccdep.cli import main

from .test_clones import write_library


@pytest.fixture(autouse=True)
def restore_logging():
    """The CLI reconfigures the root logger; put it back after each test."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def reports_dir(runner, corpus_dir, tmp_path):
    """Reports of two fixture repositories."""
    output = tmp_path / "reports"
    output.mkdir()
    for name in ("vcpkg", "conan"):
        result = runner.invoke(main, ["-q", "scan", str(corpus_dir / name), "-o", str(output)])
        assert result.exit_code == 0, result.output
    return output


class TestScan:
    """Test cases for the scan command."""

    def test_missing_root(self, runner, tmp_path):
        result = runner.invoke(main, ["scan", str(tmp_path / "nonexistent")])
        assert result.exit_code == 2

    def test_empty_directory(self, runner, tmp_path):
        result = runner.invoke(main, ["-q", "scan", str(tmp_path), "--no-timestamp"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["records"] == []
        assert data["scanned_at"] is None

    def test_stdout_report(self, runner, corpus_dir):
        result = runner.invoke(main, ["-q", "scan", str(corpus_dir / "vcpkg")])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["repo_id"] == "vcpkg"
        assert sorted(record["library"] for record in data["records"]) == ["boost-asio", "fmt", "gtest"]

    def test_output_directory(self, reports_dir):
        assert sorted(path.name for path in reports_dir.iterdir()) == ["conan.json", "vcpkg.json"]

    def test_stable_output(self, runner, corpus_dir, tmp_path):
        """Test --no-timestamp reports are byte-identical across runs."""
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            args = ["-q", "scan", str(corpus_dir), "--no-timestamp", "-o", str(path)]
            assert runner.invoke(main, args).exit_code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_tools_option(self, runner, corpus_dir):
        result = runner.invoke(main, ["-q", "scan", str(corpus_dir), "--tools", "vcpkg,conan"])
        assert result.exit_code == 0
        tools = {record["tool"] for record in json.loads(result.output)["records"]}
        assert tools == {"Vcpkg", "Conan"}

    def test_unknown_tool(self, runner, corpus_dir):
        result = runner.invoke(main, ["scan", str(corpus_dir), "--tools", "nix"])
        assert result.exit_code == 2

    def test_clone_detection(self, runner, tmp_path):
        """Test a signature database adds CloneSig records."""
        write_library(tmp_path / "libs" / "alpha", "alpha", 4)
        manifest = tmp_path / "sources.txt"
        manifest.write_text("alpha libs/alpha\n")
        db = tmp_path / "sigs.db"
        assert runner.invoke(main, ["build-clone-db", "-m", str(manifest), "-o", str(db)]).exit_code == 0

        result = runner.invoke(main, ["-q", "scan", str(tmp_path / "libs"), "--clone-db", str(db)])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert [(record["library"], record["tool"]) for record in data["records"]] == [("alpha", "CloneSig")]
        assert "CloneSig" in data["tools_seen"]


class TestStats:
    """Test cases for the stats command."""

    def test_no_reports(self, runner):
        assert runner.invoke(main, ["stats"]).exit_code == 2

    def test_csv(self, runner, reports_dir):
        result = runner.invoke(main, ["-q", "stats", str(reports_dir), "-f", "csv"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "library,count"
        assert len(lines) > 1

    def test_json(self, runner, reports_dir):
        result = runner.invoke(main, ["-q", "stats", str(reports_dir), "-f", "json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["repo_count"] == 2

    def test_text(self, runner, reports_dir, tmp_path):
        output = tmp_path / "stats.txt"
        result = runner.invoke(main, ["-q", "stats", str(reports_dir), "-o", str(output)])
        assert result.exit_code == 0
        text = output.read_text()
        assert text.startswith("Repositories: 2\n")
        assert "Toolchain combinations" in text

    def test_not_a_report(self, runner, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text('{"hello": 1}')
        assert runner.invoke(main, ["-q", "stats", str(path)]).exit_code == 1

    def test_duplicate_repo_id(self, runner, corpus_dir, tmp_path):
        """Test two reports of one repository are refused."""
        for name in ("first.json", "second.json"):
            args = ["-q", "scan", str(corpus_dir / "vcpkg"), "-o", str(tmp_path / name)]
            assert runner.invoke(main, args).exit_code == 0
        assert runner.invoke(main, ["-q", "stats", str(tmp_path)]).exit_code == 1


class TestVuln:
    """Test cases for the vuln command."""

    def test_requires_advisories(self, runner, reports_dir):
        assert runner.invoke(main, ["vuln", str(reports_dir)]).exit_code == 2

    def test_findings(self, runner, reports_dir, tmp_path):
        advisories = tmp_path / "advisories.jsonl"
        advisories.write_text(json.dumps({"id": "ADV-1", "library": "boost-asio", "affected": "<1.81"}) + "\n")
        result = runner.invoke(main, ["-q", "vuln", str(reports_dir), "-a", str(advisories), "-f", "json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["summary"]["affected_repos"] == 1
        assert [finding["library"] for finding in data["findings"]] == ["boost-asio"]
        assert data["findings"][0]["match_mode"] == "ConstraintOverlap"


class TestEval:
    """Test cases for the eval command."""

    def test_json(self, runner, reports_dir, tmp_path):
        truth = tmp_path / "truth.json"
        truth.write_text(json.dumps({"repos": [{"repo_id": "vcpkg", "labels": ["fmt", "boost-asio", "gtest", "zlib"]}]}))
        result = runner.invoke(main, ["-q", "eval", str(reports_dir / "vcpkg.json"), "-t", str(truth), "-f", "json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["vcpkg"]["precision"] == 1.0
        assert data["vcpkg"]["recall_full"] == 0.75
        assert data["*"]["tp"] == 3

    def test_default_aliases(self, runner, reports_dir, tmp_path):
        """Test --default-aliases lets gtest match a googletest label."""
        truth = tmp_path / "truth.json"
        truth.write_text(json.dumps({"repos": [{"repo_id": "vcpkg", "labels": ["fmt", "boost-asio", "googletest"]}]}))
        args = ["-q", "eval", str(reports_dir / "vcpkg.json"), "-t", str(truth), "-f", "json"]
        assert json.loads(runner.invoke(main, args).output)["*"]["tp"] == 2
        result = runner.invoke(main, args + ["--default-aliases"])
        assert result.exit_code == 0
        assert json.loads(result.output)["*"]["tp"] == 3

    def test_bad_truth(self, runner, reports_dir, tmp_path):
        truth = tmp_path / "truth.json"
        truth.write_text("[]")
        assert runner.invoke(main, ["-q", "eval", str(reports_dir), "-t", str(truth)]).exit_code == 1


class TestBuildCloneDb:
    """Test cases for the build-clone-db command."""

    def test_empty_manifest(self, runner, tmp_path):
        manifest = tmp_path / "sources.txt"
        manifest.write_text("# nothing yet\n")
        result = runner.invoke(main, ["build-clone-db", "-m", str(manifest), "-o", str(tmp_path / "db")])
        assert result.exit_code == 2

    def test_rebuild_identical(self, runner, tmp_path):
        """Test two builds from the same sources give identical files."""
        write_library(tmp_path / "alpha", "alpha", 3)
        write_library(tmp_path / "beta", "beta", 3)
        manifest = tmp_path / "sources.txt"
        manifest.write_text("beta beta\nalpha alpha\n")
        outputs = [tmp_path / "one.db", tmp_path / "two.db"]
        for output, workers in zip(outputs, ("1", "4")):
            result = runner.invoke(main, ["build-clone-db", "-m", str(manifest), "-o", str(output), "-w", workers])
            assert result.exit_code == 0
        assert outputs[0].read_bytes() == outputs[1].read_bytes()


class TestTools:

    def test_listing(self, runner):
        result = runner.invoke(main, ["tools"])
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 21

    def test_with_clone(self, runner):
        result = runner.invoke(main, ["tools", "--with-clone"])
        assert result.output.splitlines()[-1].startswith("CloneSig")
