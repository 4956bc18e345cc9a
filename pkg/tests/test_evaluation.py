#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for precision/recall evaluation.
"""

import json

import pytest

from ccdep.analysis import (
    EmptyInputError,
    GroundTruth,
    Label,
    evaluate,
    evaluate_many,
    f1_score,
    load_ground_truth,
    results_table,
)
from ccdep.model import ToolKind, Version
from ccdep.utils import NameNormalizer

from .conftest import make_record, make_report


def truth(repo_id, labels, supported=None):
    return GroundTruth(
        repo_id=repo_id,
        labeled=frozenset(Label.from_data(label) for label in labels),
        supported_subset=None if supported is None else frozenset(supported),
    )


@pytest.fixture
def report():
    """zlib and png are labelled, fmt is not."""
    return make_report("demo", [
        make_record("zlib", ToolKind.CMAKE),
        make_record("zlib", ToolKind.CONAN, "1.2.13", "conanfile.txt"),
        make_record("png", ToolKind.CMAKE, path="CMakeLists.txt", line=4),
        make_record("fmt", ToolKind.VCPKG),
    ])


class TestF1:

    def test_known_values(self):
        assert f1_score(0.860, 0.801) == pytest.approx(0.830, abs=1e-3)
        assert f1_score(0.939, 0.272) == pytest.approx(0.42, abs=5e-3)

    def test_zero(self):
        assert f1_score(0.0, 0.0) == 0.0


class TestEvaluate:
    """Test cases for single-repository evaluation."""

    def test_counts(self, report):
        """Test two found labels, one extra detection and two missed labels."""
        result = evaluate(report, truth("demo", ["zlib", "png", "jpeg", "ssl"]))
        assert (result.tp, result.fp, result.fn) == (2, 1, 2)
        assert result.precision == pytest.approx(2 / 3)
        assert result.recall_full == 0.5
        assert result.f1 == pytest.approx(4 / 7)
        assert result.recall_supported == 0.5

    def test_supported_subset(self, report):
        """Test R2 only counts labels the scanner is expected to find."""
        result = evaluate(report, truth("demo", ["zlib", "png", "jpeg", "ssl"], supported=["zlib", "png"]))
        assert result.recall_supported == 1.0
        assert result.recall_full == 0.5

    def test_perfect(self, report):
        result = evaluate(report, truth("demo", ["zlib", "png", "fmt"]))
        assert (result.precision, result.recall_full, result.f1) == (1.0, 1.0, 1.0)

    def test_empty_report(self):
        """Test precision is undefined when nothing was detected."""
        result = evaluate(make_report("demo"), truth("demo", ["zlib"]))
        assert result.precision is None
        assert result.f1 is None
        assert result.recall_full == 0.0

    def test_name_and_tool(self, report):
        """Test a label with a tool needs a detection by that tool."""
        labels = [{"library": "png", "tool": "conan"}, {"library": "zlib", "tool": "Conan"}]
        result = evaluate(report, truth("demo", labels), match_on="name+tool")
        assert result.tp == 1
        # zlib/CMake, png/CMake and fmt/Vcpkg match no label
        assert result.fp == 3

    def test_version_aware(self, report):
        labels = [{"library": "zlib", "version": "1.2.13"}, {"library": "png", "version": "1.6.37"}]
        assert evaluate(report, truth("demo", labels)).tp == 2
        result = evaluate(report, truth("demo", labels), version_aware=True)
        assert result.tp == 1
        assert result.fn == 1

    def test_normalizer(self):
        """Test aliases apply to both detections and labels."""
        report = make_report("demo", [make_record("libz")])
        normalizer = NameNormalizer({"libz": "zlib"}, use_default_aliases=False)
        assert evaluate(report, truth("demo", ["zlib"])).tp == 0
        assert evaluate(report, truth("demo", ["zlib"]), normalizer=normalizer).tp == 1

    def test_invalid_match_mode(self, report):
        with pytest.raises(ValueError):
            evaluate(report, truth("demo", ["zlib"]), match_on="tool")


class TestEvaluateMany:
    """Test cases for multi-repository evaluation."""

    def test_micro_average(self, report):
        """Test a repository without a report counts as empty."""
        results = evaluate_many([report], [truth("demo", ["zlib", "png"]), truth("other", ["ssl", "jpeg"])])
        assert results["other"].tp == 0
        assert results["other"].fn == 2
        overall = results["*"]
        assert (overall.tp, overall.fp, overall.fn) == (2, 1, 2)
        assert overall.recall_full == 0.5

    def test_reports_without_truth_ignored(self, report):
        results = evaluate_many([report, make_report("extra", [make_record("zlib")])], [truth("demo", ["zlib"])])
        assert set(results) == {"demo", "*"}

    def test_no_truth(self, report):
        with pytest.raises(EmptyInputError):
            evaluate_many([report], [])

    def test_duplicate_reports(self, report):
        with pytest.raises(ValueError, match="Duplicate repo_id"):
            evaluate_many([report, make_report("demo")], [truth("demo", ["zlib"])])

    def test_table(self, report):
        table = results_table(evaluate_many([report], [truth("demo", ["zlib", "png", "jpeg", "ssl"])]))
        assert list(table.columns) == ["repo_id", "tp", "fp", "fn", "P", "R1", "R2", "F1"]
        assert table["repo_id"].tolist() == ["demo", "*"]


class TestGroundTruthFile:
    """Test cases for loading ground truth."""

    def test_load(self, tmp_path):
        path = tmp_path / "truth.json"
        path.write_text(json.dumps({"repos": [{
            "repo_id": "demo",
            "labels": ["ZLib", {"library": "png", "tool": "Conan", "version": "1.6.37"}],
            "supported": ["png"],
        }]}))
        [loaded] = load_ground_truth(path)
        assert loaded.repo_id == "demo"
        assert Label("zlib") in loaded.labeled
        assert Label("png", ToolKind.CONAN, Version.parse("1.6.37")) in loaded.labeled
        assert loaded.supported_subset == frozenset({"png"})

    @pytest.mark.parametrize(
        "document",
        [
            "[]",
            '{"repos": {}}',
            '{"repos": [{"labels": ["zlib"]}]}',
            '{"repos": [{"repo_id": "demo", "labels": []}]}',
            '{"repos": [{"repo_id": "demo", "labels": [{"tool": "Conan"}]}]}',
            '{"repos": [{"repo_id": "demo", "labels": [{"library": "zlib", "tool": "nix"}]}]}',
            "{broken",
        ],
    )
    def test_malformed(self, tmp_path, document):
        path = tmp_path / "truth.json"
        path.write_text(document)
        with pytest.raises(ValueError):
            load_ground_truth(path)
