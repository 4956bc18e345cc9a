#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for ecosystem statistics.
"""

import itertools

import numpy as np
import pytest
import hypothesis.strategies as st
from hypothesis import given

from ccdep.analysis import (
    EmptyInputError,
    combos_table,
    compute_stats,
    cross_phase_share,
    db_coverage,
    gini,
    latest_adoption,
    library_reach,
    make_only_share,
    modern_repo_share,
    phase_stats,
    popularity,
    popularity_and_gini,
    popularity_table,
    system_library_share,
    tool_usage,
    tool_usage_table,
    toolchain_combinations,
    topk_share,
    topk_shares,
    usage_intensity,
    version_spec_rates,
)
from ccdep.model import Phase, ToolKind, Version
from ccdep.utils import NameNormalizer

from .conftest import make_record, make_report


def build_corpus():
    """
    200 repositories, 1000 records.

    Repos 0-94 declare three Conan packages (pinned in repos 0-89, with
    vulnlib in repos 0-43). Every repo has three CMake records and repos
    0-114 also link libm through Make.
    """
    reports = []
    for i in range(200):
        records = []
        if i < 95:
            third = "vulnlib" if i < 44 else f"pkg{i}"
            for line, library in enumerate(["zlib", "fmt", third], start=1):
                constraint = "1.0" if i < 90 else None
                records.append(make_record(library, ToolKind.CONAN, constraint, "conanfile.txt", line))
        for line, library in enumerate(["zlib", "threads", f"internal{i}"], start=1):
            records.append(make_record(library, ToolKind.CMAKE, None, "CMakeLists.txt", line))
        if i < 115:
            records.append(make_record("m", ToolKind.MAKE, None, "Makefile", 1))
        reports.append(make_report(f"repo{i}", records))
    return reports


@pytest.fixture(scope="module")
def corpus():
    return build_corpus()


def pairwise_gini(values):
    n = len(values)
    total = sum(values)
    if total == 0:
        return 0.0
    differences = sum(abs(a - b) for a, b in itertools.product(values, repeat=2))
    return differences / (2 * n * total)


class TestGini:
    """Test cases for the Gini coefficient."""

    def test_equal_counts(self):
        assert gini([5, 5, 5, 5]) == 0.0

    def test_known_value(self):
        assert gini([1, 2, 3, 4]) == pytest.approx(0.25)

    def test_maximal_concentration(self):
        """Test one holder of everything among n gives (n - 1) / n."""
        assert gini([0] * 99 + [1]) == pytest.approx(0.99)

    def test_degenerate(self):
        assert gini([7]) == 0.0
        assert gini([0, 0, 0]) == 0.0

    def test_invalid(self):
        with pytest.raises(EmptyInputError):
            gini([])
        with pytest.raises(ValueError):
            gini([1, -2])

    @given(st.lists(st.integers(min_value=0, max_value=1000), min_size=1, max_size=40))
    def test_matches_pairwise_definition(self, values):
        """Test the sorted formula agrees with the mean absolute difference."""
        assert gini(values) == pytest.approx(pairwise_gini(values), abs=1e-9)

    @given(
        st.lists(st.integers(min_value=0, max_value=1000), min_size=1, max_size=40),
        st.integers(min_value=1, max_value=50),
    )
    def test_scale_invariant(self, values, factor):
        assert gini([v * factor for v in values]) == pytest.approx(gini(values), abs=1e-12)

    @given(st.lists(st.integers(min_value=0, max_value=1000), min_size=1, max_size=40))
    def test_bounds(self, values):
        assert 0.0 <= gini(values) < 1.0


class TestTopK:
    """Test cases for top-k shares."""

    def test_top_quarter(self):
        assert topk_share([97, 1, 1, 1], 25) == pytest.approx(0.97)

    def test_everything(self):
        assert topk_share([3, 2, 1], 100) == 1.0

    def test_rounds_up(self):
        """Test a fraction of an entry still takes the whole entry."""
        assert topk_share([10, 5, 5], 1) == pytest.approx(0.5)

    @pytest.mark.parametrize("k", [0, -5, 100.5])
    def test_invalid_percentile(self, k):
        with pytest.raises(ValueError):
            topk_share([1, 2], k)

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            topk_share([], 10)

    def test_default_percentiles(self):
        assert list(topk_shares([4, 3, 2, 1])) == [1, 5, 10, 20]


class TestOracles:
    """Compare the concentration metrics with independent computations on random vectors."""

    @pytest.fixture
    def vectors(self):
        rng = np.random.default_rng(2024)
        return [rng.integers(0, 500, size=rng.integers(1, 201)) for _ in range(1000)]

    def test_gini_pairwise(self, vectors):
        for values in vectors:
            total = values.sum()
            n = values.size
            expected = 0.0 if total == 0 else np.abs(values[:, None] - values[None, :]).sum() / (2 * n * total)
            assert gini(values.tolist()) == pytest.approx(expected, abs=1e-9)

    def test_topk_prefix_sums(self, vectors):
        for values in vectors:
            total = int(values.sum())
            prefix = np.cumsum(sorted(values.tolist(), reverse=True))
            for k in (1, 5, 10, 20, 100):
                top = -(-values.size * k // 100)
                expected = 0.0 if total == 0 else prefix[top - 1] / total
                assert topk_share(values.tolist(), k) == expected
            if total:
                assert topk_share(values.tolist(), 100) == 1.0


class TestPhasesAndTools:
    """Test phase and tool metrics on the synthetic corpus."""

    def test_phase_shares(self, corpus):
        dep_share, repo_share = phase_stats(corpus)
        assert dep_share[Phase.BUILD] == pytest.approx(0.715)
        assert dep_share[Phase.INSTALL] == pytest.approx(0.285)
        assert repo_share[Phase.INSTALL] == pytest.approx(0.475)
        assert repo_share[Phase.BUILD] == 1.0
        assert repo_share[Phase.CLONE] == 0.0

    def test_tool_usage(self, corpus):
        usage = tool_usage(corpus)
        assert usage[ToolKind.CONAN] == (pytest.approx(0.285), pytest.approx(0.475))
        assert usage[ToolKind.CMAKE] == (pytest.approx(0.6), 1.0)
        assert usage[ToolKind.MAKE] == (pytest.approx(0.115), pytest.approx(0.575))
        assert usage[ToolKind.VCPKG] == (0.0, 0.0)

    def test_make_only(self, corpus, record_factory, report_factory):
        """Test Make-only repositories are those whose only Build tool is Make."""
        assert make_only_share(corpus) == (0.0, 0.0)
        reports = [
            report_factory("a", [record_factory("z", ToolKind.MAKE), record_factory("fmt", ToolKind.CONAN)]),
            report_factory("b", [record_factory("z", ToolKind.MAKE), record_factory("z", ToolKind.CMAKE)]),
        ]
        dep_share, repo_share = make_only_share(reports)
        assert dep_share == pytest.approx(0.25)
        assert repo_share == pytest.approx(0.5)

    def test_combinations(self, corpus):
        combos = toolchain_combinations(corpus)
        assert combos == {
            (ToolKind.CONAN, ToolKind.CMAKE): 95,
            (ToolKind.CONAN, ToolKind.MAKE): 95,
            (None, ToolKind.CMAKE): 105,
            (None, ToolKind.MAKE): 20,
        }

    def test_combinations_use_tools_seen(self, report_factory):
        """Test manifests without records still form combinations."""
        report = report_factory("a", tools_found={ToolKind.VCPKG, ToolKind.CMAKE})
        assert toolchain_combinations([report]) == {(ToolKind.VCPKG, ToolKind.CMAKE): 1}

    def test_modern_share(self, corpus):
        assert modern_repo_share(corpus) == pytest.approx(0.475)


class TestPopularity:
    """Test library popularity metrics."""

    def test_ranking(self, corpus):
        """Test libraries are ranked by repository count, ties by name."""
        counts = popularity(corpus)
        assert list(counts)[:5] == ["threads", "zlib", "m", "fmt", "vulnlib"]
        assert counts["zlib"] == 200
        assert counts["vulnlib"] == 44
        assert len(counts) == 256

    def test_counts_repositories_not_records(self, record_factory, report_factory):
        report = report_factory("a", [record_factory("zlib", line=1), record_factory("zlib", line=2)])
        assert popularity([report]) == {"zlib": 1}

    def test_exclude(self, corpus):
        counts = popularity(corpus, exclude=["threads", "m"])
        assert list(counts)[0] == "zlib"
        assert "threads" not in counts

    def test_normalizer(self, record_factory, report_factory):
        """Test aliases merge before counting."""
        reports = [
            report_factory("a", [record_factory("libz")]),
            report_factory("b", [record_factory("zlib")]),
        ]
        normalizer = NameNormalizer({"libz": "zlib"}, use_default_aliases=False)
        assert popularity(reports, normalizer=normalizer) == {"zlib": 2}

    def test_default_aliases(self, record_factory, report_factory):
        """Test the built-in spellings merge, and explicit aliases override them."""
        reports = [
            report_factory("a", [record_factory("gtest"), record_factory("zlib1g")]),
            report_factory("b", [record_factory("googletest"), record_factory("zlib")]),
        ]
        assert popularity(reports, normalizer=NameNormalizer(use_default_aliases=True)) == {"googletest": 2, "zlib": 2}
        normalizer = NameNormalizer({"gtest": "gtest"}, use_default_aliases=True)
        assert normalizer.canonical("gtest") == "gtest"
        assert normalizer.canonical("zlib1g") == "zlib"

    def test_popularity_and_gini(self, corpus):
        stats = popularity_and_gini(corpus)
        assert stats.mean == pytest.approx(905 / 256)
        assert stats.median == 1.0
        assert 0.0 < stats.gini < 1.0
        assert set(stats.topk_shares) == {1, 5, 10, 20}
        assert stats.topk_shares[1] < stats.topk_shares[20]

    def test_reach(self, corpus):
        assert library_reach(corpus, top_n=(1, 10)) == {1: 1.0, 10: 1.0}

    def test_db_coverage(self, corpus):
        coverage = db_coverage(corpus, {"zlib", "fmt"}, batch_size=2)
        assert coverage.batches[:3] == [0.5, 0.5, 0.0]
        assert coverage.covered_dependency_share == pytest.approx(295 / 905)

    def test_db_coverage_batch_size(self, corpus):
        with pytest.raises(ValueError):
            db_coverage(corpus, set(), batch_size=0)


class TestVersionsAndUsage:
    """Test version and usage metrics."""

    def test_version_spec_rates(self, corpus):
        rates = version_spec_rates(corpus)
        assert rates.overall == pytest.approx(0.27)
        assert rates.by_phase[Phase.INSTALL] == pytest.approx(270 / 285)
        assert rates.by_phase[Phase.BUILD] == 0.0
        assert rates.by_tool[ToolKind.CONAN] == pytest.approx(270 / 285)
        assert ToolKind.VCPKG not in rates.by_tool

    def test_latest_adoption(self, corpus):
        assert latest_adoption(corpus, {"vulnlib": Version.parse("1.0")}) == 1.0
        assert latest_adoption(corpus, {"vulnlib": Version.parse("2.0")}) == 0.0
        assert latest_adoption(corpus, {"unknown": Version.parse("1.0")}) is None

    def test_usage_intensity(self, corpus):
        intensity = usage_intensity(corpus)
        assert intensity.mean_per_repo == pytest.approx(4.525)
        assert intensity.no_dependency_share == 0.0
        assert intensity.at_most_10_share == 1.0
        assert intensity.over_50_share == 0.0

    def test_cross_phase(self, corpus):
        assert cross_phase_share(corpus) == pytest.approx(95 / 905)

    def test_system_share(self, corpus):
        assert system_library_share(corpus) == pytest.approx(0.315)


class TestComputeStats:
    """Test the combined statistics and their tables."""

    @pytest.fixture(scope="class")
    def stats(self, corpus):
        return compute_stats(corpus)

    def test_totals(self, stats):
        assert stats.dep_count == 1000
        assert stats.repo_count == 200
        assert stats.phase_dep_share[Phase.BUILD] == pytest.approx(0.715)
        assert stats.excluded == ()

    def test_to_dict(self, stats):
        data = stats.to_dict()
        assert data["dep_count"] == 1000
        assert data["toolchain_combos"][0] == {"install": None, "build": "CMake", "repos": 105}
        assert data["phase_repo_share"]["Install"] == pytest.approx(0.475)
        assert list(data["popularity"])[0] == "threads"

    def test_exclusion_recorded(self, corpus):
        stats = compute_stats(corpus, exclude=["threads", "m"])
        assert stats.excluded == ("m", "threads")
        assert list(stats.popularity)[0] == "zlib"
        assert stats.dep_count == 1000

    def test_popularity_table(self, stats):
        table = popularity_table(stats)
        assert list(table.columns) == ["library", "count"]
        assert table.iloc[0].tolist() == ["threads", 200]

    def test_combos_table(self, stats):
        table = combos_table(stats)
        assert list(table.columns) == ["install", "build", "repos"]
        assert table.iloc[0].tolist() == ["None", "CMake", 105]

    def test_tool_usage_table(self, stats):
        table = tool_usage_table(stats)
        assert table.iloc[0]["Install"] == "Conan"
        assert table.iloc[0]["Install Dep%"] == 28.5
        assert table.iloc[0]["Build"] == "CMake"
        assert "Make Only" in table["Build"].tolist()

    def test_no_records(self, report_factory):
        """Test repositories without dependencies still produce statistics."""
        stats = compute_stats([report_factory("empty")])
        assert stats.dep_count == 0
        assert stats.gini is None
        assert stats.popularity == {}

    def test_no_reports(self):
        with pytest.raises(EmptyInputError):
            compute_stats([])

    def test_duplicate_repo_ids(self, record_factory, report_factory):
        """Test two reports with one repo_id are rejected instead of merged."""
        reports = [report_factory("a", [record_factory("zlib")]), report_factory("a", [record_factory("fmt")])]
        with pytest.raises(ValueError, match="Duplicate repo_id"):
            compute_stats(reports)
