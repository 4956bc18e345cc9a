#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Shared fixtures for ccdep tests.
"""

import json
from datetime import datetime, timezone
from pathlib import Path

import pytest

from ccdep.model import DependencyRecord, Evidence, ScanReport, ToolKind, VersionConstraint

FIXTURES = Path(__file__).parent / "fixtures"
SCANNED_AT = datetime(2024, 1, 1, tzinfo=timezone.utc)


def make_record(library, tool=ToolKind.CONAN, constraint=None, path="manifest", line=1):
    """Build a record whose library is already normalized."""
    if isinstance(constraint, str):
        constraint = VersionConstraint.parse(constraint)
    return DependencyRecord.create(
        raw_name=library,
        tool=tool,
        evidence=Evidence(path, line),
        constraint=constraint,
        library=library,
    )


def make_report(repo_id, records=(), tools_found=()):
    return ScanReport.assemble(repo_id, list(records), tools_found=tools_found, scanned_at=SCANNED_AT)


@pytest.fixture
def corpus_dir():
    """Fixture corpus with one manifest per supported tool."""
    return FIXTURES / "corpus"


@pytest.fixture
def expected_records():
    """Hand-labelled (tool, library, path) triples of the fixture corpus."""
    with open(FIXTURES / "expected.json", "r", encoding="utf-8") as f:
        data = json.load(f)
    return {(ToolKind(tool), library, path) for tool, library, path in data["records"]}


@pytest.fixture
def record_factory():
    return make_record


@pytest.fixture
def report_factory():
    return make_report
