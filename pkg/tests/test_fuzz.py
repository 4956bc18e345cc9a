#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Robustness tests: extractors must never raise, whatever they are fed.
"""

import random

import pytest
import hypothesis.strategies as st
from hypothesis import HealthCheck, given, settings

from ccdep.extractors import EXTRACTORS

EXTRACTOR_IDS = [extractor_class.tool.value for extractor_class in EXTRACTORS]

# Characters that drive the parsers into their interesting branches
MANIFEST_ALPHABET = "abcxyz019._-/@^~<>=*|,;:#$%{}[]()\"'\\ \t\n"


def manifest_path(extractor_class) -> str:
    return extractor_class.patterns[0].replace("*", "fuzz")


def check_result(extractor_class, result):
    for record in result.records:
        assert record.library
        assert record.library == record.library.lower()
        assert not any(ch.isspace() for ch in record.library)
        assert record.tool is extractor_class.tool
        assert record.phase is extractor_class.tool.phase
        assert record.evidence.line >= 0


def mutate(text: str, rng: random.Random) -> str:
    chars = list(text)
    for _ in range(rng.randint(1, 8)):
        position = rng.randint(0, len(chars))
        action = rng.random()
        if action < 0.4 and chars:
            del chars[min(position, len(chars) - 1)]
        elif action < 0.8:
            chars.insert(position, rng.choice(MANIFEST_ALPHABET))
        else:
            chars = chars[:position]
    return "".join(chars)


@pytest.mark.parametrize("extractor_class", EXTRACTORS, ids=EXTRACTOR_IDS)
class TestRandomInput:
    """Feed seeded random input to every extractor."""

    def test_random_bytes(self, extractor_class):
        """Test arbitrary bytes never raise."""
        rng = random.Random(20240101)
        extractor = extractor_class()
        for _ in range(50):
            data = bytes(rng.getrandbits(8) for _ in range(rng.randint(0, 512)))
            check_result(extractor_class, extractor.extract(data, manifest_path(extractor_class)))

    def test_random_manifest_text(self, extractor_class):
        """Test text built from syntax characters never raises."""
        rng = random.Random(7)
        extractor = extractor_class()
        for _ in range(50):
            text = "".join(rng.choice(MANIFEST_ALPHABET) for _ in range(rng.randint(0, 400)))
            check_result(extractor_class, extractor.extract(text, manifest_path(extractor_class)))

    def test_mutated_fixtures(self, extractor_class, corpus_dir):
        """Test damaged copies of real manifests never raise."""
        rng = random.Random(42)
        extractor = extractor_class()
        fixtures = [path for path in sorted(corpus_dir.rglob("*")) if path.is_file()]
        for path in fixtures:
            text = path.read_text()
            for _ in range(5):
                check_result(extractor_class, extractor.extract(mutate(text, rng), path.name))

    @settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(text=st.text())
    def test_any_text(self, extractor_class, text):
        """Test any unicode text never raises."""
        check_result(extractor_class, extractor_class().extract(text, manifest_path(extractor_class)))


class TestDegenerateInput:
    """Empty and whitespace-only files."""

    @pytest.mark.parametrize("text", ["", "\n", "   \t\n\n", "\x00"])
    @pytest.mark.parametrize("extractor_class", EXTRACTORS, ids=EXTRACTOR_IDS)
    def test_no_records(self, extractor_class, text):
        result = extractor_class().extract(text, manifest_path(extractor_class))
        assert result.records == ()


@pytest.mark.slow
@pytest.mark.parametrize("extractor_class", EXTRACTORS, ids=EXTRACTOR_IDS)
def test_ten_thousand_random_inputs(extractor_class):
    """Test 10,000 random byte strings per extractor."""
    rng = random.Random(extractor_class.tool.value)
    extractor = extractor_class()
    path = manifest_path(extractor_class)
    for _ in range(10000):
        size = rng.randint(0, 256)
        data = rng.getrandbits(8 * size).to_bytes(size, "little") if size else b""
        check_result(extractor_class, extractor.extract(data, path))
