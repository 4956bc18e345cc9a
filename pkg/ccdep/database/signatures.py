#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Function signatures for code clone detection.

A C/C++ function is normalized (comments removed, literals collapsed,
insignificant whitespace dropped) and hashed with 128-bit MurmurHash3.
Two functions share a signature exactly when their normalized text is
identical.

Signature database file format::

    ccdep-signature-db 1
    library <name> <total>
    <32 hex digits>
    ...
    end

Libraries appear sorted by name and digests sorted within each block, so
writing the same database twice gives identical bytes.
"""

import functools
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Tuple, Union

import mmh3

from ..config import Config
from ..extractors.lexing import LineIndex, mask_comments, matching_close
from ..model import ToolKind, normalize_name

logger = logging.getLogger(__name__)

_HASH = functools.partial(mmh3.hash128, seed=0, x64arch=True, signed=False)

_LEXEME_RE = re.compile(r"//[^\n]*|/\*.*?(?:\*/|$)|\"(?:\\.|[^\"\\\n])*\"|'(?:\\.|[^'\\\n])*'", re.DOTALL)
_WHITESPACE_RE = re.compile(r"\s+")
_HEADER_RE = re.compile(r"(?<![\w:.>~])(~?[A-Za-z_]\w*(?:\s*::\s*~?[A-Za-z_]\w*)*)\s*\(")
_BETWEEN_RE = re.compile(r"^[\s\w:&*<>,()\[\]\-~=.]*$")
_HEX_RE = re.compile(r"^[0-9a-f]{32}$")

# Identifiers followed by "(" that never start a function definition
CONTROL_KEYWORDS = frozenset({
    "if", "for", "while", "switch", "catch", "return", "sizeof", "alignof", "decltype",
    "else", "do", "defined", "static_assert", "typeid", "new", "delete", "throw", "__attribute__",
    "__declspec", "alignas", "noexcept", "operator", "case", "goto", "_Pragma",
})
_REPEATABLE = set("+-&|<>/")


def _keep_gap(before: str, after: str) -> bool:
    if (before.isalnum() or before == "_") and (after.isalnum() or after == "_"):
        return True
    if before == after and before in _REPEATABLE:
        return True
    return (before, after) in (("/", "*"), ("*", "/"))


def normalize_function(body: str) -> str:
    """
    Normalize function source for hashing.

    Comments are removed, string and character literals become ``""`` and
    ``''``, and whitespace is dropped except where removing it would join
    two tokens; a kept gap is a single space. Identifiers keep their case.

    Args:
        body: Function source text

    Returns:
        Normalized text (empty for a body of comments only)
    """
    def collapse(match):
        lexeme = match.group()
        if lexeme.startswith("//") or lexeme.startswith("/*"):
            return " "
        return '""' if lexeme[0] == '"' else "''"

    text = _LEXEME_RE.sub(collapse, body).strip()
    pieces: List[str] = []
    position = 0
    for gap in _WHITESPACE_RE.finditer(text):
        pieces.append(text[position:gap.start()])
        if _keep_gap(text[gap.start() - 1], text[gap.end()]):
            pieces.append(" ")
        position = gap.end()
    pieces.append(text[position:])
    return "".join(pieces)


@dataclass(frozen=True, order=True)
class FunctionSignature:
    """Digest of one normalized function and the normalized length."""

    hash: str
    length: int = field(compare=False)

    def __post_init__(self):
        if not _HEX_RE.match(self.hash):
            raise ValueError(f"Signature must be 32 lowercase hex digits: {self.hash!r}")
        if self.length <= 0:
            raise ValueError(f"Signature length must be positive: {self.length}")

    @classmethod
    def of(cls, normalized: str) -> "FunctionSignature":
        return cls(hash=format(_HASH(normalized), "032x"), length=len(normalized.encode("utf-8")))


def extract_functions(text: str) -> Iterator[Tuple[int, str]]:
    """
    Find function definitions in C/C++ source.

    A definition is a name and balanced parameter list followed (after
    optional qualifiers or a constructor initializer list) by a
    brace-balanced body.

    Yields:
        (line of the function name, source from the name to the closing brace)
    """
    masked = mask_comments(text, line_comments=("//",), block_comments=(("/*", "*/"),), quotes="\"'")
    index = LineIndex(masked)
    position = 0
    while True:
        header = _HEADER_RE.search(masked, position)
        if not header:
            return
        position = header.end()
        name = header.group(1).split("::")[-1].strip().lstrip("~")
        if name in CONTROL_KEYWORDS:
            continue
        close = matching_close(masked, header.end() - 1, quotes="\"'")
        if close is None:
            continue

        brace = masked.find("{", close + 1)
        semicolon = masked.find(";", close + 1)
        if brace < 0 or (0 <= semicolon < brace):
            continue
        if not _BETWEEN_RE.match(masked[close + 1:brace]):
            continue
        end = matching_close(masked, brace, quotes="\"'", pairs="{}")
        if end is None:
            continue
        yield index.line_of(header.start()), text[header.start():end + 1]
        position = end + 1


def hash_source(text: str, min_bytes: int = Config.MIN_FUNCTION_BYTES) -> List[Tuple[int, FunctionSignature]]:
    """
    Hash the functions of one source file.

    Functions whose normalized text is shorter than ``min_bytes`` are
    skipped.

    Returns:
        (line, signature) pairs in source order
    """
    signatures = []
    for line, body in extract_functions(text):
        normalized = normalize_function(body)
        if len(normalized.encode("utf-8")) < min_bytes:
            continue
        signatures.append((line, FunctionSignature.of(normalized)))
    return signatures


@dataclass(frozen=True)
class LibrarySignatures:
    """Distinct function digests of one library."""

    signatures: FrozenSet[str]

    def __post_init__(self):
        if not self.signatures:
            raise ValueError("A library needs at least one signature")

    @property
    def total(self) -> int:
        return len(self.signatures)


@dataclass(frozen=True)
class SignatureDB:
    """
    Signature database mapping library names to their function digests.

    Library names are normalized. The database is immutable once built.
    """

    libraries: Dict[str, LibrarySignatures] = field(default_factory=dict)

    def __post_init__(self):
        for name in self.libraries:
            if normalize_name(name, ToolKind.CLONE_SIG) != name:
                raise ValueError(f"Signature DB library name is not normalized: {name!r}")

    def __len__(self):
        return len(self.libraries)

    def __contains__(self, library):
        return library in self.libraries

    @property
    def names(self) -> List[str]:
        return sorted(self.libraries)

    def owners(self) -> Dict[str, List[str]]:
        """Get an index from digest to the libraries that contain it."""
        index: Dict[str, List[str]] = {}
        for name in self.names:
            for digest in self.libraries[name].signatures:
                index.setdefault(digest, []).append(name)
        return index

    @classmethod
    def from_signatures(cls, libraries: Dict[str, Iterable[str]]) -> "SignatureDB":
        """Build a database from raw names and digests; libraries without digests are dropped."""
        entries = {}
        for name, digests in libraries.items():
            digests = frozenset(digests)
            if digests:
                entries[normalize_name(name, ToolKind.CLONE_SIG)] = LibrarySignatures(digests)
        return cls(entries)

    def to_text(self) -> str:
        lines = [f"{Config.SIGNATURE_DB_MAGIC} {Config.SIGNATURE_DB_FORMAT_VERSION}"]
        for name in self.names:
            entry = self.libraries[name]
            lines.append(f"library {name} {entry.total}")
            lines.extend(sorted(entry.signatures))
            lines.append("end")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SignatureDB":
        """
        Parse the flat file format.

        Raises:
            ValueError: If the text is not a valid signature database
        """
        lines = text.splitlines()
        expected = f"{Config.SIGNATURE_DB_MAGIC} {Config.SIGNATURE_DB_FORMAT_VERSION}"
        if not lines or lines[0].strip() != expected:
            raise ValueError(f"Not a signature database (expected header {expected!r})")

        libraries: Dict[str, LibrarySignatures] = {}
        current = None
        for number, line in enumerate(lines[1:], start=2):
            line = line.strip()
            if not line:
                continue
            if current is None:
                parts = line.split()
                if len(parts) != 3 or parts[0] != "library" or not parts[2].isdigit():
                    raise ValueError(f"line {number}: expected 'library <name> <total>'")
                if parts[1] in libraries:
                    raise ValueError(f"line {number}: duplicate library {parts[1]!r}")
                current = (parts[1], int(parts[2]), set(), number)
            elif line == "end":
                name, total, digests, start = current
                if len(digests) != total:
                    raise ValueError(f"line {start}: library {name!r} declares {total} signatures, has {len(digests)}")
                libraries[name] = LibrarySignatures(frozenset(digests))
                current = None
            elif _HEX_RE.match(line):
                current[2].add(line)
            else:
                raise ValueError(f"line {number}: invalid signature {line!r}")
        if current is not None:
            raise ValueError(f"line {current[3]}: library {current[0]!r} is missing 'end'")
        return cls(libraries)


def write_signature_db(db: SignatureDB, path: Union[str, Path]) -> Path:
    """Write a signature database file, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(db.to_text())
    logger.info("Wrote signature database with %d libraries to %s", len(db), path)
    return path


def read_signature_db(path: Union[str, Path]) -> SignatureDB:
    """
    Read a signature database file.

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If the file is malformed
    """
    with open(path, "r", encoding="utf-8") as handle:
        db = SignatureDB.from_text(handle.read())
    logger.debug("Loaded %d libraries from %s", len(db), path)
    return db
