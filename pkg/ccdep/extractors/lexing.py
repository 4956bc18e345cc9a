#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Lexical helpers shared by the script-language extractors.

Build scripts are mined without evaluating them. These helpers mask
comments (keeping offsets so line numbers stay valid), locate balanced
command calls, and split argument lists.
"""

import bisect
import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Pattern, Sequence, Tuple


class LineIndex:
    """Maps character offsets of a text to 1-based line numbers."""

    def __init__(self, text: str):
        self._starts = [0] + [m.end() for m in re.finditer(r"\n", text)]

    def line_of(self, offset: int) -> int:
        return bisect.bisect_right(self._starts, offset)


def _blank(segment: str) -> str:
    return re.sub(r"[^\n]", " ", segment)


def mask_comments(
    text: str,
    line_comments: Sequence[str] = ("#",),
    block_comments: Sequence[Tuple[str, str]] = (),
    quotes: str = "\"'",
    long_strings: Sequence[Tuple[str, str]] = (),
    escapes: bool = True,
) -> str:
    """
    Replace comments with spaces, leaving strings and newlines in place.

    Args:
        text: Source text
        line_comments: Markers that start a comment running to end of line
        block_comments: (open, close) pairs for block comments
        quotes: Quote characters that delimit single-line strings
        long_strings: (open, close) pairs for multi-line strings
        escapes: Whether backslash escapes the next character inside strings

    Returns:
        Text of the same length with comment characters blanked
    """
    out: List[str] = []
    i = 0
    n = len(text)
    while i < n:
        matched = False
        for opening, closing in block_comments:
            if text.startswith(opening, i):
                end = text.find(closing, i + len(opening))
                end = n if end < 0 else end + len(closing)
                out.append(_blank(text[i:end]))
                i = end
                matched = True
                break
        if matched:
            continue
        for opening, closing in long_strings:
            if text.startswith(opening, i):
                end = text.find(closing, i + len(opening))
                end = n if end < 0 else end + len(closing)
                out.append(text[i:end])
                i = end
                matched = True
                break
        if matched:
            continue
        if any(text.startswith(marker, i) for marker in line_comments):
            end = text.find("\n", i)
            end = n if end < 0 else end
            out.append(" " * (end - i))
            i = end
            continue
        ch = text[i]
        if ch in quotes:
            j = i + 1
            while j < n and text[j] != ch and text[j] != "\n":
                j += 2 if escapes and text[j] == "\\" else 1
            end = min(j + 1, n)
            out.append(text[i:end])
            i = end
            continue
        out.append(ch)
        i += 1
    return "".join(out)


@dataclass(frozen=True)
class Call:
    """A located call ``name(args)``."""

    name: str
    args: str
    start: int
    args_start: int
    end: int


def matching_close(text: str, open_pos: int, quotes: str = "\"'", pairs: str = "()") -> Optional[int]:
    """
    Find the bracket closing the one at ``open_pos``.

    Returns:
        Offset of the closing bracket, or None if it is unbalanced
    """
    opening, closing = pairs[0], pairs[1]
    depth = 0
    i = open_pos
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in quotes:
            j = i + 1
            while j < n and text[j] != ch:
                j += 2 if text[j] == "\\" else 1
            i = j + 1
            continue
        if ch == opening:
            depth += 1
        elif ch == closing:
            depth -= 1
            if depth == 0:
                return i
        i += 1
    return None


def find_calls(
    text: str,
    pattern: Pattern,
    quotes: str = "\"'",
    on_unbalanced=None,
) -> Iterator[Call]:
    """
    Yield calls whose name matches ``pattern``.

    ``pattern`` must match the callee name and the opening parenthesis,
    with the name in group 1. Calls with unbalanced parentheses are
    reported through ``on_unbalanced(offset, name)`` and scanning resumes
    at the next line.
    """
    pos = 0
    while True:
        match = pattern.search(text, pos)
        if not match:
            return
        open_pos = match.end() - 1
        close = matching_close(text, open_pos, quotes=quotes)
        if close is None:
            if on_unbalanced is not None:
                on_unbalanced(match.start(), match.group(1))
            newline = text.find("\n", match.end())
            if newline < 0:
                return
            pos = newline + 1
            continue
        yield Call(
            name=match.group(1),
            args=text[open_pos + 1:close],
            start=match.start(1),
            args_start=open_pos + 1,
            end=close + 1,
        )
        pos = close + 1


def split_top_level(text: str, separator: str = ",", quotes: str = "\"'", brackets: str = "([{") -> List[Tuple[int, str]]:
    """
    Split on ``separator`` outside strings and brackets.

    Returns:
        (offset, piece) pairs with pieces stripped; offsets point at the
        first non-blank character of each piece
    """
    closers = {"(": ")", "[": "]", "{": "}"}
    pieces: List[Tuple[int, str]] = []
    depth = 0
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in quotes:
            j = i + 1
            while j < n and text[j] != ch:
                j += 2 if text[j] == "\\" else 1
            i = j + 1
            continue
        if ch in brackets:
            depth += 1
        elif ch in (closers[b] for b in brackets):
            depth = max(depth - 1, 0)
        elif ch == separator and depth == 0:
            pieces.append(_piece(text, start, i))
            start = i + 1
        i += 1
    pieces.append(_piece(text, start, n))
    return [piece for piece in pieces if piece[1]]


def _piece(text: str, start: int, end: int) -> Tuple[int, str]:
    raw = text[start:end]
    stripped = raw.lstrip()
    return start + (len(raw) - len(stripped)), stripped.rstrip()


_STRING_RE = re.compile(r"\"((?:\\.|[^\"\\\n])*)\"|'((?:\\.|[^'\\\n])*)'")


def string_literal(text: str) -> Optional[str]:
    """Get the value of ``text`` if it is exactly one quoted string literal."""
    match = _STRING_RE.fullmatch(text.strip())
    if not match:
        return None
    value = match.group(1) if match.group(1) is not None else match.group(2)
    return value.replace("\\\"", "\"").replace("\\'", "'")


def string_literals(text: str) -> Iterator[Tuple[int, str]]:
    """Yield (offset, value) for every quoted string literal in ``text``."""
    for match in _STRING_RE.finditer(text):
        value = match.group(1) if match.group(1) is not None else match.group(2)
        yield match.start(), value


def keyword_arguments(args: str, assign: str = "=") -> dict:
    """
    Collect ``key = value`` pieces of a comma-separated argument list.

    Values are kept as source text; positional pieces are stored under
    integer keys in order.
    """
    result = {}
    position = 0
    for offset, piece in split_top_level(args):
        match = re.match(r"^([A-Za-z_]\w*)\s*" + re.escape(assign) + r"(?!=)\s*(.*)$", piece, re.DOTALL)
        if match:
            result[match.group(1)] = (offset + match.start(2), match.group(2).strip())
        else:
            result[position] = (offset, piece)
            position += 1
    return result


class TokenLocator:
    """
    Finds line numbers of quoted tokens in structured documents.

    JSON and TOML parsers drop positions; this walks the raw text so that
    repeated lookups of the same token return successive occurrences.
    """

    def __init__(self, text: str):
        self.text = text
        self.index = LineIndex(text)
        self._cursor = {}

    def line_of(self, token: str, quoted: bool = True) -> int:
        needle = f'"{token}"' if quoted else token
        start = self._cursor.get(needle, 0)
        position = self.text.find(needle, start)
        if position < 0 and quoted:
            needle_single = f"'{token}'"
            start = self._cursor.get(needle_single, 0)
            position = self.text.find(needle_single, start)
            needle = needle_single
        if position < 0:
            return 0
        self._cursor[needle] = position + len(needle)
        return self.index.line_of(position)
