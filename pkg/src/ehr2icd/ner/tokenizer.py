"""Deterministic tokenizer shared by every annotator in the pipeline.

Tokens are maximal runs of letters or digits; every other non-space
character (including "/", "+", and "-") becomes a single-character token.
Whitespace is discarded but offsets always index the original string, so
joining tokens with their original gaps reconstructs the input.
"""

from __future__ import annotations

import re
from typing import NamedTuple

# [^\W_] is "word character minus underscore", i.e. letters and digits.
_TOKEN_RE = re.compile(r"[^\W_]+|\S")


class Token(NamedTuple):
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    return [Token(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]
