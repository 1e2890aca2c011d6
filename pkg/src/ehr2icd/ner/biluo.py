"""Encode entity spans as BILUO tag sequences and decode them back.

Decoding is total: invalid sequences are repaired rather than rejected. An
I or L with no open entity starts a new entity at that token, and an entity
opened by B but never closed by L ends at its last consecutive I. On valid
input, decoding inverts encoding exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import MisalignedSpan, OverlapError
from .spans import DISEASE_LABEL, EntitySpan, make_span
from .tokenizer import Token

B = "B-Disease"
I = "I-Disease"
L = "L-Disease"
U = "U-Disease"
O = "O"

# Fixed order; also the tie-break order for tag argmax in the tagger.
TAGS = (B, I, L, U, O)


@dataclass(frozen=True)
class TagSequence:
    tokens: tuple[Token, ...]
    tags: tuple[str, ...]

    def __post_init__(self):
        if len(self.tokens) != len(self.tags):
            raise ValueError("tokens and tags must have equal length")


def encode_biluo(tokens: list[Token], spans: list[EntitySpan]) -> TagSequence:
    """Tag tokens for the given spans; boundaries must sit on token edges."""
    tags = [O] * len(tokens)
    for span in sorted(spans, key=lambda s: (s.start, s.end)):
        covered = [
            k
            for k, tok in enumerate(tokens)
            if tok.start >= span.start and tok.end <= span.end
        ]
        touching = [
            tok for tok in tokens if tok.start < span.end and tok.end > span.start
        ]
        if (
            not covered
            or len(touching) != len(covered)
            or tokens[covered[0]].start != span.start
            or tokens[covered[-1]].end != span.end
        ):
            raise MisalignedSpan(
                f"span ({span.start}, {span.end}) {span.text!r} does not align "
                f"with token boundaries"
            )
        if any(tags[k] != O for k in covered):
            raise OverlapError(0, f"span ({span.start}, {span.end}) overlaps another span")
        if len(covered) == 1:
            tags[covered[0]] = U
        else:
            tags[covered[0]] = B
            for k in covered[1:-1]:
                tags[k] = I
            tags[covered[-1]] = L
    return TagSequence(tokens=tuple(tokens), tags=tuple(tags))


def decode_biluo(seq: TagSequence, source: str) -> list[EntitySpan]:
    """Turn a (possibly invalid) tag sequence into non-overlapping spans."""
    spans: list[EntitySpan] = []
    open_start: int | None = None  # token index of the current B/I run
    last = -1  # last token index added to the open run

    def close(upto: int) -> None:
        spans.append(_token_span(seq.tokens, open_start, upto, source))

    for k, tag in enumerate(seq.tags):
        if tag == B:
            if open_start is not None:
                close(last)
            open_start, last = k, k
        elif tag == I:
            if open_start is None:
                open_start = k  # repair: I without B opens here
            last = k
        elif tag == L:
            if open_start is None:
                open_start = k  # repair: lone L is a single-token entity
            close(k)
            open_start = None
        elif tag == U:
            if open_start is not None:
                close(last)
                open_start = None
            spans.append(_token_span(seq.tokens, k, k, source))
        else:  # O
            if open_start is not None:
                close(last)
                open_start = None
    if open_start is not None:
        close(last)
    return spans


def _token_span(tokens, first: int, last: int, source: str) -> EntitySpan:
    return make_span(source, tokens[first].start, tokens[last].end, DISEASE_LABEL)
