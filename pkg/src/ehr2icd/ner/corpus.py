"""Corpus import, export, and splitting.

Two newline-delimited JSON formats are understood:

* external annotation exports: one object per line with ``content``, an
  ``annotation`` list whose items carry a ``label`` list and ``points`` with
  inclusive start/end character offsets, and ``metadata.status``;
* the internal format written by this package: one object per line with
  ``content`` and ``entities`` as [start, end, label] triples using
  exclusive ends.

External offsets are inclusive at the right edge and are shifted by one
during conversion. Only records whose status is "done" are kept, and only
annotations labelled "Disease Name" (or already "Disease") are converted.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

from ..errors import EmptyCorpus, MalformedFile, OffsetOutOfRange, OverlapError
from .spans import DISEASE_LABEL, AnnotatedExample, EntitySpan

_ACCEPTED_LABELS = ("Disease Name", DISEASE_LABEL)


def convert_external_annotations(document: str) -> list[AnnotatedExample]:
    """Convert an external annotation export (one JSON object per line)."""
    examples = []
    for lineno, line in enumerate(document.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedFile("<annotations>", lineno, f"invalid JSON: {exc}") from exc
        status = (obj.get("metadata") or {}).get("status")
        if status is not None and status != "done":
            continue
        content = obj.get("content")
        if not isinstance(content, str):
            raise MalformedFile("<annotations>", lineno, "record has no content string")
        spans = []
        for annotation in obj.get("annotation") or []:
            labels = annotation.get("label") or []
            if isinstance(labels, str):
                labels = [labels]
            if not any(label in _ACCEPTED_LABELS for label in labels):
                continue
            for point in annotation.get("points") or []:
                start = point.get("start")
                end_inclusive = point.get("end")
                if not isinstance(start, int) or not isinstance(end_inclusive, int):
                    raise MalformedFile(
                        "<annotations>", lineno, "point offsets must be integers"
                    )
                end = end_inclusive + 1
                if not (0 <= start < end <= len(content)):
                    raise OffsetOutOfRange(
                        lineno,
                        f"point ({start}, {end_inclusive}) exceeds content of "
                        f"length {len(content)}",
                    )
                spans.append(
                    EntitySpan(start, end, content[start:end], DISEASE_LABEL)
                )
        examples.append(_build_example(content, spans, lineno))
    return examples


def _build_example(content: str, spans: list[EntitySpan], record: int) -> AnnotatedExample:
    spans = sorted(spans, key=lambda s: (s.start, s.end))
    for previous, current in zip(spans, spans[1:]):
        if previous.end > current.start:
            raise OverlapError(
                record,
                f"spans ({previous.start}, {previous.end}) and "
                f"({current.start}, {current.end}) overlap",
            )
    return AnnotatedExample(content=content, spans=tuple(spans))


def read_internal(path) -> list[AnnotatedExample]:
    """Read the internal newline-delimited corpus format."""
    examples = []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedFile(path, lineno, f"invalid JSON: {exc}") from exc
            content = obj.get("content")
            if not isinstance(content, str):
                raise MalformedFile(path, lineno, "record has no content string")
            spans = []
            for item in obj.get("entities") or []:
                start, end, label = item[0], item[1], item[2] if len(item) > 2 else DISEASE_LABEL
                if not (0 <= start < end <= len(content)):
                    raise OffsetOutOfRange(
                        lineno, f"entity ({start}, {end}) exceeds content length"
                    )
                spans.append(EntitySpan(start, end, content[start:end], label))
            examples.append(_build_example(content, spans, lineno))
    return examples


def write_internal(path, examples: list[AnnotatedExample]) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for example in examples:
            record = {
                "content": example.content,
                "entities": [[s.start, s.end, s.label] for s in example.spans],
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def read_corpus(path) -> list[AnnotatedExample]:
    """Read a corpus file, auto-detecting external vs internal schema."""
    text = Path(path).read_text(encoding="utf-8")
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            first = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedFile(path, 1, f"invalid JSON: {exc}") from exc
        if "annotation" in first:
            return convert_external_annotations(text)
        if "entities" in first:
            return read_internal(path)
        raise MalformedFile(
            path, 1, "records carry neither 'annotation' nor 'entities'"
        )
    raise EmptyCorpus(f"{path} contains no records")


def split_corpus(
    corpus: list[AnnotatedExample], train_fraction: float, seed: int
) -> tuple[list[AnnotatedExample], list[AnnotatedExample]]:
    """Deterministically shuffle and partition a corpus.

    The first floor(n * train_fraction) shuffled examples become the training
    half; together the two halves are exactly the input.
    """
    if not corpus:
        raise EmptyCorpus()
    if not 0 < train_fraction < 1:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    items = list(corpus)
    random.Random(seed).shuffle(items)
    # The epsilon keeps exact products like 1000 * 0.7 from landing below the
    # integer they equal mathematically.
    cut = int(len(items) * train_fraction + 1e-9)
    return items[:cut], items[cut:]
