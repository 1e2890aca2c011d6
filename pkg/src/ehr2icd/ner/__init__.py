"""Disease recognition: spans, tokenization, BILUO codec, corpora, tagger."""

from .biluo import TAGS, TagSequence, decode_biluo, encode_biluo
from .corpus import (
    convert_external_annotations,
    read_corpus,
    read_internal,
    split_corpus,
    write_internal,
)
from .spans import DISEASE_LABEL, AnnotatedExample, EntitySpan, make_span
from .tagger import (
    FEATURE_TEMPLATE,
    TaggerModel,
    load_model,
    predict,
    save_model,
    train_tagger,
)
from .tokenizer import Token, tokenize

__all__ = [
    "AnnotatedExample",
    "DISEASE_LABEL",
    "EntitySpan",
    "FEATURE_TEMPLATE",
    "TAGS",
    "TagSequence",
    "TaggerModel",
    "Token",
    "convert_external_annotations",
    "decode_biluo",
    "encode_biluo",
    "load_model",
    "make_span",
    "predict",
    "read_corpus",
    "read_internal",
    "save_model",
    "split_corpus",
    "tokenize",
    "train_tagger",
    "write_internal",
]
