from hypothesis import given, strategies as st

from ehr2icd.ner.tokenizer import tokenize


def test_two_words():
    assert tokenize("Colon cancer") == [("Colon", 0, 5), ("cancer", 6, 12)]


def test_punctuation_is_its_own_token():
    assert tokenize("hypertension + stroke") == [
        ("hypertension", 0, 12),
        ("+", 13, 14),
        ("stroke", 15, 21),
    ]


def test_empty_input():
    assert tokenize("") == []


def test_slash_splits_adjacent_words():
    tokens = tokenize("shortness of breath/ pulmonary embolism")
    assert [t.text for t in tokens] == [
        "shortness", "of", "breath", "/", "pulmonary", "embolism",
    ]


def test_hyphenated_disease_name():
    assert [t.text for t in tokenize("Sickle-Cell Anaemia")] == [
        "Sickle", "-", "Cell", "Anaemia",
    ]


@given(st.text(max_size=80))
def test_tokens_reconstruct_the_input(text):
    tokens = tokenize(text)
    previous_end = 0
    for token in tokens:
        assert token.text == text[token.start : token.end]
        assert token.text and not token.text.isspace()
        # Everything skipped between tokens must be whitespace.
        assert text[previous_end : token.start].strip() == ""
        previous_end = token.end
    assert text[previous_end:].strip() == ""
