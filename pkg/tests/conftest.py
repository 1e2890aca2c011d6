from pathlib import Path

import pytest

from ehr2icd.linker import KBEntry, KnowledgeBase, build_index
from ehr2icd.samples import sample_path

TESTS_DIR = Path(__file__).parent
GOLDEN_DIR = TESTS_DIR / "golden"
DATA_DIR = TESTS_DIR / "data"


def make_kb(*entries: KBEntry) -> KnowledgeBase:
    frozen = tuple(entries)
    return KnowledgeBase(entries=frozen, index=build_index(frozen))


@pytest.fixture(scope="session")
def table9_kb() -> KnowledgeBase:
    # The four type-1-diabetes entries used by the ranked-lookup checks.
    return make_kb(
        KBEntry("E10.9", "Type 1 diabetes mellitus without complications"),
        KBEntry("E10.21", "Type 1 diabetes mellitus with diabetic nephropathy"),
        KBEntry("E10.36", "Type 1 diabetes mellitus with diabetic cataract"),
        KBEntry("E10.41", "Type 1 diabetes mellitus with diabetic mononeuropathy"),
    )


@pytest.fixture(scope="session")
def sample_kb_path() -> Path:
    return sample_path("sample_kb.tsv")


@pytest.fixture(scope="session")
def sample_corpus_path() -> Path:
    return sample_path("sample_corpus.jsonl")


@pytest.fixture(scope="session")
def sample_model_path() -> Path:
    return sample_path("sample_model.txt")


@pytest.fixture(scope="session")
def sample_ehr_path() -> Path:
    return sample_path("sample_ehr.csv")


@pytest.fixture(scope="session")
def sample_ehr_300_path() -> Path:
    return sample_path("sample_ehr_300.csv")
