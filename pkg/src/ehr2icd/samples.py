"""Access to the small data files bundled with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def sample_path(name: str) -> Path:
    """Filesystem path of a bundled sample file (knowledge base, corpus, ...)."""
    return Path(str(resources.files("ehr2icd").joinpath("data", name)))
