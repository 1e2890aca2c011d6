"""Rule-based canonicalization of gender, age, and diagnosis-date cells.

Each normalizer returns None (NA) when a value matches none of its known
patterns; a record is dropped as soon as any of its three demographic values
normalizes to NA. Diagnosis text always passes through untouched.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .ingestion import RawRecord

FEMALE = "Female"
MALE = "Male"

# Exact-match vocabularies; substring matching would let "foo" hit "f".
_FEMALE_FORMS = frozenset({"F", "f", "female", "Female"})
_MALE_FORMS = frozenset({"M", "m", "male", "Male"})

_INTEGER_RE = re.compile(r"^\d+$")
_YEARS_RE = re.compile(r"^(\d+)\s*(?:y|yr|yrs|year|years)$", re.IGNORECASE)
_MONTHS_RE = re.compile(r"^(\d+)\s*(?:m|month|months)$", re.IGNORECASE)
_FRACTION_RE = re.compile(r"^(\d+)\s+\d+/\d+$")
_DATE_RE = re.compile(r"^(\d+)[/-](\d+)[/-](\d+)$")


class DateTriple(NamedTuple):
    """A day/month/year triple kept in its source calendar."""

    day: int
    month: int
    year: int

    def render(self) -> str:
        # Canonical form uses "/" and no zero padding.
        return f"{self.day}/{self.month}/{self.year}"


@dataclass(frozen=True)
class NormalizedRecord:
    gender: str
    age_years: int
    diagnosis_date: DateTriple
    diagnosis_text: str
    row_index: int
    extras: dict[str, str] = field(default_factory=dict)


def normalize_gender(raw: str) -> Optional[str]:
    """Map one of the eight known gender formats to Female/Male, else NA."""
    value = raw.strip()
    if value in _FEMALE_FORMS:
        return FEMALE
    if value in _MALE_FORMS:
        return MALE
    return None


def normalize_age(raw: str) -> Optional[int]:
    """Extract whole years from an age cell, else NA.

    Handles plain integers, integers with a year marker (y/yr/yrs/year/years),
    and mixed fractions ("2 1/2" keeps the whole part). Month-valued ages and
    results of zero map to NA: ages under one year are filtered out.
    """
    value = raw.strip()
    match = _INTEGER_RE.match(value)
    if match:
        return _at_least_one_year(int(value))
    match = _YEARS_RE.match(value)
    if match:
        return _at_least_one_year(int(match.group(1)))
    if _MONTHS_RE.match(value):
        return None
    match = _FRACTION_RE.match(value)
    if match:
        return _at_least_one_year(int(match.group(1)))
    return None


def _at_least_one_year(age: int) -> Optional[int]:
    return age if age >= 1 else None


def normalize_date(raw: str) -> Optional[DateTriple]:
    """Parse a day/month/year cell separated by "/" or "-", else NA.

    Textual values ("5 years ago") are NA. Components are only checked for
    digit-ness and positivity; no calendar validation is attempted because
    dates are used solely for grouping.
    """
    match = _DATE_RE.match(raw.strip())
    if not match:
        return None
    day, month, year = (int(g) for g in match.groups())
    if day < 1 or month < 1 or year < 1:
        return None
    return DateTriple(day, month, year)


def normalize_record(record: RawRecord) -> Optional[NormalizedRecord]:
    """Normalize all three demographics; None when any of them is NA."""
    normalized, _ = normalize_with_reason(record)
    return normalized


def normalize_with_reason(
    record: RawRecord,
) -> tuple[Optional[NormalizedRecord], Optional[str]]:
    """Like normalize_record but also names the first failing field."""
    gender = normalize_gender(record.gender_raw)
    if gender is None:
        return None, "gender"
    age = normalize_age(record.age_raw)
    if age is None:
        return None, "age"
    date = normalize_date(record.diagnosis_date_raw)
    if date is None:
        return None, "date"
    return (
        NormalizedRecord(
            gender=gender,
            age_years=age,
            diagnosis_date=date,
            diagnosis_text=record.diagnosis_text,
            row_index=record.row_index,
            extras=dict(record.extras),
        ),
        None,
    )
