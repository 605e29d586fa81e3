import json
from datetime import datetime, timezone
from pathlib import Path

import pytest

from clickrank.config import ServiceConfig


def pytest_runtest_logreport(report):
    # One visible verdict line per acceptance criterion.
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\n[acceptance] {name}: {verdict}")

T0 = datetime(2026, 8, 10, 12, 0, 0, tzinfo=timezone.utc)

CORPUS = [
    {
        "doc_id": "atm-fees",
        "uri": "https://example.test/atm-fees",
        "title": "ATM Fees Explained",
        "body": "atm card fees atm withdrawal card atm bank",
    },
    {
        "doc_id": "card-games",
        "uri": "https://example.test/card-games",
        "title": "Card Games for Kids",
        "body": "card games card card deck games play",
    },
    {
        "doc_id": "id-cards",
        "uri": "https://example.test/id-cards",
        "title": "Office ID Cards",
        "body": "id card badge office card photo",
    },
    {
        "doc_id": "credit-cards",
        "uri": "https://example.test/credit-cards",
        "title": "Credit Card Basics",
        "body": "credit card interest card limit credit card",
    },
]


def write_corpus(data_dir: Path) -> None:
    data_dir.mkdir(parents=True, exist_ok=True)
    (data_dir / "corpus.json").write_text(json.dumps(CORPUS))


class SteppingClock:
    """Deterministic clock: starts at T0 and can be advanced explicitly."""

    def __init__(self, start: datetime = T0):
        self.now = start

    def __call__(self) -> datetime:
        return self.now

    def advance(self, **kwargs) -> datetime:
        from datetime import timedelta

        self.now = self.now + timedelta(**kwargs)
        return self.now


@pytest.fixture
def clock():
    return SteppingClock()


@pytest.fixture
def service_config(tmp_path):
    data_dir = tmp_path / "data"
    write_corpus(data_dir)
    return ServiceConfig(data_dir=data_dir)
