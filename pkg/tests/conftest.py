import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from eamt.dataset import DatasetEntry
from sample_records import SONG_RECORD, record_to_entry


@pytest.fixture
def song_entry() -> DatasetEntry:
    return record_to_entry(SONG_RECORD)


@pytest.fixture
def war_entry() -> DatasetEntry:
    from sample_records import WAR_RECORD

    return record_to_entry(WAR_RECORD)


@pytest.fixture
def song_jsonl() -> bytes:
    return (json.dumps(SONG_RECORD, ensure_ascii=False) + "\n").encode("utf-8")
