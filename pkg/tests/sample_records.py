"""Canonical sample records shared across the test suite."""

from eamt.dataset import DatasetEntry, TargetReference

SONG_RECORD = {
    "id": "Q746666_0",
    "wikidata_id": "Q746666",
    "entity_types": ["Musical work"],
    "source": "Can you sing the chorus of the folk song Ring a Ring o' Roses?",
    "targets": [
        {
            "translation": "Puoi cantare il ritornello della canzone popolare Girotondo?",
            "mention": "Girotondo",
        },
        {
            "translation": "Sai cantare il ritornello del girotondo, la canzone popolare?",
            "mention": "girotondo",
        },
    ],
    "source_locale": "en",
    "target_locale": "it",
}

WAR_RECORD = {
    "id": "Q362_0",
    "wikidata_id": "Q362",
    "entity_types": ["Military conflict"],
    "source": "Who was the overall Commander of Allied Forces in Europe?",
    "targets": [
        {
            "translation": "Wer war der Oberbefehlshaber der alliierten Streitkräfte in Europa?",
            "mention": "alliierten Streitkräfte",
        }
    ],
    "source_locale": "en",
    "target_locale": "de",
}

# The two aligned entities of the commander example, in the order that
# reproduces its published target string.
WAR_ENTITIES = [
    ("Europe", "Europa"),
    ("Allied Forces", "alliierten Streitkräfte"),
]

WAR_TARGET_TEXT = (
    "Europe | Allied Forces <SEP> Europa | alliierten Streitkräfte <SEP> "
    "Wer war der Oberbefehlshaber der <entity> alliierten Streitkräfte </entity>"
    " in <entity> Europa </entity>?"
)
WAR_INPUT_TEXT = "ner and translation: Who was the overall Commander of Allied Forces in Europe?"


def war_aligned_entities():
    """The commander example's entities with their byte spans in the source."""
    from eamt.alignment import LLM, AlignedEntity

    return [
        AlignedEntity("Europe", (50, 56), "Europa", LLM),
        AlignedEntity("Allied Forces", (33, 46), "alliierten Streitkräfte", LLM),
    ]


def record_to_entry(record: dict) -> DatasetEntry:
    return DatasetEntry(
        id=record["id"],
        wikidata_id=record["wikidata_id"],
        entity_types=tuple(record["entity_types"]),
        source=record["source"],
        targets=tuple(
            TargetReference(t["translation"], t["mention"]) for t in record["targets"]
        ),
        source_locale=record["source_locale"],
        target_locale=record["target_locale"],
    )
