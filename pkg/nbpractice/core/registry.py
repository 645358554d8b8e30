"""
Static catalog of collaboration-specific notebook best practices
"""

from typing import Dict, List

from nbpractice.schemas.registry import RegistryEntry, Theme


def _entry(bp_id: str, title: str, theme: Theme, sources: str, operationalized: bool) -> RegistryEntry:
    source_ids = [item.strip() for item in sources.split(",")]
    return RegistryEntry(
        bp_id=bp_id,
        title=title,
        theme=theme,
        support_count=len(source_ids),
        source_ids=source_ids,
        operationalized=operationalized,
    )


REGISTRY: List[RegistryEntry] = [
    _entry("BP1", "Use version control", Theme.REPRODUCIBLE,
           "W1, G1, G2, G3, G5, G6, G8, G11", False),
    _entry("BP2", "Manage project dependencies", Theme.REPRODUCIBLE,
           "W1, W2, G2, G7, G8, G9, G13", False),
    _entry("BP3", "Use self-contained environments", Theme.REPRODUCIBLE,
           "W1, G1, G2, G7, G8, G13", False),
    _entry("BP4", "Put imports at the beginning", Theme.REPRODUCIBLE,
           "W2, G5, G7, G9, G10", True),
    _entry("BP5", "Ensure re-executability (re-run notebooks top to bottom)", Theme.REPRODUCIBLE,
           "W1, W2, W4, G2, G9, G11", True),
    _entry("BP6", "Modularize your code", Theme.HIGH_QUALITY_CODE,
           "W1, W2, G1, G3, G7, G8, G11", True),
    _entry("BP7", "Test your code", Theme.HIGH_QUALITY_CODE,
           "W2, G2, G3, G7, G9", True),
    _entry("BP8", "Name your notebooks consistently", Theme.HIGH_QUALITY_CODE,
           "W2, G5, G6", False),
    _entry("BP9", "Stick to coding standards", Theme.HIGH_QUALITY_CODE,
           "G1, G3, G5, G10", True),
    _entry("BP10", "Use relative paths", Theme.HIGH_QUALITY_CODE,
           "W2", False),
    _entry("BP11", "Document your analysis", Theme.LITERATE_PROGRAMMING,
           "W1, G1, G3, G5, G8, G9, G10, G11", True),
    _entry("BP12", "Leverage Markdown headings to structure your notebook", Theme.LITERATE_PROGRAMMING,
           "W1, W2, G1, G3, G9, G10", True),
    _entry("BP13", "Keep your notebook clean", Theme.CLEAN_AND_CONCISE,
           "W1, W2, G3", True),
    _entry("BP14", "Keep your notebook concise", Theme.CLEAN_AND_CONCISE,
           "W1, G5, G9, G10", True),
    _entry("BP15", "Distinguish production and development artifacts", Theme.PRODUCTION_VS_DEVELOPMENT,
           "G2, G5, G6, G9, G11", False),
    _entry("BP16", "Make your notebooks available", Theme.OPEN_DISSEMINATION,
           "W1, G9", False),
    _entry("BP17", "Make your data available", Theme.OPEN_DISSEMINATION,
           "W1, G9, G11, G13", False),
]

REGISTRY_BY_ID: Dict[str, RegistryEntry] = {entry.bp_id: entry for entry in REGISTRY}


def get_entry(bp_id: str) -> RegistryEntry:
    return REGISTRY_BY_ID[bp_id]


def operationalized_ids() -> List[str]:
    return [entry.bp_id for entry in REGISTRY if entry.operationalized]
