"""Bundled object-name vocabularies, partitioned across train/dev/test.

Task-critical names must never leak between splits, so each vocabulary is
ranked by a stable content hash and dealt round-robin to the three splits.
The partition depends only on the names themselves, never on a run seed.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache
from importlib import resources

SPLITS = ("train", "dev", "test")


def _stable_rank(name: str) -> str:
    return hashlib.sha256(name.encode("utf-8")).hexdigest()


def partition(names: list[str]) -> dict[str, list[str]]:
    """Deal names to splits round-robin in stable-hash order."""
    ranked = sorted(names, key=lambda n: (_stable_rank(n), n))
    out = {split: [] for split in SPLITS}
    for i, name in enumerate(ranked):
        out[SPLITS[i % len(SPLITS)]].append(name)
    for split in SPLITS:
        out[split].sort()
    return out


def _read_lines(filename: str) -> list[str]:
    text = resources.files("pathcrawl.engine").joinpath("data", filename).read_text("utf-8")
    return [line.strip() for line in text.splitlines() if line.strip()]


@lru_cache(maxsize=None)
def produce_by_split() -> dict[str, tuple[str, ...]]:
    parts = partition(_read_lines("produce.txt"))
    return {s: tuple(v) for s, v in parts.items()}


@lru_cache(maxsize=None)
def materials_by_split() -> dict[str, tuple[str, ...]]:
    parts = partition(_read_lines("materials.txt"))
    return {s: tuple(v) for s, v in parts.items()}


@lru_cache(maxsize=None)
def _lexicon_rows() -> list[tuple[str, str, str]]:
    rows = []
    for line in _read_lines("twc_lexicon.tsv"):
        item, location, kind = line.split("\t")
        rows.append((item, location, kind))
    return rows


@lru_cache(maxsize=None)
def canonical_location_lexicon() -> dict[str, str]:
    """Full item -> usual-location map (all splits), used as world knowledge."""
    return {item: location for item, location, _ in _lexicon_rows()}


@lru_cache(maxsize=None)
def twc_by_split() -> dict[str, dict]:
    """Per-split tidy-game pools.

    Locations are partitioned by hash within each location kind, so every
    split gets the same container/supporter balance; items inherit the split
    of their canonical location, keeping item names disjoint too.
    """
    rows = _lexicon_rows()
    kinds = {location: kind for _, location, kind in rows}
    containers = sorted({loc for loc, kind in kinds.items() if kind == "container"})
    supporters = sorted({loc for loc, kind in kinds.items() if kind == "supporter"})
    container_split = partition(containers)
    supporter_split = partition(supporters)

    out = {}
    for split in SPLITS:
        locations = sorted(container_split[split] + supporter_split[split])
        location_set = set(locations)
        items = [(item, loc) for item, loc, _ in rows if loc in location_set]
        out[split] = {
            "locations": locations,
            "containers": tuple(container_split[split]),
            "supporters": tuple(supporter_split[split]),
            "items": tuple(sorted(item for item, _ in items)),
            "container_items": tuple(sorted(i for i, l in items if kinds[l] == "container")),
            "supporter_items": tuple(sorted(i for i, l in items if kinds[l] == "supporter")),
            "location_kind": kinds,
        }
    return out
