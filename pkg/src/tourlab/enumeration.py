"""Isomorph-free generation of all tournaments on h vertices, with caching.

Generation extends each (h-1)-vertex class by a new vertex under all
2^(h-1) orientation patterns, canonicalizes, and deduplicates.  The
labeled-mass identity sum(h!/aut) = 2^C(h,2) over the catalog guards
completeness and is checked in the test suite.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .core import MAX_VERTICES, Tournament, pair_count
from .core import _canon_search

__all__ = [
    "TournamentCatalog",
    "Unsupported",
    "CorruptCacheWarning",
    "enumerate_tournaments",
    "load_or_enumerate",
    "cache_path",
]


class Unsupported(ValueError):
    """Enumeration requested beyond the supported vertex range."""


class CorruptCacheWarning(UserWarning):
    """A cache file was present but malformed; it will be regenerated."""


@dataclass(frozen=True)
class TournamentCatalog:
    """All isomorphism classes on h vertices, each item in canonical form,
    sorted by canon bit sequence."""

    h: int
    items: tuple[Tournament, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def _extend_all(h: int, parents: list[str]) -> set[int]:
    """Extend (h-1)-vertex canonical forms by one vertex; return canon ints.

    Deduplication buckets by sorted out-degree sequence before comparing
    full canonical forms.
    """
    found: dict[tuple[int, ...], set[int]] = {}
    full_old = (1 << (h - 1)) - 1
    for bits in parents:
        parent = Tournament(h - 1, bits).out_masks
        for pattern in range(1 << (h - 1)):
            masks = [
                parent[v] | (((pattern >> v) & 1) << (h - 1)) for v in range(h - 1)
            ]
            masks.append(~pattern & full_old)
            degseq = tuple(sorted(mask.bit_count() for mask in masks))
            value, _ = _canon_search(h, tuple(masks))
            found.setdefault(degseq, set()).add(value)
    merged: set[int] = set()
    for bucket in found.values():
        merged |= bucket
    return merged


def enumerate_tournaments(
    h: int,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
) -> TournamentCatalog:
    """Complete catalog of tournaments on h vertices up to isomorphism.

    Deterministic order (sorted canonical bit sequences) regardless of
    ``threads``; parents are partitioned across workers and the result
    sets merged.  ``progress`` receives one status line per level.
    """
    if not 1 <= h <= MAX_VERTICES:
        raise Unsupported(f"enumeration supports 1 <= h <= {MAX_VERTICES}, got {h}")
    level: list[str] = [""]
    for k in range(2, h + 1):
        if threads > 1 and len(level) >= 4 * threads:
            chunks = [level[i::threads] for i in range(threads)]
            canons: set[int] = set()
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for part in pool.map(_extend_all, [k] * threads, chunks):
                    canons |= part
        else:
            canons = _extend_all(k, level)
        m = pair_count(k)
        level = [format(value, f"0{m}b") for value in sorted(canons)]
        if progress is not None:
            progress(f"level h={k}: {len(level)} classes")
    items = tuple(Tournament(h, bits) for bits in level)
    return TournamentCatalog(h, items)


def cache_path(h: int, cache_dir: Path | str) -> Path:
    return Path(cache_dir) / f"tournaments_h{h}.txt"


def _read_cache(path: Path, h: int) -> TournamentCatalog:
    lines = path.read_text().splitlines()
    if not lines or lines[0] != f"h={h}":
        raise ValueError(f"bad or missing header in {path}")
    m = pair_count(h)
    body = lines[1:]
    if not body:
        raise ValueError(f"no tournaments listed in {path}")
    for line in body:
        if len(line) != m or line.strip("01"):
            raise ValueError(f"malformed tournament line in {path}: {line!r}")
    if body != sorted(set(body)):
        raise ValueError(f"catalog in {path} is not sorted and duplicate-free")
    return TournamentCatalog(h, tuple(Tournament(h, bits) for bits in body))


def _write_cache(path: Path, catalog: TournamentCatalog) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"h={catalog.h}"] + [t.bits for t in catalog.items]
    path.write_text("\n".join(lines) + "\n")


def load_or_enumerate(
    h: int,
    cache_dir: Path | str,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
) -> TournamentCatalog:
    """Read the catalog from cache if present and well-formed, else
    enumerate and write it.  A malformed cache file is reported with a
    CorruptCacheWarning and regenerated."""
    path = cache_path(h, cache_dir)
    if path.exists():
        try:
            return _read_cache(path, h)
        except ValueError as exc:
            warnings.warn(f"regenerating corrupt cache: {exc}", CorruptCacheWarning)
    catalog = enumerate_tournaments(h, threads=threads, progress=progress)
    _write_cache(path, catalog)
    return catalog
