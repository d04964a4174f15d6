#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
The lattice catalog.

Catalog files (*.lat) hold one block per lattice:

    lattice N5
    elements 0 a b c 1
    covers 0<a 0<c a<b b<1 c<1
    expect size=5 aut=1 si=yes zero_sep=yes one_sep=yes meet=no join=no
    end

The expect line is optional; verify_catalog compares every stated value with
the computed one.
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

try:
    from .config import get_catalog_config
    from .congruence import (automorphism_count, is_one_separating, is_zero_separating,
                             join_condition, meet_condition, monolith)
    from .error_handlers import (CatalogSyntaxError, LatspecError, MissingEntry, DuplicateEntry,
                                 NotSubdirectlyIrreducible)
    from .lattice import CoverGraph, FiniteLattice, generation_rank, lattice_from_cover_graph, validate_axioms
except ImportError:
    from config import get_catalog_config
    from congruence import (automorphism_count, is_one_separating, is_zero_separating,
                            join_condition, meet_condition, monolith)
    from error_handlers import (CatalogSyntaxError, LatspecError, MissingEntry, DuplicateEntry,
                                NotSubdirectlyIrreducible)
    from lattice import CoverGraph, FiniteLattice, generation_rank, lattice_from_cover_graph, validate_axioms

logger = logging.getLogger('latspec.catalog')

DATA_DIR = Path(__file__).resolve().parent / "data"

REQUIRED_NAMES: Tuple[str, ...] = (
    ("C2", "M3", "N5", "U8")
    + tuple(f"L{i}" for i in range(1, 16))
    + tuple(f"V{i}" for i in range(1, 9))
)

_BOOL = {"yes": True, "no": False}


@dataclass(frozen=True)
class Expectations:
    size: Optional[int] = None
    aut: Optional[int] = None
    si: Optional[bool] = None
    zero_sep: Optional[bool] = None
    one_sep: Optional[bool] = None
    meet: Optional[bool] = None
    join: Optional[bool] = None

    def stated(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}


@dataclass
class CatalogEntry:
    graph: CoverGraph
    expect: Expectations
    source: Optional[str] = None
    line: Optional[int] = None


def _parse_expect(words: List[str], source: str, number: int) -> Expectations:
    values: Dict[str, Any] = {}
    known = {f.name for f in fields(Expectations)}
    for word in words:
        key, sep, raw = word.partition("=")
        if not sep or key not in known:
            raise CatalogSyntaxError(f"unknown expectation {word!r}", source=source, line=number)
        if key in ("size", "aut"):
            try:
                values[key] = int(raw)
            except ValueError:
                raise CatalogSyntaxError(f"{key} must be an integer, got {raw!r}",
                                         source=source, line=number)
        elif raw in _BOOL:
            values[key] = _BOOL[raw]
        else:
            raise CatalogSyntaxError(f"{key} must be yes or no, got {raw!r}",
                                     source=source, line=number)
    return Expectations(**values)


def parse_catalog(text: str, source: str = "<catalog>") -> List[CatalogEntry]:
    """Parse catalog text into entries without building the lattices."""
    entries: List[CatalogEntry] = []
    current: Optional[Dict[str, Any]] = None

    for number, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, *words = line.split()

        if keyword == "lattice":
            if current is not None:
                raise CatalogSyntaxError(f"lattice {current['name']} is missing 'end'",
                                         source=source, line=number)
            if len(words) != 1:
                raise CatalogSyntaxError("expected 'lattice NAME'", source=source, line=number)
            current = {"name": words[0], "line": number, "elements": None, "covers": [],
                       "expect": Expectations()}
        elif current is None:
            raise CatalogSyntaxError(f"{keyword!r} outside a lattice block", source=source,
                                     line=number)
        elif keyword == "elements":
            current["elements"] = tuple(words)
        elif keyword == "covers":
            for word in words:
                lo, sep, hi = word.partition("<")
                if not sep or not lo or not hi:
                    raise CatalogSyntaxError(f"cover {word!r} is not of the form lo<hi",
                                             source=source, line=number)
                current["covers"].append((lo, hi))
        elif keyword == "expect":
            current["expect"] = _parse_expect(words, source, number)
        elif keyword == "end":
            if current["elements"] is None:
                raise CatalogSyntaxError(f"lattice {current['name']} has no elements line",
                                         source=source, line=number)
            graph = CoverGraph(current["name"], current["elements"], tuple(current["covers"]))
            entries.append(CatalogEntry(graph, current["expect"], source, current["line"]))
            current = None
        else:
            raise CatalogSyntaxError(f"unknown keyword {keyword!r}", source=source, line=number)

    if current is not None:
        raise CatalogSyntaxError(f"lattice {current['name']} is missing 'end'", source=source,
                                 line=current["line"])
    return entries


class Catalog(Mapping):
    """Lattices by name, in load order; immutable once built."""

    def __init__(self, entries: Sequence[CatalogEntry]):
        self._lattices: Dict[str, FiniteLattice] = {}
        self._entries: Dict[str, CatalogEntry] = {}
        for entry in entries:
            name = entry.graph.name
            if name in self._entries:
                first = self._entries[name]
                raise DuplicateEntry(f"{name} is already defined at {first.source}:{first.line}",
                                     source=entry.source, line=entry.line, entity=name)
            try:
                self._lattices[name] = lattice_from_cover_graph(entry.graph)
            except LatspecError as e:
                e.source = e.source or entry.source
                e.line = e.line if e.line is not None else entry.line
                raise
            self._entries[name] = entry

    def __getitem__(self, name: str) -> FiniteLattice:
        return self._lattices[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._lattices)

    def __len__(self) -> int:
        return len(self._lattices)

    def entry(self, name: str) -> CatalogEntry:
        return self._entries[name]

    def expectations(self, name: str) -> Expectations:
        return self._entries[name].expect


def render_entry(lattice: FiniteLattice, expect: Optional[Expectations] = None) -> str:
    """A lattice as a catalog block; parse_catalog reads it back."""
    graph = lattice.cover_graph()
    lines = [f"lattice {graph.name}", "elements " + " ".join(graph.elements),
             "covers " + " ".join(f"{lo}<{hi}" for lo, hi in graph.covers)]
    if expect is not None and expect.stated():
        words = []
        for key, value in expect.stated().items():
            words.append(f"{key}={('yes' if value else 'no') if isinstance(value, bool) else value}")
        lines.append("expect " + " ".join(words))
    lines.append("end")
    return "\n".join(lines) + "\n"


def _catalog_files(paths: Sequence[Union[str, Path]]) -> List[Path]:
    files: List[Path] = []
    for p in paths:
        path = Path(p).expanduser()
        if path.is_dir():
            files.extend(sorted(path.glob("*.lat")))
        elif path.is_file():
            files.append(path)
        else:
            raise FileNotFoundError(f"catalog path not found: {path}")
    return files


def load_catalog(paths: Optional[Sequence[Union[str, Path]]] = None,
                 require: Sequence[str] = REQUIRED_NAMES) -> Catalog:
    """
    Load catalog files and build every lattice.

    Args:
        paths: Catalog files or directories of *.lat files; defaults to
            catalog.paths from the configuration, then the bundled data directory
        require: Names that must be present

    Raises:
        CatalogSyntaxError, DuplicateEntry, MissingEntry, and lattice construction errors
    """
    if not paths:
        paths = get_catalog_config().get("paths") or [DATA_DIR]
    entries: List[CatalogEntry] = []
    for path in _catalog_files(paths):
        entries.extend(parse_catalog(path.read_text(encoding="utf-8"), source=str(path)))
    catalog = Catalog(entries)

    missing = [name for name in require if name not in catalog]
    if missing:
        raise MissingEntry(f"catalog lacks {', '.join(missing)}", entity=missing[0])
    logger.info(f"loaded {len(catalog)} lattices")
    return catalog


@dataclass
class EntryReport:
    name: str
    computed: Dict[str, Any]
    mismatches: List[Tuple[str, Any, Any]] = field(default_factory=list)
    meet_witness: Optional[str] = None
    join_witness: Optional[str] = None


@dataclass
class CatalogReport:
    entries: List[EntryReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(not e.mismatches for e in self.entries)

    def mismatches(self) -> List[Tuple[str, str, Any, Any]]:
        return [(e.name, key, want, got) for e in self.entries for key, want, got in e.mismatches]


def analyze(lattice: FiniteLattice) -> EntryReport:
    """Compute every property a catalog expectation can state."""
    computed: Dict[str, Any] = {"size": lattice.n, "aut": automorphism_count(lattice)}
    try:
        mono = monolith(lattice)
        computed.update(si=True, zero_sep=is_zero_separating(mono), one_sep=is_one_separating(mono))
    except NotSubdirectlyIrreducible:
        computed.update(si=False, zero_sep=None, one_sep=None)
    meet = meet_condition(lattice)
    join = join_condition(lattice)
    computed.update(meet=meet.holds, join=join.holds, rank=generation_rank(lattice),
                    axioms=not validate_axioms(lattice))
    report = EntryReport(lattice.name, computed)
    if meet.witness is not None:
        report.meet_witness = lattice.format_triple(meet.witness)
    if join.witness is not None:
        report.join_witness = lattice.format_triple(join.witness)
    return report


def verify_catalog(catalog: Catalog, names: Optional[Sequence[str]] = None) -> CatalogReport:
    """Compare computed properties with each entry's expect line; failed axioms always count."""
    report = CatalogReport()
    for name in names or list(catalog):
        entry = analyze(catalog[name])
        for key, want in catalog.expectations(name).stated().items():
            got = entry.computed.get(key)
            if got != want:
                entry.mismatches.append((key, want, got))
        if not entry.computed["axioms"]:
            entry.mismatches.append(("axioms", True, False))
        if entry.mismatches:
            logger.warning(f"{name}: {len(entry.mismatches)} expectation mismatches")
        report.entries.append(entry)
    return report
