#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Expectations manifest and the reproduction runner.

runs/expectations.json lists shipped run files with the command to run on
each and the values it must produce. Entries marked extended take hours and
only run on request.
"""

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Set, Tuple, Union

try:
    from .error_handlers import LatspecError, ManifestError
    from .lattice import FiniteLattice
    from .output_formatters import format_int_set, format_pair_set, parse_int_set, parse_pair_set
    from .product import closure
    from .runfile import RunSpec, parse_run_file, resolve_factors
    from .spectra import delta_tables, enumerate_spectrum, free_lattice
except ImportError:
    from error_handlers import LatspecError, ManifestError
    from lattice import FiniteLattice
    from output_formatters import format_int_set, format_pair_set, parse_int_set, parse_pair_set
    from product import closure
    from runfile import RunSpec, parse_run_file, resolve_factors
    from spectra import delta_tables, enumerate_spectrum, free_lattice

logger = logging.getLogger('latspec.reproduce')

RUNS_DIR = Path(__file__).resolve().parent / "runs"
MANIFEST = RUNS_DIR / "expectations.json"

COMMANDS = {"closure", "free", "spectrum"}
COUNT_KEYS = {"n", "atoms", "coatoms"}
SET_KEYS = {"AS", "CS", "DS"}


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    command: str
    run: str
    expect: Dict[str, Any]
    mode: str = "atoms"
    drop: Tuple[str, ...] = ()
    extended: bool = False


@dataclass
class Outcome:
    entry: ManifestEntry
    passed: bool
    actual: Dict[str, str] = field(default_factory=dict)
    seconds: float = 0.0
    error: Optional[str] = None


def _entry_errors(idx: int, raw: Any, seen: Set[str]) -> List[str]:
    ctx = f"entries[{idx}]"
    if not isinstance(raw, dict):
        return [f"{ctx}: must be an object"]
    errors = [f"{ctx}: missing key '{key}'" for key in ("id", "command", "run", "expect") if key not in raw]
    if raw.get("id") in seen:
        errors.append(f"{ctx}: duplicate id '{raw['id']}'")
    if raw.get("command") not in COMMANDS:
        errors.append(f"{ctx}: command must be one of {sorted(COMMANDS)}")
    expect = raw.get("expect", {})
    if not isinstance(expect, dict) or not expect:
        errors.append(f"{ctx}: expect must be a non-empty object")
    else:
        allowed = SET_KEYS if raw.get("command") == "spectrum" else COUNT_KEYS
        errors.extend(f"{ctx}: unexpected expectation '{key}'" for key in expect if key not in allowed)
    return errors


def load_manifest(path: Union[str, Path] = MANIFEST) -> List[ManifestEntry]:
    """
    Read and validate the expectations manifest.

    Raises:
        ManifestError: listing every problem found
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ManifestError(f"unable to read manifest: {e}", source=str(path))
    except json.JSONDecodeError as e:
        raise ManifestError(f"manifest is not valid JSON: {e.msg}", source=str(path), line=e.lineno,
                            column=e.colno)

    errors: List[str] = []
    if not isinstance(doc, dict) or doc.get("schema_version") != "v1":
        errors.append("root: schema_version must be 'v1'")
    raw_entries = doc.get("entries") if isinstance(doc, dict) else None
    if not isinstance(raw_entries, list):
        errors.append("root: entries must be an array")
        raw_entries = []

    seen: Set[str] = set()
    entries = []
    for idx, raw in enumerate(raw_entries):
        problems = _entry_errors(idx, raw, seen)
        errors.extend(problems)
        if problems:
            continue
        seen.add(raw["id"])
        entries.append(ManifestEntry(raw["id"], raw["command"], raw["run"], dict(raw["expect"]),
                                     raw.get("mode", "atoms"), tuple(raw.get("drop", ())),
                                     bool(raw.get("extended", False))))
    if errors:
        raise ManifestError("; ".join(errors), source=str(path))
    return entries


def expected_text(key: str, value: Any) -> str:
    """Normalize an expectation to its printed form; DS may name a reference table."""
    if key in COUNT_KEYS:
        return str(int(value))
    if key == "DS":
        named = delta_tables().named()
        if value in named:
            return format_pair_set(named[value])
        return format_pair_set(parse_pair_set(value))
    return format_int_set(parse_int_set(value))


def compute(entry: ManifestEntry, spec: RunSpec, catalog: Mapping[str, FiniteLattice],
            jobs: Optional[int] = None, budget: Optional[int] = None) -> Dict[str, str]:
    if entry.command == "spectrum":
        report = enumerate_spectrum(spec, catalog, entry.mode, jobs=jobs, budget=budget)
        return {"AS": format_int_set(report.atom_set), "CS": format_int_set(report.coatom_set),
                "DS": format_pair_set(report.pair_set)}
    if entry.command == "free":
        g = free_lattice(spec, catalog, drop=entry.drop, budget=budget)
    else:
        g = closure(resolve_factors(spec, catalog), budget=budget)
    actual = {"n": str(len(g)), "atoms": str(g.count_atoms())}
    if "coatoms" in entry.expect:
        actual["coatoms"] = str(g.count_coatoms())
    return actual


def run_entry(entry: ManifestEntry, catalog: Mapping[str, FiniteLattice],
              runs_dir: Union[str, Path] = RUNS_DIR, jobs: Optional[int] = None,
              budget: Optional[int] = None) -> Outcome:
    path = Path(runs_dir) / entry.run
    started = time.monotonic()
    try:
        spec = parse_run_file(path.read_text(encoding="utf-8"), catalog, source=str(path))
        actual = compute(entry, spec, catalog, jobs, budget)
    except (LatspecError, OSError, ValueError) as e:
        logger.error(f"{entry.id}: {e}")
        return Outcome(entry, False, seconds=time.monotonic() - started, error=str(e))

    passed = all(actual.get(key) == expected_text(key, value) for key, value in entry.expect.items())
    outcome = Outcome(entry, passed, {k: actual[k] for k in entry.expect if k in actual},
                      time.monotonic() - started)
    logger.info(f"{entry.id}: {'pass' if passed else 'FAIL'} in {outcome.seconds:.1f}s")
    return outcome


def reproduce(catalog: Mapping[str, FiniteLattice], manifest: Union[str, Path] = MANIFEST,
              ids: Sequence[str] = (), include_extended: bool = False,
              jobs: Optional[int] = None, budget: Optional[int] = None) -> List[Outcome]:
    """Run manifest entries in file order; explicitly named ids run even when extended."""
    entries = load_manifest(manifest)
    known = {e.id for e in entries}
    unknown = [i for i in ids if i not in known]
    if unknown:
        raise ManifestError(f"no manifest entry named {', '.join(unknown)}", source=str(manifest))
    selected = [e for e in entries
                if (e.id in ids) or (not ids and (include_extended or not e.extended))]
    runs_dir = Path(manifest).parent
    return [run_entry(e, catalog, runs_dir, jobs, budget) for e in selected]
