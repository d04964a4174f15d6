#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Atom, coatom and double spectra of run files, free lattices, and run-file generation.

Subset i of the assignments is the bit mask with bit i set for assignment i.
Masks are scanned in increasing order in fixed-size ranges; ranges may run in
worker processes or threads, and their partial reports merge into the same
result whatever the worker count.
"""

import concurrent.futures
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

try:
    from .config import closure_budget, get_spectra_config
    from .congruence import automorphisms, orbit_representatives
    from .lattice import FiniteLattice, Triple, generating_triples
    from .logging_config import log_progress
    from .product import Factor, FactorSystem, GeneratedLattice, closure
    from .runfile import Assignment, RunSpec, derive_constraints, resolve_factors
except ImportError:
    from config import closure_budget, get_spectra_config
    from congruence import automorphisms, orbit_representatives
    from lattice import FiniteLattice, Triple, generating_triples
    from logging_config import log_progress
    from product import Factor, FactorSystem, GeneratedLattice, closure
    from runfile import Assignment, RunSpec, derive_constraints, resolve_factors

logger = logging.getLogger('latspec.spectra')

MODES = ("atoms", "coatoms", "double")
GENERATOR_MODES = MODES + ("free",)
MAX_ASSIGNMENTS = 30
RANGE_SIZE = 4096

Pair = Tuple[int, int]


class DeltaTable(NamedTuple):
    delta3: FrozenSet[Pair]
    delta4: FrozenSet[Pair]
    delta6: FrozenSet[Pair]
    delta6_inverse: FrozenSet[Pair]

    def named(self) -> Dict[str, FrozenSet[Pair]]:
        return {"delta(3)": self.delta3, "delta(4)": self.delta4,
                "delta(6)": self.delta6, "delta(6)^-1": self.delta6_inverse}


def delta_tables() -> DeltaTable:
    """Reference double spectra of the varieties just above the modular lattices."""
    d3 = frozenset({(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)})
    d4 = d3 | {(4, 3), (3, 4), (4, 2), (2, 4)}
    d6 = d3 | {(4, 2), (4, 3), (6, 3)}
    return DeltaTable(d3, d4, d6, frozenset((b, a) for a, b in d6))


@dataclass(frozen=True)
class SubsetRecord:
    mask: int
    size: int
    atoms: Optional[int] = None
    coatoms: Optional[int] = None


@dataclass
class SpectrumReport:
    mode: str
    atom_set: Set[int] = field(default_factory=set)
    coatom_set: Set[int] = field(default_factory=set)
    pair_set: Set[Pair] = field(default_factory=set)
    subsets_total: int = 0
    subsets_valid: int = 0
    subsets_skipped: int = 0
    largest: int = 0
    per_subset: List[SubsetRecord] = field(default_factory=list)

    def merge(self, other: "SpectrumReport") -> "SpectrumReport":
        self.atom_set |= other.atom_set
        self.coatom_set |= other.coatom_set
        self.pair_set |= other.pair_set
        self.subsets_total += other.subsets_total
        self.subsets_valid += other.subsets_valid
        self.subsets_skipped += other.subsets_skipped
        self.largest = max(self.largest, other.largest)
        self.per_subset.extend(other.per_subset)
        return self

    def record(self, mask: int, g: GeneratedLattice, keep: bool) -> None:
        atoms = g.count_atoms() if self.mode in ("atoms", "double") else None
        coatoms = g.count_coatoms() if self.mode in ("coatoms", "double") else None
        if atoms is not None:
            self.atom_set.add(atoms)
        if coatoms is not None:
            self.coatom_set.add(coatoms)
        if atoms is not None and coatoms is not None:
            self.pair_set.add((atoms, coatoms))
        self.largest = max(self.largest, len(g))
        if keep:
            self.per_subset.append(SubsetRecord(mask, len(g), atoms, coatoms))

    def summary(self) -> Dict[str, object]:
        """The spectrum this report's mode targets: a sorted list of counts or pairs."""
        if self.mode == "atoms":
            return {"AS": sorted(self.atom_set)}
        if self.mode == "coatoms":
            return {"CS": sorted(self.coatom_set)}
        return {"DS": sorted(self.pair_set)}


def _constraint_array(pairs: Sequence[Pair]) -> np.ndarray:
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)


def valid_masks(start: int, stop: int, pairs: Sequence[Pair]) -> np.ndarray:
    """Masks in [start, stop) that do not select both ends of any constraint."""
    masks = np.arange(start, stop, dtype=np.int64)
    keep = np.ones(masks.size, dtype=bool)
    for i, j in _constraint_array(pairs):
        keep &= ((masks >> i) & (masks >> j) & 1) == 0
    return masks[keep]


def subset_valid(mask: int, spec: RunSpec) -> bool:
    if mask <= 0:
        raise ValueError("subset mask must be nonzero")
    return all(not (mask >> i & 1 and mask >> j & 1) for i, j in spec.constraint_pairs())


def _bits(mask: int) -> List[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


class _RangeTask(NamedTuple):
    factors: Tuple[Factor, ...]
    pairs: Tuple[Pair, ...]
    mode: str
    start: int
    stop: int
    budget: int
    keep_records: bool


def _scan_range(task: _RangeTask) -> SpectrumReport:
    report = SpectrumReport(task.mode)
    masks = valid_masks(task.start, task.stop, task.pairs)
    report.subsets_total = task.stop - task.start
    report.subsets_valid = int(masks.size)
    report.subsets_skipped = report.subsets_total - report.subsets_valid
    for mask in masks.tolist():
        system = FactorSystem([task.factors[i] for i in _bits(mask)])
        g = closure(system, budget=task.budget, mask=mask)
        report.record(mask, g, task.keep_records)
    return report


def _executor(kind: str, jobs: int) -> concurrent.futures.Executor:
    if kind == "thread":
        return concurrent.futures.ThreadPoolExecutor(max_workers=jobs)
    if kind == "process":
        return concurrent.futures.ProcessPoolExecutor(max_workers=jobs)
    raise ValueError(f"unknown executor {kind!r}; use 'process' or 'thread'")


def enumerate_spectrum(spec: RunSpec, catalog: Mapping[str, FiniteLattice], mode: str = "atoms",
                       jobs: Optional[int] = None, executor: Optional[str] = None,
                       budget: Optional[int] = None,
                       log_per_subset: Optional[bool] = None) -> SpectrumReport:
    """
    Close every constraint-valid nonempty subset of the assignments and collect spectra.

    Args:
        spec: Parsed run file
        catalog: Lattices by name
        mode: atoms, coatoms or double
        jobs: Worker count; 1 scans in the calling thread
        executor: "process" or "thread" pool for jobs > 1
        budget: Closure element budget per subset
        log_per_subset: Keep a SubsetRecord per valid subset

    Raises:
        CapacityExceeded: some subset's closure is too large; carries the mask
    """
    if mode not in MODES:
        raise ValueError(f"unknown spectrum mode {mode!r}; use one of {', '.join(MODES)}")
    k = len(spec.assignments)
    if not 1 <= k <= MAX_ASSIGNMENTS:
        raise ValueError(f"a spectrum needs between 1 and {MAX_ASSIGNMENTS} assignments, got {k}")

    cfg = get_spectra_config()
    jobs = int(jobs if jobs is not None else cfg["jobs"])
    if jobs < 1:
        raise ValueError(f"jobs must be at least 1, got {jobs}")
    executor = executor or cfg["executor"]
    keep = bool(cfg["log_per_subset"] if log_per_subset is None else log_per_subset)
    budget = closure_budget(budget)
    progress_every = int(cfg.get("progress_every") or RANGE_SIZE)

    factors = tuple(resolve_factors(spec, catalog).factors)
    pairs = tuple(spec.constraint_pairs())
    end = 1 << k
    tasks = [_RangeTask(factors, pairs, mode, start, min(start + RANGE_SIZE, end), budget, keep)
             for start in range(1, end, RANGE_SIZE)]
    log_progress("enumerating subsets", source=spec.source, mode=mode,
                 assignments=k, constraints=len(pairs), jobs=jobs)

    report = SpectrumReport(mode)
    done = 0
    next_progress = progress_every

    def account(part: SpectrumReport) -> None:
        nonlocal done, next_progress
        report.merge(part)
        done += part.subsets_total
        if done >= next_progress or done == end - 1:
            log_progress("progress", done=done, total=end - 1, valid=report.subsets_valid)
            next_progress = done + progress_every

    if jobs == 1 or len(tasks) == 1:
        for task in tasks:
            account(_scan_range(task))
    else:
        with _executor(executor, jobs) as pool:
            futures = [pool.submit(_scan_range, task) for task in tasks]
            try:
                for future in concurrent.futures.as_completed(futures):
                    account(future.result())
            except BaseException:
                for future in futures:
                    future.cancel()
                raise

    report.per_subset.sort(key=lambda r: r.mask)
    logger.info(f"{report.subsets_valid} of {report.subsets_total} subsets valid, "
                f"largest closure {report.largest}")
    return report


def free_lattice(spec: RunSpec, catalog: Mapping[str, FiniteLattice], drop: Sequence[str] = (),
                 budget: Optional[int] = None) -> GeneratedLattice:
    """The closure over all assignments at once, optionally without some lattices."""
    for name in drop:
        spec = spec.without(name)
    if not spec.assignments:
        raise ValueError("the free lattice needs at least one assignment")
    return closure(resolve_factors(spec, catalog), budget=closure_budget(budget))


# Variety shortcuts. Every variety here contains N5, hence C2; an 'm' prefix adds M3.
VARIETY_MEMBERS: Dict[str, Tuple[str, ...]] = {
    "N5": (),
    **{f"L{i}": (f"L{i}",) for i in range(1, 16)},
    **{f"V{i}": (f"V{i}",) for i in range(1, 9)},
    "H3": ("L1", "L5", "V6"),
    "H6": ("L1", "L5", "V6", "L3", "L4"),
}


def variety_lattices(varieties: Sequence[str]) -> List[str]:
    """
    Expand variety names into the lattice list used for run-file generation.

    'mH6' gives C2 M3 N5 L1 L5 V6 L3 L4; several names give the join.
    """
    modular = False
    members: Dict[str, None] = {}
    for v in varieties:
        base = v
        if v.startswith("m") and v[1:] in VARIETY_MEMBERS:
            modular = True
            base = v[1:]
        if base not in VARIETY_MEMBERS:
            raise ValueError(f"unknown variety {v!r}")
        for name in VARIETY_MEMBERS[base]:
            members.setdefault(name, None)
    return ["C2"] + (["M3"] if modular else []) + ["N5"] + list(members)


def candidate_triples(lattice: FiniteLattice, mode: str) -> List[Triple]:
    """
    Generating triples up to automorphism, least representative of each orbit.

    In atoms mode only triples with x meet z = y meet z = bottom are kept, and
    dually x join z = y join z = top in coatoms mode.
    """
    reps = orbit_representatives(lattice, generating_triples(lattice), automorphisms(lattice))
    if mode == "atoms":
        return [(x, y, z) for x, y, z in reps
                if lattice.meet[x, z] == lattice.bottom and lattice.meet[y, z] == lattice.bottom]
    if mode == "coatoms":
        return [(x, y, z) for x, y, z in reps
                if lattice.join[x, z] == lattice.top and lattice.join[y, z] == lattice.top]
    return reps


def generate_run_spec(catalog: Mapping[str, FiniteLattice], names: Sequence[str],
                      mode: str = "atoms") -> RunSpec:
    """Assignments for the listed lattices, in list order, plus their derived constraints."""
    if mode not in GENERATOR_MODES:
        raise ValueError(f"unknown mode {mode!r}; use one of {', '.join(GENERATOR_MODES)}")
    spec = RunSpec()
    for name in names:
        lattice = catalog[name]
        for triple in candidate_triples(lattice, mode):
            x, y, z = (lattice.names[v] for v in triple)
            spec.assignments.append(Assignment(name, x, y, z))
    spec.constraints = derive_constraints(spec, catalog)
    logger.info(f"generated {len(spec.assignments)} assignments and "
                f"{len(spec.constraints)} constraints for {' '.join(names)} ({mode})")
    return spec
