#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Sublattices of direct products generated by three elements.

A product element is packed into one unsigned 64-bit word with the first
factor in the most significant bits, so numeric order on the packed words is
lexicographic order on coordinates. The generated set is kept as a sorted
array and membership is a binary search (np.searchsorted). Each closure round
combines only the elements found in the previous round with everything known
so far. Adjacent factors are bundled into groups whose joint bit width stays
small, and every group gets precomputed meet, join and order tables indexed by
its packed bit field, so one table lookup handles several factors at once.

Systems too wide for 63 bits fall back to the same frontier rule on Python
tuples.
"""

import logging
from functools import reduce
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

try:
    from .config import closure_budget, get_closure_config
    from .error_handlers import CapacityExceeded
    from .lattice import FiniteLattice, Triple, is_generated_by
    from .logging_config import TRACE
except ImportError:
    from config import closure_budget, get_closure_config
    from error_handlers import CapacityExceeded
    from lattice import FiniteLattice, Triple, is_generated_by
    from logging_config import TRACE

logger = logging.getLogger('latspec.product')

ProductElement = Tuple[int, ...]

PACKED_BITS = 63


class Factor(NamedTuple):
    """A factor lattice together with the generator values (x, y, z) in it."""

    lattice: FiniteLattice
    generators: Triple


class FactorSystem:
    """An ordered list of factors; factor i supplies coordinate i of every product element."""

    def __init__(self, factors: Sequence[Factor]):
        if not factors:
            raise ValueError("a factor system needs at least one factor")
        checked = []
        for i, factor in enumerate(factors):
            lattice, triple = factor
            triple = tuple(int(x) for x in triple)
            if len(triple) != 3 or any(not 0 <= x < lattice.n for x in triple):
                raise ValueError(f"factor {i} ({lattice.name}) has invalid generators {triple}")
            checked.append(Factor(lattice, triple))  # type: ignore[arg-type]
        self.factors: Tuple[Factor, ...] = tuple(checked)

    @classmethod
    def from_names(cls, assignments: Sequence[Tuple[FiniteLattice, Sequence[str]]]) -> "FactorSystem":
        return cls([Factor(lat, tuple(lat.index(x) for x in names))  # type: ignore[arg-type]
                    for lat, names in assignments])

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[Factor]:
        return iter(self.factors)

    @property
    def lattices(self) -> List[FiniteLattice]:
        return [f.lattice for f in self.factors]

    def generators(self) -> Tuple[ProductElement, ProductElement, ProductElement]:
        x, y, z = (tuple(f.generators[g] for f in self.factors) for g in range(3))
        return x, y, z

    def non_generating_factors(self) -> List[int]:
        """Indices of factors whose triple does not generate the factor lattice."""
        return [i for i, f in enumerate(self.factors) if not is_generated_by(f.lattice, f.generators)]

    def restrict(self, indices: Sequence[int]) -> "FactorSystem":
        return FactorSystem([self.factors[i] for i in indices])

    def product_size(self) -> int:
        return reduce(lambda acc, f: acc * f.lattice.n, self.factors, 1)


class _Group(NamedTuple):
    shift: int
    width: int
    meet: np.ndarray
    join: np.ndarray
    leq: np.ndarray


class PackedCodec:
    """Bit-field packing of product elements, plus grouped operation tables."""

    def __init__(self, lattices: Sequence[FiniteLattice], group_bits: int = 8):
        self.lattices = list(lattices)
        self.bits = [max(1, (lat.n - 1).bit_length()) for lat in self.lattices]
        self.total_bits = sum(self.bits)
        self.shifts = [sum(self.bits[t + 1:]) for t in range(len(self.bits))]
        self.fits = self.total_bits <= PACKED_BITS
        self.groups: List[_Group] = self._build_groups(group_bits) if self.fits else []

    def _build_groups(self, group_bits: int) -> List[_Group]:
        groups = []
        t = 0
        k = len(self.lattices)
        while t < k:
            members = [t]
            width = self.bits[t]
            while t + len(members) < k and width + self.bits[t + len(members)] <= group_bits:
                width += self.bits[t + len(members)]
                members.append(t + len(members))
            groups.append(self._group_tables(members, width))
            t += len(members)
        return groups

    def _group_tables(self, members: List[int], width: int) -> _Group:
        shift = self.shifts[members[-1]]
        values = np.arange(1 << width, dtype=np.int64)
        meet = np.zeros((1 << width, 1 << width), dtype=np.uint64)
        join = np.zeros_like(meet)
        leq = np.ones(meet.shape, dtype=bool)
        valid = np.ones(1 << width, dtype=bool)
        for t in members:
            lat = self.lattices[t]
            local = self.shifts[t] - shift
            coord = (values >> local) & ((1 << self.bits[t]) - 1)
            valid &= coord < lat.n
            coord = np.minimum(coord, lat.n - 1)
            meet |= lat.meet[coord[:, None], coord[None, :]].astype(np.uint64) << np.uint64(local)
            join |= lat.join[coord[:, None], coord[None, :]].astype(np.uint64) << np.uint64(local)
            leq &= lat.leq_matrix[coord[:, None], coord[None, :]]
        both = valid[:, None] & valid[None, :]
        meet = np.where(both, meet << np.uint64(shift), np.uint64(0))
        join = np.where(both, join << np.uint64(shift), np.uint64(0))
        return _Group(shift, width, meet, join, leq & both)

    def encode(self, coords: Sequence[int]) -> int:
        code = 0
        for value, shift in zip(coords, self.shifts):
            code |= int(value) << shift
        return code

    def decode_many(self, codes: np.ndarray) -> np.ndarray:
        out = np.empty((codes.size, len(self.bits)), dtype=np.int16)
        for t, (bits, shift) in enumerate(zip(self.bits, self.shifts)):
            out[:, t] = ((codes >> np.uint64(shift)) & np.uint64((1 << bits) - 1)).astype(np.int16)
        return out

    def fields(self, codes: np.ndarray) -> List[np.ndarray]:
        return [((codes >> np.uint64(g.shift)) & np.uint64((1 << g.width) - 1)).astype(np.intp)
                for g in self.groups]


def _member(sorted_codes: np.ndarray, values: np.ndarray) -> np.ndarray:
    if sorted_codes.size == 0:
        return np.zeros(values.shape, dtype=bool)
    idx = np.searchsorted(sorted_codes, values)
    idx[idx == sorted_codes.size] = 0
    return sorted_codes[idx] == values


class GeneratedLattice:
    """
    The closure of three generators inside a direct product.

    Elements are stored as a coordinate matrix, one row per element, rows in
    lexicographic order.
    """

    def __init__(self, system: FactorSystem, coords: np.ndarray):
        self.system = system
        self.coords = coords
        self.coords.flags.writeable = False
        self._index: Optional[Dict[ProductElement, int]] = None
        self._atoms: Optional[List[ProductElement]] = None
        self._coatoms: Optional[List[ProductElement]] = None

    def __len__(self) -> int:
        return int(self.coords.shape[0])

    def element_count(self) -> int:
        return len(self)

    def elements(self) -> Iterator[ProductElement]:
        for row in self.coords:
            yield tuple(int(v) for v in row)

    def __contains__(self, u: object) -> bool:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements())}
        return u in self._index

    @property
    def generators(self) -> Tuple[ProductElement, ProductElement, ProductElement]:
        return self.system.generators()

    def _fold(self, op: str) -> ProductElement:
        result = []
        for t, lat in enumerate(self.system.lattices):
            table = lat.meet if op == "meet" else lat.join
            values = np.unique(self.coords[:, t])
            result.append(int(reduce(lambda acc, x: table[acc, x], values[1:], values[0])))
        return tuple(result)

    @property
    def bottom(self) -> ProductElement:
        return self._fold("meet")

    @property
    def top(self) -> ProductElement:
        return self._fold("join")

    def leq(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return all(lat.leq(a, b) for lat, a, b in zip(self.system.lattices, u, v))

    def _ranks(self) -> np.ndarray:
        rank = np.zeros(len(self), dtype=np.int64)
        for t, lat in enumerate(self.system.lattices):
            rank += lat.ranks[self.coords[:, t]]
        return rank

    def _leq_block(self, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
        # [i, j] true iff lower[i] <= upper[j] componentwise
        result = np.ones((lower.shape[0], upper.shape[0]), dtype=bool)
        for t, lat in enumerate(self.system.lattices):
            result &= lat.leq_matrix[lower[:, t][:, None], upper[:, t][None, :]]
        return result

    def _minimal(self, exclude: ProductElement, descending: bool) -> List[ProductElement]:
        # Scanning rank levels in order, an element is minimal iff no minimal
        # element found on an earlier level lies below it
        rank = self._ranks()
        keep = ~(self.coords == np.array(exclude, dtype=self.coords.dtype)).all(axis=1)
        found = np.empty((0, self.coords.shape[1]), dtype=self.coords.dtype)
        levels = np.unique(rank[keep])
        if descending:
            levels = levels[::-1]
        for level in levels:
            candidates = self.coords[keep & (rank == level)]
            if found.shape[0]:
                if descending:
                    dominated = self._leq_block(candidates, found).any(axis=1)
                else:
                    dominated = self._leq_block(found, candidates).any(axis=0)
                candidates = candidates[~dominated]
            if candidates.shape[0]:
                found = np.vstack([found, candidates])
        return sorted(tuple(int(v) for v in row) for row in found)

    def atoms(self) -> List[ProductElement]:
        """Minimal elements of the set without its bottom, in lexicographic order."""
        if self._atoms is None:
            self._atoms = self._minimal(self.bottom, descending=False)
        return self._atoms

    def coatoms(self) -> List[ProductElement]:
        if self._coatoms is None:
            self._coatoms = self._minimal(self.top, descending=True)
        return self._coatoms

    def count_atoms(self) -> int:
        return len(self.atoms())

    def count_coatoms(self) -> int:
        return len(self.coatoms())

    def covers_bottom_in_product(self, u: Sequence[int]) -> bool:
        """True iff u also covers the bottom in the full direct product."""
        diff = [t for t, (a, b) in enumerate(zip(self.bottom, u)) if a != b]
        if len(diff) != 1:
            return False
        t = diff[0]
        lat = self.system.lattices[t]
        lower = self.bottom[t]
        return (lower, int(u[t])) in set(lat.covers())

    def is_subdirect(self) -> bool:
        """Every coordinate projection is onto its factor."""
        return all(np.unique(self.coords[:, t]).size == lat.n
                   for t, lat in enumerate(self.system.lattices))

    def word(self, u: Sequence[int]) -> str:
        """An element as a word of element names, such as 0aa; space separated for longer names."""
        names = [lat.names[x] for lat, x in zip(self.system.lattices, u)]
        if all(len(name) == 1 for name in names):
            return "".join(names)
        return " ".join(names)

    def covers(self) -> List[Tuple[int, int]]:
        """Covering pairs as row indices; quadratic, meant for small lattices."""
        m = len(self)
        le = self._leq_block(self.coords, self.coords)
        lt = le & ~np.eye(m, dtype=bool)
        cov = lt & ~np.matmul(lt, lt)
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(cov))]


def closure(system: FactorSystem, budget: Optional[int] = None, chunk_cells: Optional[int] = None,
            group_bits: Optional[int] = None, seeds: Optional[Sequence[ProductElement]] = None,
            mask: Optional[int] = None) -> GeneratedLattice:
    """
    Generate the sublattice of the direct product spanned by the generators.

    Args:
        system: Factors and their generator values
        budget: Element budget; defaults to closure_budget()
        chunk_cells: Frontier-by-store cells combined per vectorized block
        group_bits: Widest combined lookup table, in packed bits
        seeds: Extra starting elements besides the three generators
        mask: Subset mask reported in CapacityExceeded

    Raises:
        CapacityExceeded: the closure grows past the budget
    """
    cfg = get_closure_config()
    budget = closure_budget() if budget is None else budget
    chunk_cells = chunk_cells or int(cfg["chunk_cells"])
    group_bits = group_bits or int(cfg["group_bits"])

    start = list(system.generators()) + [tuple(s) for s in (seeds or [])]
    codec = PackedCodec(system.lattices, group_bits)
    if not codec.fits:
        logger.debug(f"{codec.total_bits} coordinate bits do not fit a word; using tuple closure")
        return _closure_tuples(system, start, budget, mask)

    known = np.unique(np.array([codec.encode(u) for u in start], dtype=np.uint64))
    frontier = known
    rounds = 0
    while frontier.size:
        rounds += 1
        known_fields = codec.fields(known)
        rows = max(1, chunk_cells // max(1, known.size))
        pending = np.empty(0, dtype=np.uint64)
        for begin in range(0, frontier.size, rows):
            block_fields = codec.fields(frontier[begin:begin + rows])
            for op in ("meet", "join"):
                combined = np.zeros((block_fields[0].size, known.size), dtype=np.uint64)
                for group, bf, kf in zip(codec.groups, block_fields, known_fields):
                    table = group.meet if op == "meet" else group.join
                    combined |= table[bf[:, None], kf[None, :]]
                fresh = np.unique(combined)
                fresh = fresh[~_member(known, fresh)]
                pending = np.union1d(pending, fresh)
            if known.size + pending.size > budget:
                raise CapacityExceeded(budget, int(known.size + pending.size), mask=mask)
        known = np.union1d(known, pending)
        frontier = pending
        logger.log(TRACE, f"closure round {rounds}: {frontier.size} new, {known.size} total")

    return GeneratedLattice(system, codec.decode_many(known))


def _closure_tuples(system: FactorSystem, start: Sequence[ProductElement], budget: int,
                    mask: Optional[int]) -> GeneratedLattice:
    meets = [lat.meet for lat in system.lattices]
    joins = [lat.join for lat in system.lattices]
    known: Set[ProductElement] = set(start)
    store: List[ProductElement] = list(known)
    frontier = list(store)
    while frontier:
        fresh: List[ProductElement] = []
        for u in frontier:
            for v in store:
                for tables in (meets, joins):
                    w = tuple(int(tab[a, b]) for tab, a, b in zip(tables, u, v))
                    if w not in known:
                        known.add(w)
                        fresh.append(w)
            if len(known) > budget:
                raise CapacityExceeded(budget, len(known), mask=mask)
        store.extend(fresh)
        frontier = fresh
    coords = np.array(sorted(known), dtype=np.int16).reshape(len(known), len(system))
    return GeneratedLattice(system, coords)
