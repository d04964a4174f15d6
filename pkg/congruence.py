#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Congruences of catalog-scale lattices.

Covers principal congruences, the congruence lattice, monoliths and the
separation properties, the meet and join conditions on generating triples,
automorphisms, quotients and surjective homomorphisms.
"""

import logging
from typing import Dict, FrozenSet, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

try:
    from .error_handlers import NotSubdirectlyIrreducible, TooLarge
    from .lattice import FiniteLattice, Triple, generating_triples, isomorphisms
except ImportError:
    from error_handlers import NotSubdirectlyIrreducible, TooLarge
    from lattice import FiniteLattice, Triple, generating_triples, isomorphisms

logger = logging.getLogger('latspec.congruence')

# Largest lattice the exhaustive operations accept
CATALOG_SCALE = 16

Homomorphism = Tuple[int, ...]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def labels(self) -> List[int]:
        return [self.find(x) for x in range(len(self.parent))]


def _canonical(labels: Sequence[Hashable]) -> Tuple[int, ...]:
    seen: Dict[Hashable, int] = {}
    return tuple(seen.setdefault(label, len(seen)) for label in labels)


class Congruence:
    """A partition of a host lattice's elements, given as one block id per element."""

    __slots__ = ("lattice", "labels")

    def __init__(self, lattice: FiniteLattice, labels: Sequence[Hashable]):
        self.lattice = lattice
        self.labels: Tuple[int, ...] = _canonical(labels)

    @classmethod
    def zero(cls, lattice: FiniteLattice) -> "Congruence":
        return cls(lattice, range(lattice.n))

    @classmethod
    def full(cls, lattice: FiniteLattice) -> "Congruence":
        return cls(lattice, [0] * lattice.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.lattice is other.lattice and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __le__(self, other: "Congruence") -> bool:
        """Refinement: every block of self lies inside a block of other."""
        image: Dict[int, int] = {}
        return all(image.setdefault(mine, theirs) == theirs
                   for mine, theirs in zip(self.labels, other.labels))

    def __repr__(self) -> str:
        return f"Congruence({self.lattice.name}, {self.format()})"

    @property
    def num_blocks(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def blocks(self) -> List[FrozenSet[int]]:
        groups: List[Set[int]] = [set() for _ in range(self.num_blocks)]
        for x, label in enumerate(self.labels):
            groups[label].add(x)
        return [frozenset(g) for g in groups]

    def block_of(self, x: int) -> FrozenSet[int]:
        return frozenset(y for y, label in enumerate(self.labels) if label == self.labels[x])

    def same(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def is_zero(self) -> bool:
        return self.num_blocks == len(self.labels)

    def is_full(self) -> bool:
        return self.num_blocks <= 1

    def join(self, other: "Congruence") -> "Congruence":
        # The equivalence join of two congruences is again a congruence
        uf = _UnionFind(len(self.labels))
        for partition in (self, other):
            first: Dict[int, int] = {}
            for x, label in enumerate(partition.labels):
                uf.union(first.setdefault(label, x), x)
        return Congruence(self.lattice, uf.labels())

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence(self.lattice, list(zip(self.labels, other.labels)))

    def is_compatible(self) -> bool:
        """Exhaustive check that the partition respects meet and join."""
        lab = np.array(self.labels)
        same = lab[:, None] == lab[None, :]
        for table in (self.lattice.meet, self.lattice.join):
            images = lab[table]
            for a, a2 in zip(*np.nonzero(same)):
                if not (images[a] == images[a2]).all():
                    return False
        return True

    def format(self) -> str:
        return " ".join("{" + ",".join(self.lattice.names[x] for x in sorted(block)) + "}"
                        for block in self.blocks())


def _close(lattice: FiniteLattice, uf: _UnionFind) -> None:
    meet, join = lattice.meet, lattice.join
    changed = True
    while changed:
        changed = False
        for x in range(lattice.n):
            r = uf.find(x)
            if r == x:
                continue
            for z in range(lattice.n):
                if uf.union(int(meet[x, z]), int(meet[r, z])):
                    changed = True
                if uf.union(int(join[x, z]), int(join[r, z])):
                    changed = True


def principal_congruence(lattice: FiniteLattice, a: int, b: int) -> Congruence:
    """Smallest congruence collapsing a and b."""
    uf = _UnionFind(lattice.n)
    uf.union(a, b)
    _close(lattice, uf)
    return Congruence(lattice, uf.labels())


def _check_scale(lattice: FiniteLattice, limit: int) -> None:
    if lattice.n > limit:
        raise TooLarge(f"{lattice.name} has {lattice.n} elements; exhaustive congruence "
                       f"computations accept at most {limit}", entity=lattice.name)


def congruence_lattice(lattice: FiniteLattice, limit: int = CATALOG_SCALE) -> List[Congruence]:
    """
    All congruences, as joins of principal congruences of covering pairs.

    Sorted from the zero congruence upwards by block count, then by labels.
    """
    _check_scale(lattice, limit)
    generators = {principal_congruence(lattice, a, b) for a, b in lattice.covers()}
    found: Set[Congruence] = {Congruence.zero(lattice)} | generators
    frontier = set(generators)
    while frontier:
        fresh = set()
        for c in frontier:
            for g in generators:
                j = c.join(g)
                if j not in found:
                    fresh.add(j)
        found |= fresh
        frontier = fresh
    logger.debug(f"{lattice.name}: {len(generators)} principal congruences of covers, "
                 f"{len(found)} congruences")
    return sorted(found, key=lambda c: (-c.num_blocks, c.labels))


def monolith(lattice: FiniteLattice, limit: int = CATALOG_SCALE) -> Congruence:
    """
    The least nonzero congruence.

    Raises:
        NotSubdirectlyIrreducible: for the one-element lattice and when the
            nonzero congruences have no common nonzero lower bound
    """
    _check_scale(lattice, limit)
    if lattice.n < 2:
        raise NotSubdirectlyIrreducible(f"{lattice.name} is trivial", entity=lattice.name)
    # Each nonzero congruence contains the principal congruence of some covering pair
    principals = [principal_congruence(lattice, a, b) for a, b in lattice.covers()]
    smallest = principals[0]
    for c in principals[1:]:
        smallest = smallest.meet(c)
    if smallest.is_zero():
        raise NotSubdirectlyIrreducible(f"{lattice.name} is not subdirectly irreducible",
                                        entity=lattice.name)
    return smallest


def is_subdirectly_irreducible(lattice: FiniteLattice) -> bool:
    try:
        monolith(lattice)
    except NotSubdirectlyIrreducible:
        return False
    return True


def is_zero_separating(c: Congruence) -> bool:
    return len(c.block_of(c.lattice.bottom)) == 1


def is_one_separating(c: Congruence) -> bool:
    return len(c.block_of(c.lattice.top)) == 1


class ConditionResult(NamedTuple):
    holds: bool
    witness: Optional[Triple]


def triple_meets_condition(lattice: FiniteLattice, triple: Sequence[int]) -> bool:
    """At least two of the three pairwise meets differ from the bottom."""
    nonzero = sum(1 for i, j in ((0, 1), (0, 2), (1, 2))
                  if lattice.meet[triple[i], triple[j]] != lattice.bottom)
    return nonzero >= 2


def meet_condition(lattice: FiniteLattice) -> ConditionResult:
    """
    Every generating triple has at least two pairs with a nonzero meet.

    The first failing triple in lexicographic index order is returned as witness.
    Failure does not depend on the order of the triple, so any permutation of
    the witness fails as well.
    A lattice without generating triples satisfies the condition vacuously.
    """
    for triple in generating_triples(lattice):
        if not triple_meets_condition(lattice, triple):
            return ConditionResult(False, triple)
    return ConditionResult(True, None)


def join_condition(lattice: FiniteLattice) -> ConditionResult:
    return meet_condition(lattice.dual())


def automorphisms(lattice: FiniteLattice) -> List[Homomorphism]:
    return list(isomorphisms(lattice, lattice))


def automorphism_count(lattice: FiniteLattice) -> int:
    return sum(1 for _ in isomorphisms(lattice, lattice))


def quotient(lattice: FiniteLattice, c: Congruence) -> FiniteLattice:
    """The lattice of blocks; block k is named by its members joined with '/'."""
    blocks = c.blocks()
    rep = [min(block) for block in blocks]
    names = ["/".join(lattice.names[x] for x in sorted(block)) for block in blocks]
    k = len(blocks)
    meet = np.zeros((k, k), dtype=np.int16)
    join = np.zeros((k, k), dtype=np.int16)
    for i in range(k):
        for j in range(k):
            meet[i, j] = c.labels[lattice.meet[rep[i], rep[j]]]
            join[i, j] = c.labels[lattice.join[rep[i], rep[j]]]
    return FiniteLattice(f"{lattice.name}/{c.format()}", names, meet, join)


def is_homomorphism(source: FiniteLattice, target: FiniteLattice, f: Sequence[int]) -> bool:
    fa = np.asarray(f)
    return bool((fa[source.meet] == target.meet[fa[:, None], fa[None, :]]).all()
                and (fa[source.join] == target.join[fa[:, None], fa[None, :]]).all())


def surjective_homomorphisms(source: FiniteLattice, target: FiniteLattice,
                             limit: int = CATALOG_SCALE) -> List[Homomorphism]:
    """
    Every surjective lattice homomorphism source -> target.

    Found through the congruences whose quotient is isomorphic to target,
    composed with every isomorphism of that quotient onto target.
    """
    if target.n > source.n:
        return []
    maps: Set[Homomorphism] = set()
    for c in congruence_lattice(source, limit):
        if c.num_blocks != target.n:
            continue
        q = quotient(source, c)
        for iso in isomorphisms(q, target):
            maps.add(tuple(iso[c.labels[x]] for x in range(source.n)))
    return sorted(maps)


def criticizing_maps(source: FiniteLattice, source_triple: Sequence[int],
                     target: FiniteLattice, target_triple: Sequence[int],
                     homomorphisms: Optional[Iterable[Homomorphism]] = None) -> List[Homomorphism]:
    """Surjective non-bijective homomorphisms carrying one generator triple onto the other."""
    if target.n >= source.n:
        return []
    if homomorphisms is None:
        homomorphisms = surjective_homomorphisms(source, target)
    return [h for h in homomorphisms
            if all(h[s] == t for s, t in zip(source_triple, target_triple))]


def orbit_representatives(lattice: FiniteLattice, triples: Iterable[Triple],
                          autos: Optional[Sequence[Homomorphism]] = None) -> List[Triple]:
    """Lexicographically least member of each automorphism orbit, in sorted order."""
    if autos is None:
        autos = automorphisms(lattice)
    reps = set()
    for triple in triples:
        reps.add(min(tuple(a[x] for x in triple) for a in autos))
    return sorted(reps)

