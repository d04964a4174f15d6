#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Finite lattices as dense-index meet/join tables.

Elements are the indices 0..n-1; names are kept only for input and output.
The order is derived from the meet table (a <= b iff a meet b == a).
"""

import itertools
import logging
from dataclasses import dataclass
from functools import reduce
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

try:
    from .error_handlers import CyclicCovers, LatticeError, NotALattice, RedundantCover, UnknownName
except ImportError:
    from error_handlers import CyclicCovers, LatticeError, NotALattice, RedundantCover, UnknownName

logger = logging.getLogger('latspec.lattice')

Triple = Tuple[int, int, int]


@dataclass(frozen=True)
class CoverGraph:
    """Element names plus covering pairs (lower, upper) of a finite poset."""

    name: str
    elements: Tuple[str, ...]
    covers: Tuple[Tuple[str, str], ...]


class FiniteLattice:
    """
    A finite lattice with full meet and join tables.

    The tables are read-only numpy arrays, so instances can be shared freely
    between threads and pickled to worker processes.
    """

    def __init__(self, name: str, names: Sequence[str], meet: np.ndarray, join: np.ndarray):
        self.name = name
        self.names: Tuple[str, ...] = tuple(names)
        self.meet = np.array(meet, dtype=np.int16)
        self.join = np.array(join, dtype=np.int16)
        self.meet.flags.writeable = False
        self.join.flags.writeable = False
        n = len(self.names)
        if self.meet.shape != (n, n) or self.join.shape != (n, n):
            raise LatticeError(f"operation tables of {name} do not match its {n} elements",
                               entity=name)
        self._index: Dict[str, int] = {label: i for i, label in enumerate(self.names)}
        self.bottom = int(reduce(lambda acc, x: self.meet[acc, x], range(n), 0)) if n else 0
        self.top = int(reduce(lambda acc, x: self.join[acc, x], range(n), 0)) if n else 0
        self._leq: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"FiniteLattice({self.name!r}, n={self.n})"

    def index(self, label: str) -> int:
        """Return the index of the element called `label`."""
        try:
            return self._index[label]
        except KeyError:
            raise UnknownName(f"{self.name} has no element named {label!r}", entity=self.name)

    def label(self, x: int) -> str:
        return self.names[x]

    @property
    def leq_matrix(self) -> np.ndarray:
        """Boolean matrix with [a, b] true iff a <= b."""
        if self._leq is None:
            leq = self.meet == np.arange(self.n)[:, None]
            leq.flags.writeable = False
            self._leq = leq
        return self._leq

    def leq(self, a: int, b: int) -> bool:
        return bool(self.meet[a, b] == a)

    @property
    def ranks(self) -> np.ndarray:
        """Number of elements below each element; strictly monotone in the order."""
        return self.leq_matrix.sum(axis=0)

    def covers(self) -> List[Tuple[int, int]]:
        """Covering pairs (a, b), a covered by b, in index order."""
        lt = self.leq_matrix & ~np.eye(self.n, dtype=bool)
        cov = lt & ~np.matmul(lt, lt)
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(cov))]

    def atoms(self) -> FrozenSet[int]:
        return frozenset(b for a, b in self.covers() if a == self.bottom)

    def coatoms(self) -> FrozenSet[int]:
        return frozenset(a for a, b in self.covers() if b == self.top)

    def dual(self, name: Optional[str] = None) -> "FiniteLattice":
        return FiniteLattice(name or f"dual({self.name})", self.names, self.join, self.meet)

    def cover_graph(self) -> CoverGraph:
        return CoverGraph(
            self.name,
            self.names,
            tuple((self.names[a], self.names[b]) for a, b in self.covers()),
        )

    def format_triple(self, triple: Sequence[int]) -> str:
        return "".join(self.names[x] for x in triple)


def lattice_from_cover_graph(g: CoverGraph) -> FiniteLattice:
    """
    Build a FiniteLattice from a cover graph.

    Raises:
        UnknownName: a cover mentions an element that is not listed
        CyclicCovers: the cover relation has a cycle
        RedundantCover: a cover pair is implied by others
        NotALattice: two elements lack a unique meet or join
    """
    if not g.elements:
        raise LatticeError(f"{g.name} has no elements", entity=g.name)
    if len(set(g.elements)) != len(g.elements):
        raise UnknownName(f"{g.name} lists an element twice", entity=g.name)

    index = {label: i for i, label in enumerate(g.elements)}
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(g.elements)))
    for lo, hi in g.covers:
        for label in (lo, hi):
            if label not in index:
                raise UnknownName(f"cover {lo}<{hi} of {g.name} names unknown element {label!r}",
                                  entity=g.name)
        if lo == hi:
            raise CyclicCovers(f"{g.name} has the cover {lo}<{hi}", entity=g.name)
        graph.add_edge(index[lo], index[hi])

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        path = "<".join(g.elements[u] for u, _ in cycle)
        raise CyclicCovers(f"covers of {g.name} contain the cycle {path}", entity=g.name)

    reduced = nx.transitive_reduction(graph)
    if reduced.number_of_edges() != graph.number_of_edges():
        u, v = next((u, v) for u, v in graph.edges if not reduced.has_edge(u, v))
        raise RedundantCover(f"cover {g.elements[u]}<{g.elements[v]} of {g.name} is implied "
                             f"by other covers", entity=g.name)

    n = len(g.elements)
    leq = np.eye(n, dtype=bool)
    for u, v in nx.transitive_closure_dag(graph).edges:
        leq[u, v] = True

    meet = _bound_table(leq, g, "meet")
    join = _bound_table(leq.T, g, "join")
    logger.debug(f"built {g.name}: {n} elements, {graph.number_of_edges()} covers")
    return FiniteLattice(g.name, g.elements, meet, join)


def _bound_table(leq: np.ndarray, g: CoverGraph, bound: str) -> np.ndarray:
    # leq[x, a] means x is a lower bound of a; for joins the transpose is passed
    n = leq.shape[0]
    table = np.zeros((n, n), dtype=np.int16)
    for a in range(n):
        for b in range(a, n):
            common = np.flatnonzero(leq[:, a] & leq[:, b])
            greatest = [c for c in common if leq[common, c].all()]
            if len(greatest) != 1:
                raise NotALattice(g.elements[a], g.elements[b], bound=bound, lattice=g.name)
            table[a, b] = table[b, a] = greatest[0]
    return table


class AxiomViolation(NamedTuple):
    axiom: str
    operation: str
    elements: Tuple[int, ...]


def validate_axioms(lattice: FiniteLattice) -> List[AxiomViolation]:
    """
    Check the lattice axioms exhaustively on the operation tables.

    Returns every violated instance; the list is empty iff the tables form a lattice
    with the recorded bottom and top.
    """
    n = lattice.n
    meet = lattice.meet.astype(np.intp)
    join = lattice.join.astype(np.intp)
    violations: List[AxiomViolation] = []

    for op, table in (("meet", meet), ("join", join)):
        bad = np.argwhere((table < 0) | (table >= n))
        violations.extend(AxiomViolation("range", op, tuple(int(v) for v in ab)) for ab in bad)
    if violations:
        return violations

    idx = np.arange(n)
    for op, table in (("meet", meet), ("join", join)):
        for a in np.flatnonzero(table[idx, idx] != idx):
            violations.append(AxiomViolation("idempotence", op, (int(a),)))
        for a, b in np.argwhere(np.triu(table != table.T)):
            violations.append(AxiomViolation("commutativity", op, (int(a), int(b))))
        left = table[table[:, :, None], idx[None, None, :]]
        right = table[idx[:, None, None], table[None, :, :]]
        for a, b, c in np.argwhere(left != right):
            violations.append(AxiomViolation("associativity", op, (int(a), int(b), int(c))))

    for a, b in np.argwhere(meet[idx[:, None], join] != idx[:, None]):
        violations.append(AxiomViolation("absorption", "meet", (int(a), int(b))))
    for a, b in np.argwhere(join[idx[:, None], meet] != idx[:, None]):
        violations.append(AxiomViolation("absorption", "join", (int(a), int(b))))

    for a in np.flatnonzero(meet[lattice.bottom] != lattice.bottom):
        violations.append(AxiomViolation("bottom", "meet", (int(a),)))
    for a in np.flatnonzero(join[lattice.top] != lattice.top):
        violations.append(AxiomViolation("top", "join", (int(a),)))

    return violations


def sublattice_closure(lattice: FiniteLattice, seeds: Iterable[int]) -> FrozenSet[int]:
    """Smallest subset containing `seeds` and closed under meet and join."""
    members = set(int(s) for s in seeds)
    worklist = list(members)
    while worklist:
        a = worklist.pop()
        for b in list(members):
            for c in (int(lattice.meet[a, b]), int(lattice.join[a, b])):
                if c not in members:
                    members.add(c)
                    worklist.append(c)
    return frozenset(members)


def is_generated_by(lattice: FiniteLattice, triple: Sequence[int]) -> bool:
    return len(sublattice_closure(lattice, triple)) == lattice.n


def generating_triples(lattice: FiniteLattice) -> List[Triple]:
    """All ordered triples that generate the lattice, in lexicographic index order."""
    generating: Dict[FrozenSet[int], bool] = {}
    result = []
    for triple in itertools.product(range(lattice.n), repeat=3):
        key = frozenset(triple)
        if key not in generating:
            generating[key] = len(sublattice_closure(lattice, key)) == lattice.n
        if generating[key]:
            result.append(triple)
    return result


def generation_rank(lattice: FiniteLattice, max_rank: int = 4) -> Optional[int]:
    """Least k <= max_rank such that some k elements generate the lattice."""
    for k in range(0, max_rank + 1):
        for subset in itertools.combinations(range(lattice.n), k):
            if len(sublattice_closure(lattice, subset)) == lattice.n:
                return k
    return None


def _signatures(lattice: FiniteLattice) -> List[Tuple[int, int, int, int]]:
    leq = lattice.leq_matrix
    lower = {b: 0 for b in range(lattice.n)}
    upper = {a: 0 for a in range(lattice.n)}
    for a, b in lattice.covers():
        lower[b] += 1
        upper[a] += 1
    return [(int(leq[:, x].sum()), int(leq[x, :].sum()), lower[x], upper[x])
            for x in range(lattice.n)]


def isomorphisms(source: FiniteLattice, target: FiniteLattice) -> Iterator[Tuple[int, ...]]:
    """
    Enumerate the isomorphisms source -> target as index tuples.

    An order isomorphism between lattices preserves meets and joins, so the
    search only has to respect the order.
    """
    n = source.n
    if n != target.n:
        return
    sig_s = _signatures(source)
    sig_t = _signatures(target)
    if sorted(sig_s) != sorted(sig_t):
        return
    leq_s = source.leq_matrix
    leq_t = target.leq_matrix
    order = sorted(range(n), key=lambda x: sig_s[x])
    candidates = [[y for y in range(n) if sig_t[y] == sig_s[x]] for x in order]
    image = [-1] * n
    used = [False] * n

    def extend(depth: int) -> Iterator[Tuple[int, ...]]:
        if depth == n:
            yield tuple(image)
            return
        x = order[depth]
        for y in candidates[depth]:
            if used[y]:
                continue
            if all(leq_s[p, x] == leq_t[image[p], y] and leq_s[x, p] == leq_t[y, image[p]]
                   for p in order[:depth]):
                image[x] = y
                used[y] = True
                yield from extend(depth + 1)
                used[y] = False
                image[x] = -1

    yield from extend(0)


def is_isomorphic(source: FiniteLattice, target: FiniteLattice) -> bool:
    return next(isomorphisms(source, target), None) is not None


def direct_product(*lattices: FiniteLattice, name: Optional[str] = None) -> FiniteLattice:
    """Direct product with coordinates in lexicographic index order."""
    shapes = [lat.n for lat in lattices]
    coords = list(itertools.product(*(range(s) for s in shapes)))
    position = {c: i for i, c in enumerate(coords)}
    single = all(len(label) == 1 for lat in lattices for label in lat.names)
    sep = "" if single else ","
    names = [sep.join(lat.names[x] for lat, x in zip(lattices, c)) for c in coords]
    m = len(coords)
    meet = np.zeros((m, m), dtype=np.int16)
    join = np.zeros((m, m), dtype=np.int16)
    for i, u in enumerate(coords):
        for j, v in enumerate(coords):
            meet[i, j] = position[tuple(int(lat.meet[a, b]) for lat, a, b in zip(lattices, u, v))]
            join[i, j] = position[tuple(int(lat.join[a, b]) for lat, a, b in zip(lattices, u, v))]
    return FiniteLattice(name or "x".join(lat.name for lat in lattices), names, meet, join)
