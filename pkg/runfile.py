#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Run files: generator assignments and redundancy constraints.

Two line shapes are accepted, tokens separated by one or more spaces:

    \\lattice=N5 \\with x=b y=a z=c
    \\if N5 \\with x=b y=a z=c \\ThenNot C2 \\with x=0 y=0 z=1

Blank lines and comment lines ('#' after optional spaces) are ignored. Any other line must
start and end with a token; tabs and other whitespace are syntax errors.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

try:
    from .congruence import criticizing_maps, surjective_homomorphisms
    from .error_handlers import (DanglingConstraint, DuplicateAssignment, RunFileSyntaxError,
                                 UnknownElement, UnknownLattice)
    from .lattice import FiniteLattice, Triple
    from .product import Factor, FactorSystem
except ImportError:
    from congruence import criticizing_maps, surjective_homomorphisms
    from error_handlers import (DanglingConstraint, DuplicateAssignment, RunFileSyntaxError,
                                UnknownElement, UnknownLattice)
    from lattice import FiniteLattice, Triple
    from product import Factor, FactorSystem

logger = logging.getLogger('latspec.runfile')

NAME = re.compile(r"[A-Za-z0-9_]+\Z")
TOKEN = re.compile(r"[^ ]+")
BAD_SPACE = re.compile(r"[^\S ]")
VARIABLES = ("x", "y", "z")


@dataclass(frozen=True)
class Assignment:
    """One factor: a catalog lattice and the names of x, y and z in it."""

    lattice: str
    x: str
    y: str
    z: str
    line: Optional[int] = field(default=None, compare=False)

    @property
    def names(self) -> Tuple[str, str, str]:
        return (self.x, self.y, self.z)

    def key(self) -> Tuple[str, str, str, str]:
        return (self.lattice, self.x, self.y, self.z)

    def triple(self, lattice: FiniteLattice) -> Triple:
        return (lattice.index(self.x), lattice.index(self.y), lattice.index(self.z))

    def render_binding(self) -> str:
        return f"\\with x={self.x} y={self.y} z={self.z}"

    def __str__(self) -> str:
        return f"{self.lattice}:{self.x}{self.y}{self.z}"


@dataclass(frozen=True)
class Constraint:
    """Subsets selecting both assignments are redundant and skipped."""

    if_part: Assignment
    then_not: Assignment
    line: Optional[int] = field(default=None, compare=False)


@dataclass
class RunSpec:
    assignments: List[Assignment] = field(default_factory=list)
    constraints: List[Constraint] = field(default_factory=list)
    source: Optional[str] = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.assignments)

    def position(self, a: Assignment) -> int:
        for i, b in enumerate(self.assignments):
            if b == a:
                return i
        raise DanglingConstraint(f"{a} is not an assignment of this run file", source=self.source,
                                 line=a.line, entity=str(a))

    def constraint_pairs(self) -> List[Tuple[int, int]]:
        """Constraints as (if index, then-not index) pairs of assignment positions."""
        return [(self.position(c.if_part), self.position(c.then_not)) for c in self.constraints]

    def lattice_names(self) -> List[str]:
        seen: Dict[str, None] = {}
        for a in self.assignments:
            seen.setdefault(a.lattice, None)
        return list(seen)

    def without(self, lattice: str) -> "RunSpec":
        """Drop every assignment over one lattice, and the constraints touching them."""
        kept = [a for a in self.assignments if a.lattice != lattice]
        constraints = [c for c in self.constraints
                       if c.if_part.lattice != lattice and c.then_not.lattice != lattice]
        return RunSpec(kept, constraints, self.source)


class _Line:
    """Token cursor over one run-file line; columns are 1-based."""

    def __init__(self, text: str, number: int, source: Optional[str]):
        self.text = text
        self.number = number
        self.source = source
        self.tokens = [(m.start() + 1, m.group()) for m in TOKEN.finditer(text)]
        self.pos = 0

    def error(self, message: str, expected: Optional[str] = None) -> RunFileSyntaxError:
        column = self.tokens[self.pos][0] if self.pos < len(self.tokens) else len(self.text) + 1
        return RunFileSyntaxError(message, self.number, column, expected, source=self.source)

    def next(self, expected: str) -> str:
        if self.pos >= len(self.tokens):
            raise self.error("unexpected end of line", expected)
        token = self.tokens[self.pos][1]
        self.pos += 1
        return token

    def expect(self, literal: str) -> None:
        if self.pos < len(self.tokens) and self.tokens[self.pos][1] == literal:
            self.pos += 1
            return
        found = self.tokens[self.pos][1] if self.pos < len(self.tokens) else None
        raise self.error(f"unexpected {found!r}" if found else "unexpected end of line", literal)

    def name(self, token: str, expected: str) -> str:
        if not NAME.match(token):
            self.pos -= 1
            raise self.error(f"invalid name {token!r}", expected)
        return token

    def lattice_name(self) -> str:
        return self.name(self.next("a lattice name"), "a lattice name")

    def binding(self, lattice: str) -> Assignment:
        self.expect("\\with")
        values = []
        for var in VARIABLES:
            token = self.next(f"{var}=NAME")
            if not token.startswith(f"{var}="):
                self.pos -= 1
                raise self.error(f"unexpected {token!r}", f"{var}=NAME")
            values.append(self.name(token[2:], f"{var}=NAME"))
        return Assignment(lattice, values[0], values[1], values[2], line=self.number)

    def end(self) -> None:
        if self.pos < len(self.tokens):
            raise self.error(f"unexpected {self.tokens[self.pos][1]!r}", "end of line")


def _parse_line(line: _Line) -> object:
    head = line.next("\\lattice=NAME or \\if")
    if head.startswith("\\lattice="):
        name = head[len("\\lattice="):]
        if not NAME.match(name):
            line.pos -= 1
            raise line.error(f"invalid lattice name {name!r}", "\\lattice=NAME")
        assignment = line.binding(name)
        line.end()
        return assignment
    if head == "\\if":
        if_part = line.binding(line.lattice_name())
        line.expect("\\ThenNot")
        then_not = line.binding(line.lattice_name())
        line.end()
        return Constraint(if_part, then_not, line=line.number)
    line.pos -= 1
    raise line.error(f"unexpected {head!r}", "\\lattice=NAME or \\if")


def _resolve(a: Assignment, catalog: Mapping[str, FiniteLattice], source: Optional[str]) -> None:
    if a.lattice not in catalog:
        raise UnknownLattice(f"unknown lattice {a.lattice}", source=source, line=a.line,
                             entity=a.lattice)
    lattice = catalog[a.lattice]
    for value in a.names:
        if value not in lattice.names:
            raise UnknownElement(f"{a.lattice} has no element {value}", source=source,
                                 line=a.line, entity=f"{a.lattice}.{value}")


def parse_run_file(text: str, catalog: Mapping[str, FiniteLattice],
                   source: Optional[str] = None) -> RunSpec:
    """
    Parse a run file and resolve its names against a catalog.

    Args:
        text: File contents
        catalog: Lattices by name
        source: File name used in error locations

    Raises:
        RunFileSyntaxError, UnknownLattice, UnknownElement, DuplicateAssignment,
        DanglingConstraint
    """
    spec = RunSpec(source=source)
    seen: Dict[Tuple[str, str, str, str], int] = {}

    for number, raw in enumerate(text.split("\n"), start=1):
        if raw.endswith("\r"):
            raw = raw[:-1]
        if not raw.strip(" ") or raw.lstrip(" ").startswith("#"):
            continue
        bad = BAD_SPACE.search(raw)
        if bad:
            raise RunFileSyntaxError("tokens must be separated by spaces only", number,
                                     bad.start() + 1, source=source)
        if raw.startswith(" "):
            raise RunFileSyntaxError("line starts with a space", number, 1, source=source)
        if raw.endswith(" "):
            raise RunFileSyntaxError("line ends with a space", number, len(raw.rstrip(" ")) + 1,
                                     source=source)

        entry = _parse_line(_Line(raw, number, source))
        if isinstance(entry, Assignment):
            _resolve(entry, catalog, source)
            if entry.key() in seen:
                raise DuplicateAssignment(f"{entry} repeats the assignment of line "
                                          f"{seen[entry.key()]}", source=source, line=number,
                                          entity=str(entry))
            seen[entry.key()] = number
            spec.assignments.append(entry)
        else:
            assert isinstance(entry, Constraint)
            _resolve(entry.if_part, catalog, source)
            _resolve(entry.then_not, catalog, source)
            spec.constraints.append(entry)

    for c in spec.constraints:
        for part in (c.if_part, c.then_not):
            if part.key() not in seen:
                raise DanglingConstraint(f"constraint refers to {part}, which has no assignment line",
                                         source=source, line=c.line, entity=str(part))

    logger.debug(f"parsed {len(spec.assignments)} assignments and {len(spec.constraints)} "
                 f"constraints from {source or 'text'}")
    return spec


def render_run_file(spec: RunSpec, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    lines += [f"\\lattice={a.lattice} {a.render_binding()}" for a in spec.assignments]
    lines += [f"\\if {c.if_part.lattice} {c.if_part.render_binding()} "
              f"\\ThenNot {c.then_not.lattice} {c.then_not.render_binding()}"
              for c in spec.constraints]
    return "\n".join(lines) + "\n"


def derive_constraints(spec: RunSpec, catalog: Mapping[str, FiniteLattice]) -> List[Constraint]:
    """
    Constraints for every ordered pair of assignments (i, j) such that a
    surjective, non-bijective homomorphism maps assignment i onto assignment j.
    """
    homs: Dict[Tuple[str, str], list] = {}
    derived: List[Constraint] = []
    seen = set()
    for i, a in enumerate(spec.assignments):
        source = catalog[a.lattice]
        s_triple = a.triple(source)
        for j, b in enumerate(spec.assignments):
            target = catalog[b.lattice]
            if i == j or target.n >= source.n:
                continue
            pair = (a.lattice, b.lattice)
            if pair not in homs:
                homs[pair] = surjective_homomorphisms(source, target)
            if criticizing_maps(source, s_triple, target, b.triple(target), homs[pair]):
                c = Constraint(Assignment(*a.key()), Assignment(*b.key()))
                if c not in seen:
                    seen.add(c)
                    derived.append(c)
    return derived


def resolve_factors(spec: RunSpec, catalog: Mapping[str, FiniteLattice],
                    indices: Optional[Sequence[int]] = None) -> FactorSystem:
    """The factor system of all assignments, or of those at the given positions."""
    chosen = spec.assignments if indices is None else [spec.assignments[i] for i in indices]
    factors = []
    for a in chosen:
        lattice = catalog[a.lattice]
        factors.append(Factor(lattice, a.triple(lattice)))
    return FactorSystem(factors)
