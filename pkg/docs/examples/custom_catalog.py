#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Example: A lattice of your own.

Builds a lattice from its cover graph, checks it, and closes three
generators in its square.
"""

from latspec.catalog import analyze
from latspec.lattice import CoverGraph, lattice_from_cover_graph, validate_axioms
from latspec.product import Factor, FactorSystem, closure

# The pentagon with one extra element above b
GRAPH = CoverGraph(
    "N5plus",
    ("0", "a", "b", "c", "d", "1"),
    (("0", "a"), ("0", "c"), ("a", "b"), ("b", "d"), ("d", "1"), ("c", "1")),
)


def main():
    lattice = lattice_from_cover_graph(GRAPH)
    assert not validate_axioms(lattice)

    report = analyze(lattice)
    for key, value in report.computed.items():
        print(f"{key}: {value}")

    x, y, z = (lattice.index(v) for v in ("a", "d", "c"))
    g = closure(FactorSystem([Factor(lattice, (x, y, z)), Factor(lattice, (y, x, z))]))
    print(f"\nsublattice of N5plus^2 generated by (a,d), (d,a), (c,c): {len(g)} elements, "
          f"{g.count_atoms()} atoms, {g.count_coatoms()} coatoms")


if __name__ == "__main__":
    main()
