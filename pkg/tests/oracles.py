#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Slow but obviously correct reference computations, and shared test data.
"""

import functools
import os
from pathlib import Path
from typing import List, Sequence, Set, Tuple

try:
    from latspec.catalog import load_catalog
    from latspec.runfile import parse_run_file
except ImportError:
    import sys
    sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    from catalog import load_catalog
    from runfile import parse_run_file

ROOT = Path(__file__).resolve().parent.parent
RUNS = ROOT / "runs"


@functools.lru_cache(maxsize=None)
def standard_catalog():
    return load_catalog([ROOT / "data"])


def run_spec(name: str):
    path = RUNS / name
    return parse_run_file(path.read_text(encoding="utf-8"), standard_catalog(), source=str(path))


def naive_closure(lattices, generators: Sequence[Tuple[int, ...]]) -> Set[Tuple[int, ...]]:
    """Apply meet and join to every pair until nothing new appears."""
    known = set(generators)
    changed = True
    while changed:
        changed = False
        for u in list(known):
            for v in list(known):
                for op in ("meet", "join"):
                    w = tuple(int(getattr(lat, op)[a, b]) for lat, a, b in zip(lattices, u, v))
                    if w not in known:
                        known.add(w)
                        changed = True
    return known


def naive_atoms(lattices, elements: Set[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    def leq(u, v):
        return all(lat.leq(a, b) for lat, a, b in zip(lattices, u, v))

    bottom = next(u for u in elements if all(leq(u, v) for v in elements))
    rest = [u for u in elements if u != bottom]
    return sorted(u for u in rest if not any(v != u and leq(v, u) for v in rest))
