#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""Tests for the product module."""

import unittest
from unittest.mock import patch

import numpy as np
import pytest

# Import the module to test
try:
    from latspec import product as product_module
    from latspec.error_handlers import CapacityExceeded
    from latspec.product import Factor, FactorSystem, PackedCodec, closure
    from latspec.runfile import resolve_factors
except ImportError:
    # When running tests directly
    import sys
    import os.path
    sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    import product as product_module
    from error_handlers import CapacityExceeded
    from product import Factor, FactorSystem, PackedCodec, closure
    from runfile import resolve_factors

from tests.oracles import naive_atoms, naive_closure, run_spec, standard_catalog


def system_of(*assignments):
    catalog = standard_catalog()
    return FactorSystem.from_names([(catalog[name], tuple(word)) for name, word in assignments])


SMALL_SYSTEMS = [
    (("N5", "abc"),),
    (("N5", "abc"), ("N5", "bac")),
    (("M3", "abc"), ("N5", "cab")),
    (("C2", "001"), ("C2", "010"), ("N5", "abc")),
    (("L4", "cab"), ("L4", "acb")),
]


class TestFactorSystem(unittest.TestCase):
    """Factor bookkeeping and the packed encoding."""

    def test_generators_are_columns(self):
        system = system_of(("N5", "abc"), ("C2", "011"))
        self.assertEqual(system.generators(), ((1, 0), (2, 1), (3, 1)))
        self.assertEqual(system.product_size(), 10)

    def test_invalid_generators(self):
        n5 = standard_catalog()["N5"]
        with self.assertRaises(ValueError):
            FactorSystem([Factor(n5, (0, 1, 7))])
        with self.assertRaises(ValueError):
            FactorSystem([])

    def test_non_generating_factors(self):
        system = system_of(("N5", "abc"), ("N5", "a0c"))
        self.assertEqual(system.non_generating_factors(), [1])

    def test_packed_codec(self):
        catalog = standard_catalog()
        codec = PackedCodec([catalog["N5"], catalog["C2"]])
        self.assertEqual(codec.bits, [3, 1])
        self.assertEqual(codec.shifts, [1, 0])
        self.assertEqual(codec.encode((4, 1)), 9)
        codes = np.array([codec.encode((2, 0)), codec.encode((4, 1))], dtype=np.uint64)
        self.assertEqual(codec.decode_many(codes).tolist(), [[2, 0], [4, 1]])


class TestClosure(unittest.TestCase):
    """The vectorized closure against a direct pairwise computation."""

    def test_matches_naive_closure(self):
        for assignments in SMALL_SYSTEMS:
            system = system_of(*assignments)
            g = closure(system)
            expected = naive_closure(system.lattices, system.generators())
            self.assertEqual(set(g.elements()), expected, assignments)
            self.assertEqual(g.atoms(), naive_atoms(system.lattices, expected), assignments)

    def test_rows_are_sorted_and_distinct(self):
        g = closure(system_of(("M3", "abc"), ("N5", "cab")))
        rows = list(g.elements())
        self.assertEqual(rows, sorted(set(rows)))

    def test_single_factor_generates_the_factor(self):
        g = closure(system_of(("N5", "abc")))
        self.assertEqual(len(g), 5)
        self.assertEqual(g.count_atoms(), 2)
        self.assertEqual(g.count_coatoms(), 2)
        self.assertTrue(g.is_subdirect())

    def test_l92(self):
        spec = run_spec("l92.run")
        g = closure(resolve_factors(spec, standard_catalog()))
        self.assertEqual((len(g), g.count_atoms(), g.count_coatoms()), (92, 6, 3))

    def test_factor_order_does_not_change_counts(self):
        base = [("L4", "cab"), ("L4", "acb"), ("L4", "abc")]
        expected = closure(system_of(*base))
        for order in ([2, 0, 1], [1, 2, 0]):
            g = closure(system_of(*[base[i] for i in order]))
            self.assertEqual((len(g), g.count_atoms(), g.count_coatoms()),
                             (len(expected), expected.count_atoms(), expected.count_coatoms()))

    def test_chunking_and_grouping_do_not_change_the_result(self):
        system = system_of(*[("L4", w) for w in ("cab", "acb", "abc")])
        expected = list(closure(system).elements())
        self.assertEqual(list(closure(system, chunk_cells=7).elements()), expected)
        self.assertEqual(list(closure(system, group_bits=1).elements()), expected)
        self.assertEqual(list(closure(system, group_bits=16).elements()), expected)

    def test_tuple_fallback(self):
        system = system_of(*[("L4", w) for w in ("cab", "acb", "abc")])
        expected = list(closure(system).elements())
        with patch.object(product_module, "PACKED_BITS", 2):
            self.assertFalse(PackedCodec(system.lattices).fits)
            self.assertEqual(list(closure(system).elements()), expected)

    def test_budget(self):
        system = system_of(*[("L4", w) for w in ("cab", "acb", "abc")])
        with self.assertRaises(CapacityExceeded) as ctx:
            closure(system, budget=50, mask=0x7)
        self.assertEqual(ctx.exception.budget, 50)
        self.assertEqual(ctx.exception.mask, 7)
        self.assertGreater(ctx.exception.size, 50)
        self.assertEqual(len(closure(system, budget=92)), 92)

    def test_budget_from_environment(self):
        system = system_of(*[("L4", w) for w in ("cab", "acb", "abc")])
        with patch.dict("os.environ", {"LATSPEC_BUDGET": "10"}):
            with self.assertRaises(CapacityExceeded):
                closure(system)

    def test_seeds(self):
        n5 = standard_catalog()["N5"]
        system = FactorSystem([Factor(n5, (1, 1, 1))])
        self.assertEqual(len(closure(system)), 1)
        self.assertEqual(len(closure(system, seeds=[(3,)])), 4)


class TestGeneratedLattice(unittest.TestCase):
    """Queries on a generated lattice."""

    def setUp(self):
        self.g = closure(system_of(("C2", "001"), ("C2", "010"), ("N5", "abc")))

    def test_bounds(self):
        self.assertEqual(self.g.bottom, min(self.g.elements()))
        self.assertTrue(all(self.g.leq(self.g.bottom, u) and self.g.leq(u, self.g.top)
                            for u in self.g.elements()))
        self.assertIn(self.g.generators[0], self.g)
        self.assertNotIn((9, 9, 9), self.g)

    def test_atoms_and_coatoms_against_pairwise_order(self):
        g = self.g
        elements = list(g.elements())
        for u in g.atoms():
            self.assertFalse(any(v not in (u, g.bottom) and g.leq(v, u) for v in elements))
        for u in g.coatoms():
            self.assertFalse(any(v not in (u, g.top) and g.leq(u, v) for v in elements))

    def test_word(self):
        self.assertEqual(self.g.word((0, 1, 4)), "011")
        self.assertEqual(self.g.word(self.g.generators[0]), "00a")

    def test_covers_bottom_in_product(self):
        g = self.g
        for u in g.atoms():
            diff = sum(1 for a, b in zip(g.bottom, u) if a != b)
            if diff > 1:
                self.assertFalse(g.covers_bottom_in_product(u))

    def test_covers_form_a_hasse_diagram(self):
        covers = self.g.covers()
        rows = list(self.g.elements())
        for lo, hi in covers:
            self.assertTrue(self.g.leq(rows[lo], rows[hi]))
        self.assertGreaterEqual(len(covers), len(rows) - 1)


@pytest.mark.slow
class TestU8Products(unittest.TestCase):
    """Products of U8 whose closures have tens of thousands of elements."""

    def test_u8_six(self):
        spec = run_spec("u8_six.run")
        g = closure(resolve_factors(spec, standard_catalog()))
        self.assertEqual((len(g), g.count_atoms()), (47092, 18))

    def test_u8_nine(self):
        spec = run_spec("u8_nine.run")
        g = closure(resolve_factors(spec, standard_catalog()))
        self.assertEqual((len(g), g.count_atoms()), (61608, 18))


if __name__ == '__main__':
    unittest.main()
