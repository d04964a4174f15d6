#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""Tests for the spectra module."""

import unittest
from unittest.mock import patch

import pytest

# Import the module to test
try:
    from latspec import spectra as spectra_module
    from latspec.error_handlers import CapacityExceeded
    from latspec.runfile import RunSpec, parse_run_file
    from latspec.spectra import (
        SpectrumReport, candidate_triples, delta_tables, enumerate_spectrum, free_lattice,
        generate_run_spec, subset_valid, valid_masks, variety_lattices
    )
except ImportError:
    # When running tests directly
    import sys
    import os.path
    sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    import spectra as spectra_module
    from error_handlers import CapacityExceeded
    from runfile import RunSpec, parse_run_file
    from spectra import (
        SpectrumReport, candidate_triples, delta_tables, enumerate_spectrum, free_lattice,
        generate_run_spec, subset_valid, valid_masks, variety_lattices
    )

from tests.oracles import run_spec, standard_catalog


class TestSubsets(unittest.TestCase):
    """Constraint filtering of subset masks."""

    def test_valid_masks(self):
        self.assertEqual(valid_masks(1, 8, [(0, 1)]).tolist(), [1, 2, 4, 5, 6])
        self.assertEqual(valid_masks(1, 8, []).tolist(), list(range(1, 8)))

    def test_subset_valid(self):
        spec = run_spec("mn5_atoms.run")
        n5_abc, c2_001 = 5, 0
        self.assertFalse(subset_valid((1 << n5_abc) | (1 << c2_001), spec))
        self.assertTrue(subset_valid(1 << n5_abc, spec))
        with self.assertRaises(ValueError):
            subset_valid(0, spec)

    def test_vectorized_filter_agrees_with_subset_valid(self):
        spec = run_spec("mn5_atoms.run")
        masks = valid_masks(1, 1 << len(spec), spec.constraint_pairs()).tolist()
        self.assertEqual(masks, [m for m in range(1, 1 << len(spec)) if subset_valid(m, spec)])


class TestSpectra(unittest.TestCase):
    """Atom, coatom and double spectra of small run files."""

    def setUp(self):
        self.catalog = standard_catalog()

    def test_atom_spectrum_of_mn5(self):
        report = enumerate_spectrum(run_spec("mn5_atoms.run"), self.catalog, "atoms")
        self.assertEqual(report.summary(), {"AS": [1, 2, 3]})
        self.assertEqual(report.subsets_total, 127)
        self.assertEqual(report.subsets_valid + report.subsets_skipped, 127)
        self.assertEqual(report.coatom_set, set())

    def test_atom_spectra_of_small_varieties(self):
        for run, expected in (("n5l3_atoms.run", {1, 2, 3}), ("ml3_atoms.run", {1, 2, 3, 4})):
            report = enumerate_spectrum(run_spec(run), self.catalog, "atoms")
            self.assertEqual(report.atom_set, expected, run)

    def test_coatom_spectrum_of_mn5(self):
        spec = generate_run_spec(self.catalog, variety_lattices(["mN5"]), "coatoms")
        report = enumerate_spectrum(spec, self.catalog, "coatoms")
        self.assertEqual(report.summary(), {"CS": [1, 2, 3]})

    def test_per_subset_records(self):
        spec = run_spec("l92.run")
        report = enumerate_spectrum(spec, self.catalog, "double", log_per_subset=True)
        self.assertEqual([r.mask for r in report.per_subset], list(range(1, 8)))
        full = report.per_subset[-1]
        self.assertEqual((full.size, full.atoms, full.coatoms), (92, 6, 3))
        self.assertIn((6, 3), report.pair_set)

    def test_threads_give_the_serial_result(self):
        spec = run_spec("n5l3_atoms.run")
        serial = enumerate_spectrum(spec, self.catalog, "atoms", log_per_subset=True)
        with patch.object(spectra_module, "RANGE_SIZE", 16):
            threaded = enumerate_spectrum(spec, self.catalog, "atoms", jobs=3, executor="thread",
                                          log_per_subset=True)
        self.assertEqual(threaded.per_subset, serial.per_subset)
        self.assertEqual(threaded.atom_set, serial.atom_set)
        self.assertEqual(threaded.subsets_valid, serial.subsets_valid)

    def test_processes_give_the_serial_result(self):
        spec = run_spec("mn5_atoms.run")
        serial = enumerate_spectrum(spec, self.catalog, "atoms", log_per_subset=True)
        with patch.object(spectra_module, "RANGE_SIZE", 32):
            pooled = enumerate_spectrum(spec, self.catalog, "atoms", jobs=2, executor="process",
                                        log_per_subset=True)
        self.assertEqual(pooled.per_subset, serial.per_subset)

    def test_capacity_exceeded_names_the_subset(self):
        with self.assertRaises(CapacityExceeded) as ctx:
            enumerate_spectrum(run_spec("l92.run"), self.catalog, "atoms", budget=20)
        self.assertIsNotNone(ctx.exception.mask)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            enumerate_spectrum(run_spec("l92.run"), self.catalog, "sideways")
        with self.assertRaises(ValueError):
            enumerate_spectrum(RunSpec(), self.catalog, "atoms")
        with self.assertRaises(ValueError):
            enumerate_spectrum(run_spec("l92.run"), self.catalog, "atoms", jobs=0)

    def test_report_merge(self):
        left = SpectrumReport("atoms", atom_set={1}, subsets_total=3, subsets_valid=2, largest=5)
        right = SpectrumReport("atoms", atom_set={2}, subsets_total=4, subsets_valid=4, largest=9)
        left.merge(right)
        self.assertEqual((left.atom_set, left.subsets_total, left.subsets_valid, left.largest),
                         ({1, 2}, 7, 6, 9))


class TestFreeLattices(unittest.TestCase):
    """Closures over all assignments of a run file."""

    def setUp(self):
        self.catalog = standard_catalog()

    def test_free_distributive(self):
        self.assertEqual(len(free_lattice(run_spec("free_distributive.run"), self.catalog)), 18)

    def test_free_modular(self):
        self.assertEqual(len(free_lattice(run_spec("free_modular.run"), self.catalog)), 28)

    def test_free_n5(self):
        g = free_lattice(run_spec("mn5_double.run"), self.catalog, drop=["M3"])
        self.assertEqual(len(g), 99)

    def test_free_lattices_without_m3(self):
        for run, size in (("ml1_double.run", 178), ("ml3_double.run", 2811), ("ml4_double.run", 821)):
            with self.subTest(run=run):
                g = free_lattice(run_spec(run), self.catalog, drop=["M3"])
                self.assertEqual(len(g), size)

    def test_drop_everything(self):
        with self.assertRaises(ValueError):
            free_lattice(run_spec("l92.run"), self.catalog, drop=["L4"])


class TestGeneration(unittest.TestCase):
    """Run files generated from lattice lists."""

    def setUp(self):
        self.catalog = standard_catalog()

    def test_variety_lattices(self):
        self.assertEqual(variety_lattices(["mH6"]),
                         ["C2", "M3", "N5", "L1", "L5", "V6", "L3", "L4"])
        self.assertEqual(variety_lattices(["L3", "L5"]), ["C2", "N5", "L3", "L5"])
        self.assertEqual(variety_lattices(["mL3", "mL5"]), ["C2", "M3", "N5", "L3", "L5"])
        self.assertEqual(variety_lattices(["mN5"]), ["C2", "M3", "N5"])
        with self.assertRaises(ValueError):
            variety_lattices(["Z9"])

    def test_candidate_triples(self):
        n5 = self.catalog["N5"]
        self.assertEqual(candidate_triples(n5, "atoms"), [(1, 2, 3), (2, 1, 3)])
        self.assertEqual(len(candidate_triples(n5, "double")), 6)
        self.assertEqual(candidate_triples(self.catalog["M3"], "free"), [(1, 2, 3)])

    def test_generated_file_matches_the_shipped_one(self):
        generated = generate_run_spec(self.catalog, variety_lattices(["mN5"]), "atoms")
        shipped = run_spec("mn5_atoms.run")
        self.assertEqual(generated.assignments, shipped.assignments)
        self.assertEqual(generated.constraints, shipped.constraints)

    def test_generated_free_modular(self):
        generated = generate_run_spec(self.catalog, ["C2", "M3"], "free")
        self.assertEqual(generated.assignments, run_spec("free_modular.run").assignments)
        self.assertEqual(generated.constraints, [])

    def test_unknown_mode(self):
        with self.assertRaises(ValueError):
            generate_run_spec(self.catalog, ["N5"], "sideways")


class TestDeltaTables(unittest.TestCase):
    """Reference double spectra."""

    def test_tables(self):
        d = delta_tables()
        self.assertEqual(len(d.delta3), 7)
        self.assertTrue(d.delta3 < d.delta4 and d.delta3 < d.delta6)
        self.assertEqual(d.delta4 - d.delta3, {(4, 3), (3, 4), (4, 2), (2, 4)})
        self.assertEqual(d.delta6_inverse, {(b, a) for a, b in d.delta6})
        self.assertIn((3, 6), d.delta6_inverse)
        self.assertEqual(set(d.named()), {"delta(3)", "delta(4)", "delta(6)", "delta(6)^-1"})


@pytest.mark.slow
class TestAtomSpectrumOfMH6(unittest.TestCase):
    """Seventeen assignments; about a minute on four workers."""

    def test_atom_spectrum_of_mh6(self):
        report = enumerate_spectrum(run_spec("mh6_atoms.run"), standard_catalog(), "atoms", jobs=4)
        self.assertEqual(report.atom_set, {1, 2, 3, 4, 6})


@pytest.mark.extended
class TestReferenceSpectra(unittest.TestCase):
    """Spectra that take minutes to hours."""

    def setUp(self):
        self.catalog = standard_catalog()

    def test_atom_spectrum_of_ml3_ml5(self):
        report = enumerate_spectrum(run_spec("ml3ml5_atoms.run"), self.catalog, "atoms")
        self.assertEqual(report.atom_set, {1, 2, 3, 4})

    def test_double_spectrum_of_mn5(self):
        report = enumerate_spectrum(run_spec("mn5_double.run"), self.catalog, "double", jobs=4)
        self.assertEqual(report.pair_set, delta_tables().delta3)


if __name__ == '__main__':
    unittest.main()
