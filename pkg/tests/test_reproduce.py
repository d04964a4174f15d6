#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""Tests for the reproduce module."""

import json
import os
import tempfile
import unittest

import pytest

# Import the module to test
try:
    from latspec.error_handlers import ManifestError
    from latspec.reproduce import MANIFEST, expected_text, load_manifest, reproduce
except ImportError:
    # When running tests directly
    import sys
    import os.path
    sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    from error_handlers import ManifestError
    from reproduce import MANIFEST, expected_text, load_manifest, reproduce

from tests.oracles import RUNS, standard_catalog


class TestManifest(unittest.TestCase):
    """Reading and validating the expectations manifest."""

    def write(self, doc):
        handle = tempfile.NamedTemporaryFile("w", suffix=".json", delete=False, encoding="utf-8")
        with handle:
            handle.write(doc if isinstance(doc, str) else json.dumps(doc))
        self.addCleanup(os.unlink, handle.name)
        return handle.name

    def test_shipped_manifest(self):
        entries = load_manifest(MANIFEST)
        ids = [e.id for e in entries]
        self.assertEqual(len(ids), len(set(ids)))
        self.assertIn("l92", ids)
        for entry in entries:
            self.assertTrue((RUNS / entry.run).is_file(), entry.run)
        extended = {e.id for e in entries if e.extended}
        self.assertEqual(extended, {"ds_mn5", "ds_ml3", "ds_ml4", "ds_ml5", "as_u8_nine"})

    def test_all_problems_are_reported(self):
        path = self.write({"schema_version": "v1", "entries": [
            {"id": "a", "command": "closure", "run": "x.run", "expect": {"AS": "{1}"}},
            {"id": "a", "command": "sideways", "run": "x.run", "expect": {"n": 1}},
            {"command": "free", "run": "x.run", "expect": {}},
        ]})
        with self.assertRaises(ManifestError) as ctx:
            load_manifest(path)
        message = str(ctx.exception)
        self.assertIn("entries[0]: unexpected expectation 'AS'", message)
        self.assertIn("entries[1]: command must be one of", message)
        self.assertIn("entries[2]: missing key 'id'", message)
        self.assertIn("entries[2]: expect must be a non-empty object", message)

    def test_wrong_schema(self):
        with self.assertRaises(ManifestError):
            load_manifest(self.write({"schema_version": "v0", "entries": []}))

    def test_invalid_json(self):
        with self.assertRaises(ManifestError) as ctx:
            load_manifest(self.write("{\n  \"entries\": [\n"))
        self.assertIsNotNone(ctx.exception.line)

    def test_expected_text(self):
        self.assertEqual(expected_text("n", 92), "92")
        self.assertEqual(expected_text("AS", "{3, 1,2}"), "{1,2,3}")
        self.assertEqual(expected_text("DS", "delta(6)^-1"),
                         "{(1,1),(1,2),(2,1),(2,2),(2,3),(2,4),(3,2),(3,3),(3,4),(3,6)}")


class TestReproduce(unittest.TestCase):
    """Running manifest entries."""

    def setUp(self):
        self.catalog = standard_catalog()

    def test_selected_entries_pass(self):
        outcomes = reproduce(self.catalog, ids=["l92", "free_distributive", "as_mn5"])
        self.assertEqual([o.entry.id for o in outcomes], ["l92", "free_distributive", "as_mn5"])
        for outcome in outcomes:
            self.assertTrue(outcome.passed, outcome)
        self.assertEqual(outcomes[0].actual, {"n": "92", "atoms": "6", "coatoms": "3"})

    def test_free_lattice_entries_pass(self):
        ids = ["free_distributive", "free_modular", "free_n5", "free_ml1_without_m3",
               "free_ml3_without_m3", "free_ml4_without_m3"]
        outcomes = reproduce(self.catalog, ids=ids)
        self.assertEqual([o.actual["n"] for o in outcomes], ["18", "28", "99", "178", "2811", "821"])
        self.assertTrue(all(o.passed for o in outcomes))

    def test_wrong_expectation_fails(self):
        with open(MANIFEST, encoding="utf-8") as f:
            doc = json.load(f)
        doc["entries"] = [dict(e, expect={"n": 91}) for e in doc["entries"] if e["id"] == "l92"]
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "expectations.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump(doc, f)
            os.symlink(RUNS / "l92.run", os.path.join(tmp, "l92.run"))
            (outcome,) = reproduce(self.catalog, path)
        self.assertFalse(outcome.passed)
        self.assertEqual(outcome.actual, {"n": "92"})

    def test_missing_run_file_is_a_failure(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "expectations.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump({"schema_version": "v1", "entries": [
                    {"id": "gone", "command": "closure", "run": "gone.run", "expect": {"n": 1}}]}, f)
            (outcome,) = reproduce(self.catalog, path)
        self.assertFalse(outcome.passed)
        self.assertIsNotNone(outcome.error)

    def test_unknown_id(self):
        with self.assertRaises(ManifestError):
            reproduce(self.catalog, ids=["nope"])


@pytest.mark.extended
class TestFullManifest(unittest.TestCase):
    """Every manifest entry, extended ones included."""

    def test_everything_passes(self):
        outcomes = reproduce(standard_catalog(), include_extended=True, jobs=os.cpu_count())
        failed = [o.entry.id for o in outcomes if not o.passed]
        self.assertEqual(failed, [])


if __name__ == '__main__':
    unittest.main()
