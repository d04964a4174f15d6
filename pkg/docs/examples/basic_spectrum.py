#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Example: Atom spectrum of a shipped run file.

Loads the bundled catalog, computes the atom spectrum of the variety
generated by M3 and N5 and saves the per-subset records as JSON.
"""

from pathlib import Path

from latspec.catalog import load_catalog
from latspec.output_formatters import format_report, save_results
from latspec.runfile import parse_run_file
from latspec.spectra import enumerate_spectrum

RUNS = Path(__file__).resolve().parents[2] / "runs"


def main():
    """Compute and print the atom spectrum of mN5."""
    catalog = load_catalog()
    path = RUNS / "mn5_atoms.run"
    spec = parse_run_file(path.read_text(encoding="utf-8"), catalog, source=str(path))
    print(f"{len(spec.assignments)} assignments, {len(spec.constraints)} constraints")

    report = enumerate_spectrum(spec, catalog, mode="atoms", jobs=2, log_per_subset=True)
    print(format_report(report))

    output_file = "mn5_atoms.json"
    save_results(format_report(report, "json"), output_file)
    print(f"\nReport saved to {output_file}")


if __name__ == "__main__":
    main()
