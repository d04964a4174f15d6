#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Output formatters for latspec.
Provides functions to format spectra, closures and cover graphs, and to save them.
"""

import csv
import io
import json
import os
import re
import sys
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

try:
    from .product import GeneratedLattice
    from .spectra import SpectrumReport, SubsetRecord
except ImportError:
    from product import GeneratedLattice
    from spectra import SpectrumReport, SubsetRecord

OUTPUT_FORMATS = ("text", "machine", "json", "csv")

_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def format_int_set(values: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(set(values))) + "}"


def format_pair_set(pairs: Iterable[Tuple[int, int]]) -> str:
    return "{" + ",".join(f"({a},{b})" for a, b in sorted(set(pairs))) + "}"


def _braced(text: str) -> str:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"expected a set in braces, got {text!r}")
    return body[1:-1].strip()


def parse_int_set(text: str) -> Set[int]:
    """Inverse of format_int_set; spaces are allowed anywhere."""
    body = _braced(text)
    if not body:
        return set()
    try:
        return {int(part) for part in body.split(",")}
    except ValueError:
        raise ValueError(f"not a set of integers: {text!r}")


def parse_pair_set(text: str) -> Set[Tuple[int, int]]:
    body = _braced(text)
    pairs = {(int(a), int(b)) for a, b in _PAIR.findall(body)}
    leftover = _PAIR.sub("", body).replace(",", "").strip()
    if leftover:
        raise ValueError(f"not a set of integer pairs: {text!r}")
    return pairs


def format_subset_line(record: SubsetRecord) -> str:
    line = f"mask={record.mask:x} n={record.size}"
    if record.atoms is not None:
        line += f" atoms={record.atoms}"
    if record.coatoms is not None:
        line += f" coatoms={record.coatoms}"
    return line


def summary_lines(report: SpectrumReport) -> List[str]:
    if report.mode == "atoms":
        return [f"AS={format_int_set(report.atom_set)}"]
    if report.mode == "coatoms":
        return [f"CS={format_int_set(report.coatom_set)}"]
    return [f"DS={format_pair_set(report.pair_set)}"]


def report_to_dict(report: SpectrumReport) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "mode": report.mode,
        "subsets_total": report.subsets_total,
        "subsets_valid": report.subsets_valid,
        "subsets_skipped": report.subsets_skipped,
        "largest": report.largest,
    }
    if report.mode in ("atoms", "double"):
        data["AS"] = sorted(report.atom_set)
    if report.mode in ("coatoms", "double"):
        data["CS"] = sorted(report.coatom_set)
    if report.mode == "double":
        data["DS"] = [list(p) for p in sorted(report.pair_set)]
    if report.per_subset:
        data["subsets"] = [{k: v for k, v in vars(r).items() if v is not None}
                           for r in report.per_subset]
    return data


def format_report(report: SpectrumReport, output_format: str = "text") -> str:
    """
    Format a spectrum report.

    Args:
        report: Merged report
        output_format: 'text' (table and summary), 'machine' (subset lines and
            summary line), 'json' or 'csv' (per-subset rows)
    """
    fmt = output_format.lower()
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if fmt == "csv":
        return format_subsets_csv(report.per_subset)
    if fmt == "machine":
        lines = [format_subset_line(r) for r in report.per_subset]
        return "\n".join(lines + summary_lines(report)) + "\n"

    lines = [
        f"mode: {report.mode}",
        f"subsets: {report.subsets_total} total, {report.subsets_valid} valid, "
        f"{report.subsets_skipped} skipped",
        f"largest closure: {report.largest}",
    ]
    if report.per_subset:
        lines.append("")
        lines.append(f"{'mask':>10} {'n':>8} {'atoms':>6} {'coatoms':>8}")
        for r in report.per_subset:
            atoms = "-" if r.atoms is None else str(r.atoms)
            coatoms = "-" if r.coatoms is None else str(r.coatoms)
            lines.append(f"{r.mask:>10x} {r.size:>8} {atoms:>6} {coatoms:>8}")
        lines.append("")
    if report.mode == "double":
        lines.append(f"AS={format_int_set(report.atom_set)}")
        lines.append(f"CS={format_int_set(report.coatom_set)}")
    lines.extend(summary_lines(report))
    return "\n".join(lines) + "\n"


def format_subsets_csv(records: Sequence[SubsetRecord]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=["mask", "n", "atoms", "coatoms"], lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow({"mask": f"{r.mask:x}", "n": r.size,
                         "atoms": "" if r.atoms is None else r.atoms,
                         "coatoms": "" if r.coatoms is None else r.coatoms})
    return out.getvalue()


def format_closure(g: GeneratedLattice, output_format: str = "text", show_elements: bool = False,
                   show_atoms: bool = False) -> str:
    """
    Format a generated lattice as `n=<int> atoms=<int> coatoms=<int>`, optionally
    followed by its elements and atoms written as coordinate words.

    Atoms marked with '*' also cover the bottom of the whole direct product.
    """
    atoms = g.atoms()
    coatoms = g.coatoms()
    if output_format.lower() == "json":
        data: Dict[str, Any] = {"n": len(g), "atoms": len(atoms), "coatoms": len(coatoms),
                                "bottom": g.word(g.bottom), "top": g.word(g.top)}
        if show_elements:
            data["elements"] = [g.word(u) for u in g.elements()]
        if show_atoms:
            data["atom_words"] = [{"word": g.word(u), "covers_product_bottom": g.covers_bottom_in_product(u)}
                                  for u in atoms]
        return json.dumps(data, indent=2) + "\n"

    lines = [f"n={len(g)} atoms={len(atoms)} coatoms={len(coatoms)}"]
    if show_elements:
        lines.extend(g.word(u) for u in g.elements())
    if show_atoms:
        for u in atoms:
            flag = " *" if g.covers_bottom_in_product(u) else ""
            lines.append(f"atom {g.word(u)}{flag}")
    return "\n".join(lines) + "\n"


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def lattice_to_dot(name: str, labels: Sequence[str], covers: Iterable[Tuple[int, int]]) -> str:
    """Hasse diagram in DOT, drawn bottom up."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    lines.extend(f"  {_quote(label)};" for label in labels)
    lines.extend(f"  {_quote(labels[a])} -> {_quote(labels[b])};" for a, b in covers)
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_results(text: str, output_file: Optional[str] = None) -> None:
    """
    Write formatted output to a file, or to stdout when no file is given.

    Args:
        text: Formatted output
        output_file: Path to output file
    """
    if not output_file:
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    # Ensure the output directory exists
    output_dir = os.path.dirname(output_file)
    if output_dir and not os.path.exists(output_dir):
        os.makedirs(output_dir)

    with open(output_file, 'w', encoding='utf-8') as f:
        f.write(text)
