#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Command-line interface for latspec.
Results go to stdout (or --output); progress and errors go to stderr.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

try:
    from . import __version__
    from .catalog import REQUIRED_NAMES, Expectations, load_catalog, parse_catalog, render_entry, verify_catalog
    from .config import create_default_config, get_config, get_logging_config, get_output_config, load_config
    from .error_handlers import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, ExpectationMismatch, MissingEntry, guarded
    from .lattice import lattice_from_cover_graph, validate_axioms
    from .logging_config import configure_logging
    from .output_formatters import (OUTPUT_FORMATS, format_closure, format_int_set, format_pair_set,
                                    format_report, lattice_to_dot, parse_int_set, parse_pair_set,
                                    save_results)
    from .product import closure
    from .reproduce import MANIFEST, reproduce
    from .runfile import parse_run_file, render_run_file, resolve_factors
    from .spectra import (GENERATOR_MODES, MODES, delta_tables, enumerate_spectrum, free_lattice,
                          generate_run_spec, variety_lattices)
except ImportError:
    # When running as a script, not as a package
    from __init__ import __version__
    from catalog import REQUIRED_NAMES, Expectations, load_catalog, parse_catalog, render_entry, verify_catalog
    from config import create_default_config, get_config, get_logging_config, get_output_config, load_config
    from error_handlers import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, ExpectationMismatch, MissingEntry, guarded
    from lattice import lattice_from_cover_graph, validate_axioms
    from logging_config import configure_logging
    from output_formatters import (OUTPUT_FORMATS, format_closure, format_int_set, format_pair_set,
                                   format_report, lattice_to_dot, parse_int_set, parse_pair_set,
                                   save_results)
    from product import closure
    from reproduce import MANIFEST, reproduce
    from runfile import parse_run_file, render_run_file, resolve_factors
    from spectra import (GENERATOR_MODES, MODES, delta_tables, enumerate_spectrum, free_lattice,
                         generate_run_spec, variety_lattices)


def _positive(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {number}")
    return number


def parse_args(args: List[str]) -> argparse.Namespace:
    """Parse command line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--catalog', action='append', metavar='PATH',
                        help='Catalog file or directory (repeatable; default: bundled data/)')
    common.add_argument('--config', '-c', help='Path to custom configuration file')
    common.add_argument('--verbose', '-v', action='store_true', help='Enable verbose debug output')
    common.add_argument('--quiet', '-q', action='store_true', help='Suppress progress lines on stderr')
    common.add_argument('--output', '-o', help='Write results to this file instead of stdout')

    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument('--budget', type=_positive,
                        help='Closure element budget (overrides LATSPEC_BUDGET and the config file)')

    parser = argparse.ArgumentParser(
        prog="latspec",
        description="latspec - three-generated sublattices of direct products and their atom spectra",
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    validate = subparsers.add_parser("validate", parents=[common],
                                     help="Check a catalog file (*.lat) or a run file (*.run)")
    validate.add_argument('file', help='File to check')

    verify = subparsers.add_parser("catalog-verify", parents=[common],
                                   help="Compare computed properties with catalog expectations")
    verify.add_argument('paths', nargs='*', help='Catalog files or directories')
    verify.add_argument('--partial', action='store_true',
                        help='Do not require every standard catalog entry')

    closure_parser = subparsers.add_parser("closure", parents=[common, engine],
                                           help="Generate the sublattice spanned by a run file's assignments")
    closure_parser.add_argument('--run', required=True, help='Run file')
    closure_parser.add_argument('--show-elements', action='store_true', help='List every element')
    closure_parser.add_argument('--show-atoms', action='store_true',
                                help='List atoms; * marks atoms covering the bottom of the full product')
    closure_parser.add_argument('--dot', metavar='FILE', help='Write the cover graph in DOT format')
    closure_parser.add_argument('--format', choices=("text", "json"), help='Output format')

    free = subparsers.add_parser("free", parents=[common, engine],
                                 help="Free lattice of a run file: the closure over all assignments")
    free.add_argument('--run', required=True, help='Run file')
    free.add_argument('--drop', nargs='+', default=[], metavar='LATTICE',
                      help='Leave out every assignment over these lattices (e.g. M3)')
    free.add_argument('--show-elements', action='store_true', help='List every element')
    free.add_argument('--format', choices=("text", "json"), help='Output format')

    spectrum = subparsers.add_parser("spectrum", parents=[common, engine],
                                     help="Atom, coatom or double spectrum of a run file")
    spectrum.add_argument('--run', required=True, help='Run file')
    spectrum.add_argument('--mode', choices=MODES, default="atoms", help='Spectrum to compute')
    spectrum.add_argument('--expect', help='Expected set, e.g. "{1,2,3}" or "delta(3)"; exit 1 on mismatch')
    spectrum.add_argument('--jobs', '-j', type=_positive, help='Worker count')
    spectrum.add_argument('--executor', choices=("process", "thread"), help='Worker pool kind')
    spectrum.add_argument('--log-per-subset', action='store_true',
                          help='Report every valid subset')
    spectrum.add_argument('--format', choices=OUTPUT_FORMATS, help='Output format')

    gen = subparsers.add_parser("genrunfile", parents=[common],
                                help="Generate a run file from lattices or variety names")
    source = gen.add_mutually_exclusive_group(required=True)
    source.add_argument('--variety', nargs='+', help='Variety names such as mH6 or L3 L5')
    source.add_argument('--lattices', nargs='+', help='Catalog lattice names')
    gen.add_argument('--mode', choices=GENERATOR_MODES, default="atoms",
                     help='atoms/coatoms keep reduced assignments; double/free keep all')

    dual = subparsers.add_parser("dual", parents=[common], help="Print the dual of a catalog lattice")
    dual.add_argument('name', help='Catalog lattice name')
    dual.add_argument('--dot', action='store_true', help='Print a DOT cover graph instead')

    repro = subparsers.add_parser("reproduce", parents=[common, engine],
                                  help="Run the expectations manifest")
    repro.add_argument('--manifest', default=str(MANIFEST), help='Manifest file')
    repro.add_argument('--extended', action='store_true', help='Include the multi-hour entries')
    repro.add_argument('--only', nargs='+', default=[], metavar='ID', help='Run only these entries')
    repro.add_argument('--jobs', '-j', type=_positive, help='Worker count for spectra')

    # Config command
    config_parser = subparsers.add_parser("config", help="Manage configuration")
    config_subparsers = config_parser.add_subparsers(dest="config_command", help="Configuration command")
    create_config_parser = config_subparsers.add_parser("create", help="Create default configuration file")
    create_config_parser.add_argument('--path', '-p', help='Path to save the configuration file')
    show_config_parser = config_subparsers.add_parser("show", help="Show current configuration")
    show_config_parser.add_argument('--path', '-p', help='Path to configuration file to show')

    subparsers.add_parser("version", help="Show version information")

    return parser.parse_args(args)


def show_version() -> int:
    """Display version information."""
    print(f"latspec v{__version__}")
    print("License: GNU General Public License v3.0 (GPL-3)")
    return EXIT_OK


def show_config(config_path: Optional[str] = None) -> int:
    """Show the current configuration."""
    config = load_config(config_path) if config_path else get_config()
    print(json.dumps(config, indent=2))
    return EXIT_OK


def _catalog(args: argparse.Namespace, require=REQUIRED_NAMES):
    return load_catalog(args.catalog or None, require=require if not args.catalog else ())


def _read_run(args: argparse.Namespace, catalog):
    path = Path(args.run)
    return parse_run_file(path.read_text(encoding="utf-8"), catalog, source=str(path))


def _output_format(args: argparse.Namespace) -> str:
    return getattr(args, "format", None) or get_output_config().get("output_format", "text")


def cmd_validate(args: argparse.Namespace) -> int:
    path = Path(args.file)
    text = path.read_text(encoding="utf-8")
    lines = []
    status = EXIT_OK
    if path.suffix == ".lat":
        for entry in parse_catalog(text, source=str(path)):
            lattice = lattice_from_cover_graph(entry.graph)
            violations = validate_axioms(lattice)
            if violations:
                status = EXIT_DOMAIN
                lines.append(f"{lattice.name}: {len(violations)} axiom violations, first "
                             f"{violations[0].axiom} of {violations[0].operation} at "
                             f"{lattice.format_triple(violations[0].elements)}")
            else:
                lines.append(f"{lattice.name}: ok n={lattice.n}")
    else:
        catalog = _catalog(args)
        spec = parse_run_file(text, catalog, source=str(path))
        system = resolve_factors(spec, catalog) if spec.assignments else None
        lines.append(f"{path}: ok assignments={len(spec.assignments)} constraints={len(spec.constraints)}")
        for i in (system.non_generating_factors() if system else []):
            lines.append(f"warning: assignment {spec.assignments[i]} does not generate {spec.assignments[i].lattice}")
    save_results("\n".join(lines) + "\n", args.output)
    return status


def _yes_no(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def cmd_catalog_verify(args: argparse.Namespace) -> int:
    paths = args.paths or args.catalog or None
    catalog = load_catalog(paths, require=() if args.partial else REQUIRED_NAMES)
    report = verify_catalog(catalog)
    lines = []
    for entry in report.entries:
        c = entry.computed
        fields = " ".join(f"{k}={_yes_no(c[k])}" for k in
                          ("size", "aut", "si", "zero_sep", "one_sep", "meet", "join", "rank"))
        lines.append(f"{entry.name} {fields} {'ok' if not entry.mismatches else 'MISMATCH'}")
        for key, want, got in entry.mismatches:
            lines.append(f"  {entry.name}: {key} expected {_yes_no(want)}, computed {_yes_no(got)}")
        if entry.meet_witness and c["meet"] is False:
            lines.append(f"  {entry.name}: meet condition fails at {entry.meet_witness}")
    lines.append(f"{len(report.entries)} entries, {len(report.mismatches())} mismatches")
    save_results("\n".join(lines) + "\n", args.output)
    return EXIT_OK if report.ok else EXIT_DOMAIN


def _write_dot(g, path: str) -> None:
    limit = int(get_output_config().get("dot_limit", 200))
    if len(g) > limit:
        raise ValueError(f"the generated lattice has {len(g)} elements; DOT output is limited to {limit}")
    labels = [g.word(u) for u in g.elements()]
    save_results(lattice_to_dot("generated", labels, g.covers()), path)


def cmd_closure(args: argparse.Namespace) -> int:
    catalog = _catalog(args)
    spec = _read_run(args, catalog)
    g = closure(resolve_factors(spec, catalog), budget=args.budget)
    save_results(format_closure(g, _output_format(args), args.show_elements, args.show_atoms), args.output)
    if args.dot:
        _write_dot(g, args.dot)
    return EXIT_OK


def cmd_free(args: argparse.Namespace) -> int:
    catalog = _catalog(args)
    spec = _read_run(args, catalog)
    g = free_lattice(spec, catalog, drop=args.drop, budget=args.budget)
    save_results(format_closure(g, _output_format(args), args.show_elements), args.output)
    return EXIT_OK


def _check_expectation(expect: str, mode: str, report) -> None:
    if mode == "double":
        named = delta_tables().named()
        want = format_pair_set(named[expect] if expect in named else parse_pair_set(expect))
        got = format_pair_set(report.pair_set)
    else:
        want = format_int_set(parse_int_set(expect))
        got = format_int_set(report.atom_set if mode == "atoms" else report.coatom_set)
    if want != got:
        raise ExpectationMismatch(want, got, entity=mode)


def cmd_spectrum(args: argparse.Namespace) -> int:
    catalog = _catalog(args)
    spec = _read_run(args, catalog)
    fmt = _output_format(args)
    log_per_subset = True if args.log_per_subset or fmt == "csv" else None
    report = enumerate_spectrum(spec, catalog, args.mode, jobs=args.jobs, executor=args.executor,
                                budget=args.budget, log_per_subset=log_per_subset)
    save_results(format_report(report, fmt), args.output)
    if args.expect:
        _check_expectation(args.expect, args.mode, report)
    return EXIT_OK


def cmd_genrunfile(args: argparse.Namespace) -> int:
    names = variety_lattices(args.variety) if args.variety else list(args.lattices)
    catalog = _catalog(args)
    spec = generate_run_spec(catalog, names, args.mode)
    how = f"--variety {' '.join(args.variety)}" if args.variety else f"--lattices {' '.join(names)}"
    comments = [f"Lattices: {' '.join(names)}", f"Generated: latspec genrunfile {how} --mode {args.mode}"]
    save_results(render_run_file(spec, comments), args.output)
    return EXIT_OK


def cmd_dual(args: argparse.Namespace) -> int:
    catalog = _catalog(args)
    if args.name not in catalog:
        raise MissingEntry(f"catalog has no lattice named {args.name}", entity=args.name)
    lattice = catalog[args.name]
    d = lattice.dual(f"{lattice.name}d")
    if args.dot:
        text = lattice_to_dot(d.name, d.names, d.covers())
    else:
        want = catalog.expectations(args.name)
        swapped = Expectations(size=want.size, aut=want.aut, si=want.si, zero_sep=want.one_sep,
                               one_sep=want.zero_sep, meet=want.join, join=want.meet)
        text = render_entry(d, swapped)
    save_results(text, args.output)
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace) -> int:
    catalog = _catalog(args)
    outcomes = reproduce(catalog, args.manifest, ids=args.only, include_extended=args.extended,
                         jobs=args.jobs, budget=args.budget)
    lines = []
    for o in outcomes:
        detail = o.error or " ".join(f"{k}={v}" for k, v in o.actual.items())
        lines.append(f"{'PASS' if o.passed else 'FAIL'} {o.entry.id} ({o.seconds:.1f}s) {detail}")
    failed = sum(1 for o in outcomes if not o.passed)
    lines.append(f"{len(outcomes) - failed} passed, {failed} failed")
    save_results("\n".join(lines) + "\n", args.output)
    return EXIT_OK if not failed else EXIT_DOMAIN


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "validate": cmd_validate,
    "catalog-verify": cmd_catalog_verify,
    "closure": cmd_closure,
    "free": cmd_free,
    "spectrum": cmd_spectrum,
    "genrunfile": cmd_genrunfile,
    "dual": cmd_dual,
    "reproduce": cmd_reproduce,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI."""
    args = parse_args(sys.argv[1:] if argv is None else argv)

    if args.command == "config":
        if args.config_command == "create":
            return EXIT_OK if create_default_config(args.path) else EXIT_DOMAIN
        elif args.config_command == "show":
            return guarded("config")(show_config)(args.path)
        print("Please specify a config command. Use --help for more information.", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "version":
        return show_version()

    if args.command not in COMMANDS:
        print("Please specify a command. Use --help for more information.", file=sys.stderr)
        return EXIT_USAGE

    def run(a: argparse.Namespace) -> int:
        if a.config:
            load_config(a.config)
        log_cfg = get_logging_config()
        configure_logging(verbose=a.verbose, log_file=log_cfg.get("log_file") or None,
                          log_format=log_cfg.get("log_format"), structured=log_cfg.get("structured", False),
                          log_level=log_cfg.get("log_level"),
                          progress=bool(log_cfg.get("progress", True)) and not a.quiet)
        return COMMANDS[a.command](a)

    return guarded(args.command, args.verbose)(run)(args)


if __name__ == "__main__":
    sys.exit(main())
