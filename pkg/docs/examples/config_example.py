#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Example: Working with configuration.

This example demonstrates how to work with the configuration system.
"""

import json
import os

from latspec.config import (closure_budget, create_default_config, get_closure_config,
                            get_spectra_config, load_config)


def main():
    """Demonstrate configuration functionality."""
    print("latspec Configuration Example")
    print("=============================\n")

    config_path = "example_config.json"
    print(f"Creating default configuration file at {config_path}...")
    create_default_config(config_path)

    with open(config_path, 'r', encoding='utf-8') as f:
        custom_config = json.load(f)
    custom_config["closure"]["budget"] = 100000
    custom_config["spectra"]["jobs"] = 4
    with open(config_path, 'w', encoding='utf-8') as f:
        json.dump(custom_config, f, indent=2)

    load_config(config_path)
    print(f"Closure settings: {get_closure_config()}")
    print(f"Spectra settings: {get_spectra_config()}")

    os.environ["LATSPEC_BUDGET"] = "5000"
    print(f"Budget with LATSPEC_BUDGET set: {closure_budget()}")
    print(f"Budget with --budget 200: {closure_budget(200)}")
    del os.environ["LATSPEC_BUDGET"]

    os.remove(config_path)
    print(f"\nRemoved {config_path}")


if __name__ == "__main__":
    main()
