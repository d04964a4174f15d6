#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""Pytest configuration and fixtures."""

import json
import os
import tempfile

import pytest

try:
    from latspec import config as config_module
except ImportError:
    import sys
    sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    import config as config_module


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Every test starts from the defaults, with no budget override in the environment."""
    monkeypatch.delenv("LATSPEC_BUDGET", raising=False)
    monkeypatch.setattr(config_module, "CONFIG_PATHS", [])
    monkeypatch.setattr(config_module, "_config", None)
    yield


@pytest.fixture
def temp_config_file():
    """Create a temporary configuration file."""
    config = {
        "closure": {
            "budget": 5000
        },
        "output": {
            "output_format": "json"
        }
    }

    with tempfile.NamedTemporaryFile(delete=False, mode='w', suffix='.json') as temp_file:
        json.dump(config, temp_file)
        temp_path = temp_file.name

    yield temp_path

    # Clean up
    if os.path.exists(temp_path):
        os.unlink(temp_path)
