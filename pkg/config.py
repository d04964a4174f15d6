#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Configuration module for latspec.
Provides centralized configuration settings that can be customized.
"""

import copy
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

try:
    from .error_handlers import ConfigurationError
except ImportError:
    from error_handlers import ConfigurationError

logger = logging.getLogger('latspec.config')

# Default configuration values
DEFAULT_CONFIG: Dict[str, Any] = {
    # Closure engine
    "closure": {
        "budget": 2 ** 20,  # Maximum element count of a generated lattice
        "chunk_cells": 2 ** 22,  # Pair cells per vectorized frontier block
        "group_bits": 8  # Widest combined lookup table, in packed bits
    },

    # Spectrum enumeration
    "spectra": {
        "jobs": 1,
        "executor": "process",  # Options: process, thread
        "progress_every": 1024,  # Masks between progress lines
        "log_per_subset": False
    },

    # Catalog files or directories; empty means the bundled data directory
    "catalog": {
        "paths": []
    },

    # Logging settings
    "logging": {
        "log_level": "WARNING",  # Options: TRACE, DEBUG, INFO, WARNING, ERROR, CRITICAL
        "log_file": "",  # Empty string means stderr only
        "log_format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        "structured": False,
        "progress": True  # Progress lines on stderr during enumerations
    },

    # Output settings
    "output": {
        "output_format": "text",  # Options: text, machine, json, csv
        "dot_limit": 200
    }
}

# User configuration file paths to check (in order of precedence)
CONFIG_PATHS = [
    "./latspec.json",  # Current directory
    "~/.latspec.json",  # User's home directory
    "/etc/latspec.json"  # System-wide configuration
]

BUDGET_ENV = "LATSPEC_BUDGET"

# Global configuration object
_config: Optional[Dict[str, Any]] = None


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from file or use defaults.

    Args:
        config_path: Explicit configuration file. If None, CONFIG_PATHS are searched
            and the first existing file wins.
    """
    global _config

    config = copy.deepcopy(DEFAULT_CONFIG)

    candidates = [config_path] if config_path else CONFIG_PATHS
    for path_str in candidates:
        path = Path(os.path.expanduser(path_str))
        if path.exists() and path.is_file():
            try:
                with open(path, 'r', encoding='utf-8') as f:
                    user_config = json.load(f)
                deep_merge(config, user_config)
                logger.info(f"Loaded configuration from {path}")
                break
            except (OSError, ValueError) as e:
                logger.warning(f"Error loading configuration from {path}: {str(e)}")
        elif config_path:
            raise ConfigurationError(f"configuration file not found: {config_path}")

    _config = config
    return config


def get_config() -> Dict[str, Any]:
    """Get the current configuration."""
    global _config
    if _config is None:
        return load_config()
    return _config


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> None:
    """
    Deep merge two dictionaries.
    The override dictionary values take precedence.
    """
    for key, value in override.items():
        if key in base and isinstance(base[key], dict) and isinstance(value, dict):
            deep_merge(base[key], value)
        else:
            base[key] = value


def create_default_config(path: Optional[str] = None) -> bool:
    """
    Create a default configuration file.

    Args:
        path: Path to save the configuration file. If None, uses the first path in CONFIG_PATHS.
    """
    if path is None:
        path = os.path.expanduser(CONFIG_PATHS[0])

    try:
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(DEFAULT_CONFIG, f, indent=2)
        logger.info(f"Created default configuration file at {path}")
        return True
    except OSError as e:
        logger.error(f"Error creating configuration file: {str(e)}")
        return False


def closure_budget(cli_value: Optional[int] = None) -> int:
    """
    Resolve the closure element budget.

    The command line wins over the LATSPEC_BUDGET environment variable, which
    wins over the configuration file.
    """
    if cli_value is not None:
        raw: Any = cli_value
        origin = "--budget"
    elif os.environ.get(BUDGET_ENV):
        raw = os.environ[BUDGET_ENV]
        origin = BUDGET_ENV
    else:
        raw = get_closure_config()["budget"]
        origin = "closure.budget"

    try:
        budget = int(raw)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{origin} must be an integer, got {raw!r}")
    if budget < 1:
        raise ConfigurationError(f"{origin} must be at least 1, got {budget}")
    return budget


def get_closure_config() -> Dict[str, Any]:
    """Get closure-engine configuration."""
    return get_config()["closure"]


def get_spectra_config() -> Dict[str, Any]:
    """Get spectrum-enumeration configuration."""
    return get_config()["spectra"]


def get_catalog_config() -> Dict[str, Any]:
    """Get catalog configuration."""
    return get_config()["catalog"]


def get_logging_config() -> Dict[str, Any]:
    """Get logging-specific configuration."""
    return get_config()["logging"]


def get_output_config() -> Dict[str, Any]:
    """Get output-specific configuration."""
    return get_config()["output"]
