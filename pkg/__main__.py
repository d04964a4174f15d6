#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Main entry point for latspec.
Allows running the package with 'python -m latspec'.
"""

import sys

from latspec.cli import main

if __name__ == "__main__":
    sys.exit(main())
