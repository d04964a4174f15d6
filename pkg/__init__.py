#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
latspec

Finite lattices, their congruences, and the sublattices three elements
generate inside direct products of small lattices. The atom, coatom and
double spectra of those sublattices are computed over every subset of a
run file's assignments.
"""

__version__ = '1.0.0'
__author__ = 'Phil Desrosiers'
__email__ = 'philippe.desrosiers@gmail.com'
__license__ = 'GPL-3.0'
