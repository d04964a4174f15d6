#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

from setuptools import setup

# Read the content of README.md for the long description
with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

# Read requirements from requirements.txt
with open("requirements.txt", "r", encoding="utf-8") as f:
    # Runtime requirements only; the development section starts at the marker
    requirements = []
    for line in f:
        if line.startswith("# Development"):
            break
        if line.strip() and not line.startswith("#"):
            requirements.append(line.strip())

setup(
    name="latspec",
    version="1.0.0",
    author="Phil Desrosiers",
    author_email="philippe.desrosiers@gmail.com",
    description="Atom spectra of three-generated sublattices of finite direct products",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/yourusername/latspec",
    packages=["latspec"],
    package_dir={"latspec": "."},
    package_data={"latspec": ["data/*.lat", "runs/*.run", "runs/expectations.json"]},
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "latspec=latspec.cli:main",
        ],
    },
    include_package_data=True,
    keywords="lattice, congruence, sublattice, direct product, atoms, universal algebra",
    project_urls={
        "Bug Reports": "https://github.com/yourusername/latspec/issues",
        "Source": "https://github.com/yourusername/latspec",
    },
)
