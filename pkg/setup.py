#!/usr/bin/env python3
"""
Setup script for mcgate.
Multi-controlled single-qubit gate synthesis.
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read the README file
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text()

setup(
    name="mcgate",
    version="0.1.0",
    author="mcgate Team",
    description="Exact and approximate multi-controlled gate synthesis with CNOT cost models",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.24",
        "scipy>=1.10",
        "pydantic>=2.0.0",
        "python-dotenv",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "hypothesis>=6.0.0",
        ],
        "interop": [
            "qiskit>=1.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "mcgate=mcgate.cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    keywords="quantum circuit synthesis multi-controlled toffoli cnot decomposition",
    include_package_data=True,
)
