#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
ccdep (C/C++ Dependency Scanner) - Setup Script
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="ccdep",
    version="0.1.0",
    author="ccdep Development Team",
    description="C/C++ Dependency Scanner - Extract third-party library dependencies from package manager manifests",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
        "Topic :: Software Development :: Build Tools",
        "Topic :: Security",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
    install_requires=[
        "click>=8.0.0",
        "pandas>=1.5.0",
        "numpy>=1.21.0",
        "json5>=0.9.0",
        "mmh3>=3.0.0",
        'tomli>=1.1.0; python_version < "3.11"',
    ],
    entry_points={
        "console_scripts": [
            "ccdep=ccdep.cli:main",
        ],
    },
)
