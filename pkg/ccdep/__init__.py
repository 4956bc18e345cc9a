"""
ccdep (C/C++ Dependency Scanner)

A tool for extracting third-party library dependencies of C/C++
repositories from the manifests of their package management tools,
detecting copied library code, and analyzing reuse across an ecosystem.
"""

__version__ = "0.1.0"
__author__ = "ccdep Development Team"
