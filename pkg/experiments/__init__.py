"""
Experiments package.

Each experiment lives in its own subdirectory with its implementation, a
config.yaml and a README.md.
"""

__version__ = "0.1.0"
