"""
Run ledger module.
"""

from .duckdb_client import DuckDBClient

__all__ = ["DuckDBClient"]
