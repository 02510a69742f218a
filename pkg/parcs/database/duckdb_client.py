"""
DuckDB client for the append-only run ledger.
"""

import json
from typing import Any, Dict, List, Optional

import duckdb
import pandas as pd

from ..monitoring.logger import get_logger

logger = get_logger(__name__)


class DuckDBClient:
    """Client for the run ledger kept next to every output directory."""

    def __init__(self, db_path: str = ":memory:"):
        """
        Initialize DuckDB client.

        Args:
            db_path: Path to DuckDB database file (defaults to an in-memory ledger)
        """
        self.db_path = db_path
        self.conn: Optional[duckdb.DuckDBPyConnection] = None
        self._ensure_database()

    def _ensure_database(self) -> None:
        """Ensure database and tables exist."""
        self.conn = duckdb.connect(self.db_path)
        self._create_tables()
        logger.debug(f"Connected to DuckDB at {self.db_path}")

    def _create_tables(self) -> None:
        """Create database tables if they don't exist."""
        self.conn.execute("CREATE SEQUENCE IF NOT EXISTS seq_runs_id")

        # One row per run manifest
        self.conn.execute(
            """
            CREATE TABLE IF NOT EXISTS runs (
                id INTEGER PRIMARY KEY DEFAULT nextval('seq_runs_id'),
                run_id VARCHAR NOT NULL,
                subcommand VARCHAR NOT NULL,
                seed BIGINT,
                version VARCHAR,
                wall_clock DOUBLE,
                parameters VARCHAR,
                outputs VARCHAR,
                created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            )
        """
        )

        # One row per phase-grid cell
        self.conn.execute(
            """
            CREATE TABLE IF NOT EXISTS phase_cells (
                run_id VARCHAR NOT NULL,
                C INTEGER NOT NULL,
                row_index INTEGER NOT NULL,
                col_index INTEGER NOT NULL,
                cell_x DOUBLE,
                cell_y DOUBLE,
                m INTEGER,
                s INTEGER,
                success_fraction DOUBLE
            )
        """
        )

        self.conn.execute(
            """
            CREATE INDEX IF NOT EXISTS idx_phase_cells_run
            ON phase_cells(run_id, C)
        """
        )

        logger.debug("Ledger tables created/verified")

    def insert_run(self, manifest: Dict[str, Any]) -> None:
        """
        Append a run manifest to the ledger.

        Args:
            manifest: Manifest dictionary (see parcs.cli.RunManifest.to_dict)
        """
        self.conn.execute(
            """
            INSERT INTO runs (
                run_id, subcommand, seed, version, wall_clock, parameters, outputs
            ) VALUES (?, ?, ?, ?, ?, ?, ?)
        """,
            [
                manifest.get("run_id"),
                manifest.get("subcommand"),
                manifest.get("seed"),
                manifest.get("version"),
                manifest.get("wall_clock"),
                json.dumps(manifest.get("parameters", {}), sort_keys=True, default=str),
                json.dumps(manifest.get("outputs", {}), sort_keys=True),
            ],
        )
        logger.debug(f"Recorded run {manifest.get('run_id')} ({manifest.get('subcommand')})")

    def insert_phase_cells(self, run_id: str, cells: pd.DataFrame) -> int:
        """
        Append phase-grid cells to the ledger.

        Args:
            run_id: Identifier of the owning run
            cells: DataFrame with columns C, row_index, col_index, cell_x, cell_y, m, s,
                success_fraction

        Returns:
            Number of cells inserted
        """
        if cells.empty:
            return 0

        df = cells[
            ["C", "row_index", "col_index", "cell_x", "cell_y", "m", "s", "success_fraction"]
        ].copy()
        df.insert(0, "run_id", run_id)

        self.conn.register("cells_df", df)
        try:
            self.conn.execute(
                """
                INSERT INTO phase_cells (
                    run_id, C, row_index, col_index, cell_x, cell_y, m, s, success_fraction
                ) SELECT * FROM cells_df
                """
            )
        finally:
            self.conn.unregister("cells_df")

        count = len(df)
        logger.debug(f"Inserted {count} phase cells for run {run_id}")
        return count

    def get_runs(self, subcommand: Optional[str] = None, limit: Optional[int] = None) -> pd.DataFrame:
        """
        Get recorded runs.

        Args:
            subcommand: Filter by subcommand (optional)
            limit: Maximum number of records (optional)

        Returns:
            DataFrame with run rows, oldest first
        """
        query = "SELECT * FROM runs WHERE 1=1"
        params: List[Any] = []

        if subcommand:
            query += " AND subcommand = ?"
            params.append(subcommand)

        query += " ORDER BY id ASC"

        if limit:
            query += f" LIMIT {int(limit)}"

        return self.conn.execute(query, params).df()

    def get_phase_cells(self, run_id: str, C: Optional[int] = None) -> pd.DataFrame:
        """
        Get phase-grid cells of a run.

        Args:
            run_id: Run identifier
            C: Filter by sensor count (optional)

        Returns:
            DataFrame ordered by (C, row_index, col_index)
        """
        query = "SELECT * FROM phase_cells WHERE run_id = ?"
        params: List[Any] = [run_id]

        if C is not None:
            query += " AND C = ?"
            params.append(C)

        query += " ORDER BY C, row_index, col_index"

        return self.conn.execute(query, params).df()

    def get_database_stats(self) -> Dict[str, Any]:
        """
        Get ledger statistics.

        Returns:
            Dictionary with ledger statistics
        """
        runs_count = self.conn.execute("SELECT COUNT(*) FROM runs").fetchone()[0]
        cells_count = self.conn.execute("SELECT COUNT(*) FROM phase_cells").fetchone()[0]
        subcommands = self.conn.execute(
            "SELECT subcommand, COUNT(*) FROM runs GROUP BY subcommand ORDER BY subcommand"
        ).fetchall()

        return {
            "database_path": self.db_path,
            "runs_count": runs_count,
            "phase_cells_count": cells_count,
            "runs_by_subcommand": {name: count for name, count in subcommands},
        }

    def close(self) -> None:
        """Close database connection."""
        if self.conn:
            self.conn.close()
            self.conn = None
            logger.debug("Database connection closed")

    def __enter__(self) -> "DuckDBClient":
        return self

    def __exit__(self, *exc: Any) -> None:
        self.close()
