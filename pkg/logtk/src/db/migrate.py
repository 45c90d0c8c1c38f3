"""Schema setup for the report archive.

``run_migrations`` reads the statements in ``schema.sql`` and applies them.
Every statement is idempotent, so it is safe to call on each start.
"""

from __future__ import annotations

import importlib.resources
import logging

import aiosqlite

log = logging.getLogger(__name__)


async def run_migrations(db: aiosqlite.Connection) -> None:
    """Enable foreign keys and apply ``schema.sql``."""
    await db.execute("PRAGMA foreign_keys = ON;")
    schema_sql = importlib.resources.files(__package__).joinpath("schema.sql").read_text(encoding="utf-8")
    log.debug("applying archive schema")
    await db.executescript(schema_sql)
    await db.commit()
