"""Archive queries.

All functions take an open ``aiosqlite.Connection``; JSON columns hold the
certificate, precondition list and engine statistics of each report.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional

import aiosqlite

from ..utils.reports import Report


# ---------------------------------------------------------------------------
# Runs

async def create_run(db: aiosqlite.Connection, source: str, settings: Dict[str, Any]) -> int:
    cur = await db.execute(
        "INSERT INTO runs (source, settings) VALUES (?, ?)",
        (source, json.dumps(settings, sort_keys=True)),
    )
    await db.commit()
    return cur.lastrowid


async def latest_run(db: aiosqlite.Connection) -> Optional[int]:
    cur = await db.execute("SELECT MAX(id) FROM runs")
    row = await cur.fetchone()
    await cur.close()
    return row[0] if row else None


async def list_runs(db: aiosqlite.Connection) -> List[Dict[str, Any]]:
    cur = await db.execute(
        "SELECT r.id, r.source, r.created_at, COUNT(p.id) FROM runs r "
        "LEFT JOIN reports p ON p.run_id = r.id GROUP BY r.id ORDER BY r.id ASC"
    )
    rows = await cur.fetchall()
    await cur.close()
    return [{"id": r[0], "source": r[1], "created_at": r[2], "reports": r[3]} for r in rows]


# ---------------------------------------------------------------------------
# Reports

async def add_reports(db: aiosqlite.Connection, run_id: int, reports: List[Report]) -> None:
    await db.executemany(
        "INSERT INTO reports (run_id, position, task, procedure, status, certificate, preconditions, stats, ms) "
        "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)",
        [
            (
                run_id,
                position,
                r.task,
                r.procedure,
                r.status.value,
                json.dumps(r.certificate),
                json.dumps(r.preconditions),
                json.dumps(r.stats),
                r.ms,
            )
            for position, r in enumerate(reports)
        ],
    )
    await db.commit()


async def fetch_reports(db: aiosqlite.Connection, run_id: int) -> List[Report]:
    cur = await db.execute(
        "SELECT task, procedure, status, certificate, preconditions, stats, ms FROM reports "
        "WHERE run_id = ? ORDER BY position ASC",
        (run_id,),
    )
    rows = await cur.fetchall()
    await cur.close()
    return [
        Report(
            task=row[0],
            procedure=row[1],
            status=row[2],
            certificate=json.loads(row[3]),
            preconditions=json.loads(row[4]),
            stats=json.loads(row[5]),
            ms=row[6],
        )
        for row in rows
    ]
