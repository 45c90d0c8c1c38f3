import aiosqlite
import pytest

from logtk.src.algebra.verdict import Certificate, Status
from logtk.src.commands.replay import replay_all
from logtk.src.db import repo
from logtk.src.db.migrate import run_migrations
from logtk.src.utils.errors import ReplayMismatch
from logtk.src.utils.reports import Report


def make_report(task: str, status: Status = Status.HOLDS) -> Report:
    cert = Certificate("demo")
    cert.claim_compare(2, "<=", 1 if status is Status.FAILS else 3, label="bound", decisive=True)
    if status is Status.FAILS:
        cert.witness({"reason": "demo"})
    return Report.from_verdict(task, cert.build(status), 1.25)


@pytest.mark.asyncio
async def test_run_create_and_fetch():
    db = await aiosqlite.connect(":memory:")
    await run_migrations(db)
    assert await repo.latest_run(db) is None
    run_id = await repo.create_run(db, "manifests/node.toml", {"field": "Q"})
    await repo.add_reports(db, run_id, [make_report("b"), make_report("a", Status.FAILS)])
    assert await repo.latest_run(db) == run_id
    reports = await repo.fetch_reports(db, run_id)
    assert [r.task for r in reports] == ["b", "a"]
    assert reports[1].status is Status.FAILS
    assert reports[0] == make_report("b")
    runs = await repo.list_runs(db)
    assert runs[0]["source"] == "manifests/node.toml"
    assert runs[0]["reports"] == 2
    await db.close()


@pytest.mark.asyncio
async def test_migrations_are_idempotent():
    db = await aiosqlite.connect(":memory:")
    await run_migrations(db)
    await run_migrations(db)
    run_id = await repo.create_run(db, "-", {})
    assert await repo.fetch_reports(db, run_id) == []
    await db.close()


@pytest.mark.asyncio
async def test_archived_status_must_match_certificate():
    db = await aiosqlite.connect(":memory:")
    await run_migrations(db)
    run_id = await repo.create_run(db, "-", {})
    await repo.add_reports(db, run_id, [make_report("x")])
    reports = await repo.fetch_reports(db, run_id)
    entries = [(r.task, r.certificate) for r in reports]
    assert replay_all(entries, [r.status for r in reports]) == [("x", Status.HOLDS, 1)]
    with pytest.raises(ReplayMismatch):
        replay_all(entries, [Status.FAILS])
    await db.close()
