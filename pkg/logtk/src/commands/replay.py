"""``logtk replay``: re-verify stored certificates without recomputing them."""

from __future__ import annotations

import argparse
import json
import logging
from typing import Any, Dict, List, Sequence, Tuple

from ..algebra.verdict import Status, replay
from ..db import repo
from ..utils.errors import LogtkError, ReplayMismatch
from .base import Command

log = logging.getLogger(__name__)


def read_certificates(text: str) -> List[Tuple[str, Dict[str, Any]]]:
    """Certificates from a JSON-lines file of reports, bare certificates, or a single JSON document."""
    stripped = text.strip()
    if not stripped:
        return []
    try:
        docs = [json.loads(stripped)]
    except json.JSONDecodeError:
        docs = [json.loads(line) for line in stripped.splitlines() if line.strip()]
    out = []
    for index, doc in enumerate(docs):
        if "certificate" in doc:
            out.append((doc.get("task", f"#{index}"), doc["certificate"]))
        elif "claims" in doc:
            out.append((doc.get("procedure", f"#{index}"), doc))
        else:
            raise LogtkError(f"entry {index} is neither a report nor a certificate")
    return out


def replay_all(entries: List[Tuple[str, Dict[str, Any]]], expected: Sequence[Status] = ()) -> List[Tuple[str, Status, int]]:
    """Replay each certificate; with ``expected``, the replayed status must match it."""
    results = []
    for index, (name, certificate) in enumerate(entries):
        status = replay(certificate)
        if expected and expected[index] is not status:
            raise ReplayMismatch(f"{name}: archived status {expected[index].value}, certificate says {status.value}")
        results.append((name, status, len(certificate.get("claims", []))))
    return results


class ReplayCommand(Command):
    name = "replay"
    help = "re-verify certificates from a report file or an archive"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("certificate", nargs="?", help="JSON report or certificate file (one per line)")
        parser.add_argument("--run", type=int, help="archived run to replay (default: the latest)")

    async def run(self, args: argparse.Namespace) -> int:
        if args.certificate:
            entries = read_certificates(self.app.read_text(args.certificate))
            expected: List[Status] = []
        else:
            db = self.app.db
            if db is None:
                raise LogtkError("replay needs a certificate file or --archive")
            run_id = args.run if args.run is not None else await repo.latest_run(db)
            if run_id is None:
                raise LogtkError("the archive holds no runs")
            reports = await repo.fetch_reports(db, run_id)
            entries = [(r.task, r.certificate) for r in reports]
            expected = [r.status for r in reports]
        results = replay_all(entries, expected)
        code = 0
        for name, status, nclaims in results:
            if self.app.settings.json_output:
                print(json.dumps({"task": name, "status": status.value, "claims": nclaims, "replayed": True}))
            else:
                print(f"{name}: {status.value} ({nclaims} claims replayed)")
            code = max(code, status.exit_code)
        log.info("replayed %d certificate(s)", len(results))
        return code
