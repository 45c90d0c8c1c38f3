"""
logtk command-line entrypoint.

This module defines the `LogtkApp` class, which owns the run settings, the
optional report archive and the registered subcommands.  Each subcommand
lives in `commands/` and is registered in `setup`.

Usage:

    logtk check log-regular manifests/logpoint.toml
    logtk run manifests/node.toml --json
    logtk abgroup snf --matrix "2,4;0,6"
    logtk --replay reports.jsonl

Exit codes: 0 every verdict holds, 1 some verdict fails, 2 indeterminate,
violated precondition or malformed input.
"""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

import aiosqlite

from .commands.base import Command
from .commands.workspace import Workspace, effective_settings
from .db import migrate as db_migrate
from .db import repo
from .utils.config import Settings, load_settings
from .utils.errors import LogtkError
from .utils.logging_config import setup_logging
from .utils.manifest import parse_manifest
from .utils.reports import Report, render_report

log = logging.getLogger(__name__)

FLAG_SETTINGS = ("field", "degree_bound", "hilbert_budget", "class_budget", "order", "json_output", "log_level", "archive")


class LogtkApp:
    """Settings, archive connection and subcommands for one invocation."""

    def __init__(self, base: Settings, flags: Optional[Dict[str, Any]] = None) -> None:
        self.base = base
        self.flags = dict(flags or {})
        self.settings = base.merged(self.flags)
        self.db: Optional[aiosqlite.Connection] = None
        self.commands: Dict[str, Command] = {}

    def apply_flags(self, flags: Dict[str, Any]) -> None:
        self.flags = dict(flags)
        self.settings = self.base.merged(self.flags)
        setup_logging(self.settings.log_level)

    def setup(self) -> None:
        from .commands.abgroup import AbGroupCommand
        from .commands.check import CheckCommand
        from .commands.diff import DiffCommand
        from .commands.normalize import NormalizeCommand
        from .commands.replay import ReplayCommand
        from .commands.run import RunCommand

        for cls in (CheckCommand, RunCommand, DiffCommand, AbGroupCommand, ReplayCommand, NormalizeCommand):
            self.add_command(cls(self))

    def add_command(self, command: Command) -> None:
        self.commands[command.name] = command

    # -- inputs -------------------------------------------------------------

    def read_text(self, path: str) -> str:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()

    def workspace(self, path: str) -> Workspace:
        """Parse a manifest and layer its settings between the environment and the flags."""
        manifest = parse_manifest(self.read_text(path))
        self.settings = effective_settings(self.base, manifest, self.flags)
        setup_logging(self.settings.log_level)
        return Workspace(manifest, self.settings)

    # -- archive ------------------------------------------------------------

    async def open_archive(self) -> Optional[aiosqlite.Connection]:
        if self.db is None and self.settings.archive:
            self.db = await aiosqlite.connect(self.settings.archive)
            await db_migrate.run_migrations(self.db)
        return self.db

    async def close(self) -> None:
        if self.db is not None:
            await self.db.close()
            self.db = None

    # -- output -------------------------------------------------------------

    async def emit(self, reports: Sequence[Report], source: str = "") -> int:
        """Print reports in order, archive them if asked, return the combined exit code."""
        for report in reports:
            if self.settings.json_output:
                print(report.to_json())
            else:
                print(render_report(report))
        db = await self.open_archive()
        if db is not None and reports:
            run_id = await repo.create_run(db, source, self.settings.model_dump())
            await repo.add_reports(db, run_id, list(reports))
            log.info("archived %d report(s) as run %d", len(reports), run_id)
        return max((r.exit_code for r in reports), default=0)

    async def dispatch(self, args: argparse.Namespace) -> int:
        await self.open_archive()
        try:
            return await self.commands[args.command].run(args)
        finally:
            await self.close()


def _global_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    flags.add_argument("--field", help='coefficient field, "Q" or "Fp(5)" (default Q)')
    flags.add_argument("--degree-bound", dest="degree_bound", type=int, help="monoid preimage degree bound (default 8)")
    flags.add_argument("--hilbert-budget", dest="hilbert_budget", type=int, help="saturation test budget (default 10000)")
    flags.add_argument("--class-budget", dest="class_budget", type=int, help="monoid class enumeration budget (default 5000)")
    flags.add_argument("--order", choices=("degrevlex", "deglex"), help="term order (default degrevlex)")
    flags.add_argument("--json", dest="json_output", action="store_true", help="one JSON object per report")
    flags.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR")
    flags.add_argument("--archive", help="SQLite file storing every report of the run")
    return flags


def build_parser(app: LogtkApp) -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="logtk", description="Exact checks for prelog rings and log regularity.",
                                     parents=[common])
    parser.add_argument("--replay", metavar="CERT", help="replay certificates from CERT (same as `logtk replay CERT`)")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name, command in app.commands.items():
        p = sub.add_parser(name, help=command.help, parents=[common])
        command.add_arguments(p)
    return parser


def _flag_values(args: argparse.Namespace) -> Dict[str, Any]:
    return {k: getattr(args, k) for k in FLAG_SETTINGS if hasattr(args, k)}


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point for the `logtk` console script."""
    try:
        base = load_settings()
        setup_logging(base.log_level)
        app = LogtkApp(base)
        app.setup()
        parser = build_parser(app)
        args = parser.parse_args(argv)
        if getattr(args, "replay", None):
            args.command = "replay"
            args.certificate = args.replay
            args.run = None
        if not args.command:
            parser.print_help(sys.stderr)
            return 2
        app.apply_flags(_flag_values(args))
        return asyncio.run(app.dispatch(args))
    except (LogtkError, OSError, ValueError) as exc:
        log.debug("aborted", exc_info=True)
        print(f"logtk: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
