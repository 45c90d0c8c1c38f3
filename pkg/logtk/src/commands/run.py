"""``logtk run MANIFEST``: every declared task, or the selected ones."""

from __future__ import annotations

import argparse

from ..utils.errors import UnresolvedReference
from .base import Command
from .tasks import run_tasks


class RunCommand(Command):
    name = "run"
    help = "run the tasks declared in a manifest"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("manifest", help="manifest file")
        parser.add_argument("--task", dest="tasks", action="append", default=[],
                            help="run only this task (repeatable)")

    async def run(self, args: argparse.Namespace) -> int:
        ws = self.app.workspace(args.manifest)
        declared = ws.manifest.tasks
        for name in args.tasks:
            if name not in declared:
                raise UnresolvedReference(name, "--task")
        selected = [(name, task) for name, task in declared.items() if not args.tasks or name in args.tasks]
        reports = await run_tasks(ws, selected)
        return await self.app.emit(reports, source=args.manifest)
