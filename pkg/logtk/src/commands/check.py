"""``logtk check PROCEDURE MANIFEST``: run one procedure against manifest objects."""

from __future__ import annotations

import argparse
import logging

from .base import Command
from .tasks import PROCEDURES, run_tasks, synthesize

log = logging.getLogger(__name__)


class CheckCommand(Command):
    name = "check"
    help = "run a single procedure on the objects of a manifest"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("procedure", choices=sorted(PROCEDURES), metavar="PROCEDURE",
                            help="one of: " + ", ".join(sorted(PROCEDURES)))
        parser.add_argument("manifest", help="manifest file")
        parser.add_argument("--target", default="", help="run on this section only (default: every candidate)")
        parser.add_argument("--ideal", action="append", default=[], help="ideal generator (repeatable)")
        parser.add_argument("--element", dest="elements", action="append", default=[],
                            help="sequence element for koszul (repeatable)")
        parser.add_argument("--via", choices=("direct", "presentation"), help="log-ci route")
        parser.add_argument("--presentation", help="prelog map presenting the ring (log-ci)")
        parser.add_argument("--prelog", help="prelog ring for procedures that also take a map")
        parser.add_argument("--maps", nargs=2, metavar=("F", "G"), help="two prelog maps for sequence checks")

    async def run(self, args: argparse.Namespace) -> int:
        ws = self.app.workspace(args.manifest)
        tasks = synthesize(
            ws,
            args.procedure,
            args.target,
            ideal=args.ideal,
            elements=args.elements,
            via=args.via,
            presentation=args.presentation,
            prelog=args.prelog,
            maps=list(args.maps or []),
        )
        log.debug("check %s: %d task(s)", args.procedure, len(tasks))
        reports = await run_tasks(ws, tasks)
        return await self.app.emit(reports, source=args.manifest)
