"""``logtk diff MANIFEST --map NAME``: minimal presentations of differential modules."""

from __future__ import annotations

import argparse
import json

from ..algebra import logdiff
from ..utils.reports import render
from .base import Command

KINDS = ("log", "relative", "kahler", "conormal")


class DiffCommand(Command):
    name = "diff"
    help = "print the minimal presentation of a module of differentials"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("manifest", help="manifest file")
        parser.add_argument("--map", dest="map_name", required=True, help="prelog map f: P -> Q")
        parser.add_argument("--kind", choices=KINDS, default="log",
                            help="log differentials (default), plain relative differentials, "
                                 "differentials of the target ring, or the conormal module of a surjection")

    async def run(self, args: argparse.Namespace) -> int:
        ws = self.app.workspace(args.manifest)
        f = ws.prelog_map(args.map_name)
        if args.kind == "log":
            module = logdiff.log_differentials(f)
        elif args.kind == "relative":
            module = logdiff.relative_differentials(f)
        elif args.kind == "kahler":
            module = logdiff.kahler_differentials(f.target.ring)
        else:
            module = logdiff.conormal_module(logdiff.surjection_data(f))
        minimal = module.minimal_presentation()
        if self.app.settings.json_output:
            print(json.dumps(minimal.as_dict(), ensure_ascii=False))
            return 0
        extra = {}
        if minimal.ring.ideal_in_maximal():
            hom, mu = logdiff.derivation_pairing_dims(minimal)
            extra = {"dim Hom(-, k)": hom, "minimal generators": mu, "free": minimal.is_free()}
        title = f"{args.kind} differentials of map.{args.map_name}" if args.kind != "conormal" else f"conormal module of map.{args.map_name}"
        print(render("module.txt.j2", title=title, module=minimal, extra=extra), end="")
        return 0
