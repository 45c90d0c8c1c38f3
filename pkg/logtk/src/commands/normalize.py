"""``logtk normalize MANIFEST``: print the manifest in normal form."""

from __future__ import annotations

import argparse

from ..utils.manifest import normalize
from .base import Command


class NormalizeCommand(Command):
    name = "normalize"
    help = "print a manifest in normalized form"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("manifest", help="manifest file")

    async def run(self, args: argparse.Namespace) -> int:
        print(normalize(self.app.read_text(args.manifest)), end="")
        return 0
