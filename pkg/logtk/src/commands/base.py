"""Shared shape of a subcommand."""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ..main import LogtkApp


class Command:
    """A subcommand registers its arguments and runs against the application."""

    name: str = ""
    help: str = ""

    def __init__(self, app: "LogtkApp") -> None:
        self.app = app

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    async def run(self, args: argparse.Namespace) -> int:
        raise NotImplementedError
