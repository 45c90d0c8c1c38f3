"""``logtk abgroup snf|coker --matrix "2,4;0,6"``."""

from __future__ import annotations

import argparse
import json
from typing import List

from ..algebra.abgroups import FgAbGroup, smith_normal_form
from ..utils.errors import LogtkError
from ..utils.reports import render
from .base import Command


def parse_matrix(text: str) -> List[List[int]]:
    """Rows separated by ``;``, entries by ``,``."""
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            rows.append([int(x) for x in chunk.split(",")])
        except ValueError:
            raise LogtkError(f"matrix row {chunk!r} is not a list of integers") from None
    if not rows:
        raise LogtkError("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise LogtkError("matrix rows have different lengths")
    return rows


class AbGroupCommand(Command):
    name = "abgroup"
    help = "integer Smith normal form and finitely generated abelian groups"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("action", choices=("snf", "coker"),
                            help="snf: U*A*V = D; coker: the group Z^n / rows of A")
        parser.add_argument("--matrix", required=True, help='rows separated by ";", e.g. "2,4;0,6"')

    async def run(self, args: argparse.Namespace) -> int:
        matrix = parse_matrix(args.matrix)
        ncols = len(matrix[0])
        form = smith_normal_form(matrix, ncols)
        group = FgAbGroup.from_presentation(matrix, ngens=ncols) if args.action == "coker" else None
        if self.app.settings.json_output:
            doc = {"D": form.D, "U": form.U, "V": form.V, "diagonal": form.nonzero}
            if group is not None:
                doc["cokernel"] = group.as_dict()
            print(json.dumps(doc))
            return 0
        print(render("snf.txt.j2", form=form, group=group), end="")
        return 0
