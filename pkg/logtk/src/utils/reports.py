"""Reports: one per task, rendered as text through jinja2 or as a JSON line."""

from __future__ import annotations

import json
import os
from collections import Counter
from typing import Any, Dict, List

from jinja2 import Environment, FileSystemLoader, StrictUndefined
from pydantic import BaseModel, ConfigDict

from ..algebra.verdict import Status, Verdict

TEMPLATES_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "templates")

_env = Environment(
    loader=FileSystemLoader(TEMPLATES_DIR),
    undefined=StrictUndefined,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


def _tojson(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False)


_env.filters["tojson"] = _tojson


class Report(BaseModel):
    model_config = ConfigDict(frozen=True)

    task: str
    procedure: str
    status: Status
    certificate: Dict[str, Any]
    preconditions: List[str]
    stats: Dict[str, Any]
    ms: float

    @classmethod
    def from_verdict(cls, task: str, verdict: Verdict, ms: float) -> "Report":
        return cls(
            task=task,
            procedure=verdict.procedure,
            status=verdict.status,
            certificate=verdict.certificate,
            preconditions=list(verdict.preconditions_checked),
            stats=engine_stats(verdict.certificate),
            ms=round(ms, 3),
        )

    @property
    def exit_code(self) -> int:
        return self.status.exit_code

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), ensure_ascii=False, sort_keys=False)


def engine_stats(certificate: Dict[str, Any]) -> Dict[str, Any]:
    """Claim counts, standard basis sizes and SNF shapes recorded in a certificate."""
    claims = certificate.get("claims", [])
    kinds = Counter(c.get("kind") for c in claims)
    basis_sizes = [len(c.get("basis", [])) for c in claims if c.get("kind") == "standard_basis"]
    snf = [[len(c.get("matrix", [])), c.get("ncols", 0)] for c in claims if c.get("kind") == "snf"]
    return {"claims": dict(sorted(kinds.items())), "basis_sizes": basis_sizes, "snf_shapes": snf}


def render(template: str, **context: Any) -> str:
    return _env.get_template(template).render(**context)


def render_report(report: Report) -> str:
    return render("report.txt.j2", report=report, summary=report.certificate.get("summary", {}),
                  witness=report.certificate.get("witness"))
