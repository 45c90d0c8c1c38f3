"""Procedure registry and the concurrent task runner.

Every procedure a manifest task may name is registered here together with
the task fields it needs.  ``dry_run`` checks a whole manifest against the
registry before anything is computed.
"""

from __future__ import annotations

import asyncio
import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from ..algebra import logdiff, monoids, prelog, regcheck
from ..algebra.localalg import is_regular_local, koszul_h1_vanishes
from ..algebra.verdict import Verdict
from ..utils.errors import ManifestError
from ..utils.manifest import Manifest, TaskSection
from ..utils.reports import Report
from .workspace import Workspace

log = logging.getLogger(__name__)

Runner = Callable[[Workspace, TaskSection], Verdict]


@dataclass(frozen=True)
class Procedure:
    name: str
    needs: Tuple[str, ...]
    run: Runner
    help: str
    map_kind: str = ""
    map_count: int = 0


def _ideal(ws: Workspace, task: TaskSection):
    P = ws.prelog(task.prelog)
    return [P.ring.parse(text) for text in task.ideal]


def _log_regular(ws: Workspace, task: TaskSection) -> Verdict:
    s = ws.settings
    return regcheck.is_log_regular(ws.prelog(task.prelog), s.degree_bound, s.class_budget)


def _log_regular_ideal(ws: Workspace, task: TaskSection) -> Verdict:
    s = ws.settings
    return regcheck.is_log_regular_ideal(ws.prelog(task.prelog), _ideal(ws, task), s.degree_bound, s.class_budget)


def _log_ci(ws: Workspace, task: TaskSection) -> Verdict:
    s = ws.settings
    presentation = ws.prelog_map(task.presentation) if task.presentation else None
    return regcheck.is_log_complete_intersection(
        ws.prelog(task.prelog), task.via or "direct", presentation, s.degree_bound, s.class_budget
    )


def _crosscheck(ws: Workspace, task: TaskSection) -> Verdict:
    s = ws.settings
    return regcheck.regularity_smoothness_crosscheck(
        ws.prelog(task.prelog), s.hilbert_budget, s.degree_bound, s.class_budget
    )


def _tor2(ws: Workspace, task: TaskSection) -> Verdict:
    s = ws.settings
    J = _ideal(ws, task) if task.ideal else None
    return regcheck.tor2_vanishes_after_tor1(ws.prelog(task.prelog), J, s.degree_bound, s.class_budget)


def _koszul(ws: Workspace, task: TaskSection) -> Verdict:
    R = ws.ring(task.ring)
    return koszul_h1_vanishes([R.parse(text) for text in task.elements], R)


def _pair(ws: Workspace, task: TaskSection):
    return ws.prelog_map(task.maps[0]), ws.prelog_map(task.maps[1])


def _conormal(ws: Workspace, task: TaskSection) -> Verdict:
    f, s = _pair(ws, task)
    return logdiff.check_conormal_sequence(f, logdiff.surjection_data(s))


PROCEDURES: Dict[str, Procedure] = {
    p.name: p
    for p in (
        Procedure("validate", ("prelog",), lambda ws, t: prelog.validate(ws.prelog(t.prelog)),
                  "structure map is multiplicative and lands in the maximal ideal"),
        Procedure("hom", ("map",), lambda ws, t: prelog.validate_hom(ws.prelog_map(t.map)),
                  "a prelog map commutes with the structure maps", map_kind="prelog"),
        Procedure("integral", ("monoid",), lambda ws, t: monoids.is_integral(ws.monoid(t.monoid)),
                  "monoid embeds in its group completion"),
        Procedure("saturated", ("monoid",),
                  lambda ws, t: monoids.is_saturated(ws.monoid(t.monoid), ws.settings.hilbert_budget),
                  "monoid is saturated in its group completion"),
        Procedure("regular-local", ("ring",), lambda ws, t: is_regular_local(ws.ring(t.ring)),
                  "local ring is regular"),
        Procedure("koszul", ("ring", "elements"), _koszul,
                  "elements form a regular sequence (first Koszul homology vanishes)"),
        Procedure("log-regular", ("prelog",), _log_regular, "prelog ring is log regular"),
        Procedure("log-regular-ideal", ("prelog", "ideal"), _log_regular_ideal,
                  "ideal is log regular"),
        Procedure("kato", ("prelog",), lambda ws, t: regcheck.kato_criterion(ws.prelog(t.prelog)),
                  "dimension criterion for log regularity"),
        Procedure("log-ci", ("prelog",), _log_ci, "prelog ring is a log complete intersection"),
        Procedure("log-smooth", ("map",),
                  lambda ws, t: regcheck.is_log_smooth_sufficient(ws.monoid_map(t.map), ws.field),
                  "sufficient group condition for log smoothness of a chart"),
        Procedure("smoothness-equivalence", ("map", "prelog"),
                  lambda ws, t: regcheck.smoothness_equivalence(ws.monoid_map(t.map), ws.prelog(t.prelog)),
                  "log formal smoothness over a monoid algebra"),
        Procedure("crosscheck", ("prelog",), _crosscheck,
                  "log regularity agrees with log smoothness over the ground field"),
        Procedure("tor2", ("prelog",), _tor2, "second Tor vanishes once the first does"),
        Procedure("omega-free", ("prelog",),
                  lambda ws, t: regcheck.omega_freeness_spot_check(ws.prelog(t.prelog), ws.settings.hilbert_budget),
                  "log differentials of a log regular ring are free"),
        Procedure("first-sequence", ("maps",),
                  lambda ws, t: logdiff.check_first_sequence(*_pair(ws, t)),
                  "first fundamental sequence of log differentials is exact", map_kind="prelog", map_count=2),
        Procedure("conormal-sequence", ("maps",), _conormal,
                  "conormal sequence of a surjection is exact", map_kind="prelog", map_count=2),
        Procedure("base-change", ("maps",),
                  lambda ws, t: logdiff.base_change_check(*_pair(ws, t)),
                  "log differentials commute with pushout", map_kind="prelog", map_count=2),
        Procedure("fundamental", ("map",),
                  lambda ws, t: regcheck.fundamental_sequence_low_degree(ws.prelog_map(t.map)),
                  "low-degree terms of the fundamental sequence", map_kind="prelog"),
    )
}


def dry_run(manifest: Manifest, tasks: Sequence[Tuple[str, TaskSection]]) -> None:
    """Reject unknown procedures, missing arguments and maps of the wrong kind."""
    for name, task in tasks:
        where = f"task.{name}"
        proc = PROCEDURES.get(task.procedure)
        if proc is None:
            raise ManifestError(f"{where}: unknown procedure {task.procedure!r}")
        for need in proc.needs:
            if not getattr(task, need):
                raise ManifestError(f"{where}: procedure {proc.name!r} needs {need!r}")
        if proc.map_count and len(task.maps) != proc.map_count:
            raise ManifestError(f"{where}: procedure {proc.name!r} needs {proc.map_count} maps, got {len(task.maps)}")
        if proc.map_kind:
            for m in ([task.map] if task.map else []) + list(task.maps):
                if manifest.map_kind(m) != proc.map_kind:
                    raise ManifestError(f"{where}: map {m!r} must connect {proc.map_kind} objects")
        if task.presentation and manifest.map_kind(task.presentation) != "prelog":
            raise ManifestError(f"{where}: presentation {task.presentation!r} must be a prelog map")


def synthesize(ws: Workspace, procedure: str, target: str = "", **fields) -> List[Tuple[str, TaskSection]]:
    """Tasks for ``logtk check``: one per candidate object, or just ``target``."""
    proc = PROCEDURES.get(procedure)
    if proc is None:
        raise ManifestError(f"unknown procedure {procedure!r}; expected one of {', '.join(PROCEDURES)}")
    fields = {k: v for k, v in fields.items() if v}
    primary = next((n for n in proc.needs if n in ("prelog", "ring", "monoid", "map")), None)
    if primary is None or primary in fields:
        return [(procedure, TaskSection(procedure=procedure, **fields))]
    candidates = [target] if target else ws.names(primary)
    if primary == "map" and not target and proc.map_kind:
        candidates = [m for m in candidates if ws.manifest.map_kind(m) == proc.map_kind]
    if not candidates:
        raise ManifestError(f"procedure {procedure!r} needs a {primary} section and the manifest has none")
    return [(f"{procedure}:{c}", TaskSection(procedure=procedure, **{primary: c}, **fields)) for c in candidates]


def _execute(ws: Workspace, name: str, task: TaskSection) -> Report:
    start = time.perf_counter()
    verdict = PROCEDURES[task.procedure].run(ws, task)
    ms = (time.perf_counter() - start) * 1000.0
    log.info("task %s: %s in %.1f ms", name, verdict.status.value, ms)
    return Report.from_verdict(name, verdict, ms)


async def run_tasks(ws: Workspace, tasks: Sequence[Tuple[str, TaskSection]]) -> List[Report]:
    """Run tasks concurrently; reports come back in declaration order."""
    dry_run(ws.manifest, tasks)
    jobs = [asyncio.to_thread(_execute, ws, name, task) for name, task in tasks]
    return list(await asyncio.gather(*jobs))
