"""Verdicts and replayable certificates.

A certificate is a ledger of atomic claims.  Each claim carries the data it
talks about and the outcome the decision procedure relied on, e.g. "this
vector reduces to zero modulo this stored standard basis".  Replaying a
certificate re-verifies every claim with normal-form reductions and exact
linear algebra only; no Groebner basis is recomputed.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import Rational
from sympy.polys.matrices import DomainMatrix

from ..utils.errors import ReplayMismatch
from . import groebner as gb
from .abgroups import FgAbGroup, SmithForm, functor_dims, verify_smith_form
from .polys import FieldSpec, coerce_rational, format_poly, make_ring, parse_poly

log = logging.getLogger(__name__)


class Status(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INDETERMINATE = "indeterminate"

    @property
    def exit_code(self) -> int:
        return {"holds": 0, "fails": 1, "indeterminate": 2}[self.value]


class Verdict(BaseModel):
    """Outcome of a decision procedure."""

    model_config = ConfigDict(frozen=True)

    procedure: str
    status: Status
    certificate: Dict[str, Any] = Field(default_factory=dict)
    preconditions_checked: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _failures_carry_witness(self) -> "Verdict":
        if self.status is Status.FAILS and not self.certificate.get("witness"):
            raise ValueError(f"{self.procedure}: a failing verdict needs a witness")
        return self

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def summary(self) -> Dict[str, Any]:
        return self.certificate.get("summary", {})

    @property
    def witness(self) -> Any:
        return self.certificate.get("witness")


# ---------------------------------------------------------------------------
# Serialization helpers shared with localalg


def ring_context(variables: Sequence[str], field: FieldSpec, local: bool, order: str = "degrevlex") -> Dict[str, Any]:
    return {"variables": list(variables), "field": field.label, "local": local, "order": order}


def vector_to_strings(v: gb.Vector, rank: int, variables: Sequence[str], field: FieldSpec) -> List[str]:
    ring = make_ring(tuple(variables), field.characteristic)
    comps: List[Dict[tuple, Any]] = [dict() for _ in range(rank)]
    for (pos, exp), c in v.items():
        comps[pos][exp] = c
    return [format_poly(ring.from_dict(d), variables) for d in comps]


def strings_to_vector(entries: Sequence[str], ctx: Dict[str, Any]) -> gb.Vector:
    field = FieldSpec.parse(ctx["field"])
    ring = make_ring(tuple(ctx["variables"]), field.characteristic)
    out: gb.Vector = {}
    for pos, text in enumerate(entries):
        for exp, c in parse_poly(text, ring).items():
            out[(pos, exp)] = c
    return out


def _order_of(ctx: Dict[str, Any]) -> gb.TermOrder:
    return gb.TermOrder(ctx.get("order", "degrevlex"), local=bool(ctx["local"]))


class Certificate:
    """Builder for a verdict's certificate ledger."""

    def __init__(self, procedure: str) -> None:
        self.procedure = procedure
        self.summary: Dict[str, Any] = {}
        self.claims: List[Dict[str, Any]] = []
        self._witness: Any = None
        self.preconditions: List[str] = []

    def note(self, key: str, value: Any) -> "Certificate":
        self.summary[key] = value
        return self

    def precondition(self, text: str) -> "Certificate":
        self.preconditions.append(text)
        return self

    def witness(self, value: Any) -> "Certificate":
        self._witness = value
        return self

    # -- claims ------------------------------------------------------------

    def claim_membership(
        self,
        ctx: Dict[str, Any],
        rank: int,
        basis: Sequence[Sequence[str]],
        vector: Sequence[str],
        expect_zero: bool,
        label: str = "",
        decisive: bool = False,
    ) -> None:
        self._add(
            {"kind": "membership", "label": label, "ring": ctx, "rank": rank, "basis": [list(b) for b in basis],
             "vector": list(vector), "expect": expect_zero},
            decisive,
        )

    def claim_standard_basis(self, ctx: Dict[str, Any], rank: int, basis: Sequence[Sequence[str]], label: str = "") -> None:
        self.claims.append({"kind": "standard_basis", "label": label, "ring": ctx, "rank": rank,
                            "basis": [list(b) for b in basis], "expect": True})

    def claim_snf(self, matrix: Sequence[Sequence[int]], form: SmithForm, ncols: int, label: str = "") -> None:
        self.claims.append({"kind": "snf", "label": label, "matrix": [list(r) for r in matrix], "ncols": ncols,
                            "U": form.U, "D": form.D, "V": form.V, "expect": True})

    def claim_rank(self, field: FieldSpec, rows: Sequence[Sequence[str]], ncols: int, value: int, label: str = "") -> None:
        self.claims.append({"kind": "rank", "label": label, "field": field.label, "rows": [list(r) for r in rows],
                            "ncols": ncols, "expect": value})

    def claim_monomial_dimension(self, leads: Sequence[Sequence[int]], nvars: int, value: int, label: str = "") -> None:
        self.claims.append({"kind": "monomial_dimension", "label": label, "leads": [list(e) for e in leads],
                            "nvars": nvars, "expect": value})

    def claim_functor_dims(self, group: FgAbGroup, field: FieldSpec, dims: Dict[str, int], label: str = "") -> None:
        self.claims.append({"kind": "functor_dims", "label": label, "field": field.label,
                            "presentation": [list(r) for r in group.presentation], "ngens": group.ngens,
                            "expect": dims})

    def claim_compare(self, lhs: int, op: str, rhs: int, label: str = "", decisive: bool = False) -> bool:
        outcome = _compare(lhs, op, rhs)
        self._add({"kind": "compare", "label": label, "lhs": lhs, "op": op, "rhs": rhs, "expect": outcome}, decisive)
        return outcome

    def require(self, ok: bool, label: str) -> bool:
        """Record a condition the status rests on."""
        return self.claim_compare(int(bool(ok)), "==", 1, label=label, decisive=True)

    def _add(self, claim: Dict[str, Any], decisive: bool) -> None:
        if decisive:
            claim["decisive"] = True
        self.claims.append(claim)

    def absorb(self, verdict: Verdict, key: str, decisive: bool = True) -> None:
        """Nest a sub-verdict: its claims become ours, its summary is kept under ``key``.

        With ``decisive=False`` the sub-verdict is context only and its status does not bind ours.
        """
        cert = verdict.certificate
        self.summary[key] = {"status": verdict.status.value, **cert.get("summary", {})}
        if cert.get("witness") is not None:
            self.summary[key]["witness"] = cert["witness"]
        for claim in cert.get("claims", []):
            nested = dict(claim)
            nested["label"] = f"{key}/{claim.get('label', '')}".rstrip("/")
            if not decisive:
                nested.pop("decisive", None)
            self.claims.append(nested)
        for pre in verdict.preconditions_checked:
            if pre not in self.preconditions:
                self.preconditions.append(pre)

    def build(self, status: Status) -> Verdict:
        decided = decide_status(self.claims, [c["expect"] for c in self.claims])
        if decided is not status:
            raise ValueError(f"{self.procedure}: claims decide {decided.value}, not {status.value}")
        cert: Dict[str, Any] = {"procedure": self.procedure, "status": status.value, "summary": self.summary,
                                "claims": self.claims}
        if self._witness is not None:
            cert["witness"] = self._witness
        return Verdict(procedure=self.procedure, status=status, certificate=cert,
                       preconditions_checked=list(self.preconditions))


def _constant(text: str, dom: Any) -> Any:
    value = Rational(text)
    return coerce_rational(int(value.p), int(value.q), dom)


def _compare(lhs: int, op: str, rhs: int) -> bool:
    if op == "==":
        return lhs == rhs
    if op == "!=":
        return lhs != rhs
    if op == "<=":
        return lhs <= rhs
    if op == ">=":
        return lhs >= rhs
    raise ValueError(f"unknown comparison {op!r}")


# ---------------------------------------------------------------------------
# Replay


def _replay_claim(claim: Dict[str, Any]) -> Any:
    kind = claim["kind"]
    if kind == "membership":
        ctx = claim["ring"]
        basis = [strings_to_vector(b, ctx) for b in claim["basis"]]
        vec = strings_to_vector(claim["vector"], ctx)
        return not gb.normal_form(vec, basis, _order_of(ctx))
    if kind == "standard_basis":
        ctx = claim["ring"]
        basis = [strings_to_vector(b, ctx) for b in claim["basis"]]
        return gb.is_standard_basis([b for b in basis if b], _order_of(ctx))
    if kind == "snf":
        form = SmithForm(U=claim["U"], D=claim["D"], V=claim["V"], V_inv=[])
        return verify_smith_form(claim["matrix"], form, ncols=claim["ncols"])
    if kind == "rank":
        field = FieldSpec.parse(claim["field"])
        rows = claim["rows"]
        if not rows or not claim["ncols"]:
            return 0
        dom = field.domain
        mat = [[_constant(x, dom) for x in row] for row in rows]
        return DomainMatrix(mat, (len(rows), claim["ncols"]), dom).rank()
    if kind == "monomial_dimension":
        return gb.monomial_ideal_dimension([tuple(e) for e in claim["leads"]], claim["nvars"])
    if kind == "functor_dims":
        group = FgAbGroup.from_presentation(claim["presentation"], ngens=claim["ngens"])
        return functor_dims(group, FieldSpec.parse(claim["field"])).as_dict()
    if kind == "compare":
        return _compare(claim["lhs"], claim["op"], claim["rhs"])
    raise ReplayMismatch(f"unknown claim kind {kind!r}")


def decide_status(claims: Sequence[Dict[str, Any]], outcomes: Sequence[Any]) -> Status:
    """Holds iff every decisive claim came out true; indeterminate when nothing was decided."""
    decisive = [outcome for claim, outcome in zip(claims, outcomes) if claim.get("decisive")]
    if not decisive:
        return Status.INDETERMINATE
    return Status.HOLDS if all(outcome is True for outcome in decisive) else Status.FAILS


def replay(certificate: Dict[str, Any]) -> Status:
    """Re-verify every claim and re-derive the status from the decisive ones.

    Raises ``ReplayMismatch`` when a claim does not re-verify or the recorded
    status is not the one the claims decide.
    """
    claims = certificate.get("claims", [])
    outcomes = []
    for index, claim in enumerate(claims):
        got = _replay_claim(claim)
        if got != claim["expect"]:
            label = claim.get("label") or claim["kind"]
            raise ReplayMismatch(f"claim {index} ({label}): expected {claim['expect']!r}, replay gave {got!r}")
        outcomes.append(got)
    status = Status(certificate["status"])
    decided = decide_status(claims, outcomes)
    if decided is not status:
        raise ReplayMismatch(f"certificate says {status.value} but its claims decide {decided.value}")
    if status is Status.FAILS and not certificate.get("witness"):
        raise ReplayMismatch("failing certificate without witness")
    log.info("replayed %d claims of %s: %s", len(claims), certificate.get("procedure"), status.value)
    return status


def constant_rows(rows: Sequence[Sequence[Any]], field: FieldSpec) -> List[List[str]]:
    """Render a matrix of field elements for a rank claim."""
    dom = field.domain
    return [[str(dom.to_sympy(x)) for x in row] for row in rows]
