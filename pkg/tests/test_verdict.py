import copy

import pytest

from logtk.src.algebra.localalg import PresentedRing
from logtk.src.algebra.monoids import FinMonoid
from logtk.src.algebra.polys import FieldSpec
from logtk.src.algebra.prelog import PrelogRing
from logtk.src.algebra.regcheck import is_log_regular, kato_criterion
from logtk.src.algebra.verdict import Certificate, Status, Verdict, replay
from logtk.src.utils.errors import ReplayMismatch


def node():
    R = PresentedRing.build(["x", "y"], FieldSpec(), ["x*y"])
    return PrelogRing.from_names(R, FinMonoid.free(["a", "b"]), {"a": "x", "b": "y"})


def test_failing_verdict_needs_witness():
    with pytest.raises(ValueError):
        Verdict(procedure="p", status=Status.FAILS)


def test_exit_codes():
    assert [s.exit_code for s in Status] == [0, 1, 2]


def test_replay_of_compare_claims():
    cert = Certificate("demo")
    assert cert.claim_compare(3, "==", 3, label="same", decisive=True)
    assert not cert.claim_compare(1, ">=", 2)
    v = cert.build(Status.HOLDS)
    assert replay(v.certificate) is Status.HOLDS


def test_status_follows_decisive_claims():
    assert Certificate("none").build(Status.INDETERMINATE).status is Status.INDETERMINATE
    cert = Certificate("demo")
    cert.require(True, "first")
    cert.require(False, "second")
    with pytest.raises(ValueError):
        cert.build(Status.HOLDS)
    v = cert.witness({"reason": "second"}).build(Status.FAILS)
    assert replay(v.certificate) is Status.FAILS


def test_context_claims_do_not_decide():
    inner = Certificate("inner")
    inner.require(False, "inner condition")
    outer = Certificate("outer")
    outer.absorb(inner.witness({"reason": "x"}).build(Status.FAILS), "sub", decisive=False)
    outer.require(True, "outer condition")
    assert replay(outer.build(Status.HOLDS).certificate) is Status.HOLDS


def test_replay_detects_tampered_dimension():
    v = kato_criterion(node())
    tampered = copy.deepcopy(v.certificate)
    for claim in tampered["claims"]:
        if claim["kind"] == "compare":
            claim["lhs"] += 1
    with pytest.raises(ReplayMismatch):
        replay(tampered)


def test_replay_rejects_flipped_status():
    v = is_log_regular(node())
    assert v.fails
    forged = copy.deepcopy(v.certificate)
    forged["status"] = "holds"
    forged.pop("witness")
    with pytest.raises(ReplayMismatch):
        replay(forged)


def test_replay_rejects_rewritten_decisive_claims():
    forged = copy.deepcopy(is_log_regular(node()).certificate)
    forged["status"] = "holds"
    forged.pop("witness")
    for claim in forged["claims"]:
        if not claim.get("decisive"):
            continue
        if claim["kind"] == "compare":
            claim["lhs"], claim["op"] = claim["rhs"], "=="
        claim["expect"] = True
    with pytest.raises(ReplayMismatch, match="tor1 cycle"):
        replay(forged)


@pytest.mark.parametrize("status", ["fails", "indeterminate"])
def test_replay_rejects_downgraded_success(status):
    forged = copy.deepcopy(kato_criterion(PrelogRing.from_names(
        PresentedRing.build(["s"], FieldSpec()), FinMonoid.free(["a"]), {"a": "s"})).certificate)
    forged["status"] = status
    forged["witness"] = {"reason": "forged"}
    with pytest.raises(ReplayMismatch):
        replay(forged)


def test_replay_rejects_failure_without_witness():
    cert = copy.deepcopy(is_log_regular(node()).certificate)
    del cert["witness"]
    with pytest.raises(ReplayMismatch):
        replay(cert)


def test_absorb_prefixes_labels():
    inner = Certificate("inner")
    inner.claim_compare(1, "<=", 2, label="bound", decisive=True)
    inner.precondition("something checked")
    outer = Certificate("outer")
    outer.absorb(inner.build(Status.HOLDS), "sub")
    assert outer.claims[0]["label"] == "sub/bound"
    assert outer.summary["sub"]["status"] == "holds"
    assert outer.preconditions == ["something checked"]
