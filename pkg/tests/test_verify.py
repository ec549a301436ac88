from dataclasses import replace
from fractions import Fraction as F

import pytest

from ectorsion.catalog import ClaimedPoint, get_entry, specialize
from ectorsion.exact_math import parse_expr
from ectorsion.verify import (DependentPoints, SymbolicFailure, TorsionMismatch, VerificationError,
                              verify_ancestry, verify_entry, verify_hadano_identity, verify_independence,
                              verify_mechanisms, verify_membership, verify_torsion)


@pytest.mark.parametrize("eid", ["Z8_BASE", "Z8_R1_3", "Z26_R2_A", "Z26_R2_C", "Z7_REMARK"])
def test_membership_holds(eid):
    r = verify_membership(eid)
    assert r.ok and r.claims


def test_broken_point_is_caught():
    e = get_entry("Z8_R2_A")
    bad = ClaimedPoint("X1", e.claimed_points[0].x + 1, None)
    with pytest.raises(SymbolicFailure) as info:
        verify_membership(replace(e, claimed_points=(bad,) + e.claimed_points[1:]))
    assert not info.value.report.ok
    r = verify_membership(replace(e, claimed_points=(bad,)), strict=False)
    assert [c.passed for c in r.claims][0] is False


def test_wrong_printed_y_is_caught():
    e = get_entry("Z6_HADANO")
    p = e.claimed_points[0]
    if p.y is None:
        pytest.skip("no printed y")
    bad = ClaimedPoint(p.label, p.x, p.y * 2)
    with pytest.raises(SymbolicFailure):
        verify_membership(replace(e, claimed_points=(bad,)))


def test_ancestry():
    assert verify_ancestry("Z26_R2_B").ok
    e = get_entry("Z26_R2_B")
    (pid, m), = e.chain[:1]
    broken = replace(e, chain=((pid, m + 1),) + e.chain[1:])
    with pytest.raises(VerificationError):
        verify_ancestry(broken)


def test_torsion_claims_and_mismatch():
    r = verify_torsion("Z26_R1_4", samples=6, seed=2)
    assert r.ok and len(r.claims[0].data["samples"]) == 6
    with pytest.raises(TorsionMismatch):
        verify_torsion(replace(get_entry("Z8_R1_1"), claimed_torsion=(4,)), samples=3)


def test_special_fibers_are_reported_not_counted():
    # seed 0 draws 12/7 on the Z/8 base family, a fiber with torsion Z/2 x Z/8
    r = verify_torsion("Z8_BASE", samples=20, seed=0)
    assert r.ok
    special = r.claims[0].data["special"]
    assert {"param": "12/7", "group": "Z/2xZ/8"} in special
    assert len(r.claims[0].data["samples"]) == 20


def test_independence_rank_two_families():
    for eid in ("Z8_R2_A", "Z26_R2_C"):
        r = verify_independence(eid)
        c = r.claims[0]
        assert c.passed and c.data["param"] == "2" and c.data["regulator"] > 1e-6


def test_dependent_points_detected():
    e = get_entry("Z26_R2_A")
    s = specialize(e, 2)
    E = s.curve
    P = s.points[0][1]
    with pytest.raises(DependentPoints):
        verify_independence(e, q=2, extra_points=[E.scalar_mul(2, P)])


def test_global_identities():
    assert verify_mechanisms().ok
    assert verify_hadano_identity(samples=5).ok


def test_verify_entry_collects():
    r = verify_entry("Z26_HADANO_R1", samples=4)
    assert r.ok
    kinds = {c.kind for c in r.claims}
    assert {"membership", "ancestry", "torsion", "independence"} <= kinds
    assert r.to_json()["ok"] is True
