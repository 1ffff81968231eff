import os

import pytest

import tofh

FIXTURES = os.environ.get("TOFH_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "..", "tests", "fixtures"))


def test_hadamard_pushing_identity():
    assert tofh.circuits_equal("H2 CCX12", "K01 K12 CCZ K12 K01 H2")
    assert not tofh.circuits_equal("", "X0")
    nf = tofh.normalize_h("H2 CCX12")
    assert nf.h_exp == 1
    assert tofh.circuits_equal(tofh.format_word(nf.body) + " H2", "H2 CCX12")


def test_matrix_entries():
    m = tofh.matrix("X0")
    assert len(m) == 8
    assert m[0][4] == "1" and m[0][0] == "0"
    assert tofh.sde("H2") == 1
    assert tofh.sde("K12") == 2
    assert tofh.sde("CCX01") == 0


def test_counts_and_roots():
    c = tofh.count_all(8)
    assert c["partial_total"] == 1414
    assert c["total"] == c["linear_total"] + c["partial_total"]
    assert all(e == f for e, f in c["rows"].values())
    assert tofh.root_counts() == (240, 120)


def test_tables_sound():
    n, bad = tofh.verify_table("R0")
    assert n == 46 and bad == []


def test_proofs():
    assert tofh.check_proof(os.path.join(FIXTURES, "cx01_x1.proof"))["accepted"]
    rep = tofh.check_proof(os.path.join(FIXTURES, "cyclic.proof"))
    assert not rep["accepted"] and not rep["acyclic"]


def test_derive():
    steps = tofh.derive("CX01 X1", "X1 CX01", "R_D")
    assert steps is not None and len(steps) <= 12


def test_reindex():
    w = tofh.reindex([7, 6, 0, 1, 2, 3, 4, 5], "TLK[2,3,4,5] TLK[3,5,6,7]")
    assert w == ["TLK[0,1,2,3]", "TLK[1,3,4,5]"]
    v = tofh.conjugation_witness([1, 0, 2, 3, 4, 5, 6, 7], "NEG[0]")
    assert all(t.startswith("TLX") for t in v)
    with pytest.raises(ValueError):
        tofh.reindex([0, 0, 1, 2, 3, 4, 5, 6], "NEG[0]")
