import json
import os
import pathlib

import pytest

import holodist as hd

FIXTURES = pathlib.Path(os.environ.get("HOLODIST_FIXTURES", pathlib.Path(__file__).parents[2] / "fixtures"))


def test_germ_operators():
    g = hd.Germ("u(-1/2,1)")
    assert g.d_t() == hd.Germ("t^-1*u(-1/2,0) - 1/2*t^-1*u(-1/2,1)")
    assert str(g.d_t()) == "t^-1*u(-1/2,0) - 1/2*t^-1*u(-1/2,1)"
    assert g.conj().conj() == g
    assert (g - g).is_zero()
    assert g.scale("2") == g + g
    assert hd.Germ("u(-1,0) + d(0,0)").localize() == hd.Germ("u(-1,0)")


def test_delta_bridge():
    assert hd.Germ("u(-1,1)").d_tbar().d_t() == hd.Germ("-tau*d(0,0)")


def test_parse_errors_raise():
    with pytest.raises(hd.KernelError):
        hd.Germ("u(-1/2,")


def test_L_residue_and_orders():
    assert hd.Germ("3*u(-1/2,0)").L("-1/2") == "3*tau"
    assert hd.Germ("u(-1/2,0)").orders() == ("-1/2", "-1/2")
    assert hd.residue_vs_L(hd.Germ("u(-1/3,0)"), "-1/3") == ("tau", "-tau")


def test_mellin_ledger():
    assert hd.Germ("u(-1/2,1)").mellin() == [{"s0": "-1/2", "order": 2, "coefficients": ["tau", "0"]}]


def test_nilalg():
    n = [["0", "1"], ["0", "0"]]
    assert hd.jordan_type(n) == [2]
    assert hd.monodromy_gr_dims(n) == {-1: 1, 0: 0, 1: 1}
    assert hd.stabilization_threshold(n) == 1
    with pytest.raises(hd.KernelError):
        hd.jordan_type([["1"]])


def test_modules():
    good = json.loads((FIXTURES / "modules" / "jordan2.json").read_text())
    assert hd.module_check(good) == []
    assert hd.module_check(hd.module_dual(good)) == []
    assert hd.module_check((FIXTURES / "modules" / "broken.json").read_text()) == [
        "var * can != N_{-1}",
        "can * var != N_0",
    ]


def test_pairings():
    pairing = json.loads((FIXTURES / "pairings" / "jordan2_log.json").read_text())
    psi = hd.psi_S(pairing, "-1/2")
    assert psi == [["0", "-tau"], ["-tau", "0"]]
    assert hd.psi_S_via_Malphap(pairing, "-1/2", 2) == psi
    assert [ok for _, ok, _ in hd.check_propS(pairing)] == [True] * 4
    cor = hd.check_cor(pairing)
    assert cor["full_nondegenerate"] and cor["primitive_nondegenerate"]


def test_barlet():
    assert hd.barlet_ledger("x*y", "a=0,0") == [{"s0": "-1", "order": 2, "coefficients": ["tau^2", "0"]}]
    assert hd.barlet_ledger("x") == [{"s0": "-1", "order": 1, "coefficients": ["-tau"]}]
    assert hd.predicted_order([["0", "1"], ["0", "0"]]) == 2
    t = hd.detect_tangling([["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]])
    assert t == {"tangled": True, "ker_v_dim": 1, "coker_c_dim": 1, "induced_rank": 0}


def test_selftest_quick():
    res = hd.selftest(seed=7, quick=True, filter="germ.")
    assert len(res) == 7 and all(r["ok"] for r in res)
