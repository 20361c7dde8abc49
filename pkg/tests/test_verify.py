import pytest

from replalg import quiverrep as qr
from replalg import verify as vf
from replalg.errors import InputError

P = 32003


def a2():
    return qr.Quiver(["1", "2"], [("a", "2", "1")])


def a3():
    return qr.Quiver(["1", "2", "3"], [("a", "2", "1"), ("b", "3", "2")])


def kronecker():
    return qr.Quiver(["1", "2"], [("b", "2", "1"), ("c", "2", "1")])


def test_report_shape():
    report = vf.verify("thm32_all_d", a2(), m=1, p=P)
    assert report["verdict"] == "pass"
    assert set(report) >= {"suite", "params", "verdict", "checks",
                           "counterexamples", "wall_ms"}
    assert report["counterexamples"] == []


def test_unknown_suite():
    with pytest.raises(InputError):
        vf.verify("nope", a2())


def test_thm1_achievable_set_a2():
    report = vf.suite_thm1(a2(), m=1, p=P, samples=40)
    assert report["verdict"] == "pass"
    assert report["params"]["achievable"] == [2, 3, 4]
    assert report["params"]["max_orbit"] == 4


def test_lem31_random_suites():
    for quiver in (a2(), a3()):
        report = vf.suite_lem31_random(quiver, m=1, p=P, samples=12)
        assert report["verdict"] == "pass", report["counterexamples"]


def test_lem45_layer0_suite():
    report = vf.suite_lem45(a2(), m=1, p=P, samples=8)
    assert report["verdict"] == "pass", report["counterexamples"]
    report = vf.suite_lem45(a3(), m=1, p=P, samples=4)
    assert report["verdict"] == "pass", report["counterexamples"]


def test_lem22_a2():
    report = vf.suite_lem22(a2(), m=1, p=P)
    assert report["verdict"] == "pass", report["counterexamples"]


def test_lem48_report_payload():
    report = vf.suite_lem48(kronecker(), m=1, p=P)
    assert report["verdict"] == "pass"
    assert report["params"]["N"] == "1,1|0,0"
    assert report["params"]["Nprime"] == [2, 2]
