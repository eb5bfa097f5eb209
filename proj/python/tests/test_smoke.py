import pytest

import wamsley_lab as wl


def test_order_of_w_small_instances():
    assert wl.order_W(3, 2) == 2**13
    assert wl.order_W(2, 4) == 40500
    assert wl.order_W(-1, 1) == 16


def test_classify_reports_case():
    p = wl.classify(5, 2, 3)
    assert p["case"] == "Case3_AlphaMinus"
    assert (p["m"], p["n"]) == (1, 0)


def test_big_integers_round_trip():
    order = wl.order_W(2, 70)
    assert order > 2**64
    assert order % 3**wl.v_exponent(3, 2, 70) == 0
    assert wl.classify(2, 70, 3)["q"] > 2**64


def test_verify_instance_green():
    r = wl.verify_instance(5, 2, 3)
    assert r["verdict"] == "green"
    assert r["orders"]["Wp"] == 81
    assert r["npInvariants"]["computed"] == [27, 9, 3]
    assert r["oracle"]["toddCoxeterOrder"]["quotient"] == 81


def test_quaternion_instance():
    r = wl.verify_instance(-1, 1, 2)
    assert r["verdict"] == "green"
    assert r["orders"]["Wp"] == 16
    assert r["class"]["computed"] == 3


def test_class_and_derived_length():
    assert wl.nilpotency_class(4, 3, 3)[0] == 4
    assert wl.derived_length_W(3, 2) == 3
    assert wl.derived_length_W(-1, 3) == 2


def test_witt_and_hall():
    assert [wl.witt_rank(2, w) for w in range(1, 6)] == [2, 1, 2, 3, 6]
    assert all(row[1] == row[2] == row[3] for row in wl.witt_table())
    assert all(wl.hall_identity(i, j) for i in range(-3, 4) for j in range(-3, 4))


def test_exports():
    text = wl.fp_text(5, 2, 3, "quotient")
    assert text.splitlines()[1] == "generators: a, b, c"
    assert "generators: a, b, d" in wl.general_fp_text(3, 5, 2)
    assert wl.pc_json(3, 2, 2, "Wp").lstrip().startswith("{")


def test_invalid_instance_raises():
    with pytest.raises(wl.WamsleyError):
        wl.classify(1, 5, 2)
    with pytest.raises(ValueError):
        wl.verify_instance(3, 2, 7)
