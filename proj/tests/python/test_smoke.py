from fractions import Fraction
import math

import pytest

import negamoran as nm


def test_eval():
    assert nm.eval_word("s", "113(12)", 5) == Fraction(799, 3000)
    assert nm.eval_word("negs", "(30)", 4) == Fraction(-4, 5)
    assert nm.eval_word("P", "13(2)", 4, "1/2,1/4,1/8,1/8") == Fraction(167, 224)
    with pytest.raises(ValueError):
        nm.eval_word("s", "1x", 5)


def test_blocks_round_trip():
    digits = nm.expand_blocks([1, 3], [4], 5, 2)
    assert digits == "1223(2224)"
    assert nm.contract_blocks(digits, 5, 2) == ([1, 3], [4])


def test_cylinder_and_cover():
    assert nm.cylinder("P:2,1", 4) == (Fraction(9, 16), Fraction(5, 8))
    assert nm.cylinder("SnegPu:1,3,4", 5, 2) == (Fraction(12122271, 40625000), Fraction(12122293, 40625000))
    cells = nm.cover(2, 5, 2)
    assert len(cells) == 9
    assert all(a[2] < b[1] for a, b in zip(cells, cells[1:]))
    with pytest.raises(nm.CapExceeded):
        nm.cover(12, 6, 2, cap=1000)


def test_measure():
    r = nm.measure(3, 5, 2)
    assert r["rows"][0]["measure"] == Fraction(1441, 32500)
    assert r["V"] == Fraction(131, 625)


def test_dimension():
    assert nm.solve_moran([0.5, 0.5]) == pytest.approx(1.0, abs=1e-12)
    d = nm.dimension(4, 0, k_max=12)
    assert d["theorem5"] == pytest.approx(0.43957321080331907, abs=1e-10)
    assert max(abs(a - d["theorem5"]) for a in d["alphas"]) < 1e-10


def test_extrema_and_verify():
    e = nm.extrema("SPu_over", 5, 2, "1/3,1/6,1/4,1/8,1/8")
    assert Fraction(e["lo"]) == Fraction(254, 575)
    assert not e["table_matches"]
    ok, text = nm.verify(samples=20)
    assert ok
    assert text == nm.verify(samples=20)[1]
    assert math.isfinite(nm.dimension(5, 2, "1/3,1/6,1/4,1/8,1/8", k_max=12)["liminf"])
