"""Smoke tests for the python bindings."""

import json
import os
from fractions import Fraction

import pytest

quatorder = pytest.importorskip("quatorder")

P61_ORDER = json.dumps(
    {
        "p": 61,
        "a": 61,
        "b": 7,
        "basis": [
            ["1", "0", "0", "0"],
            ["1/2", "0", "1/2", "0"],
            ["-1/2", "0", "-1/14", "1/7"],
            ["-1/2", "1/2", "-3/14", "-1/14"],
        ],
    }
)


def test_hilbert_classical_values():
    assert quatorder.hilbert(7) == [1, 3375]
    assert quatorder.hilbert(3) == [1, 0]
    assert quatorder.hilbert(4) == [1, -1728]
    assert quatorder.hilbert(7, 61) == [1, 20]
    assert quatorder.class_number(23) == 3
    assert quatorder.class_number(1056) == 16


def test_hurwitz():
    assert quatorder.hurwitz(3) == Fraction(1, 3)
    assert quatorder.hurwitz(4) == Fraction(1, 2)
    assert quatorder.hurwitz(23) == 3


def test_ramification():
    assert quatorder.ramified_places(61, 7) == ["61", "inf"]
    assert quatorder.hilbert_symbol(-1, -1, 2) == -1
    assert quatorder.hilbert_symbol(-1, -1, "inf") == -1


def test_order_info_and_jinv():
    info = quatorder.order_info(P61_ORDER)
    assert info["maximal"]
    assert info["disc"] == 61 * 61
    assert info["minima"]["d1"] == 7
    assert info["has_sqrt_minus_p"]

    res = quatorder.jinv(P61_ORDER)
    assert res["decided"]
    assert res["outcome"]["kind"] == "root"
    assert res["outcome"]["root"] == 41
    assert res["trace"][0]["d"] == 7


def test_order_file_fixture():
    data_dir = os.environ.get("QUATORDER_TEST_DATA")
    if not data_dir:
        pytest.skip("QUATORDER_TEST_DATA not set")
    with open(os.path.join(data_dir, "orders", "p20063_example.json")) as fh:
        res = quatorder.jinv(fh.read())
    assert res["decided"]
    assert res["outcome"]["kind"] == "pair"
    assert res["outcome"]["minpoly"] == [1, 2748, 6627]


def test_supersingular_scan():
    s = quatorder.supersingular(7)
    assert s["roots_in_fp"] == [6]
    s61 = quatorder.supersingular(61)
    assert s61["roots_in_fp"] == [9, 41, 50]
    assert s61["pairs"] == [(38, 24)]
    assert quatorder.is_supersingular(41, 0, 61)
    assert not quatorder.is_supersingular(3, 0, 61)


def test_match_all_with_oracle():
    res = quatorder.match_all(7, oracle_check=True)
    assert res["type_count"] == 1
    assert res["oracle_match"]
    assert res["mass"] == Fraction(1, 4)


def test_types_and_verifiers():
    ts = quatorder.types(61)
    assert len(ts["types"]) == 4
    assert ts["mass"] == Fraction(5, 2)
    rep = quatorder.verify_theorem1(61)
    assert not rep["counterexample"]
    dom = quatorder.dominance(61, 366)
    assert dom["antisymmetric"]


def test_error_translation():
    with pytest.raises(quatorder.QuatOrderError):
        quatorder.hilbert(5)
    with pytest.raises(quatorder.QuatOrderError):
        quatorder.order_info("{}")
