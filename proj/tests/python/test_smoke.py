import pytest

import galembed


def test_obstruct_cyclic_by_cyclic():
    row = galembed.obstruct("Phi2(41)", 5)
    assert row["conditions"] == ["(z3^-1*a1, a2; z)"]
    assert row["root_level"] == 3
    assert row["kind"] == "proper"


def test_listing_and_orders():
    ids = galembed.list_ids(3, 5)
    assert len(ids) == 20
    assert all(galembed.group_order(i, 3) == 243 for i in ids)


def test_table_six_matches_gold():
    rows = galembed.check_table(6, 3)
    assert len(rows) == 3
    assert all(r["verdict"] == "exact" for r in rows)


def test_parameters():
    params = galembed.extension_params("Phi2(41)", 7)
    assert params["n"] == [1, 3]
    assert params["m"] == [0, 1]
    assert params["d"][0][1] == 6


def test_symbols():
    assert galembed.normalize("(a1,a2;z)(a2,z3;z)", 3, 2, 3) == "(z3^-1*a1, a2; z)"
    assert galembed.normalize("(a1,a1;z)", 3, 1) == "1"
    same = galembed.equivalent("(a1, z*a3; z)", "(a1,a3;z)(a1,z;z)", 5, 3)
    assert same == {"formal": True, "numeric": True}
    assert galembed.equivalent("(a1,a2;z)", "(a2,a1;z)", 5, 2) == {"formal": False, "numeric": False}


def test_oracle_primes():
    assert galembed.find_suitable_ell(3, 4, 1) == [163]


def test_selfcheck():
    r = galembed.selfcheck("Phi14(42)", 3, 1000)
    assert r["ok"] and r["order"] == 729


def test_errors():
    with pytest.raises(galembed.DataError):
        galembed.obstruct("Phi99", 3)
    with pytest.raises(ValueError):
        galembed.list_ids(9)
