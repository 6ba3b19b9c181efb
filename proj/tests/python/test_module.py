import pytest

da = pytest.importorskip("dirac_atlas")


def test_root_systems():
    assert len(da.root_system("G2")["positive_roots"]) == 6
    assert [da.weyl_group_order(t) for t in ("A1", "A2", "B2")] == [2, 6, 8]


def test_dimensions_agree():
    for hw in ["0,0", "1,0", "1,1", "2,1", "3,3"]:
        assert da.weyl_dimension("A2", hw) == str(da.character_dimension("A2", hw))
    assert da.character_dimension("A2", "1,1") == 8


def test_induction():
    r = da.dirac_induct("sl2r", "3/2")
    assert r["discrete_series"] and r["formal_degree"] == "3/2"
    assert da.dirac_induct("sl2r", "0")["reason"] == "singular"
    assert da.dirac_induct("sl2c", "0")["reason"] == "unequal_rank"
    assert da.enumerate_discrete_series("sl2c", 100) == []
    chambers = {p["chamber_id"] for p in da.enumerate_discrete_series("su21", 60)}
    assert len(chambers) == 3


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        da.dirac_induct("nope", "1")
    with pytest.raises(da.ValidationError):
        da.root_system("Q1")


def test_groups_and_index():
    assert da.wedderburn_blocks("s3", 1) == [1, 1, 2]
    for seed in range(20):
        _, stabilized, naive = da.fredholm_index(seed)
        assert stabilized == naive


def test_reduced_norm():
    f = [{"vector": k, "re": 1, "im": 0} for k in range(3)]
    lo, hi = da.reduced_norm("z", f, 200)
    assert 3 - 1e-3 <= lo <= hi == 3


def test_run():
    code, out, _ = da.run("ds", "induct", "--pair", "sl2r", "--hw", "3/2")
    assert code == 0 and '"3/2"' in out
