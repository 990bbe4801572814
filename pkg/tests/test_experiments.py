import math

import pytest

from fringetrees.canonical import IsoNotion
from fringetrees.experiments import (
    CensusRecord,
    ExperimentConfig,
    census_one,
    compare_to_theory,
    hist_path,
    mean_fringe_counts,
    parse_family,
    read_census,
    run_census,
    write_census,
)


def test_parse_family():
    assert parse_family("plane").kind == "gw"
    assert parse_family("bst").kind == "inc"
    assert parse_family("inc-dary:3").inc.d == 3
    with pytest.raises(ValueError):
        parse_family("bogus")


def test_census_plane_records(tmp_path):
    cfg = ExperimentConfig("plane", (1000,), 10, 5, output=tmp_path / "c.csv")
    recs = run_census(cfg)
    assert len(recs) == 10
    for r in recs:
        assert sum(z for _, z in r.histogram) + r.overflow == 1000
    text = (tmp_path / "c.csv").read_text().splitlines()
    assert text[0].startswith("# schema")
    assert text[1] == "family,n,replicate,notion,distinct_count,seconds"
    assert len(text) == 2 + 10 * 3
    assert hist_path(tmp_path / "c.csv").read_text().splitlines()[1] == "family,n,replicate,k,z"


def test_rerun_identical_bytes(tmp_path):
    a = ExperimentConfig("motzkin", (200, 500), 3, 9, output=tmp_path / "a.csv")
    b = ExperimentConfig("motzkin", (200, 500), 3, 9, output=tmp_path / "b.csv", workers=2)
    run_census(a)
    run_census(b)
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert (tmp_path / "a.hist.csv").read_bytes() == (tmp_path / "b.hist.csv").read_bytes()


def test_json_round_trip(tmp_path):
    recs = run_census(ExperimentConfig("bst", (300,), 2, 1))
    write_census(recs, tmp_path / "r.json")
    back = read_census(tmp_path / "r.json")
    assert [r.counts for r in back] == [r.counts for r in recs]


@pytest.mark.slow
def test_bst_chain_large():
    for rep in range(2):
        r = census_one("bst", 10**5, rep, 3)
        h, j, k = (r.counts[x] for x in (IsoNotion.AS_FAMILY, IsoNotion.PLANE, IsoNotion.UNORDERED))
        assert k <= j <= h


def test_histogram_overflow():
    r = census_one("plane", 500, 0, 1, hist_cap=10)
    assert r.overflow > 0
    assert all(k <= 10 for k, _ in r.histogram)
    assert sum(z for _, z in r.histogram) + r.overflow == 500


def test_chain_violation_detected():
    bad = CensusRecord("plane", 3, 0, {IsoNotion.AS_FAMILY: 1, IsoNotion.PLANE: 2})
    with pytest.raises(AssertionError):
        bad.check()


def test_compare_bands():
    recs = run_census(ExperimentConfig("bst", (2000,), 3, 2))
    rows = compare_to_theory(recs, "inc-family:bst")
    assert rows[0]["lower"] == pytest.approx(2.4071298335, abs=1e-9)
    assert rows[0]["upper"] == pytest.approx(4 * math.log(2))
    rows = compare_to_theory(recs, "inc-unordered:bst")
    assert rows[0]["upper"] == pytest.approx(1.8191392202, abs=1e-9)
    with pytest.raises(ValueError):
        compare_to_theory(recs, "inc-unordered:recursive")
    with pytest.raises(KeyError):
        compare_to_theory(recs, "nonsense")


def test_compare_plane_single_constant():
    recs = run_census(ExperimentConfig("plane", (3000,), 2, 2))
    row = compare_to_theory(recs, "sg-family:plane")[0]
    assert row["lower"] == row["upper"]


def test_mean_fringe_counts_recursive():
    m, se = mean_fringe_counts("recursive", 50, [1, 2, 3], 5000, seed=4)
    for k, mu, s in zip([1, 2, 3], m, se):
        assert abs(mu - 50 / (k * (k + 1))) < 5 * s


def test_mean_fringe_counts_plane():
    m, se = mean_fringe_counts("plane", 40, [1], 3000, seed=4)
    # expected leaves of a uniform plane tree with n vertices: n/2 (n >= 2)
    assert abs(m[0] - 20) < 5 * se[0]
