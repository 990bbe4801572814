import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.stats import chisquare

from fringetrees.gw import (
    NoCriticalPoint,
    WeightSequence,
    cycle_lemma_start,
    degrees_to_tree,
    enumerate_family,
    enumerate_slotted,
    exact_yn,
    offspring_distribution,
    parse_weight_sequence,
    sample_gw_batch,
    sample_gw_tree,
    solve_tau,
    yn_asymptotic,
)
from fringetrees.rng import make_rng
from fringetrees.tree import serialize_tree


@pytest.mark.parametrize("w, tau", [
    (WeightSequence.plane(), 0.5),
    (WeightSequence.dary(2), 1.0),
    (WeightSequence.dary(3), 0.5),
    (WeightSequence.dary(5), 0.25),
    (WeightSequence.motzkin(), 1.0),
    (WeightSequence.labelled(), 1.0),
])
def test_tau(w, tau):
    assert solve_tau(w) == pytest.approx(tau, abs=1e-13)


@pytest.mark.parametrize("w, probs", [
    (WeightSequence.binary(), [0.25, 0.5, 0.25]),
    (WeightSequence.motzkin(), [1 / 3] * 3),
])
def test_offspring(w, probs):
    o = offspring_distribution(w)
    assert np.allclose(o.probs, probs, atol=1e-14)
    assert o.mean == pytest.approx(1.0, abs=1e-13)


def test_plane_geometric():
    o = offspring_distribution(WeightSequence.plane())
    assert o.pmf(3) == pytest.approx(2.0**-4)
    assert o.sigma2 == pytest.approx(2.0)


@pytest.mark.parametrize("w, s2", [
    (WeightSequence.plane(), 2.0),
    (WeightSequence.binary(), 0.5),
    (WeightSequence.labelled(), 1.0),
    (WeightSequence.motzkin(), 2 / 3),
])
def test_variance_two_ways(w, s2):
    o = offspring_distribution(w)
    assert o.sigma2 == pytest.approx(s2, rel=1e-12)
    assert o.moment_variance == pytest.approx(s2, rel=1e-9)


def test_no_critical_point():
    # Φ(x) = 1 + x: trees are paths only, tΦ'(t) = Φ(t) has no root
    with pytest.raises(ValueError):
        solve_tau(WeightSequence.custom([1, 1]))


def test_parse_descriptors():
    assert parse_weight_sequence("dary:3").arity == 3
    assert parse_weight_sequence("custom:1,0,1").max_degree == 2
    with pytest.raises(ValueError):
        parse_weight_sequence("dary:x")


def test_cycle_lemma_example():
    assert degrees_to_tree([0, 2, 0]).degrees.tolist() == [2, 0, 0]


@given(st.lists(st.integers(0, 4), min_size=1, max_size=30))
def test_exactly_one_rotation(degs):
    n = len(degs)
    total = sum(degs)
    if total != n - 1:
        degs = degs[:]
        # force the sum to n - 1 by adjusting the first entries
        diff = n - 1 - total
        i = 0
        while diff and i < n:
            step = max(-degs[i], diff)
            degs[i] += step
            diff -= step
            i += 1
        if diff:
            return
    valid = 0
    for r in range(n):
        rot = degs[r:] + degs[:r]
        walk = np.cumsum(np.array(rot) - 1)
        valid += bool(n == 1 or walk[:-1].min() >= 0)
    assert valid == 1
    s = cycle_lemma_start(degs)
    rot = degs[s:] + degs[:s]
    assert degrees_to_tree(degs).degrees.tolist() == rot


@pytest.mark.parametrize("w, ys", [
    (WeightSequence.plane(), [1, 1, 2, 5, 14]),
    (WeightSequence.motzkin(), [1, 1, 2, 4, 9, 21]),
    (WeightSequence.binary(), [1, 2, 5, 14, 42]),
])
def test_exact_yn(w, ys):
    assert [exact_yn(n, w) for n in range(1, len(ys) + 1)] == ys
    # enumeration oracle
    for n, y in enumerate(ys, 1):
        if w.arity:
            assert len(enumerate_slotted(n, w.arity)) == y
        else:
            assert sum(p for _, p in enumerate_family(n, w)) == y


def test_labelled_yn():
    # y_n = n^{n-2}/(n-1)! : Cayley's count divided by n!/n
    assert exact_yn(4, WeightSequence.labelled()) == Fraction(16, 6)


def test_yn_asymptotic_plane():
    lv = math.lgamma(1999) - 2 * math.lgamma(1000) - math.log(1000)
    ratio = math.exp(lv - yn_asymptotic(1000, WeightSequence.plane(), log=True))
    assert 0.99 <= ratio <= 1.01


def test_growth_ratio_binary():
    w = WeightSequence.binary()
    assert float(exact_yn(401, w) / exact_yn(400, w)) == pytest.approx(4, rel=0.01)


def test_periodic_family():
    w = WeightSequence.full_binary()
    assert w.period == 2
    assert not w.admissible(4)
    with pytest.raises(ValueError):
        sample_gw_tree(4, w, make_rng(0))
    t = sample_gw_tree(9, w, make_rng(0))
    assert set(t.degrees.tolist()) <= {0, 2}


@pytest.mark.parametrize("family, n", [("plane", 5), ("motzkin", 6), ("binary", 4)])
def test_sampler_chisquare(family, n):
    w = parse_weight_sequence(family)
    if w.arity:
        shapes = {serialize_tree(t): Fraction(1) for t in enumerate_slotted(n, w.arity)}
    else:
        shapes = {serialize_tree(t): p for t, p in enumerate_family(n, w)}
    tot = sum(shapes.values())
    keys = sorted(shapes)
    N = 20000
    rng = make_rng(11, n)
    cnt = Counter(serialize_tree(sample_gw_tree(n, w, rng)) for _ in range(N))
    assert set(cnt) <= set(keys)
    obs = [cnt[k] for k in keys]
    exp = [N * float(shapes[k] / tot) for k in keys]
    assert chisquare(obs, exp).pvalue > 1e-3


def test_batch_matches_single():
    w = WeightSequence.binary()
    b = sample_gw_batch(5, w, 20000, make_rng(3))
    cnt = Counter(serialize_tree(b.tree(i)) for i in range(len(b)))
    assert len(cnt) == 42
    assert min(cnt.values()) > 20000 / 42 * 0.8


@given(st.integers(1, 200), st.integers(0, 2**32))
def test_sampler_size(n, seed):
    t = sample_gw_tree(n, WeightSequence.motzkin(), make_rng(seed))
    assert len(t) == n
