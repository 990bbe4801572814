import numpy as np
from hypothesis import HealthCheck, settings, strategies as st

from fringetrees.gw import WeightSequence, degrees_to_tree, sample_gw_tree
from fringetrees.increasing import IncFamily, sample_increasing_tree
from fringetrees.rng import make_rng
from fringetrees.tree import Tree

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def plane_trees(draw, max_size=40, max_degree=5):
    """Plane trees from a random degree multiset rotated by the cycle lemma."""
    n = draw(st.integers(1, max_size))
    degs = [0] * n
    left = n - 1
    idx = draw(st.permutations(range(n)))
    for i in idx:
        if left == 0:
            break
        d = draw(st.integers(0, min(left, max_degree)))
        degs[i] = d
        left -= d
    if left:
        degs[idx[0]] += left
    return degrees_to_tree(degs)


@st.composite
def binary_trees(draw, max_size=40):
    n = draw(st.integers(1, max_size))
    seed = draw(st.integers(0, 2**32))
    return sample_gw_tree(n, WeightSequence.binary(), make_rng(seed))


@st.composite
def increasing_trees(draw, max_size=40):
    fam = draw(st.sampled_from([IncFamily.recursive(), IncFamily.bst(), IncFamily.gport(1), IncFamily.dary(3)]))
    n = draw(st.integers(1, max_size))
    seed = draw(st.integers(0, 2**32))
    return fam, sample_increasing_tree(n, fam, make_rng(seed))


def random_trees(family, count, n_max, seed=0):
    """Assorted sizes for property sweeps outside hypothesis."""
    from fringetrees.experiments import parse_family

    fam = parse_family(family)
    rng = make_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(1, n_max + 1))
        if fam.admissible(n):
            out.append(fam.sample(n, rng))
    return out
