"""Fringe subtrees of random trees: samplers, canonical codes, minimal DAGs,
additive functionals and the asymptotic constants of the distinct-subtree counts."""

from .canonical import IsoNotion, build_minimal_dag, canonical_code, parse_notion
from .constants import band, constant_ids, setting, theorem_constant
from .experiments import ExperimentConfig, census_one, compare_to_theory, parse_family, run_census
from .gw import offspring_distribution, parse_weight_sequence
from .increasing import IncFamily, sample_increasing_tree
from .rng import make_rng
from .series import ConstantResult, series_sum
from .tree import LabeledTree, Tree, parse_tree, serialize_tree

__version__ = "0.1.0"

__all__ = [
    "ConstantResult",
    "ExperimentConfig",
    "IncFamily",
    "IsoNotion",
    "LabeledTree",
    "Tree",
    "band",
    "build_minimal_dag",
    "canonical_code",
    "census_one",
    "compare_to_theory",
    "constant_ids",
    "make_rng",
    "offspring_distribution",
    "parse_family",
    "parse_notion",
    "parse_tree",
    "parse_weight_sequence",
    "run_census",
    "sample_increasing_tree",
    "serialize_tree",
    "series_sum",
    "setting",
    "theorem_constant",
]
