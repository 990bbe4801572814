"""Toll functions and the additive functionals F(t) = Σ_v f(t(v)) built from them."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .canonical import IsoNotion, automorphism_size, intern_ids, sibling_factorial_logs
from .gw import OffspringDistribution
from .increasing import IncFamily
from .tree import Tree

__all__ = [
    "Toll",
    "nu_log",
    "toll_plane",
    "toll_unordered",
    "toll_inc_noniso",
    "shape_functional",
    "recursive_shape_probability",
    "additive_functional",
    "plane_entropy_functional",
    "unordered_entropy_functional",
    "noniso_functional",
    "root_degree_term",
]


def nu_log(t: Tree, o: OffspringDistribution) -> float:
    """ln ν(t) = Σ_v ln P(ξ = deg v); −inf if some degree is impossible."""
    total = []
    for d, c in Counter(t.degrees.tolist()).items():
        p = o.pmf(d)
        if p <= 0.0:
            return -math.inf
        total.append(c * math.log(p))
    return math.fsum(total)


def toll_plane(t: Tree, o: OffspringDistribution) -> float:
    p = o.pmf(int(t.degrees[0]))
    return math.log(p) if p > 0 else 0.0


def _root_multiplicity_log(t: Tree) -> float:
    ch = t.children(0)
    if len(ch) < 2:
        return 0.0
    ids = intern_ids(t, IsoNotion.UNORDERED)[0]
    return sum(math.lgamma(m + 1) for m in Counter(ids[c] for c in ch).values() if m > 1)


def toll_unordered(t: Tree, o: OffspringDistribution) -> float:
    """ln(P(ξ=ρ)·ρ!) − ln(m_1!···m_k!), or 0 when P(ξ=ρ) = 0."""
    rho = int(t.degrees[0])
    p = o.pmf(rho)
    if p <= 0:
        return 0.0
    return math.log(p) + math.lgamma(rho + 1) - _root_multiplicity_log(t)


def root_degree_term(rho: int, f: IncFamily) -> float:
    """ln d^(falling ρ), ln r^(rising ρ), or 0, by family."""
    if f.kind == "recursive":
        return 0.0
    if f.kind == "dary":
        if rho > f.d:
            raise ValueError(f"root degree {rho} exceeds d={f.d}")
        return math.lgamma(f.d + 1) - math.lgamma(f.d - rho + 1)
    r = float(f.r)
    return math.lgamma(r + rho) - math.lgamma(r)


def toll_inc_noniso(t: Tree, f: IncFamily) -> float:
    return math.log(len(t)) + _root_multiplicity_log(t) - root_degree_term(int(t.degrees[0]), f)


def shape_functional(t: Tree) -> float:
    """Σ_v ln |t(v)|."""
    return math.fsum(math.log(s) for s in t.sizes())


def recursive_shape_probability(S: Tree) -> tuple[Fraction, Fraction]:
    """(p_S, c_S) for S read as an unordered tree.

    p_S = s / (Π_v |S(v)| · |Aut(S)|) is the probability that a random
    recursive tree with s vertices is isomorphic to S, and c_S = p_S / s.
    """
    den = math.prod(S.sizes()) * automorphism_size(S)
    s = len(S)
    return Fraction(s, den), Fraction(1, den)


@dataclass(frozen=True)
class Toll:
    """A named toll function; call it on a tree to evaluate f(t)."""

    kind: str
    offspring: OffspringDistribution | None = None
    family: IncFamily | None = None
    constant: float = 1.0

    def __call__(self, t: Tree) -> float:
        if self.kind == "plane":
            return toll_plane(t, self.offspring)
        if self.kind == "unordered":
            return toll_unordered(t, self.offspring)
        if self.kind == "noniso":
            return toll_inc_noniso(t, self.family)
        if self.kind == "logsize":
            return math.log(len(t))
        if self.kind == "rootdegree":
            return float(t.degrees[0])
        if self.kind == "constant":
            return self.constant
        raise ValueError(f"unknown toll {self.kind!r}")


def additive_functional(t: Tree, toll: Callable[[Tree], float]) -> float:
    """Σ_v toll(t(v)), evaluating the toll on every fringe subtree separately."""
    return math.fsum(toll(t.subtree(v)) for v in range(len(t)))


# fast forms that share one interning pass over the whole tree


def plane_entropy_functional(t: Tree, o: OffspringDistribution) -> float:
    return math.fsum(toll_plane_degree(d, o) for d in t.degrees.tolist())


def toll_plane_degree(d: int, o: OffspringDistribution) -> float:
    p = o.pmf(d)
    return math.log(p) if p > 0 else 0.0


def unordered_entropy_functional(t: Tree, o: OffspringDistribution) -> float:
    sib = sibling_factorial_logs(t)
    parts = []
    for d, s in zip(t.degrees.tolist(), sib):
        p = o.pmf(d)
        if p > 0:
            parts.append(math.log(p) + math.lgamma(d + 1) - s)
    return math.fsum(parts)


def noniso_functional(t: Tree, f: IncFamily) -> float:
    sib = sibling_factorial_logs(t)
    deg = t.degrees.tolist()
    return math.fsum(
        math.log(s) + m - root_degree_term(d, f) for s, m, d in zip(t.sizes(), sib, deg)
    )
