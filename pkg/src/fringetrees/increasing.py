"""Very simple families of increasing trees.

Recursive trees (α = 0), d-ary increasing trees (α = −1/d) and generalized
plane-oriented recursive trees with parameter r (α = 1/r) all grow by
attaching vertex j+1 to an existing vertex v with probability proportional
to 1 + α·deg(v).

Growth is simulated with O(1) exact steps rather than a weighted search
structure:

* d-ary: the weight d − deg(v) of v is its number of free slots, so picking
  a uniform free slot out of all free slots is the growth step.
* gport: r + deg(v) splits into "r per vertex" and "1 per child", so pick a
  uniform vertex with probability rj/(rj + j − 1) and otherwise the parent of
  a uniform non-root vertex.  The new child goes into a uniform gap among
  the deg(v)+1 gaps, which makes the sibling order a uniform permutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .tree import LabeledTree, Tree

__all__ = [
    "IncFamily",
    "parse_inc_family",
    "sample_increasing_tree",
    "grow_parents",
    "IncBatch",
    "sample_increasing_batch",
    "count_increasing_trees",
    "increasing_labellings_count",
    "expected_fringe_count",
    "enumerate_increasing",
    "mean_additive_functional",
]

ENUM_BOUND = 8


@dataclass(frozen=True)
class IncFamily:
    kind: str
    d: int | None = None
    r: Fraction | float | None = None

    def __post_init__(self):
        if self.kind == "recursive":
            pass
        elif self.kind == "dary":
            if self.d is None or self.d < 2:
                raise ValueError("d-ary increasing trees need d >= 2")
        elif self.kind == "gport":
            if self.r is None or self.r <= 0:
                raise ValueError("gports need r > 0")
        else:
            raise ValueError(f"unknown increasing family {self.kind!r}")

    @classmethod
    def recursive(cls) -> "IncFamily":
        return cls("recursive")

    @classmethod
    def dary(cls, d: int) -> "IncFamily":
        return cls("dary", d=d)

    @classmethod
    def bst(cls) -> "IncFamily":
        return cls("dary", d=2)

    @classmethod
    def gport(cls, r) -> "IncFamily":
        if isinstance(r, float) and not r.is_integer():
            return cls("gport", r=r)
        return cls("gport", r=Fraction(r))

    @property
    def alpha(self) -> Fraction | float:
        if self.kind == "recursive":
            return Fraction(0)
        if self.kind == "dary":
            return Fraction(-1, self.d)
        return 1 / self.r if isinstance(self.r, float) else Fraction(1) / self.r

    @property
    def arity(self) -> int | None:
        return self.d if self.kind == "dary" else None

    @property
    def name(self) -> str:
        if self.kind == "recursive":
            return "recursive"
        if self.kind == "dary":
            return "bst" if self.d == 2 else f"inc-dary:{self.d}"
        return f"gport:{self.r}"

    def __str__(self) -> str:
        return self.name


def parse_inc_family(desc: str) -> IncFamily:
    """Descriptors: recursive, bst, inc-dary:<d>, gport:<r>."""
    head, _, arg = desc.strip().partition(":")
    head = head.lower()
    if head == "recursive" and not arg:
        return IncFamily.recursive()
    if head == "bst" and not arg:
        return IncFamily.bst()
    if head == "inc-dary" and arg:
        return IncFamily.dary(int(arg))
    if head == "gport" and arg:
        try:
            r = Fraction(arg)
        except ValueError:
            r = float(arg)
        return IncFamily.gport(r)
    raise ValueError(f"unknown increasing family {desc!r}")


# -- growth ------------------------------------------------------------------------


def grow_parents(n: int, f: IncFamily, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Parent of every vertex (insertion order = label - 1) and a sibling sort key.

    The key is the label for recursive trees, the slot for d-ary trees and an
    i.i.d. uniform for gports.
    """
    parent = np.full(n, -1, dtype=np.int64)
    if f.kind == "recursive":
        if n > 1:
            j = np.arange(1, n)
            parent[1:] = np.minimum((rng.random(n - 1) * j).astype(np.int64), j - 1)
        return parent, np.arange(n, dtype=np.float64)
    if f.kind == "dary":
        d = f.d
        key = np.full(n, -1.0)
        free_v = [0] * d
        free_s = list(range(d))
        u = rng.random(n)
        for j in range(1, n):
            i = int(u[j] * len(free_v))
            v, s = free_v[i], free_s[i]
            free_v[i], free_s[i] = free_v[-1], free_s[-1]
            free_v.pop()
            free_s.pop()
            parent[j] = v
            key[j] = s
            free_v.extend([j] * d)
            free_s.extend(range(d))
        return parent, key
    r = float(f.r)
    coin = rng.random(n)
    u = rng.random(n)
    par = parent.tolist()
    for j in range(1, n):
        # j vertices exist, j-1 of them non-root
        if coin[j] * (r * j + j - 1) < r * j:
            par[j] = min(int(u[j] * j), j - 1)
        else:
            par[j] = par[1 + min(int(u[j] * (j - 1)), j - 2)]
    return np.asarray(par, dtype=np.int64), rng.random(n)


def _tree_from_parents(parent: np.ndarray, key: np.ndarray, arity: int | None) -> tuple[Tree, list[int]]:
    n = parent.size
    children: list[list[int]] = [[] for _ in range(n)]
    if n > 1:
        order = np.lexsort((key[1:], parent[1:])) + 1
        par = parent.tolist()
        for c in order.tolist():
            children[par[c]].append(c)
    if arity is not None:
        kl = key.astype(np.int64).tolist()
        slots = [[kl[c] for c in ch] for ch in children]
        return Tree.from_children(children, 0, slots, arity)
    return Tree.from_children(children)


def sample_increasing_tree(n: int, f: IncFamily, rng: np.random.Generator) -> LabeledTree:
    if n < 1:
        raise ValueError("n must be positive")
    parent, key = grow_parents(n, f, rng)
    t, order = _tree_from_parents(parent, key, f.arity)
    return LabeledTree(t, tuple(v + 1 for v in order))


@dataclass
class IncBatch:
    """Growth histories: ``parent[i, j]`` and ``gap[i, j]`` for vertex j of sample i.

    ``gap`` is the slot (d-ary) or insertion position among siblings (gport);
    it is zero for recursive trees.
    """

    parent: np.ndarray
    gap: np.ndarray
    family: IncFamily

    def __len__(self) -> int:
        return self.parent.shape[0]

    def unique(self) -> tuple[np.ndarray, np.ndarray]:
        rows = np.concatenate([self.parent, self.gap], axis=1)
        return np.unique(rows, axis=0, return_counts=True)

    def labeled_tree(self, row: np.ndarray) -> LabeledTree:
        n = self.parent.shape[1]
        return history_to_tree(row[:n], row[n:], self.family)


def history_to_tree(parent: Sequence[int], gap: Sequence[int], f: IncFamily) -> LabeledTree:
    n = len(parent)
    children: list[list[int]] = [[] for _ in range(n)]
    for j in range(1, n):
        p = int(parent[j])
        if f.kind == "gport":
            children[p].insert(int(gap[j]), j)
        else:
            children[p].append(j)
    slots = None
    if f.kind == "dary":
        for ch in children:
            ch.sort(key=lambda c: int(gap[c]))
        slots = [[int(gap[c]) for c in ch] for ch in children]
    t, order = Tree.from_children(children, 0, slots, f.arity)
    return LabeledTree(t, tuple(v + 1 for v in order))


def sample_increasing_batch(n: int, f: IncFamily, count: int, rng: np.random.Generator) -> IncBatch:
    """Vectorized growth of ``count`` independent trees of size n (small n)."""
    parent = np.full((count, n), -1, dtype=np.int64)
    gap = np.zeros((count, n), dtype=np.int64)
    deg = np.zeros((count, n), dtype=np.int64)
    rows = np.arange(count)
    for j in range(1, n):
        u = rng.random(count)
        if f.kind == "recursive":
            p = np.minimum((u * j).astype(np.int64), j - 1)
        elif f.kind == "dary":
            d = f.d
            occ = np.zeros((count, j, d), dtype=bool)
            for c in range(1, j):
                occ[rows, parent[:, c], gap[:, c]] = True
            free = ~occ.reshape(count, j * d)
            nfree = j * d - (j - 1)
            k = np.minimum((u * nfree).astype(np.int64), nfree - 1)
            pick = np.argmax(np.cumsum(free, axis=1) > k[:, None], axis=1)
            p, s = pick // d, pick % d
            gap[:, j] = s
        else:
            r = float(f.r)
            coin = rng.random(count)
            uni = np.minimum((u * j).astype(np.int64), j - 1)
            if j > 1:
                nonroot = 1 + np.minimum((u * (j - 1)).astype(np.int64), j - 2)
                via_child = parent[rows, nonroot]
                p = np.where(coin * (r * j + j - 1) < r * j, uni, via_child)
            else:
                p = uni
            g = rng.random(count)
            gap[:, j] = np.minimum((g * (deg[rows, p] + 1)).astype(np.int64), deg[rows, p])
        parent[:, j] = p
        deg[rows, p] += 1
    return IncBatch(parent, gap, f)


# -- exact counts ------------------------------------------------------------------


def count_increasing_trees(n: int, f: IncFamily):
    """Number (total weight for gports) of increasing trees with n vertices."""
    if f.kind == "recursive":
        return math.factorial(n - 1)
    if f.kind == "dary":
        return math.prod(1 + k * (f.d - 1) for k in range(1, n))
    r = f.r
    out = Fraction(1) if isinstance(r, Fraction) else 1.0
    for k in range(1, n):
        out *= k * (r + 1) - 1
    return out


def increasing_labellings_count(t: Tree) -> int:
    """n! / Π_v |t(v)|."""
    den = math.prod(t.sizes())
    q, rem = divmod(math.factorial(len(t)), den)
    assert rem == 0
    return q


def expected_fringe_count(n: int, k: int, f: IncFamily):
    """E Z_{n,k} = ((1+α)n − α) / (((1+α)k + 1)((1+α)k − α)) for 1 <= k < n."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    a = f.alpha
    return ((1 + a) * n - a) / (((1 + a) * k + 1) * ((1 + a) * k - a))


def enumerate_increasing(n: int, f: IncFamily, bound: int = ENUM_BOUND) -> list[tuple[LabeledTree, Fraction]]:
    """Every increasing tree of the family with its exact probability.

    Walks all growth histories; each history yields a distinct labelled tree.
    """
    if n > bound:
        raise ValueError(f"enumeration bound {bound} exceeded (n={n})")
    if f.kind == "gport" and not isinstance(f.r, Fraction):
        raise ValueError("exact enumeration needs rational r")
    a = f.alpha
    out: list[tuple[LabeledTree, Fraction]] = []
    parent = [-1] * n
    gap = [0] * n

    def rec(j: int, deg: list[int], used: list[set], prob: Fraction):
        if j == n:
            out.append((history_to_tree(parent, gap, f), prob))
            return
        if f.kind == "recursive":
            choices = [(v, 0, Fraction(1, j)) for v in range(j)]
        elif f.kind == "dary":
            nfree = j * f.d - (j - 1)
            choices = [(v, s, Fraction(1, nfree)) for v in range(j) for s in range(f.d) if s not in used[v]]
        else:
            total = j + a * (j - 1)
            choices = [(v, g, (1 + a * deg[v]) / total / (deg[v] + 1))
                       for v in range(j) for g in range(deg[v] + 1)]
        for v, g, pr in choices:
            parent[j], gap[j] = v, g
            deg[v] += 1
            used[v].add(g)
            deg.append(0)
            used.append(set())
            rec(j + 1, deg, used, prob * pr)
            deg.pop()
            used.pop()
            used[v].discard(g)
            deg[v] -= 1

    rec(1, [0], [set()], Fraction(1))
    return out


def mean_additive_functional(n: int, f: IncFamily, toll: Sequence | Callable[[int], object]):
    """E F(T_n) from per-size toll means E f(T_k), k = 1..n.

    ``toll`` is either a callable k -> E f(T_k) or a sequence indexed from
    k = 1 (``toll[0]`` is E f(T_1)).
    """
    if callable(toll):
        vals = [toll(k) for k in range(1, n + 1)]
    else:
        if len(toll) < n:
            raise ValueError(f"toll means needed for k = 1..{n}, got {len(toll)}")
        vals = list(toll[:n])
    a = f.alpha
    total = vals[n - 1]
    for k in range(1, n):
        total += ((1 + a) * n - a) * vals[k - 1] / (((1 + a) * k + 1) * ((1 + a) * k - a))
    return total
