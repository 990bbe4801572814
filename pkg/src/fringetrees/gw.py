"""Simply generated trees: weight sequences, critical tilting and exact samplers.

A weight sequence (φ_k) gives the plane tree t the weight Π_v φ_{deg(v)}.
Tilting by τ, the root of τΦ'(τ) = Φ(τ), turns it into a critical offspring
law p_m = φ_m τ^m / Φ(τ), and a Galton-Watson tree with that law conditioned
on n vertices is exactly a random simply generated tree of size n.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterator, Sequence

import numpy as np
from scipy.optimize import brentq

from .tree import Tree

__all__ = [
    "WeightSequence",
    "NoCriticalPoint",
    "OffspringDistribution",
    "parse_weight_sequence",
    "solve_tau",
    "offspring_distribution",
    "offspring_variance",
    "degrees_to_tree",
    "cycle_lemma_start",
    "sample_gw_tree",
    "sample_gw_batch",
    "GWBatch",
    "enumerate_family",
    "enumerate_slotted",
    "exact_yn",
    "yn_asymptotic",
]

P_CUTOFF = 1e-18


class NoCriticalPoint(ValueError):
    pass


@dataclass(frozen=True)
class WeightSequence:
    """φ_k for one of a few closed-form families, or a finite custom list.

    ``kind`` is ``"poly"`` (finite support, ``coeffs`` holds φ_0..φ_D),
    ``"geometric"`` (φ_k = 1) or ``"exp"`` (φ_k = 1/k!).  ``arity`` is set for
    d-ary trees, whose vertices carry slot labels.
    """

    name: str
    kind: str
    coeffs: tuple[Fraction, ...] = ()
    arity: int | None = None

    def __post_init__(self):
        if self.kind == "poly":
            if not self.coeffs or self.coeffs[0] <= 0:
                raise ValueError("φ_0 must be positive")
            if any(c < 0 for c in self.coeffs):
                raise ValueError("weights must be non-negative")
            if not any(c > 0 for c in self.coeffs[2:]):
                raise ValueError("need some φ_k > 0 with k >= 2")
        elif self.kind not in ("geometric", "exp"):
            raise ValueError(f"unknown weight kind {self.kind!r}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def plane(cls) -> "WeightSequence":
        return cls("plane", "geometric")

    @classmethod
    def dary(cls, d: int) -> "WeightSequence":
        if d < 2:
            raise ValueError("d-ary trees need d >= 2")
        return cls(f"dary:{d}", "poly", tuple(Fraction(math.comb(d, k)) for k in range(d + 1)), d)

    @classmethod
    def binary(cls) -> "WeightSequence":
        return cls.dary(2)

    @classmethod
    def motzkin(cls) -> "WeightSequence":
        return cls("motzkin", "poly", (Fraction(1),) * 3)

    @classmethod
    def labelled(cls) -> "WeightSequence":
        return cls("labelled", "exp")

    @classmethod
    def custom(cls, weights: Sequence, name: str | None = None) -> "WeightSequence":
        coeffs = tuple(Fraction(w) for w in weights)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        label = name or "custom:" + ",".join(str(c) for c in coeffs)
        return cls(label, "poly", coeffs)

    @classmethod
    def indicator(cls, degrees: Sequence[int] | None) -> "WeightSequence":
        """0/1 weights on a degree set M; ``None`` means all of ℕ (plain plane trees)."""
        if degrees is None:
            return cls.plane()
        M = sorted(set(int(m) for m in degrees))
        coeffs = [Fraction(0)] * (M[-1] + 1)
        for m in M:
            coeffs[m] = Fraction(1)
        return cls("restricted:" + ",".join(map(str, M)), "poly", tuple(coeffs))

    @classmethod
    def full_binary(cls) -> "WeightSequence":
        return cls("fullbinary", "poly", (Fraction(1), Fraction(0), Fraction(1)))

    # -- evaluation ----------------------------------------------------------

    @property
    def radius(self) -> float:
        return 1.0 if self.kind == "geometric" else math.inf

    @property
    def max_degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.kind == "poly" else None

    def phi(self, k: int) -> float:
        return float(self.phi_exact(k))

    def phi_exact(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if self.kind == "poly":
            return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)
        if self.kind == "geometric":
            return Fraction(1)
        return Fraction(1, math.factorial(k))

    def Phi(self, x: float, deriv: int = 0) -> float:
        """Φ^{(deriv)}(x) for deriv in 0, 1, 2."""
        if self.kind == "geometric":
            return math.factorial(deriv) / (1.0 - x) ** (deriv + 1)
        if self.kind == "exp":
            return math.exp(x)
        c = np.array([float(a) for a in self.coeffs])
        p = np.polynomial.Polynomial(c)
        return float(p.deriv(deriv)(x)) if deriv else float(p(x))

    @property
    def period(self) -> int:
        """gcd of the degrees with positive weight; sizes must be 1 mod this."""
        if self.kind != "poly":
            return 1
        return reduce(math.gcd, (k for k, c in enumerate(self.coeffs) if c > 0 and k > 0), 0)

    def admissible(self, n: int) -> bool:
        return n >= 1 and (n - 1) % self.period == 0

    def support(self, kmax: int) -> list[int]:
        return [k for k in range(kmax + 1) if self.phi_exact(k) > 0]


def parse_weight_sequence(desc: str) -> WeightSequence:
    """Family descriptors: plane, dary:<d>, binary, motzkin, labelled,
    fullbinary, custom:<φ0,φ1,...>, restricted:<m1,m2,...>."""
    desc = desc.strip()
    head, _, arg = desc.partition(":")
    head = head.lower()
    if head == "plane" and not arg:
        return WeightSequence.plane()
    if head == "dary":
        return WeightSequence.dary(int(arg))
    if head == "binary" and not arg:
        return WeightSequence.binary()
    if head == "motzkin" and not arg:
        return WeightSequence.motzkin()
    if head == "labelled" and not arg:
        return WeightSequence.labelled()
    if head == "fullbinary" and not arg:
        return WeightSequence.full_binary()
    if head == "custom" and arg:
        return WeightSequence.custom([Fraction(s.strip()) for s in arg.split(",")])
    if head == "restricted" and arg:
        return WeightSequence.indicator([int(s) for s in arg.split(",")])
    raise ValueError(f"unknown simply generated family {desc!r}")


# -- tilting -------------------------------------------------------------------


def solve_tau(w: WeightSequence) -> float:
    """Root of g(t) = tΦ'(t) − Φ(t) on (0, R]."""
    if w.kind == "geometric":
        return 0.5
    if w.kind == "exp":
        return 1.0

    def g(t: float) -> float:
        return t * w.Phi(t, 1) - w.Phi(t)

    hi = 1.0
    for _ in range(200):
        if g(hi) > 0:
            break
        hi *= 2.0
    else:
        raise NoCriticalPoint(f"{w.name}: g(t) stays negative up to t={hi:g}")
    tau = brentq(g, 0.0, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    # one Newton polish step; g'(t) = tΦ''(t)
    step = g(tau) / (tau * w.Phi(tau, 2))
    if abs(step) < 1e-9 * tau:
        tau -= step
    if abs(g(tau)) > 1e-12 * w.Phi(tau):
        raise NoCriticalPoint(f"{w.name}: |g(tau)| = {abs(g(tau)):.3g} too large")
    return tau


@dataclass(frozen=True)
class OffspringDistribution:
    probs: np.ndarray
    tau: float
    sigma2: float
    weights: WeightSequence = field(repr=False)

    def __post_init__(self):
        self.probs.setflags(write=False)

    def pmf(self, m: int) -> float:
        return float(self.probs[m]) if 0 <= m < len(self.probs) else 0.0

    @property
    def mean(self) -> float:
        m = np.arange(len(self.probs))
        return math.fsum(m * self.probs)

    @property
    def moment_variance(self) -> float:
        m = np.arange(len(self.probs))
        return math.fsum(m * m * self.probs) - 1.0


@lru_cache(maxsize=64)
def offspring_distribution(w: WeightSequence) -> OffspringDistribution:
    tau = solve_tau(w)
    Phi = w.Phi(tau)
    if w.kind == "poly":
        probs = [w.phi(m) * tau**m / Phi for m in range(len(w.coeffs))]
    else:
        probs = []
        m = 0
        logt, logP = math.log(tau), math.log(Phi)
        while True:
            if w.kind == "exp":
                p = math.exp(m * logt - logP - math.lgamma(m + 1))
            else:
                p = math.exp(m * logt - logP)
            if p < P_CUTOFF and m > 1:
                break
            probs.append(p)
            m += 1
    arr = np.array(probs)
    arr /= math.fsum(arr)
    sigma2 = tau * tau * w.Phi(tau, 2) / Phi
    return OffspringDistribution(arr, tau, sigma2, w)


def offspring_variance(o: OffspringDistribution) -> float:
    return o.sigma2


# -- cycle lemma -----------------------------------------------------------------


def cycle_lemma_start(degrees: Sequence[int] | np.ndarray) -> int:
    """Index at which the unique valid rotation of ``degrees`` starts."""
    d = np.asarray(degrees, dtype=np.int64)
    if int(d.sum()) != d.size - 1:
        raise ValueError("degree sum must equal length - 1")
    walk = np.cumsum(d - 1)
    return int(np.argmin(walk) + 1) % d.size


def degrees_to_tree(degrees: Sequence[int] | np.ndarray) -> Tree:
    d = np.asarray(degrees, dtype=np.int64)
    if d.size == 0:
        raise ValueError("empty degree sequence")
    s = cycle_lemma_start(d)
    return Tree(np.roll(d, -s), validate=False)


def _slot_assignment(degrees: np.ndarray, arity: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random slot subsets, returned as per-vertex incoming slots."""
    n = degrees.size
    slots = np.full(n, -1, dtype=np.int64)
    if n == 1:
        return slots
    ranks = np.argsort(np.argsort(rng.random((n, arity)), axis=1), axis=1)
    chosen = ranks < degrees[:, None]
    # row-major nonzero lists each parent's slots in increasing order, parents in preorder
    flat = np.nonzero(chosen)[1]
    parent = np.asarray(Tree(degrees, validate=False).parents()[1:])
    order = np.argsort(parent, kind="stable") + 1
    slots[order] = flat
    return slots


def sample_gw_tree(n: int, w: WeightSequence, rng: np.random.Generator,
                   offspring: OffspringDistribution | None = None) -> Tree:
    """Exact uniform-under-P_Φ tree with n vertices.

    Degree counts are drawn multinomially and rejected unless they sum to
    n − 1; the multiset is then shuffled and rotated by the cycle lemma.
    """
    if not w.admissible(n):
        raise ValueError(f"{w.name}: no trees with {n} vertices (period {w.period})")
    o = offspring or offspring_distribution(w)
    p = np.asarray(o.probs)
    m = np.arange(p.size)
    if n == 1:
        deg = np.zeros(1, dtype=np.int64)
    else:
        while True:
            counts = rng.multinomial(n, p)
            if int(counts @ m) == n - 1:
                break
        deg = rng.permutation(np.repeat(m, counts))
        deg = np.roll(deg, -cycle_lemma_start(deg))
    if w.arity is not None:
        return Tree(deg, _slot_assignment(deg, w.arity, rng), w.arity, validate=False)
    return Tree(deg, validate=False)


@dataclass
class GWBatch:
    """Rows of preorder degree sequences; ``masks[i, v]`` is the slot bitmask of v's children."""

    degrees: np.ndarray
    masks: np.ndarray | None
    arity: int | None

    def __len__(self) -> int:
        return self.degrees.shape[0]

    def keys(self) -> list[bytes]:
        """Hashable shape identifier per row (degrees plus slot masks)."""
        if self.masks is None:
            arr = self.degrees.astype(np.int8)
        else:
            arr = np.concatenate([self.degrees, self.masks], axis=1).astype(np.int16)
        return [r.tobytes() for r in arr]

    def tree(self, i: int) -> Tree:
        deg = self.degrees[i]
        if self.masks is None:
            return Tree(deg, validate=False)
        return masks_to_tree(deg, self.masks[i], self.arity)


def masks_to_tree(deg: np.ndarray, masks: np.ndarray, arity: int) -> Tree:
    t = Tree(deg, validate=False)
    slots = [-1] * len(t)
    for v, ch in enumerate(t.children_lists()):
        bits = [j for j in range(arity) if (int(masks[v]) >> j) & 1]
        for c, s in zip(ch, bits):
            slots[c] = s
    return Tree(deg, slots, arity)


def sample_gw_batch(n: int, w: WeightSequence, count: int, rng: np.random.Generator,
                    offspring: OffspringDistribution | None = None) -> GWBatch:
    """``count`` independent conditioned trees of size n, vectorized for small n."""
    if not w.admissible(n):
        raise ValueError(f"{w.name}: no trees with {n} vertices (period {w.period})")
    o = offspring or offspring_distribution(w)
    p = np.asarray(o.probs)
    rows: list[np.ndarray] = []
    have = 0
    while have < count:
        need = count - have
        draw = rng.choice(p.size, size=(max(2 * need, 1024), n), p=p)
        ok = draw[draw.sum(axis=1) == n - 1]
        rows.append(ok)
        have += ok.shape[0]
    deg = np.concatenate(rows)[:count]
    walk = np.cumsum(deg - 1, axis=1)
    start = (np.argmin(walk, axis=1) + 1) % n
    idx = (start[:, None] + np.arange(n)[None, :]) % n
    deg = np.take_along_axis(deg, idx, axis=1)
    masks = None
    if w.arity is not None:
        d = w.arity
        ranks = np.argsort(np.argsort(rng.random((count, n, d)), axis=2), axis=2)
        chosen = ranks < deg[:, :, None]
        masks = (chosen * (1 << np.arange(d))[None, None, :]).sum(axis=2)
    return GWBatch(deg, masks, w.arity)


# -- enumeration -------------------------------------------------------------------

ENUM_BOUND = 9


def _plane_degree_sequences(n: int, allowed: Sequence[int]) -> Iterator[tuple[int, ...]]:
    seq = [0] * n
    # need = number of still-unfilled child positions, counting the root's own slot

    def rec(i: int, need: int):
        if i == n:
            if need == 0:
                yield tuple(seq)
            return
        left = n - i
        for d in allowed:
            nn = need - 1 + d
            if nn < 0 or nn > left - 1 or (nn == 0 and left > 1):
                continue
            seq[i] = d
            yield from rec(i + 1, nn)

    yield from rec(0, 1)


def enumerate_family(n: int, w: WeightSequence, bound: int = ENUM_BOUND) -> list[tuple[Tree, Fraction]]:
    """All plane trees with n vertices and their weights Π φ_deg(v)."""
    if n > bound:
        raise ValueError(f"enumeration bound {bound} exceeded (n={n})")
    if n < 1:
        return []
    allowed = w.support(n - 1)
    out = []
    for seq in _plane_degree_sequences(n, allowed):
        wt = Fraction(1)
        for d in seq:
            wt *= w.phi_exact(d)
        out.append((Tree(seq, validate=False), wt))
    return out


def enumerate_slotted(n: int, d: int, bound: int = ENUM_BOUND) -> list[Tree]:
    """All d-ary trees with n vertices (each of weight 1)."""
    from itertools import combinations, product

    out = []
    for t, _ in enumerate_family(n, WeightSequence.dary(d), bound):
        chs = t.children_lists()
        choices = [list(combinations(range(d), len(ch))) for ch in chs]
        for pick in product(*choices):
            slots = [-1] * n
            for ch, sub in zip(chs, pick):
                for c, s in zip(ch, sub):
                    slots[c] = s
            out.append(Tree(t.degrees, slots, d, validate=False))
    return out


def _poly_power_coeff(coeffs: Sequence[Fraction], power: int, k: int) -> Fraction:
    """[x^k] P(x)^power by binary powering on truncated coefficient lists."""
    is_int = all(c.denominator == 1 for c in coeffs)
    base = [int(c) if is_int else c for c in coeffs[: k + 1]]
    result: list = [1]

    def mul(a, b):
        out = [0] * min(len(a) + len(b) - 1, k + 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b[: k + 1 - i]):
                out[i + j] += x * y
        return out

    while power:
        if power & 1:
            result = mul(result, base)
        power >>= 1
        if power:
            base = mul(base, base)
    return Fraction(result[k]) if k < len(result) else Fraction(0)


def exact_yn(n: int, w: WeightSequence) -> Fraction:
    """y_n = (1/n) [x^{n-1}] Φ(x)^n (Lagrange inversion)."""
    if n < 1:
        return Fraction(0)
    if w.kind == "geometric":
        return Fraction(math.comb(2 * n - 2, n - 1), n)
    if w.kind == "exp":
        return Fraction(n ** (n - 2) if n >= 2 else 1, math.factorial(n - 1)) if n >= 2 else Fraction(1)
    return _poly_power_coeff(w.coeffs, n, n - 1) / n


def yn_asymptotic(n: int, w: WeightSequence, log: bool = False) -> float:
    """period · sqrt(Φ(τ)/(2πΦ''(τ))) · Φ'(τ)^n / n^{3/2}; zero off the lattice."""
    if not w.admissible(n):
        return -math.inf if log else 0.0
    tau = solve_tau(w)
    Phi, d1, d2 = w.Phi(tau), w.Phi(tau, 1), w.Phi(tau, 2)
    lv = math.log(w.period) + 0.5 * math.log(Phi / (2 * math.pi * d2)) + n * math.log(d1) - 1.5 * math.log(n)
    return lv if log else math.exp(lv)
