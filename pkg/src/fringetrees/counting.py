"""Exact counts of tree classes and their exponential growth constants.

Unordered rooted trees with out-degrees in M satisfy

    y(x) = x · Σ_{m ∈ M} Z(S_m)(y(x), y(x²), y(x³), ...)

with Z(S_m) the cycle index of the symmetric group.  The counts are produced
exactly with Python integers; the radius ρ is then the point where the
right-hand side, viewed as F(x, y), has ∂F/∂y = 1.  The terms y(x^j) for
j ≥ 2 are analytic well beyond ρ and are evaluated from the truncated series.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations_with_replacement
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq, fsolve

from .canonical import IsoNotion, canonical_code
from .gw import WeightSequence, enumerate_family, solve_tau
from .tree import Tree

__all__ = [
    "CountSeries",
    "unordered_counts",
    "polya_counts",
    "unordered_growth",
    "restricted_plane_growth",
    "plane_counts",
    "brute_force_unordered_counts",
    "eta",
    "enumerate_unordered_trees",
    "growth_ratio_estimate",
]


@dataclass(frozen=True)
class CountSeries:
    """u_1..u_K for one tree class; ``counts[k-1]`` is u_k."""

    tag: str
    counts: tuple[int, ...]
    degrees: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, k: int) -> int:
        return self.counts[k - 1]

    def evaluate(self, x: float) -> float:
        """Σ_k u_k x^k with float arithmetic (for |x| well inside the radius)."""
        lx = math.log(x)
        return math.fsum(math.exp(math.log(u) + k * lx) for k, u in enumerate(self.counts, 1) if u)

    def tail_bound(self, x: float) -> float:
        """Crude geometric bound on Σ_{k>K} u_k x^k from the last ratio."""
        K = len(self.counts)
        uK, uK1 = self.counts[-1], self.counts[-2]
        if not uK or not uK1:
            uK, uK1 = self.counts[-1] or self.counts[-2], self.counts[-3] or self.counts[-4]
        r = 1.05 * (uK / uK1) ** (1.0 if self.counts[-1] and self.counts[-2] else 0.5) * x
        if r >= 1:
            return math.inf
        return math.exp(math.log(uK) + K * math.log(x)) * r / (1 - r)


def polya_counts(K: int) -> CountSeries:
    """Rooted unordered trees (all degrees) by vertices, via the Euler transform."""
    a = [0, 1]
    s = [0] * (K + 1)  # s[k] = Σ_{d | k} d a_d
    for n in range(1, K):
        for d in range(1, n + 1):
            if n % d == 0:
                s[n] += d * a[d]
        a.append(sum(s[k] * a[n - k + 1] for k in range(1, n + 1)) // n)
    return CountSeries("polya", tuple(a[1 : K + 1]))


def unordered_counts(M: Sequence[int] | None, K: int) -> CountSeries:
    """Unordered rooted trees with all out-degrees in M (``None`` = all of ℕ)."""
    if M is None:
        return polya_counts(K)
    Ms = sorted(set(int(m) for m in M))
    if Ms[0] != 0:
        raise ValueError("0 must be in M")
    dmax = Ms[-1]
    y = [0] * (K + 1)  # y[n] = u_n
    # E[m][n] = [x^n] Z(S_m)(y(x), y(x^2), ...), filled as y becomes known
    E = [[0] * (K + 1) for _ in range(dmax + 1)]
    E[0][0] = 1

    for n in range(1, K + 1):
        y[n] = sum(E[m][n - 1] for m in Ms)
        # extend E_m to degree n:  m E_m = Σ_{j=1}^m p_j E_{m-j}
        for m in range(1, dmax + 1):
            acc = 0
            for j in range(1, m + 1):
                Em = E[m - j]
                for i in range(j, n + 1, j):
                    if Em[n - i]:
                        acc += y[i // j] * Em[n - i]
            q, r = divmod(acc, m)
            assert r == 0
            E[m][n] = q
    tag = "unordered-degrees(" + ",".join(map(str, Ms)) + ")"
    if Ms == [0, 1, 2]:
        tag = "wedderburn-etherington"
    return CountSeries(tag, tuple(y[1:]), tuple(Ms))


def _cycle_index_values(m_max: int, pv: Sequence[float]) -> list[float]:
    """Z(S_0..S_m_max) at power sums pv[1], pv[2], ..."""
    Z = [1.0]
    for m in range(1, m_max + 1):
        Z.append(sum(pv[j] * Z[m - j] for j in range(1, m + 1)) / m)
    return Z


def unordered_growth(M: Sequence[int] | None, K: int = 400, series: CountSeries | None = None):
    """Growth constant b_M = 1/ρ of unordered trees with degrees in M (per vertex).

    Returns ``(b, error, series)``.  The error combines the root-finder
    tolerance with a bound on the truncation of the y(x^j) series.
    """
    if K < 50:
        raise ValueError("need K >= 50")
    ser = series or unordered_counts(M, K)

    def s(j: int, x: float) -> float:
        return ser.evaluate(x**j)

    if M is None:
        # Pólya trees: y = x exp(Σ_j y(x^j)/j), ∂F/∂y = 1 forces y(ρ) = 1
        def g(x: float) -> float:
            tot, j = 1.0, 2
            while x**j > 1e-300:
                term = s(j, x) / j
                tot += term
                if term < 1e-18:
                    break
                j += 1
            return math.log(x) + tot

        rho = brentq(g, 0.2, 0.5, xtol=1e-16, rtol=1e-15)
        jmax = 2
    else:
        Ms = sorted(set(int(m) for m in M))
        mmax = Ms[-1]

        def eqs(v):
            x, yv = v
            pv = [0.0, yv] + [s(j, x) for j in range(2, mmax + 1)]
            Z = _cycle_index_values(mmax, pv)
            F = x * sum(Z[m] for m in Ms)
            Fy = x * sum(Z[m - 1] for m in Ms if m >= 1)  # ∂Z(S_m)/∂p_1 = Z(S_{m-1})
            return [F - yv, Fy - 1.0]

        # start from the ratio estimate
        c = ser.counts
        k = len(c) if c[-1] else len(c) - 1
        step = 1 if c[k - 2] else 2
        b0 = (c[k - 1] / c[k - 1 - step]) ** (1.0 / step) * (k / (k - step)) ** (1.5 / step)
        x0 = 1.0 / b0
        y0 = 0.5
        sol, info, ier, msg = fsolve(eqs, [x0, y0], full_output=True, xtol=1e-15)
        rho = float(sol[0])
        res = max(abs(r) for r in eqs(sol))
        if res > 1e-11:
            raise RuntimeError(f"singularity residual {res:.3g}")
        jmax = mmax
    trunc = max(ser.tail_bound(rho**j) for j in range(2, max(jmax, 2) + 1))
    b = 1.0 / rho
    err = b * b * (1e-14 + 10 * trunc) + 4 * np.finfo(float).eps * b
    return b, err, ser


def plane_counts(M: Sequence[int] | None, K: int) -> CountSeries:
    """Plane trees with degrees in M, y_n = (1/n)[x^{n-1}] Ψ(x)^n."""
    from .gw import exact_yn

    w = WeightSequence.indicator(M)
    return CountSeries("plane-degrees", tuple(int(exact_yn(n, w)) for n in range(1, K + 1)),
                       None if M is None else tuple(sorted(M)))


def restricted_plane_growth(M: Sequence[int] | None) -> float:
    """Ψ'(υ) where υΨ'(υ) = Ψ(υ) for the 0/1 weights on M."""
    w = WeightSequence.indicator(M)
    if w.kind == "geometric":
        return 4.0
    u = solve_tau(w)
    return w.Phi(u, 1)


def eta(d: int) -> float:
    """Growth constant of plane trees with maximum degree d (η_2 = 3)."""
    return restricted_plane_growth(range(d + 1))


def brute_force_unordered_counts(M: Sequence[int] | None, K: int) -> list[int]:
    """Distinct unordered codes among all plane trees with degrees in M, k = 1..K."""
    w = WeightSequence.indicator(M)
    out = []
    for k in range(1, K + 1):
        codes = {canonical_code(t, IsoNotion.UNORDERED) for t, _ in enumerate_family(k, w, bound=max(K, 9))}
        out.append(len(codes))
    return out


def growth_ratio_estimate(ser: CountSeries, order: int = 4) -> float:
    """Richardson-accelerated ratio estimate of the growth constant.

    r_k = (u_k/u_{k-1})·(k/(k-1))^{3/2} = b(1 + O(1/k²)) for aperiodic
    classes; used only as a cross-check of the singularity solve.
    """
    c = [u for u in ser.counts]
    K = len(c)
    ks = [K - i for i in range(order + 1)]
    r = [c[k - 1] / c[k - 2] * (k / (k - 1)) ** 1.5 for k in ks]
    # Richardson in 1/k² with a polynomial extrapolation to 1/k² = 0
    h = np.array([1.0 / k**2 for k in ks])
    coef = np.polyfit(h, np.array(r), order)
    return float(coef[-1])


@lru_cache(maxsize=None)
def _unordered_degree_seqs(s: int, M: tuple | None) -> tuple[tuple[int, ...], ...]:
    """Preorder degree sequences of all unordered trees with s vertices, one
    canonical plane embedding each (children in the order of this list)."""
    if s == 1:
        return ((0,),) if M is None or 0 in M else ()
    out = []
    for parts in _partitions(s - 1):
        deg = sum(r for _, r in parts)
        if M is not None and deg not in M:
            continue
        pools = [list(combinations_with_replacement(_unordered_degree_seqs(a, M), r)) for a, r in parts]
        if any(not p for p in pools):
            continue
        stack = [((deg,),)]
        for pool in pools:
            stack = [prefix + choice for prefix in stack for choice in pool]
        for combo in stack:
            out.append(tuple(x for part in combo for x in part))
    return tuple(out)


def _partitions(n: int, largest: int | None = None) -> list[list[tuple[int, int]]]:
    """Partitions of n as [(part, multiplicity), ...] with parts decreasing."""
    if n == 0:
        return [[]]
    largest = n if largest is None else largest
    out = []
    for a in range(min(n, largest), 0, -1):
        for r in range(1, n // a + 1):
            for rest in _partitions(n - a * r, a - 1):
                out.append([(a, r)] + rest)
    return out


def enumerate_unordered_trees(s: int, M: Sequence[int] | None = None) -> list[Tree]:
    """One representative per isomorphism class of unordered rooted trees."""
    key = None if M is None else tuple(sorted(set(M)))
    return [Tree(list(d)) for d in _unordered_degree_seqs(s, key)]
