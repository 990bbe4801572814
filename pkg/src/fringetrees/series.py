"""Compensated summation of slowly convergent series with rigorous tail brackets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad

__all__ = ["ConstantResult", "series_sum", "TailBoundError"]

EPS = np.finfo(float).eps


class TailBoundError(ValueError):
    pass


@dataclass(frozen=True)
class ConstantResult:
    """A computed constant with an absolute error bound."""

    id: str
    value: float
    error: float
    method: str
    inputs: dict = field(default_factory=dict)
    published: float | None = None
    notes: str = ""

    @property
    def interval(self) -> tuple[float, float]:
        return self.value - self.error, self.value + self.error

    def contains(self, x: float, slack: float = 0.0) -> bool:
        lo, hi = self.interval
        return lo - slack <= x <= hi + slack

    def deviation(self) -> float | None:
        return None if self.published is None else abs(self.value - self.published)

    def as_row(self) -> dict:
        return {
            "id": self.id,
            "value": self.value,
            "error": self.error,
            "published": self.published,
            "method": self.method,
        }


def _tail_integral(f: Callable[[float], float], a: float) -> tuple[float, float]:
    """∫_a^∞ f(x) dx via x = a/u, which maps the tail onto (0, 1]."""

    def g(u: float) -> float:
        return f(a / u) * a / (u * u) if u > 0 else 0.0

    val, err = quad(g, 0.0, 1.0, epsabs=1e-22, epsrel=1e-13, limit=200)
    return val, err


def series_sum(
    term: Callable[[np.ndarray], np.ndarray],
    start: int = 1,
    cutoff: int = 10**7,
    tail: bool = True,
    chunk: int = 10**6,
    name: str = "series",
) -> ConstantResult:
    """Σ_{k ≥ start} term(k), summed exactly-rounded up to ``cutoff``.

    ``term`` must accept a float array.  With ``tail=True`` the remainder is
    bracketed by ∫_{K+1}^∞ and ∫_K^∞ of the term, valid once the term is
    monotone; the midpoint is added and the half-width counted as error.
    With ``tail=False`` the series is finite and ends at ``cutoff``.
    """
    if cutoff < start:
        return ConstantResult(name, 0.0, 0.0, "empty sum")
    parts = []
    abs_total = 0.0
    for lo in range(start, cutoff + 1, chunk):
        hi = min(cutoff, lo + chunk - 1)
        k = np.arange(lo, hi + 1, dtype=np.float64)
        v = np.asarray(term(k), dtype=np.float64)
        parts.append(math.fsum(v))
        abs_total += float(np.abs(v).sum())
    partial = math.fsum(parts)
    err = 4 * EPS * abs_total
    method = f"fsum to {cutoff}"
    if tail:
        def f(x: float) -> float:
            return float(np.asarray(term(np.array([x])))[0])

        K = float(cutoff)
        probes = [f(K * s) for s in (1.0, 1.0 + 1e-3, 2.0, 10.0, 1e3)]
        diffs = np.diff(probes)
        if not (np.all(diffs <= 0) or np.all(diffs >= 0)) or abs(probes[-1]) > abs(probes[0]):
            raise TailBoundError(f"{name}: term is not monotone beyond the cutoff")
        upper, e1 = _tail_integral(f, K)
        lower, e2 = _tail_integral(f, K + 1.0)
        lo_t, hi_t = min(lower, upper), max(lower, upper)
        partial += 0.5 * (lo_t + hi_t)
        err += 0.5 * (hi_t - lo_t) + e1 + e2
        method += " + integral tail bracket"
    return ConstantResult(name, float(partial), float(err), method)
