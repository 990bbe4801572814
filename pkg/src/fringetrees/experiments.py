"""Seeded Monte Carlo census of distinct fringe subtrees and comparison with theory."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .canonical import IsoNotion, count_distinct_fringe, parse_notion
from .constants import setting
from .gw import WeightSequence, offspring_distribution, parse_weight_sequence, sample_gw_tree
from .increasing import IncFamily, parse_inc_family, sample_increasing_batch, sample_increasing_tree
from .rng import make_rng
from .tree import Tree, subtree_count_by_size

__all__ = [
    "SCHEMA",
    "Family",
    "parse_family",
    "ExperimentConfig",
    "CensusRecord",
    "census_one",
    "run_census",
    "write_census",
    "read_census",
    "compare_to_theory",
    "mean_fringe_counts",
    "SETTING_TARGETS",
]

SCHEMA = "fringetrees-census/1"
CENSUS_FIELDS = ["family", "n", "replicate", "notion", "distinct_count", "seconds"]
HIST_FIELDS = ["family", "n", "replicate", "k", "z"]
HIST_CAP = 10_000
NOTION_ORDER = (IsoNotion.AS_FAMILY, IsoNotion.PLANE, IsoNotion.UNORDERED)


@dataclass(frozen=True)
class Family:
    """A sampler: simply generated (``weights``) or increasing (``inc``)."""

    descriptor: str
    weights: WeightSequence | None = None
    inc: IncFamily | None = None

    @property
    def kind(self) -> str:
        return "gw" if self.weights is not None else "inc"

    @cached_property
    def offspring(self):
        return offspring_distribution(self.weights) if self.weights is not None else None

    def admissible(self, n: int) -> bool:
        return n >= 1 and (self.weights is None or self.weights.admissible(n))

    def sample(self, n: int, rng: np.random.Generator) -> Tree:
        if self.weights is not None:
            return sample_gw_tree(n, self.weights, rng, self.offspring)
        return sample_increasing_tree(n, self.inc, rng).shape


_INC_PREFIXES = ("recursive", "bst", "inc-dary:", "gport:")


def parse_family(desc: str) -> Family:
    desc = desc.strip()
    if desc.startswith(_INC_PREFIXES):
        return Family(desc, inc=parse_inc_family(desc))
    return Family(desc, weights=parse_weight_sequence(desc))


@dataclass(frozen=True)
class ExperimentConfig:
    family: str
    sizes: tuple[int, ...]
    replicates: int
    seed: int
    notions: tuple[IsoNotion, ...] = NOTION_ORDER
    output: Path | None = None
    workers: int = 1
    hist_cap: int = HIST_CAP
    timing: bool = False

    def __post_init__(self):
        parse_family(self.family)  # fail early on a bad descriptor
        if self.replicates < 1 or not self.sizes:
            raise ValueError("need at least one size and one replicate")
        object.__setattr__(self, "notions", tuple(parse_notion(x) for x in self.notions))


@dataclass(frozen=True)
class CensusRecord:
    family: str
    n: int
    replicate: int
    counts: dict
    histogram: tuple[tuple[int, int], ...] = ()
    overflow: int = 0
    seconds: float = 0.0

    def check(self) -> None:
        """Coarsening chain and Σ_k Z_{n,k} = n."""
        chain = [self.counts[x] for x in NOTION_ORDER if x in self.counts]
        if any(a < b for a, b in zip(chain, chain[1:])):
            raise AssertionError(f"coarsening chain violated: {self.counts}")
        if self.histogram and sum(z for _, z in self.histogram) + self.overflow != self.n:
            raise AssertionError("fringe histogram does not sum to n")

    @property
    def key(self) -> tuple[int, int]:
        return self.n, self.replicate


def census_one(family: str, n: int, replicate: int, seed: int,
               notions: Sequence[IsoNotion] = NOTION_ORDER, hist_cap: int = HIST_CAP) -> CensusRecord:
    t0 = time.perf_counter()
    fam = parse_family(family)
    t = fam.sample(n, make_rng(seed, n, replicate))
    counts = {x: count_distinct_fringe(t, x) for x in notions}
    hist = subtree_count_by_size(t)
    kept = tuple((k, z) for k, z in hist.items() if k <= hist_cap)
    over = sum(z for k, z in hist.items() if k > hist_cap)
    rec = CensusRecord(family, n, replicate, counts, kept, over, time.perf_counter() - t0)
    rec.check()
    return rec


def _task(args):
    return census_one(*args)


def run_census(config: ExperimentConfig) -> list[CensusRecord]:
    """All (size, replicate) records in sorted order; writes files if configured.

    Each replicate has its own rng stream keyed by (seed, n, replicate), so
    the result does not depend on the number of workers.
    """
    fam = parse_family(config.family)
    tasks = [(config.family, n, r, config.seed, config.notions, config.hist_cap)
             for n in sorted(set(config.sizes)) if fam.admissible(n) for r in range(config.replicates)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            records = list(ex.map(_task, tasks, chunksize=1))
    else:
        records = [_task(t) for t in tasks]
    records.sort(key=lambda r: r.key)
    if config.output is not None:
        write_census(records, config.output, timing=config.timing)
    return records


def _rows(records: Iterable[CensusRecord], timing: bool):
    for rec in records:
        for x in NOTION_ORDER:
            if x in rec.counts:
                yield [rec.family, rec.n, rec.replicate, x.value, rec.counts[x],
                       f"{rec.seconds:.3f}" if timing else ""]


def _hist_rows(records: Iterable[CensusRecord], cap: int):
    for rec in records:
        for k, z in rec.histogram:
            yield [rec.family, rec.n, rec.replicate, k, z]
        if rec.overflow:
            yield [rec.family, rec.n, rec.replicate, f">{cap}", rec.overflow]


def hist_path(path: Path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".hist" + path.suffix)


def write_census(records: Sequence[CensusRecord], path: Path | str, fmt: str | None = None,
                 timing: bool = False, hist_cap: int = HIST_CAP) -> None:
    """Census table plus a histogram file next to it (``<stem>.hist<suffix>``).

    Seconds are left blank unless ``timing`` is set so that reruns are
    byte-identical.
    """
    path = Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "csv")
    for rec in records:
        rec.check()
    if fmt == "json":
        main = {"schema": SCHEMA, "records": [dict(zip(CENSUS_FIELDS, r)) for r in _rows(records, timing)]}
        hist = {"schema": SCHEMA, "histogram": [dict(zip(HIST_FIELDS, r)) for r in _hist_rows(records, hist_cap)]}
        path.write_text(json.dumps(main, indent=1) + "\n")
        hist_path(path).write_text(json.dumps(hist, indent=1) + "\n")
        return
    for target, fields, rows in ((path, CENSUS_FIELDS, _rows(records, timing)),
                                 (hist_path(path), HIST_FIELDS, _hist_rows(records, hist_cap))):
        buf = io.StringIO()
        buf.write(f"# schema {SCHEMA}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        w.writerows(rows)
        target.write_text(buf.getvalue())


def records_to_text(records: Sequence[CensusRecord], fmt: str = "csv", timing: bool = False) -> str:
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, "records": [dict(zip(CENSUS_FIELDS, r))
                                                         for r in _rows(records, timing)]}, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CENSUS_FIELDS)
    w.writerows(_rows(records, timing))
    return buf.getvalue()


def read_census(path: Path | str) -> list[CensusRecord]:
    """Counts only (histograms are not read back)."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        rows = json.loads(text)["records"]
    else:
        rows = list(csv.DictReader(line for line in text.splitlines() if not line.startswith("#")))
    grouped: dict[tuple, dict] = {}
    for r in rows:
        key = (r["family"], int(r["n"]), int(r["replicate"]))
        grouped.setdefault(key, {})[parse_notion(r["notion"])] = int(r["distinct_count"])
    return [CensusRecord(f, n, rep, c) for (f, n, rep), c in sorted(grouped.items(), key=lambda kv: kv[0][1:])]


# -- theory ---------------------------------------------------------------------------

# setting -> (family descriptor it applies to, notion counted)
SETTING_TARGETS = {
    "sg-plane:binary": ("binary", IsoNotion.PLANE),
    "sg-plane:labelled": ("labelled", IsoNotion.PLANE),
    "sg-unordered:binary": ("binary", IsoNotion.UNORDERED),
    "sg-unordered:fullbinary": ("fullbinary", IsoNotion.UNORDERED),
    "sg-unordered:labelled": ("labelled", IsoNotion.UNORDERED),
    "inc-plane:bst": ("bst", IsoNotion.PLANE),
    "inc-unordered:bst": ("bst", IsoNotion.UNORDERED),
    "inc-unordered:recursive": ("recursive", IsoNotion.UNORDERED),
}


def _target(name: str) -> tuple[str, IsoNotion]:
    if name in SETTING_TARGETS:
        return SETTING_TARGETS[name]
    kind, _, fam = name.partition(":")
    if kind in ("sg-family", "inc-family"):
        return fam, IsoNotion.AS_FAMILY
    raise KeyError(f"unknown setting {name!r}")


def compare_to_theory(records: Sequence[CensusRecord], setting_name: str) -> list[dict]:
    """Per size: normalized mean and median count against the setting's band.

    The normalization is √(ln n)/n for simply generated families and ln n/n
    for increasing ones; full binary trees are measured in leaves.
    """
    fam, notion = _target(setting_name)
    want = parse_family(fam)
    s = setting(setting_name)
    lo, hi = s.lower[0], s.upper[0]
    by_n: dict[int, list[int]] = {}
    for rec in records:
        got = parse_family(rec.family)
        if (got.weights, got.inc) != (want.weights, want.inc):
            raise ValueError(f"setting {setting_name} applies to {fam}, not {rec.family}")
        if notion not in rec.counts:
            raise ValueError(f"records lack {notion.value} counts")
        by_n.setdefault(rec.n, []).append(rec.counts[notion])
    out = []
    for n in sorted(by_n):
        size = (n + 1) / 2 if s.size_factor != 1 else n
        norm = (math.sqrt(math.log(size)) if s.scale == "sqrt" else math.log(size)) / size
        vals = np.array(by_n[n], dtype=float)
        med, mean = float(np.median(vals)) * norm, float(vals.mean()) * norm
        out.append({
            "setting": setting_name, "n": n, "replicates": len(vals),
            "mean": mean, "median": med, "lower": lo, "upper": hi,
            "inside": lo <= med <= hi,
            "distance": max(lo - med, med - hi, 0.0),
        })
    return out


# -- fringe-count means -----------------------------------------------------------------


def _parent_sizes(parent: np.ndarray) -> np.ndarray:
    """Subtree sizes from parent arrays whose parents precede their children."""
    m, n = parent.shape
    sizes = np.ones((m, n), dtype=np.int64)
    rows = np.arange(m)
    for j in range(n - 1, 0, -1):
        sizes[rows, parent[:, j]] += sizes[:, j]
    return sizes


def mean_fringe_counts(family: str, n: int, ks: Sequence[int], samples: int, seed: int,
                       chunk: int = 10_000) -> tuple[np.ndarray, np.ndarray]:
    """Monte Carlo mean and standard error of Z_{n,k} for each k in ``ks``."""
    fam = parse_family(family)
    ks = np.asarray(ks)
    tot = np.zeros(len(ks))
    tot2 = np.zeros(len(ks))
    if fam.kind == "inc":
        done, c = 0, 0
        while done < samples:
            m = min(chunk, samples - done)
            b = sample_increasing_batch(n, fam.inc, m, make_rng(seed, n, c))
            sz = _parent_sizes(b.parent)
            z = (sz[:, :, None] == ks[None, None, :]).sum(axis=1)
            tot += z.sum(axis=0)
            tot2 += (z.astype(float) ** 2).sum(axis=0)
            done += m
            c += 1
    else:
        rng = make_rng(seed, n)
        for _ in range(samples):
            t = fam.sample(n, rng)
            h = np.bincount(np.asarray(t.sizes()), minlength=int(ks.max()) + 1)
            z = h[ks]
            tot += z
            tot2 += z.astype(float) ** 2
    mean = tot / samples
    var = np.maximum(tot2 / samples - mean**2, 0.0) * samples / max(samples - 1, 1)
    return mean, np.sqrt(var / samples)
