"""Command line interface: ``fringetrees <subcommand> ...``.

Exit codes: 0 success, 2 usage error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from collections import defaultdict
from fractions import Fraction
from pathlib import Path

from .canonical import IsoNotion, build_minimal_dag, canonical_code, parse_notion
from .constants import constant_ids, theorem_constant
from .experiments import (
    ExperimentConfig,
    compare_to_theory,
    parse_family,
    read_census,
    records_to_text,
    run_census,
)
from .gw import enumerate_family, enumerate_slotted
from .increasing import enumerate_increasing
from .rng import make_rng
from .tree import TreeParseError, parse_forest, serialize_tree

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 2, 3


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(float(x)) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _notions(text: str) -> list[IsoNotion]:
    try:
        return [parse_notion(x) for x in text.split(",") if x]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _family(desc: str):
    try:
        return parse_family(desc)
    except (ValueError, KeyError) as e:
        raise UsageError(f"bad family descriptor {desc!r}: {e}")


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=1, default=float)
        out.write("\n")
        return
    if not rows:
        return
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


# -- subcommands ---------------------------------------------------------------------


def cmd_sample(a, out) -> int:
    fam = _family(a.family)
    if not fam.admissible(a.n):
        raise UsageError(f"{a.family} has no trees with {a.n} vertices")
    rng = make_rng(a.seed)
    for _ in range(a.count):
        if fam.kind == "inc" and a.labels:
            from .increasing import sample_increasing_tree

            lt = sample_increasing_tree(a.n, fam.inc, rng)
            out.write(serialize_tree(lt.shape) + "\t" + " ".join(map(str, lt.labels)) + "\n")
        else:
            out.write(serialize_tree(fam.sample(a.n, rng)) + "\n")
    return EXIT_OK


def cmd_census(a, out) -> int:
    _family(a.family)
    cfg = ExperimentConfig(a.family, tuple(a.sizes), a.replicates, a.seed, tuple(a.notions),
                           Path(a.output) if a.output else None, a.workers, timing=a.timing)
    recs = run_census(cfg)
    if not a.output:
        out.write(records_to_text(recs, a.format, a.timing))
    return EXIT_OK


def cmd_dag(a, out) -> int:
    notion = parse_notion(a.notion)
    try:
        trees = parse_forest(a.input or sys.stdin, kind=a.kind)
    except TreeParseError as e:
        raise UsageError(f"cannot parse input: {e}")
    rows = []
    for i, t in enumerate(trees):
        dag = build_minimal_dag(t, notion)
        if a.dump:
            dag.write(out)
            continue
        rows.append({"tree": i, "size": len(t), "notion": notion.value, "dag_nodes": len(dag),
                     "code_hash": dag.digests()[dag.root]})
    _emit(rows, a.format, out)
    return EXIT_OK


def cmd_enumerate(a, out) -> int:
    fam = _family(a.family)
    notion = parse_notion(a.notion)
    if fam.kind == "gw":
        w = fam.weights
        if w.arity is not None:
            pairs = [(t, Fraction(1)) for t in enumerate_slotted(a.n, w.arity, bound=a.bound)]
        else:
            pairs = enumerate_family(a.n, w, bound=a.bound)
    else:
        pairs = [(lt.shape, p) for lt, p in enumerate_increasing(a.n, fam.inc, bound=a.bound)]
    total = sum(p for _, p in pairs)
    agg: dict = defaultdict(Fraction)
    rep = {}
    for t, p in pairs:
        c = canonical_code(t, notion)
        agg[c] += p / total
        rep.setdefault(c, t)
    rows = [{"tree": serialize_tree(rep[c]), "probability": str(p), "float": float(p)}
            for c, p in sorted(agg.items(), key=lambda kv: (-kv[1], serialize_tree(rep[kv[0]])))]
    _emit(rows, a.format, out)
    return EXIT_OK


def cmd_constants(a, out) -> int:
    ids = a.id or constant_ids()
    rows = []
    for i in ids:
        try:
            r = theorem_constant(i)
        except KeyError as e:
            raise UsageError(str(e))
        rows.append({"id": i, "value": f"{r.value:.12g}", "error": f"{r.error:.2e}",
                     "published": "" if r.published is None else repr(r.published), "method": r.method})
    _emit(rows, a.format, out)
    return EXIT_OK


def _compare_rows(rows):
    return [{k: (f"{v:.6f}" if isinstance(v, float) else v) for k, v in r.items()} for r in rows]


def cmd_experiment(a, out) -> int:
    _family(a.family)
    cfg = ExperimentConfig(a.family, tuple(a.sizes), a.replicates, a.seed, workers=a.workers,
                           output=Path(a.output) if a.output else None)
    recs = run_census(cfg)
    _emit(_compare_rows(compare_to_theory(recs, a.setting)), a.format, out)
    return EXIT_OK


def cmd_compare(a, out) -> int:
    try:
        recs = read_census(a.input)
    except (OSError, KeyError, ValueError) as e:
        raise UsageError(f"cannot read census {a.input}: {e}")
    try:
        rows = compare_to_theory(recs, a.setting)
    except (KeyError, ValueError) as e:
        raise UsageError(str(e))
    _emit(_compare_rows(rows), a.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fringetrees", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("sample", help="sample random trees, one per line")
    s.add_argument("--family", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--labels", action="store_true", help="also print increasing labels")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("census", help="distinct fringe subtree counts")
    s.add_argument("--family", required=True)
    s.add_argument("--sizes", type=_ints, required=True)
    s.add_argument("--replicates", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--notions", type=_notions, default=list(IsoNotion))
    s.add_argument("--output")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--timing", action="store_true", help="fill the seconds column")
    fmt(s)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("dag", help="minimal DAG of each tree read from input")
    s.add_argument("--notion", default="asfamily")
    s.add_argument("--kind", default="plane", help="plane | slotted:<d>")
    s.add_argument("--input", type=argparse.FileType("r"))
    s.add_argument("--dump", action="store_true", help="write the DAG nodes instead of counts")
    fmt(s)
    s.set_defaults(func=cmd_dag)

    s = sub.add_parser("enumerate", help="exact shape distribution for small n")
    s.add_argument("--family", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--notion", default="asfamily")
    s.add_argument("--bound", type=int, default=9)
    fmt(s)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("constants", help="table of asymptotic constants")
    s.add_argument("--id", action="append")
    fmt(s)
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("experiment", help="census followed by a comparison with a theoretical band")
    s.add_argument("--family", required=True)
    s.add_argument("--setting", required=True)
    s.add_argument("--sizes", type=_ints, required=True)
    s.add_argument("--replicates", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--output")
    fmt(s)
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("compare", help="compare a census file with a theoretical band")
    s.add_argument("--input", required=True)
    s.add_argument("--setting", required=True)
    fmt(s)
    s.set_defaults(func=cmd_compare)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        return a.func(a, out)
    except UsageError as e:
        print(f"fringetrees {a.cmd}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:  # noqa: BLE001
        print(f"fringetrees {a.cmd}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
