"""Isomorphism classes of fringe subtrees.

Every vertex gets an integer class id by bottom-up interning: the key of a
vertex is the sequence of its children's ids (with slots for ``AS_FAMILY``,
sorted for ``UNORDERED``).  The interning table *is* the minimal DAG, so the
number of distinct fringe subtrees is just the table size.
"""

from __future__ import annotations

import enum
import hashlib
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .tree import Tree, serialize_tree

__all__ = [
    "IsoNotion",
    "CanonicalCode",
    "DagNode",
    "MinimalDag",
    "parse_notion",
    "intern_ids",
    "canonical_code",
    "build_minimal_dag",
    "count_distinct_fringe",
    "fringe_code_strings",
    "automorphism_size",
    "automorphism_size_log",
    "plane_embeddings",
    "plane_embeddings_log",
    "sibling_factorial_logs",
]


class IsoNotion(enum.Enum):
    AS_FAMILY = "asfamily"
    PLANE = "plane"
    UNORDERED = "unordered"

    def __str__(self) -> str:
        return self.value


def parse_notion(name: str | IsoNotion) -> IsoNotion:
    if isinstance(name, IsoNotion):
        return name
    key = name.strip().lower().replace("-", "").replace("_", "")
    for notion in IsoNotion:
        if notion.value == key:
            return notion
    raise ValueError(f"unknown isomorphism notion {name!r}")


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes
    notion: IsoNotion

    def digest(self, size: int = 8) -> str:
        return hashlib.blake2b(self.code, digest_size=size).hexdigest()


def _uses_slots(t: Tree, notion: IsoNotion) -> bool:
    return notion is IsoNotion.AS_FAMILY and t.is_slotted


def intern_ids(t: Tree, notion: IsoNotion | str) -> tuple[list[int], list[tuple]]:
    """Class id of every vertex plus the key of every class.

    Keys are tuples of child ids (``(slot, id)`` pairs when slots matter).
    Ids are assigned in order of first appearance in reverse preorder, so a
    child's id is always smaller than its parent's.
    """
    notion = parse_notion(notion)
    deg = t.degrees.tolist()
    n = len(deg)
    ids = [0] * n
    keys: list[tuple] = []
    table: dict[tuple, int] = {}
    st: list = []
    push = st.append
    slotted = _uses_slots(t, notion)
    sl = t.slots.tolist() if slotted else None
    unordered = notion is IsoNotion.UNORDERED
    for v in range(n - 1, -1, -1):
        d = deg[v]
        if d:
            # the stack top is the first child
            ch = st[-d:]
            del st[-d:]
            ch.reverse()
            key = tuple(sorted(ch)) if unordered else tuple(ch)
        else:
            key = ()
        i = table.get(key)
        if i is None:
            i = len(keys)
            table[key] = i
            keys.append(key)
        ids[v] = i
        push((sl[v], i) if slotted else i)
    return ids, keys


def count_distinct_fringe(t: Tree, notion: IsoNotion | str) -> int:
    return len(intern_ids(t, notion)[1])


@dataclass(frozen=True)
class DagNode:
    children: tuple[tuple[int | None, int], ...]
    multiplicity: int
    size: int


@dataclass
class MinimalDag:
    """Shared-subtree graph: one node per isomorphism class of fringe subtrees."""

    notion: IsoNotion
    nodes: list[DagNode]
    root: int
    arity: int | None = None
    _ranks: list[int] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def canonical_ranks(self) -> list[int]:
        """Isomorphism-invariant total order on the classes present.

        Classes are compared by size, then by their (canonically ordered)
        sequence of child ranks; comparing child ranks is consistent because
        children are strictly smaller.
        """
        if self._ranks is None:
            by_size: dict[int, list[int]] = {}
            for i, node in enumerate(self.nodes):
                by_size.setdefault(node.size, []).append(i)
            ranks = [0] * len(self.nodes)
            nxt = 0
            unordered = self.notion is IsoNotion.UNORDERED
            for s in sorted(by_size):
                def sort_key(i: int):
                    ch = [(-1 if sl is None else sl, ranks[c]) for sl, c in self.nodes[i].children]
                    return sorted(ch) if unordered else ch
                for i in sorted(by_size[s], key=sort_key):
                    ranks[i] = nxt
                    nxt += 1
            self._ranks = ranks
        return self._ranks

    def _ordered_children(self, i: int) -> list[tuple[int | None, int]]:
        ch = list(self.nodes[i].children)
        if self.notion is IsoNotion.UNORDERED:
            ranks = self.canonical_ranks()
            ch.sort(key=lambda sc: ranks[sc[1]])
        return ch

    def code(self, i: int | None = None) -> CanonicalCode:
        """Unfold node ``i`` (default: the root) into its canonical code."""
        i = self.root if i is None else i
        slotted = self.notion is IsoNotion.AS_FAMILY and self.arity is not None
        open_, close = ("[", "]") if slotted else ("(", ")")
        out: list[str] = []
        stack: list = [(None, i, True)]
        while stack:
            item = stack.pop()
            if item is None:
                out.append(close)
                continue
            slot, node, first = item
            if slotted and slot is not None:
                if not first:
                    out.append(" ")
                out.append(f"{slot}:")
            out.append(open_)
            stack.append(None)
            ch = self._ordered_children(node)
            for j in range(len(ch) - 1, -1, -1):
                stack.append((ch[j][0], ch[j][1], j == 0))
        return CanonicalCode("".join(out).encode(), self.notion)

    def digests(self, size: int = 8) -> list[str]:
        """Merkle digests of every node's canonical code (children hashed, not unfolded)."""
        ranks = self.canonical_ranks() if self.notion is IsoNotion.UNORDERED else None
        out: list[str] = [""] * len(self.nodes)
        tag = self.notion.value.encode()
        for i, node in enumerate(self.nodes):  # children always precede parents
            ch = list(node.children)
            if ranks is not None:
                ch.sort(key=lambda sc: ranks[sc[1]])
            h = hashlib.blake2b(tag, digest_size=size)
            for sl, c in ch:
                h.update(b"|" + (b"" if sl is None else str(sl).encode()) + b":" + out[c].encode())
            out[i] = h.hexdigest()
        return out

    def write(self, fh: TextIO) -> None:
        """Export as ``id code_hash multiplicity [slot:child_id ...]`` lines."""
        fh.write(f"# notion={self.notion.value} nodes={len(self.nodes)}\n")
        fh.write(f"root {self.root}\n")
        for i, (node, dg) in enumerate(zip(self.nodes, self.digests())):
            ch = " ".join(f"{'-' if s is None else s}:{c}" for s, c in node.children)
            fh.write(f"{i} {dg} {node.multiplicity} [{ch}]\n")


def build_minimal_dag(t: Tree, notion: IsoNotion | str) -> MinimalDag:
    notion = parse_notion(notion)
    ids, keys = intern_ids(t, notion)
    mult = Counter(ids)
    slotted = _uses_slots(t, notion)
    nodes = []
    sizes: list[int] = []
    for i, key in enumerate(keys):
        if slotted:
            children = tuple((s, c) for s, c in key)
        else:
            children = tuple((None, c) for c in key)
        s = 1 + sum(sizes[c] for _, c in children)
        sizes.append(s)
        nodes.append(DagNode(children, mult[i], s))
    return MinimalDag(notion, nodes, ids[0], t.arity if slotted else None)


def canonical_code(t: Tree, notion: IsoNotion | str) -> CanonicalCode:
    notion = parse_notion(notion)
    if notion is IsoNotion.UNORDERED:
        return build_minimal_dag(t, notion).code()
    if notion is IsoNotion.PLANE:
        return CanonicalCode(serialize_tree(t.plane()).encode(), notion)
    return CanonicalCode(serialize_tree(t).encode(), notion)


def fringe_code_strings(t: Tree, notion: IsoNotion | str) -> list[str]:
    """Reference implementation: an explicit code string for every vertex.

    Unordered codes sort the child strings lexicographically (AHU).  Quadratic
    in the worst case; meant as an oracle for small trees.
    """
    notion = parse_notion(notion)
    slotted = _uses_slots(t, notion)
    sl = t.slots.tolist() if slotted else None
    deg = t.degrees.tolist()
    n = len(deg)
    codes = [""] * n
    st: list[str] = []
    for v in range(n - 1, -1, -1):
        d = deg[v]
        ch = st[-d:] if d else []
        if d:
            del st[-d:]
            ch.reverse()
        if notion is IsoNotion.UNORDERED:
            ch.sort()
        codes[v] = ("[" + " ".join(ch) + "]") if slotted else ("(" + "".join(ch) + ")")
        st.append(f"{sl[v]}:{codes[v]}" if slotted else codes[v])
    return codes


# -- automorphisms ---------------------------------------------------------------


def sibling_factorial_logs(t: Tree, ids: list[int] | None = None) -> list[float]:
    """ln(m_1! m_2! ...) at every vertex, m_i = multiplicities of isomorphic children."""
    if ids is None:
        ids = intern_ids(t, IsoNotion.UNORDERED)[0]
    out = [0.0] * len(t)
    lg = math.lgamma
    for v, ch in enumerate(t.children_lists()):
        if len(ch) > 1:
            c = Counter(ids[u] for u in ch)
            if len(c) < len(ch):
                out[v] = sum(lg(m + 1) for m in c.values() if m > 1)
    return out


def automorphism_size_log(t: Tree) -> float:
    """ln |Aut(t)| of ``t`` viewed as an unordered rooted tree."""
    return math.fsum(sibling_factorial_logs(t))


def automorphism_size(t: Tree) -> int:
    """Exact |Aut(t)| as a big integer via Π_j |Aut(t_j)| · Π_i m_i!."""
    ids, keys = intern_ids(t, IsoNotion.UNORDERED)
    aut: list[int] = []
    for key in keys:
        a = 1
        for c in key:
            a *= aut[c]
        for m in Counter(key).values():
            a *= math.factorial(m)
        aut.append(a)
    return aut[ids[0]]


def plane_embeddings_log(t: Tree) -> float:
    """ln(Π_v deg(v)! / |Aut(t)|): number of plane trees with t's unordered shape."""
    lg = math.lgamma
    s = math.fsum(lg(d + 1) for d in t.degrees.tolist() if d > 1)
    return s - automorphism_size_log(t)


def plane_embeddings(t: Tree) -> int:
    num = 1
    for d in t.degrees.tolist():
        num *= math.factorial(d)
    q, r = divmod(num, automorphism_size(t))
    assert r == 0
    return q


def distinct_counts(t: Tree, notions: Iterable[IsoNotion | str]) -> dict[IsoNotion, int]:
    return {parse_notion(x): count_distinct_fringe(t, x) for x in notions}
