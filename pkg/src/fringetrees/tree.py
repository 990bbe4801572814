"""Rooted ordered trees stored as preorder degree sequences.

A tree with ``n`` vertices is kept as its preorder out-degree sequence, which
determines the plane tree uniquely.  Slotted (d-ary) trees additionally carry,
for every non-root vertex, the slot of the edge from its parent.  Vertex ids are
preorder ranks and the root is always vertex 0.

All traversals use explicit stacks so that trees with millions of vertices can
be processed without touching the recursion limit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Tree",
    "LabeledTree",
    "TreeParseError",
    "parse_tree",
    "parse_forest",
    "serialize_tree",
    "fringe_sizes",
    "subtree_count_by_size",
    "degree_profile",
    "path_tree",
    "star_tree",
    "complete_binary_tree",
]


class TreeParseError(ValueError):
    pass


class Tree:
    """Immutable rooted ordered tree, optionally with slot labels on child edges."""

    __slots__ = ("_deg", "_slots", "arity", "_parent", "_children", "_sizes")

    def __init__(
        self,
        degrees: Sequence[int] | np.ndarray,
        slots: Sequence[int] | np.ndarray | None = None,
        arity: int | None = None,
        *,
        validate: bool = True,
    ):
        deg = np.asarray(degrees, dtype=np.int64).copy()
        deg.setflags(write=False)
        if deg.ndim != 1 or deg.size == 0:
            raise ValueError("a tree needs at least one vertex")
        if (slots is None) != (arity is None):
            raise ValueError("slots and arity must be given together")
        self._deg = deg
        self.arity = arity
        if slots is not None:
            sl = np.asarray(slots, dtype=np.int64).copy()
            sl.setflags(write=False)
            if sl.shape != deg.shape:
                raise ValueError("one slot entry per vertex is required")
            self._slots = sl
        else:
            self._slots = None
        self._parent = None
        self._children = None
        self._sizes = None
        if validate:
            self._validate()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_children(
        cls,
        children: Sequence[Sequence[int]],
        root: int = 0,
        slots: Sequence[Sequence[int]] | None = None,
        arity: int | None = None,
    ) -> tuple["Tree", list[int]]:
        """Build a tree from adjacency lists in arbitrary vertex numbering.

        Returns the tree and ``order`` with ``order[new_id] = old_id``.
        """
        order: list[int] = []
        deg: list[int] = []
        slot_out: list[int] | None = [] if slots is not None else None
        stack: list[tuple[int, int]] = [(root, -1)]
        while stack:
            v, s = stack.pop()
            order.append(v)
            ch = children[v]
            deg.append(len(ch))
            if slot_out is not None:
                slot_out.append(s)
            if slots is not None:
                sv = slots[v]
                for i in range(len(ch) - 1, -1, -1):
                    stack.append((ch[i], sv[i]))
            else:
                for i in range(len(ch) - 1, -1, -1):
                    stack.append((ch[i], -1))
        if len(order) != len(children):
            raise ValueError("children lists do not describe a single tree")
        return cls(deg, slot_out, arity), order

    def _validate(self) -> None:
        deg = self._deg
        if deg.min() < 0:
            raise ValueError("negative degree")
        n = deg.size
        if int(deg.sum()) != n - 1:
            raise ValueError("degree sum must be n - 1")
        walk = np.cumsum(deg - 1)
        if n > 1 and walk[:-1].min() < 0:
            raise ValueError("degree sequence is not a preorder encoding")
        if self._slots is not None:
            d = self.arity
            sl = self._slots.tolist()
            if d is None or d < 1:
                raise ValueError("arity must be positive")
            if deg.max() > d:
                raise ValueError("degree exceeds arity")
            for v, ch in enumerate(self.children_lists()):
                prev = -1
                for c in ch:
                    s = sl[c]
                    if not (0 <= s < d):
                        raise ValueError(f"slot {s} outside [0, {d})")
                    if s <= prev:
                        raise ValueError("child slots must be strictly increasing")
                    prev = s

    # -- basic accessors --------------------------------------------------

    @property
    def degrees(self) -> np.ndarray:
        return self._deg

    @property
    def slots(self) -> np.ndarray | None:
        return self._slots

    @property
    def root(self) -> int:
        return 0

    @property
    def is_slotted(self) -> bool:
        return self._slots is not None

    def __len__(self) -> int:
        return int(self._deg.size)

    @property
    def size(self) -> int:
        return int(self._deg.size)

    def plane(self) -> "Tree":
        """The same tree with slot labels dropped."""
        if self._slots is None:
            return self
        t = Tree(self._deg, validate=False)
        t._parent, t._children, t._sizes = self._parent, self._children, self._sizes
        return t

    def parents(self) -> list[int]:
        if self._parent is None:
            parent = [-1] * len(self)
            stack: list[list[int]] = []
            for v, d in enumerate(self._deg.tolist()):
                if stack:
                    top = stack[-1]
                    parent[v] = top[0]
                    top[1] -= 1
                    if top[1] == 0:
                        stack.pop()
                if d:
                    stack.append([v, d])
            self._parent = parent
        return self._parent

    def children_lists(self) -> list[list[int]]:
        if self._children is None:
            ch: list[list[int]] = [[] for _ in range(len(self))]
            for v, p in enumerate(self.parents()):
                if p >= 0:
                    ch[p].append(v)
            self._children = ch
        return self._children

    def children(self, v: int) -> list[int]:
        return self.children_lists()[v]

    def child_slots(self, v: int) -> list[int] | None:
        if self._slots is None:
            return None
        sl = self._slots
        return [int(sl[c]) for c in self.children_lists()[v]]

    def sizes(self) -> list[int]:
        if self._sizes is None:
            deg = self._deg.tolist()
            n = len(deg)
            sizes = [0] * n
            st: list[int] = []
            pop = st.pop
            for v in range(n - 1, -1, -1):
                s = 1
                for _ in range(deg[v]):
                    s += pop()
                st.append(s)
                sizes[v] = s
            self._sizes = sizes
        return self._sizes

    def subtree(self, v: int) -> "Tree":
        """The fringe subtree rooted at ``v`` as a standalone tree."""
        end = v + self.sizes()[v]
        sl = None
        if self._slots is not None:
            sl = self._slots[v:end].copy()
            sl[0] = -1
        return Tree(self._deg[v:end], sl, self.arity, validate=False)

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        if self.arity != other.arity or not np.array_equal(self._deg, other._deg):
            return False
        if self._slots is None:
            return other._slots is None
        return other._slots is not None and np.array_equal(self._slots[1:], other._slots[1:])

    def __hash__(self) -> int:
        h = hash(self._deg.tobytes())
        if self._slots is not None:
            h ^= hash((self.arity, self._slots[1:].tobytes()))
        return h

    def __repr__(self) -> str:
        text = serialize_tree(self) if len(self) <= 40 else f"<{len(self)} vertices>"
        return f"Tree({text!r})"


@dataclass(frozen=True)
class LabeledTree:
    """A tree shape together with an increasing labelling by 1..n.

    ``labels[v]`` is the label of preorder vertex ``v``.
    """

    shape: Tree
    labels: tuple[int, ...]

    def __post_init__(self):
        n = len(self.shape)
        if sorted(self.labels) != list(range(1, n + 1)):
            raise ValueError("labels must be a permutation of 1..n")
        par = self.shape.parents()
        for v in range(1, n):
            if self.labels[par[v]] >= self.labels[v]:
                raise ValueError("labels must increase away from the root")

    def __len__(self) -> int:
        return len(self.shape)


# -- text format ------------------------------------------------------------


def parse_tree(text: str, kind: str = "plane", arity: int | None = None) -> Tree:
    """Parse ``(()())``-style plane trees or ``[0:[] 1:[]]``-style slotted trees.

    ``kind`` is ``"plane"`` or ``"slotted"`` (``arity`` required), or the
    shorthand ``"slotted:<d>"``.
    """
    if kind.startswith("slotted"):
        if ":" in kind:
            arity = int(kind.split(":", 1)[1])
        if arity is None:
            raise ValueError("slotted trees need an arity")
        return _parse_slotted(text, arity)
    if kind != "plane":
        raise ValueError(f"unknown tree kind {kind!r}")
    return _parse_plane(text)


def _parse_plane(text: str) -> Tree:
    deg: list[int] = []
    stack: list[int] = []
    closed = False
    for ch in text:
        if ch.isspace():
            continue
        if closed:
            raise TreeParseError("trailing characters after the root closed")
        if ch == "(":
            v = len(deg)
            deg.append(0)
            if stack:
                deg[stack[-1]] += 1
            elif v:
                raise TreeParseError("more than one root")
            stack.append(v)
        elif ch == ")":
            if not stack:
                raise TreeParseError("unbalanced ')'")
            stack.pop()
            closed = not stack
        else:
            raise TreeParseError(f"unexpected character {ch!r}")
    if not deg:
        raise TreeParseError("empty input")
    if stack:
        raise TreeParseError("unbalanced '('")
    return Tree(deg, validate=False)


def _parse_slotted(text: str, arity: int) -> Tree:
    deg: list[int] = []
    slots: list[int] = []
    stack: list[int] = []
    last_slot: list[int] = []
    pending: int | None = None
    closed = False
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if closed:
            raise TreeParseError("trailing characters after the root closed")
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            k = j
            while k < n and text[k].isspace():
                k += 1
            if k >= n or text[k] != ":":
                raise TreeParseError("slot must be followed by ':'")
            if not stack or pending is not None:
                raise TreeParseError("slot outside a vertex")
            pending = int(text[i:j])
            if pending >= arity:
                raise TreeParseError(f"slot {pending} >= arity {arity}")
            if pending <= last_slot[-1]:
                raise TreeParseError("slots must be strictly increasing")
            last_slot[-1] = pending
            i = k + 1
            continue
        if ch == "[":
            v = len(deg)
            deg.append(0)
            if stack:
                if pending is None:
                    raise TreeParseError("child without a slot")
                deg[stack[-1]] += 1
                slots.append(pending)
            else:
                if v:
                    raise TreeParseError("more than one root")
                if pending is not None:
                    raise TreeParseError("root cannot carry a slot")
                slots.append(-1)
            pending = None
            stack.append(v)
            last_slot.append(-1)
        elif ch == "]":
            if not stack or pending is not None:
                raise TreeParseError("unbalanced ']'")
            stack.pop()
            last_slot.pop()
            closed = not stack
        else:
            raise TreeParseError(f"unexpected character {ch!r}")
        i += 1
    if not deg:
        raise TreeParseError("empty input")
    if stack:
        raise TreeParseError("unbalanced '['")
    return Tree(deg, slots, arity, validate=False)


def parse_forest(lines: Iterable[str], kind: str = "plane", arity: int | None = None) -> list[Tree]:
    """One tree per non-blank line; lines starting with '#' are skipped."""
    out = []
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(parse_tree(line, kind, arity))
    return out


def serialize_tree(t: Tree) -> str:
    deg = t.degrees.tolist()
    slotted = t.is_slotted
    open_, close = ("[", "]") if slotted else ("(", ")")
    sl = t.slots.tolist() if slotted else None
    parent = t.parents() if slotted else None
    out: list[str] = []
    rem: list[int] = []
    for v, d in enumerate(deg):
        if slotted and v:
            if parent[v] != v - 1:
                out.append(" ")
            out.append(f"{sl[v]}:")
        out.append(open_)
        if d:
            rem.append(d)
            continue
        out.append(close)
        while rem:
            rem[-1] -= 1
            if rem[-1]:
                break
            rem.pop()
            out.append(close)
    return "".join(out)


# -- per-vertex statistics -----------------------------------------------------


def fringe_sizes(t: Tree) -> list[int]:
    """``sizes[v] = |t(v)|`` for every preorder vertex ``v``."""
    return t.sizes()


def subtree_count_by_size(t: Tree) -> dict[int, int]:
    """Z_k(t): number of fringe subtrees with exactly k vertices."""
    return dict(sorted(Counter(t.sizes()).items()))


def degree_profile(t: Tree) -> dict[int, int]:
    """d_k(t): number of vertices with out-degree k."""
    vals, counts = np.unique(t.degrees, return_counts=True)
    return {int(k): int(c) for k, c in zip(vals, counts)}


# -- small fixtures -------------------------------------------------------------


def path_tree(n: int) -> Tree:
    return Tree([1] * (n - 1) + [0])


def star_tree(n: int) -> Tree:
    return Tree([n - 1] + [0] * (n - 1))


def complete_binary_tree(height: int, slotted: bool = False) -> Tree:
    """Perfect binary tree with ``2**height - 1`` vertices."""
    deg: list[int] = []
    slots: list[int] = []

    stack = [(height, -1)]
    while stack:
        h, s = stack.pop()
        deg.append(2 if h > 1 else 0)
        slots.append(s)
        if h > 1:
            stack.append((h - 1, 1))
            stack.append((h - 1, 0))
    if slotted:
        return Tree(deg, slots, 2)
    return Tree(deg)
