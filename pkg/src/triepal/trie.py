"""Input tries, alphabet normalization and root-ward character access.

Path labels are read leaf-to-root: ``suf(v)`` is the string spelled by the
edges from ``v`` up to the root.  Characters are replaced by their rank in
the sorted alphabet (``1..sigma``); rank ``0`` is reserved for the end
marker ``$`` placed above the root.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

SENTINEL_RANK = 0
SENTINEL_CHAR = "$"


def int_view(a) -> memoryview:
    """Zero-copy, list-speed element access to an integer array."""
    return memoryview(np.ascontiguousarray(a, dtype=np.int64))


class TrieInputError(ValueError):
    """Malformed trie input (bad edge list, empty string, ...)."""


class DuplicateLabelError(TrieInputError):
    def __init__(self, rank: int, node: int, char: str = None):
        self.rank, self.node = rank, node
        super().__init__(f"duplicate sibling label {char if char is not None else rank} at node {node}")


@dataclass(frozen=True)
class CharTable:
    """Bijection between input characters and ranks ``1..sigma``."""

    chars: tuple

    @classmethod
    def from_chars(cls, chars: Iterable[str]) -> "CharTable":
        return cls(tuple(sorted(set(chars))))

    @property
    def sigma(self) -> int:
        return len(self.chars)

    def rank(self, ch: str) -> int:
        # ranks are small, a dict would be rebuilt per call otherwise
        lo, hi = 0, len(self.chars)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.chars[mid] < ch:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(self.chars) or self.chars[lo] != ch:
            raise KeyError(ch)
        return lo + 1

    def char(self, rank: int) -> str:
        if rank == SENTINEL_RANK:
            return SENTINEL_CHAR
        return self.chars[rank - 1]

    def decode(self, ranks: Iterable[int]) -> str:
        return "".join(self.char(r) for r in ranks)

    def encode(self, s: str) -> list:
        mapping = {c: i + 1 for i, c in enumerate(self.chars)}
        return [mapping[c] for c in s]


class LevelAncestorIndex:
    """Constant-time level ancestor queries (jump pointers + ladders).

    ``parent`` must map the root to itself.  ``jumps[j][v]`` is the
    ``2**j``-th ancestor of ``v`` (saturating at the root).
    """

    def __init__(self, parent: np.ndarray, depth: np.ndarray):
        m = len(parent)
        self.depth = depth
        max_depth = int(depth.max()) if m else 0
        self.jumps = [parent.astype(np.int64)]
        while (1 << len(self.jumps)) <= max_depth:
            prev = self.jumps[-1]
            self.jumps.append(prev[prev])
        self._build_ladders(parent, depth)

    def _build_ladders(self, parent: np.ndarray, depth: np.ndarray) -> None:
        m = len(parent)
        order = np.argsort(depth, kind="stable").tolist()
        par = parent.tolist()
        height = [0] * m
        best = [-1] * m
        for v in reversed(order):
            p = par[v]
            if p == v:
                continue
            if best[p] < 0 or height[v] > height[best[p]]:
                best[p] = v
                height[p] = height[v] + 1
        flat: list = []
        where = [0] * m
        for top in order:
            p = par[top]
            if p != top and best[p] == top:
                continue
            path = []
            v = top
            while v >= 0:
                path.append(v)
                v = best[v]
            above = []
            u = top
            for _ in range(len(path)):
                if par[u] == u:
                    break
                u = par[u]
                above.append(u)
            flat.extend(reversed(above))
            base = len(flat)
            for i, v in enumerate(path):
                where[v] = base + i
            flat.extend(path)
        self._flat = flat
        self._where = where

    def ancestor(self, v: int, d: int) -> int:
        """Ancestor of ``v`` at depth ``d`` (``0 <= d <= depth(v)``)."""
        k = int(self.depth[v]) - d
        if k < 0:
            raise ValueError(f"depth {d} below node {v}")
        if k == 0:
            return v
        j = k.bit_length() - 1
        u = int(self.jumps[j][v])
        return self._flat[self._where[u] - (k - (1 << j))]

    def ancestors_at(self, nodes: np.ndarray, depths: np.ndarray) -> np.ndarray:
        """Vectorized level ancestor by binary lifting."""
        out = np.asarray(nodes, dtype=np.int64).copy()
        up = self.depth[out] - np.asarray(depths)
        if (up < 0).any():
            raise ValueError("requested depth below node")
        for j, table in enumerate(self.jumps):
            sel = (up >> j) & 1 == 1
            if sel.any():
                out[sel] = table[out[sel]]
        return out


class Trie:
    """Rooted edge-labeled tree with distinct sibling labels.

    Arrays are indexed by node id.  ``label[v]`` is the rank on the edge from
    ``v`` to its parent (``0`` for the root); ``parent[root] == -1``.
    Children are kept in CSR form sorted by label.
    """

    def __init__(self, parent: Sequence[int], label: Sequence[int], root: int = 0):
        self.parent = np.asarray(parent, dtype=np.int64)
        self.label = np.asarray(label, dtype=np.int64)
        self.root = root
        m = len(self.parent)
        if m == 0:
            raise TrieInputError("trie has no nodes")
        self.label[root] = SENTINEL_RANK
        self._validate()
        self._la = None

    @property
    def node_count(self) -> int:
        return len(self.parent)

    @property
    def n(self) -> int:
        """Number of edges."""
        return len(self.parent) - 1

    @property
    def leaf_count(self) -> int:
        return int(self.leaf_flags.sum())

    def _validate(self) -> None:
        m = len(self.parent)
        par = self.parent
        nonroot = np.ones(m, dtype=bool)
        nonroot[self.root] = False
        if par[self.root] != -1:
            raise TrieInputError("not a tree: root has a parent")
        bad = nonroot & ((par < 0) | (par >= m))
        if bad.any():
            raise TrieInputError(f"not a tree: node {int(np.flatnonzero(bad)[0])} has no valid parent")
        kids = np.flatnonzero(nonroot)
        if (self.label[kids] <= 0).any():
            v = int(kids[self.label[kids] <= 0][0])
            raise TrieInputError(f"node {v} has a reserved label")
        order = np.lexsort((self.label[kids], par[kids]))
        kids = kids[order]
        kpar = par[kids]
        klab = self.label[kids]
        dup = (kpar[1:] == kpar[:-1]) & (klab[1:] == klab[:-1])
        if dup.any():
            i = int(np.flatnonzero(dup)[0])
            raise DuplicateLabelError(int(klab[i]), int(kpar[i]))
        counts = np.bincount(kpar, minlength=m)
        self.child_ptr = np.zeros(m + 1, dtype=np.int64)
        np.cumsum(counts, out=self.child_ptr[1:])
        self.child_ids = kids
        # depths by pointer jumping; a node that never reaches the root sits
        # on a cycle
        root = self.root
        nxt = par.copy()
        nxt[root] = root
        depth = nonroot.astype(np.int64)
        for _ in range(max(1, m.bit_length() + 1)):
            if (nxt == root).all():
                break
            depth += np.where(nxt == root, 0, depth[nxt])
            nxt = nxt[nxt]
        if not (nxt == root).all():
            raise TrieInputError("not a tree: some nodes are unreachable from the root")
        self.depth = depth
        self.leaf_flags = (counts == 0) & nonroot

    def children(self, v: int) -> list:
        """Children of ``v`` as ``(rank, node)`` sorted by rank."""
        ids = self.child_ids[self.child_ptr[v]:self.child_ptr[v + 1]]
        return [(int(self.label[u]), int(u)) for u in ids]

    def childchar(self, v: int) -> list:
        ids = self.child_ids[self.child_ptr[v]:self.child_ptr[v + 1]]
        return self.label[ids].tolist()

    @property
    def height(self) -> int:
        return int(self.depth.max())

    @property
    def level_ancestors(self) -> LevelAncestorIndex:
        if self._la is None:
            par = self.parent.copy()
            par[self.root] = self.root
            self._la = LevelAncestorIndex(par, self.depth)
        return self._la

    def level_ancestor(self, v: int, d: int) -> int:
        return self.level_ancestors.ancestor(v, d)

    def path_char(self, v: int, k: int) -> int:
        """k-th character (1-based) of ``suf(v)``."""
        dv = int(self.depth[v])
        if not 1 <= k <= dv:
            raise IndexError(f"position {k} outside suf({v}) of length {dv}")
        return int(self.label[self.level_ancestor(v, dv - k + 1)])

    def suffix_ranks(self, v: int) -> list:
        """``suf(v)`` by walking parent pointers."""
        par, lab = int_view(self.parent), int_view(self.label)
        out = []
        while v != self.root:
            out.append(lab[v])
            v = par[v]
        return out

    def preorder(self) -> np.ndarray:
        """Node ids in DFS preorder with children visited by label."""
        ptr = self.child_ptr.tolist()
        kids = self.child_ids.tolist()
        out = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(kids[ptr[v]:ptr[v + 1]]))
        return np.asarray(out, dtype=np.int64)


def build_from_strings(lines: Iterable[str]) -> tuple:
    """Trie whose leaf-to-root paths spell the given strings.

    Each string is inserted reversed starting at the root, so strings with a
    common suffix share nodes.  Node ids follow creation order.
    """
    lines = list(lines)
    for i, s in enumerate(lines, 1):
        if not s:
            raise TrieInputError(f"line {i}: empty string")
    table = CharTable.from_chars(c for s in lines for c in s)
    mapping = {c: i + 1 for i, c in enumerate(table.chars)}
    parent = [-1]
    label = [SENTINEL_RANK]
    edges: dict = {}
    for s in lines:
        v = 0
        for ch in reversed(s):
            key = (v, mapping[ch])
            u = edges.get(key)
            if u is None:
                u = len(parent)
                edges[key] = u
                parent.append(v)
                label.append(key[1])
            v = u
    return Trie(parent, label), table


def build_from_edgelist(edges: Iterable[tuple]) -> tuple:
    """Trie from ``(child, parent, char)`` triples; ids are ``0..n`` with root 0."""
    edges = list(edges)
    n = len(edges)
    parent = [-1] * (n + 1)
    label = [SENTINEL_RANK] * (n + 1)
    table = CharTable.from_chars(str(e[2]) for e in edges)
    mapping = {c: i + 1 for i, c in enumerate(table.chars)}
    for child, par, ch in edges:
        if not (0 <= child <= n and 0 <= par <= n) or child == 0:
            raise TrieInputError("not a tree: node ids must be 0..n with root 0")
        if parent[child] != -1:
            raise TrieInputError(f"not a tree: node {child} has two parents")
        parent[child] = par
        label[child] = mapping[str(ch)]
    try:
        trie = Trie(parent, label)
    except DuplicateLabelError as exc:
        raise DuplicateLabelError(exc.rank, exc.node, table.char(exc.rank)) from None
    return trie, table


def read_strings(path_or_lines) -> tuple:
    """Parse a strings file (one string per line)."""
    if isinstance(path_or_lines, (list, tuple)):
        lines = list(path_or_lines)
    else:
        with open(path_or_lines, encoding="utf-8") as fh:
            lines = fh.read().split("\n")
        if lines and lines[-1] == "":
            lines.pop()
    if not lines:
        raise TrieInputError("line 1: no strings")
    return build_from_strings(lines)


def read_edgelist(path_or_lines) -> tuple:
    """Parse an edge-list file: ``n`` then ``child<TAB>parent<TAB>char`` lines."""
    if isinstance(path_or_lines, (list, tuple)):
        lines = list(path_or_lines)
    else:
        with open(path_or_lines, encoding="utf-8") as fh:
            lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TrieInputError("line 1: missing edge count")
    try:
        n = int(lines[0])
    except ValueError:
        raise TrieInputError(f"line 1: bad edge count {lines[0]!r}") from None
    if n < 0 or len(lines) - 1 != n:
        raise TrieInputError(f"line 1: expected {n} edge lines, found {len(lines) - 1}")
    edges = []
    for i, line in enumerate(lines[1:], 2):
        fields = line.split("\t")
        if len(fields) != 3 or len(fields[2]) != 1:
            raise TrieInputError(f"line {i}: expected child<TAB>parent<TAB>char")
        try:
            edges.append((int(fields[0]), int(fields[1]), fields[2]))
        except ValueError:
            raise TrieInputError(f"line {i}: node ids must be integers") from None
    return build_from_edgelist(edges)


def write_edgelist(trie: Trie, table: CharTable) -> str:
    lines = [str(trie.n)]
    for v in range(trie.node_count):
        if v != trie.root:
            lines.append(f"{v}\t{int(trie.parent[v])}\t{table.char(int(trie.label[v]))}")
    return "\n".join(lines) + "\n"


class SentinelizedTrie:
    """The input trie with a new root joined to the old one by a ``$`` edge.

    Node ``N = n + 1`` is the new root; original ids are unchanged, so every
    original node (root included) owns exactly one suffix ending in ``$``.
    """

    def __init__(self, trie: Trie):
        self.trie = trie
        self.size = trie.node_count           # number of suffixes / edges
        self.top = self.size                   # id of the added root
        self.label = trie.label                # label[root] is already $
        self.suffix_length = trie.depth + 1

    @property
    def n(self) -> int:
        return self.size

    def parent(self, v: int) -> int:
        if v == self.trie.root:
            return self.top
        return int(self.trie.parent[v])

    def path_char(self, v: int, k: int) -> int:
        """k-th character of ``suf(v)$`` (``k == depth(v) + 1`` is ``$``)."""
        dv = int(self.trie.depth[v])
        if k == dv + 1:
            return SENTINEL_RANK
        return self.trie.path_char(v, k)

    def suffix(self, v: int) -> list:
        return self.trie.suffix_ranks(v) + [SENTINEL_RANK]

    def jump_table(self, j: int) -> np.ndarray:
        """Node ``2**j`` steps along each suffix, ``top`` meaning "past the
        end"; carries one extra slot for ``top`` itself."""
        la = self.trie.level_ancestors
        if j < len(la.jumps):
            t = np.where(self.trie.depth >= (1 << j), la.jumps[j], self.top)
        else:
            t = np.full(self.size, self.top, dtype=np.int64)
        return np.append(t, self.top)


def attach_sentinel(trie: Trie) -> SentinelizedTrie:
    return SentinelizedTrie(trie)
