"""Palindrome queries on trie paths.

* ``query_mpal(u, v, center)``: the maximal palindrome of ``str(u, v)``
  around a given center, in O(1).  Each center keeps the start of the
  longest maximal palindrome around it; the arm on ``u``'s side is where
  ``u``'s path leaves that start's path (one trie LCA).
* ``query_dpal_suffix(u)``: all distinct palindromes of ``suf(u)`` in
  output-linear time.  The rightmost occurrence of each is the longest
  prefix palindrome of its start node, so marking the nodes whose longest
  prefix palindrome does not reappear closer to the root and hopping
  through nearest marked ancestors enumerates them.
* ``longest``: longest palindrome of every ``suf(v)``, top-down.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .eertree import nearest_palindromes
from .engine import Indexes
from .lca import LcaIndex, nearest_marked


class QueryError(ValueError):
    pass


class Center(NamedTuple):
    """``kind`` is ``"node"`` (even palindromes) or ``"edge"`` (odd ones;
    the edge is named by its child endpoint)."""

    kind: str
    node: int

    @classmethod
    def parse(cls, text: str) -> "Center":
        kind, _, ident = text.partition(":")
        if kind not in ("node", "edge") or not ident.lstrip("-").isdigit():
            raise QueryError(f"bad center {text!r}; expected node:<id> or edge:<childId>")
        return cls(kind, int(ident))

    def __str__(self) -> str:
        return f"{self.kind}:{self.node}"


class QueryIndex:
    def __init__(self, idx: Indexes):
        if idx.result is None:
            raise ValueError("palindromes must be computed first")
        self.idx = idx
        trie = self.trie = idx.trie
        self.depth = trie.depth
        self.lca = LcaIndex(trie.parent, trie.depth, order=trie.preorder())
        self._build_centers()
        self._build_lpp()
        self._build_marks()
        self._build_longest()

    # -- centers ---------------------------------------------------------
    def _build_centers(self) -> None:
        trie = self.trie
        m = trie.node_count
        res = self.idx.result
        v = res.mpal_nodes
        k = res.mpal_lengths
        la = trie.level_ancestors
        # the center node (even) or the edge's child endpoint (odd) sits
        # floor(k/2) characters above the start; (k + 1) // 2 for odd k
        up = np.where(k % 2 == 0, k // 2, (k - 1) // 2)
        at = la.ancestors_at(v, trie.depth[v] - up) if len(v) else v
        # every center starts with its trivial palindrome
        self.node_start = np.arange(m)
        self.node_len = np.zeros(m, dtype=np.int64)
        self.edge_start = np.arange(m)
        self.edge_len = np.ones(m, dtype=np.int64)
        self.edge_len[trie.root] = 0
        order = np.argsort(k, kind="stable")  # longer ones written last
        for even, start, length in ((True, self.node_start, self.node_len),
                                    (False, self.edge_start, self.edge_len)):
            sel = order[(k[order] % 2 == 0) == even]
            start[at[sel]] = v[sel]
            length[at[sel]] = k[sel]

    def is_ancestor(self, a: int, b: int) -> bool:
        """Whether ``a`` is an ancestor of ``b`` (or ``b`` itself)."""
        return self.lca.lca(a, b) == a

    def _check_node(self, x: int) -> None:
        if not 0 <= x < self.trie.node_count:
            raise QueryError(f"node {x} out of range 0..{self.trie.node_count - 1}")

    def query_mpal(self, u: int, v: int, center: Center) -> tuple:
        """``(start, length)`` of the maximal palindrome of ``str(u, v)``
        around ``center``."""
        for x in (u, v, center.node):
            self._check_node(x)
        if not self.is_ancestor(v, u):
            raise QueryError(f"{v} is not an ancestor of {u}")
        z = center.node
        depth = self.depth
        if not self.is_ancestor(z, u) or depth[z] < depth[v]:
            raise QueryError(f"center {center} is not on the path from {u} to {v}")
        if center.kind == "node":
            w = self.lca.lca(int(self.node_start[z]), u)
            arm = min(int(depth[w] - depth[z]), int(depth[z] - depth[v]))
            length = 2 * arm
        else:
            if z == v:
                raise QueryError(f"center {center} is not on the path from {u} to {v}")
            w = self.lca.lca(int(self.edge_start[z]), u)
            arm = min(int(depth[w] - depth[z]), int(depth[z] - 1 - depth[v]))
            length = 2 * arm + 1
        start = self.trie.level_ancestor(u, int(depth[z]) + arm)
        return start, length

    # -- longest prefix palindromes and rightmost marks -------------------
    def _build_lpp(self) -> None:
        idx = self.idx
        tree = idx.tree
        nearest, _ = nearest_palindromes(idx.result, tree)
        leaves = tree.leaf_node[tree.trie_leaf]
        self.lpp = nearest[leaves]          # palindrome id per trie node
        lens = np.asarray(idx.result.lengths(), dtype=np.int64)
        self.lpp_len = lens[self.lpp]
        self.lpp_len[self.trie.root] = 0

    def _build_marks(self) -> None:
        trie = self.trie
        lpp = self.lpp.tolist()
        depth = trie.depth.tolist()
        count = [0] * self.idx.result.dpal_count
        marked = [False] * trie.node_count
        path = []
        for v in trie.preorder().tolist():
            d = depth[v]
            while len(path) >= d and path:
                count[lpp[path.pop()]] -= 1
            if v == trie.root:
                continue
            p = lpp[v]
            if count[p] == 0:
                marked[v] = True
            count[p] += 1
            path.append(v)
        self.marked = np.asarray(marked, dtype=bool)
        self.nma = nearest_marked(trie.parent, self.marked)

    def query_dpal_suffix(self, u: int) -> list:
        """Distinct non-empty palindromes of ``suf(u)`` as ``(node, length)``
        rightmost occurrences, deepest first."""
        self._check_node(u)
        nma, parent, lens = self.nma, self.trie.parent, self.lpp_len
        out = []
        m = int(nma[u])
        while m >= 0:
            out.append((m, int(lens[m])))
            p = int(parent[m])
            m = int(nma[p]) if p >= 0 else -1
        return out

    def _build_longest(self) -> None:
        trie = self.trie
        par = trie.parent.tolist()
        lpp_len = self.lpp_len.tolist()
        L = [0] * trie.node_count
        W = list(range(trie.node_count))
        for v in trie.preorder().tolist():
            p = par[v]
            if p < 0:
                continue
            if lpp_len[v] >= L[p]:
                L[v], W[v] = lpp_len[v], v
            else:
                L[v], W[v] = L[p], W[p]
        self.longest = np.asarray(L, dtype=np.int64)
        self.longest_at = np.asarray(W, dtype=np.int64)

    def longest_palindrome(self, v: int) -> tuple:
        """``(length, (start, length))`` of a longest palindrome in ``suf(v)``."""
        self._check_node(v)
        return int(self.longest[v]), (int(self.longest_at[v]), int(self.longest[v]))
