"""Edge-sorted suffix tree of a (sentinelized) trie.

Construction goes through the suffix array: prefix doubling ranks every
``suf(v)$`` (the rank of the first ``2**(j+1)`` characters combines the
``2**j`` ranks of ``v`` and of its ``2**j``-th ancestor), adjacent LCPs are
read off the same rank tables, and the compacted tree is assembled from
SA + LCP with a stack.  O(n log n) overall.

Node ids are preorder numbers (root is 0, children in increasing first
character), so ``subtree(x)`` is the id range ``x .. leaf_node[rspan[x]]``.
Leaves are numbered ``1..N`` left to right.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .lca import LcaIndex
from .trie import SENTINEL_RANK, CharTable, SentinelizedTrie, int_view


class Locus(NamedTuple):
    """A point in the suffix tree: ``length`` characters down, ending on the
    edge into ``node`` (``sdepth(parent) < length <= sdepth(node)``)."""

    node: int
    length: int


def suffix_array(st: SentinelizedTrie):
    """Sort the ``N`` suffixes of ``st``.

    Returns ``(sa, ranks, jumps)`` where ``ranks[j]`` ranks the first
    ``2**j`` characters of each suffix and ``jumps[j]`` skips ``2**j``
    characters; both carry a trailing "past the end" slot (rank -1).
    """
    N = st.size
    rank = np.append(st.label.astype(np.int64), -1)
    ranks = [rank]
    jumps = []
    j = 0
    while True:
        if len(np.unique(rank[:N])) == N:
            break
        nxt = st.jump_table(j)
        jumps.append(nxt)
        hi, lo = rank[:N], rank[nxt[:N]]
        order = np.lexsort((lo, hi))
        hs, ls = hi[order], lo[order]
        fresh = np.empty(N, dtype=bool)
        fresh[0] = True
        fresh[1:] = (hs[1:] != hs[:-1]) | (ls[1:] != ls[:-1])
        new = np.empty(N + 1, dtype=np.int64)
        new[order] = np.cumsum(fresh) - 1
        new[N] = -1
        rank = new
        ranks.append(rank)
        j += 1
    sa = np.argsort(rank[:N], kind="stable")
    return sa, ranks, jumps


def lcp_array(sa: np.ndarray, ranks: list, jumps: list) -> np.ndarray:
    """``lcp[i]`` = LCP of suffixes ``sa[i-1]`` and ``sa[i]``; ``lcp[0] = 0``."""
    N = len(sa)
    lcp = np.zeros(N, dtype=np.int64)
    if N < 2:
        return lcp
    a = sa[:-1].copy()
    b = sa[1:].copy()
    acc = np.zeros(N - 1, dtype=np.int64)
    for j in range(len(jumps) - 1, -1, -1):
        r = ranks[j]
        eq = r[a] == r[b]
        acc += eq.astype(np.int64) << j
        a = np.where(eq, jumps[j][a], a)
        b = np.where(eq, jumps[j][b], b)
    lcp[1:] = acc
    return lcp


class SuffixTree:
    """Compacted, edge-sorted trie of all ``suf(v)$``.

    Per-node arrays (numpy): ``parent``, ``sdepth`` (string depth),
    ``lspan``/``rspan`` (leaf index range), ``rep`` (a trie node whose suffix
    passes through the node), ``first_char`` (first rank of the in-edge).
    """

    def __init__(self, st: SentinelizedTrie, sa: np.ndarray, lcp: np.ndarray):
        self.st = st
        self.trie = st.trie
        N = st.size
        self.num_leaves = N
        par, dep, lsp, rsp, rep = _stack_build(sa, lcp, st.suffix_length)
        order = np.lexsort((dep, lsp))
        new_id = np.empty(len(order), dtype=np.int64)
        new_id[order] = np.arange(len(order))
        p = par[order]
        self.parent = np.where(p < 0, -1, new_id[np.maximum(p, 0)])
        self.sdepth = dep[order]
        self.lspan = lsp[order]
        self.rspan = rsp[order]
        self.rep = rep[order]
        M = len(order)
        self.size = M
        self.is_leaf = self.lspan == self.rspan
        self.is_leaf[0] = False
        leaves = np.flatnonzero(self.is_leaf)
        self.leaf_node = np.full(N + 1, -1, dtype=np.int64)
        self.leaf_node[self.lspan[leaves]] = leaves
        self.leaf_trie = np.full(N + 1, -1, dtype=np.int64)
        self.leaf_trie[1:] = sa
        self.trie_leaf = np.empty(N, dtype=np.int64)
        self.trie_leaf[sa] = np.arange(1, N + 1)
        # children in preorder are already sorted by first character
        kids = np.arange(1, M)
        kp = self.parent[1:]
        srt = np.argsort(kp, kind="stable")
        self.child_ids = kids[srt]
        counts = np.bincount(kp, minlength=M)
        self.child_ptr = np.zeros(M + 1, dtype=np.int64)
        np.cumsum(counts, out=self.child_ptr[1:])
        self.subtree_end = self.leaf_node[self.rspan]
        self.first_char = np.full(M, -1, dtype=np.int64)
        if M > 1:
            pd = self.sdepth[self.parent[1:]]
            rep1 = self.rep[1:]
            tdepth = self.trie.depth[rep1]
            anc = self.trie.level_ancestors.ancestors_at(rep1, tdepth - pd)
            self.first_char[1:] = self.trie.label[anc]
        self._lca = None

    def children(self, x: int) -> list:
        return self.child_ids[self.child_ptr[x]:self.child_ptr[x + 1]].tolist()

    def char_at(self, x: int, k: int) -> int:
        """k-th character (1-based) of ``str(x)``."""
        return self.st.path_char(int(self.rep[x]), k)

    def string_of(self, x: int, length: Optional[int] = None) -> list:
        if length is None:
            length = int(self.sdepth[x])
        return self.st.suffix(int(self.rep[x]))[:length]

    @property
    def lca_index(self) -> LcaIndex:
        if self._lca is None:
            self._lca = LcaIndex(self.parent)
        return self._lca

    def lca(self, a: int, b: int) -> int:
        return self.lca_index.lca(a, b)

    def edge_label(self, x: int) -> tuple:
        """In-edge label of ``x`` as ``(deep-end trie node, length)``: the
        label is the first ``length`` characters of that node's suffix."""
        v = int(self.rep[x])
        pd = int(self.sdepth[self.parent[x]])
        depth = int(self.trie.depth[v])
        u = self.trie.level_ancestor(v, depth - pd)
        return u, int(self.sdepth[x]) - pd

    def locus_of(self, ranks: list) -> Optional[Locus]:
        """Locus of a rank string, or ``None`` if it does not occur."""
        x, k = 0, 0
        m = len(ranks)
        while k < m:
            if k == self.sdepth[x]:
                nxt = self._child_by_char(x, ranks[k])
                if nxt < 0:
                    return None
                x = nxt
            if self.char_at(x, k + 1) != ranks[k]:
                return None
            k += 1
        return Locus(x, k)

    def _child_by_char(self, x: int, c: int) -> int:
        lo, hi = int(self.child_ptr[x]), int(self.child_ptr[x + 1])
        ids = self.child_ids
        while lo < hi:
            mid = (lo + hi) // 2
            fc = self.first_char[ids[mid]]
            if fc < c:
                lo = mid + 1
            else:
                hi = mid
        if lo < self.child_ptr[x + 1] and self.first_char[ids[lo]] == c:
            return int(ids[lo])
        return -1

    def dump(self, table: CharTable) -> str:
        """``node<TAB>parent<TAB>stringDepth<TAB>edgeLabel`` in preorder."""
        lines = []
        for x in range(self.size):
            if x == 0:
                lines.append("0\t-1\t0\t")
                continue
            pd = int(self.sdepth[self.parent[x]])
            label = self.string_of(x)[pd:]
            lines.append(f"{x}\t{int(self.parent[x])}\t{int(self.sdepth[x])}\t{table.decode(label)}")
        return "\n".join(lines) + "\n"


def _stack_build(sa: np.ndarray, lcp: np.ndarray, slen: np.ndarray):
    N = len(sa)
    cap = 2 * N + 1
    arrays = [np.full(cap, -1, dtype=np.int64) for _ in range(5)]
    par, dep, lsp, rsp, rep = (memoryview(x) for x in arrays)
    sa_, lcp_, slen_ = int_view(sa), int_view(lcp), int_view(slen)
    dep[0] = 0
    lsp[0] = 1
    rep[0] = sa_[0] if N else 0
    m = 1
    stack = [0]
    for i in range(N):
        v = sa_[i]
        h = lcp_[i]
        last = -1
        while dep[stack[-1]] > h:
            last = stack.pop()
            rsp[last] = i
        top = stack[-1]
        if dep[top] < h:
            x = m
            m += 1
            par[x] = top
            dep[x] = h
            lsp[x] = lsp[last]
            rep[x] = rep[last]
            par[last] = x
            stack.append(x)
            top = x
        par[m] = top
        dep[m] = slen_[v]
        lsp[m] = rsp[m] = i + 1
        rep[m] = v
        stack.append(m)
        m += 1
    for x in stack:
        if rsp[x] < 0 or x == 0:
            rsp[x] = N
    return tuple(x[:m] for x in arrays)


@dataclass
class LeafSuffixLinks:
    """Suffix links of the leaves, indexed by leaf number ``1..N``.

    ``target[i]`` is the leaf of ``suf(parent(v_i))`` (0 = the tree root for
    the ``$`` leaf), ``label[i]`` the dropped character, ``in_chars[i]`` the
    sorted in-coming link labels (= childchar of ``v_i``).
    """

    target: np.ndarray
    label: np.ndarray
    in_ptr: np.ndarray
    in_src: np.ndarray
    in_label: np.ndarray

    def in_chars(self, i: int) -> list:
        return self.in_label[self.in_ptr[i]:self.in_ptr[i + 1]].tolist()

    def sources(self, i: int) -> list:
        """Trie nodes whose leaves link into leaf ``i``, by label."""
        return self.in_src[self.in_ptr[i]:self.in_ptr[i + 1]].tolist()


def build_suffix_tree(st: SentinelizedTrie) -> SuffixTree:
    sa, ranks, jumps = suffix_array(st)
    lcp = lcp_array(sa, ranks, jumps)
    return SuffixTree(st, sa, lcp)


def compute_leaf_suffix_links(tree: SuffixTree) -> LeafSuffixLinks:
    trie = tree.trie
    N = tree.num_leaves
    v = tree.leaf_trie[1:]
    par = trie.parent[v]
    target = np.zeros(N + 1, dtype=np.int64)
    target[1:] = np.where(par < 0, 0, tree.trie_leaf[np.maximum(par, 0)])
    label = np.full(N + 1, -1, dtype=np.int64)
    label[1:] = trie.label[v]
    # in-coming links of leaf i come from the children of v_i, already
    # sorted by label in the trie's CSR arrays
    counts = np.zeros(N + 2, dtype=np.int64)
    nchild = np.diff(trie.child_ptr)
    counts[2:] = nchild[v]
    in_ptr = np.cumsum(counts)[: N + 2]
    starts = trie.child_ptr[v]
    sizes = nchild[v]
    offs = np.cumsum(sizes) - sizes
    idx = np.repeat(starts - offs, sizes) + np.arange(sizes.sum())
    in_src = trie.child_ids[idx]
    return LeafSuffixLinks(target, label, in_ptr, in_src, trie.label[in_src])
