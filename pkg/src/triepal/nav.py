"""Per-character navigation arrays over the suffix-tree leaves.

All ``destSL_c`` arrays live in one flat array, one group per character,
each group closed by an ``INF`` entry.  A *position* is an index into the
flat array, so ``jump`` and ``left_dest`` are flat positions too and a walk
never leaves its group (it stops at the group's ``INF``).
"""
from __future__ import annotations

import numpy as np

from .suffix_tree import LeafSuffixLinks, SuffixTree
from .trie import int_view

NIL = -1


class NavIndex:
    """destSL / jump arrays and leftDest links.

    ``dest[p]``      leaf index stored at flat position ``p`` (``INF`` at group ends)
    ``dest_src[p]``  the trie node whose leaf links into ``dest[p]`` (-1 at ``INF``)
    ``jump[p]``      next position to visit from ``p``
    ``group_start[c]``, ``group_end[c]``  group of rank ``c`` (end is the ``INF`` slot)
    ``pos_of[u]``    position of the pair ``(label(u), leaf(parent(u)))``
    ``left_dest[x]`` position of the leftmost in-span leaf of ``x`` in
                     ``destSL_{c_x}``, or ``NIL``
    """

    def __init__(self, tree: SuffixTree, links: LeafSuffixLinks):
        self.tree = tree
        self.links = links
        self.inf = tree.num_leaves + 2
        self._build_dest(tree, links)
        self.left_dest = build_left_dest(tree, self)

    def _build_dest(self, tree: SuffixTree, links: LeafSuffixLinks) -> None:
        trie = tree.trie
        sigma = int(trie.label.max()) if trie.node_count > 1 else 0
        src = links.in_src
        lab = links.in_label
        leaf = np.repeat(np.arange(len(links.in_ptr) - 1), np.diff(links.in_ptr))
        # (c, i) pairs, ordered by c then leaf index
        order = np.lexsort((leaf, lab))
        src, lab, leaf = src[order], lab[order], leaf[order]
        counts = np.bincount(lab, minlength=sigma + 1)[: sigma + 1]
        sizes = counts + 1
        self.group_start = np.zeros(sigma + 1, dtype=np.int64)
        self.group_start[1:] = np.cumsum(sizes)[:-1]
        self.group_end = self.group_start + counts
        total = int(sizes.sum())
        dest = np.full(total, self.inf, dtype=np.int64)
        dest_src = np.full(total, -1, dtype=np.int64)
        within = np.arange(len(lab)) - (np.cumsum(counts) - counts)[lab]
        pos = self.group_start[lab] + within
        dest[pos] = leaf
        dest_src[pos] = src
        self.pos_of = np.full(trie.node_count, NIL, dtype=np.int64)
        self.pos_of[src] = pos
        self.dest = dest
        self.dest_src = dest_src
        # jump: next entry if it is not adjacent, else the end of the run
        gap = np.ones(total, dtype=bool)
        gap[:-1] = dest[1:] - dest[:-1] > 1
        idx = np.arange(total)
        run_end = np.where(gap, idx, total)
        run_end = np.minimum.accumulate(run_end[::-1])[::-1]
        jump = np.where(gap, idx + 1, run_end)
        jump[self.group_end] = self.group_end
        self.jump = jump

    def dest_sl(self, c: int) -> list:
        """``destSL_c`` including the trailing ``INF``."""
        if c < 0 or c >= len(self.group_start):
            return [self.inf]
        return self.dest[self.group_start[c]:self.group_end[c] + 1].tolist()

    def jump_array(self, c: int) -> list:
        """``jump_c`` as group-relative positions (excluding the ``INF`` slot)."""
        if c < 0 or c >= len(self.group_start):
            return []
        s, e = self.group_start[c], self.group_end[c]
        return (self.jump[s:e] - s).tolist()

    def spans(self) -> tuple:
        return self.tree.lspan, self.tree.rspan


def build_left_dest(tree: SuffixTree, nav: NavIndex) -> np.ndarray:
    """One left-to-right DFS with an array of stacks, one per character.

    Descending to ``x`` pushes it on the stack of ``c_x``; reaching leaf
    ``k`` pops every node waiting on each in-coming link label of ``k``;
    ascending past a node still on its stack leaves it ``NIL``.
    """
    M = tree.size
    left = [NIL] * M
    fc = int_view(tree.first_char)
    end = int_view(tree.subtree_end)
    is_leaf = memoryview(tree.is_leaf)
    lsp = int_view(tree.lspan)
    in_ptr = int_view(nav.links.in_ptr)
    in_src = int_view(nav.links.in_src)
    in_lab = int_view(nav.links.in_label)
    pos_of = int_view(nav.pos_of)
    stacks: dict = {}
    path = []
    for x in range(1, M):
        while path and end[path[-1]] < x:
            y = path.pop()
            st = stacks.get(fc[y])
            if st and st[-1] == y:
                st.pop()
        path.append(x)
        c = fc[x]
        st = stacks.get(c)
        if st is None:
            st = stacks[c] = []
        st.append(x)
        if is_leaf[x]:
            k = lsp[x]
            for t in range(in_ptr[k], in_ptr[k + 1]):
                waiting = stacks.get(in_lab[t])
                if waiting:
                    r = pos_of[in_src[t]]
                    for y in waiting:
                        left[y] = r
                    waiting.clear()
    return np.asarray(left, dtype=np.int64)
