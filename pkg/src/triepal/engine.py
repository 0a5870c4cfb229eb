"""Level-wise discovery of all distinct and maximal palindromes of a trie.

Palindromic loci of the suffix tree are visited in non-decreasing length
order.  For a palindrome ``p`` and a character ``c`` following it, the
leaves below ``pc`` split into those with an in-coming ``c`` suffix link
(occurrences extendable to ``cpc``) and those without (maximal occurrences
of ``p``).  The jump arrays enumerate the second kind while skipping runs
of the first; the leftmost/rightmost leaves of the first kind locate
``cpc`` through one LCA query.

Explicit loci use the precomputed ``left_dest`` links.  Implicit loci are
followed by a single character ``c``, and every longer palindrome below is
followed by the same ``c``; the first time such a subtree is entered it is
marked and per-node links for that fixed ``c`` are computed once.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from itertools import repeat

import numpy as np

from .nav import NIL, NavIndex
from .suffix_tree import Locus, SuffixTree, build_suffix_tree, compute_leaf_suffix_links
from .trie import SENTINEL_RANK, Trie, attach_sentinel, int_view

UNSET = -2
ODD_ROOT = -2    # generator of single-character palindromes


def empty_occurrence_allowed(trie: Trie, v: int) -> bool:
    """Whether ``(v, 0)`` may count as a maximal palindrome.

    Only internal non-root nodes host one; leaves and the root never do.
    This is the reading under which a trie with ``n`` edges and ``l``
    leaves has exactly ``2n - l`` maximal palindromes.  Callers still have
    to check that no child edge repeats the parent edge's character.
    """
    return v != trie.root and not trie.leaf_flags[v]


@dataclass
class EngineStats:
    scans: int = 0
    case_a_scans: int = 0
    case_b_scans: int = 0
    jump_uses: int = 0
    reported: int = 0
    jump_bound_violations: int = 0   # scans with jumps > 3 * (1 + reported)
    max_scan_jumps: int = 0
    marks: int = 0
    double_marks: int = 0


@dataclass
class PalindromeResult:
    """Output of :func:`compute_all`.

    Palindrome ids follow discovery order (0 is the empty string).
    ``generator[i]`` is ``(parent id, char)`` with parent ``-1`` for the
    empty string and ``ODD_ROOT`` for single characters.
    """

    loci: list
    generator: list
    witness: list
    mpal_nodes: np.ndarray
    mpal_lengths: np.ndarray
    stats: EngineStats = field(default_factory=EngineStats)

    @property
    def dpal_count(self) -> int:
        return len(self.loci)

    @property
    def mpal_count(self) -> int:
        return len(self.mpal_nodes)

    def mpal_pairs(self) -> list:
        return list(zip(self.mpal_nodes.tolist(), self.mpal_lengths.tolist()))

    def lengths(self) -> list:
        return [loc.length for loc in self.loci]


class PalindromeEngine:
    def __init__(self, tree: SuffixTree, nav: NavIndex):
        self.tree = tree
        self.nav = nav
        self.trie = tree.trie
        t = tree
        self._sdepth = int_view(t.sdepth)
        self._lsp = int_view(t.lspan)
        self._rsp = int_view(t.rspan)
        self._cptr = int_view(t.child_ptr)
        self._cids = int_view(t.child_ids)
        self._fc = int_view(t.first_char)
        self._leaf_trie = int_view(t.leaf_trie)
        self._leaf_node = int_view(t.leaf_node)
        self._trie_leaf = int_view(t.trie_leaf)
        self._dest = int_view(nav.dest)
        self._jump = int_view(nav.jump)
        self._src = int_view(nav.dest_src)
        self._left_dest = int_view(nav.left_dest)
        internal = ~self.trie.leaf_flags
        internal[self.trie.root] = False
        self._internal = memoryview(internal)
        links = nav.links
        self._in_ptr = int_view(links.in_ptr)
        self._in_src = int_view(links.in_src)
        self._in_lab = int_view(links.in_label)
        self._pos_of = int_view(nav.pos_of)
        self.stats = EngineStats()
        self._mark = bytearray(t.size)
        self._left = None
        self._mark_char = None

    def run(self) -> PalindromeResult:
        tree = self.tree
        sdepth = self._sdepth
        cptr, cids, fc = self._cptr, self._cids, self._fc
        left_dest = self._left_dest
        lsp = self._lsp
        leaf_trie = self._leaf_trie
        loci_node = [0]
        loci_len = [0]
        generator = [(-1, -1)]
        for y in cids[cptr[0]:cptr[1]]:
            if fc[y] != SENTINEL_RANK:
                loci_node.append(y)
                loci_len.append(1)
                generator.append((ODD_ROOT, fc[y]))
        self._out_nodes = array("q")
        self._out_lens = array("q")
        self._new_node = loci_node
        self._new_len = loci_len
        self._gen = generator
        la = self.trie.level_ancestors
        rep = int_view(tree.rep)
        tdepth = int_view(self.trie.depth)
        label = int_view(self.trie.label)
        i = 0
        while i < len(loci_node):
            x, k = loci_node[i], loci_len[i]
            if sdepth[x] == k:
                self.stats.case_a_scans += cptr[x + 1] - cptr[x]
                for y in cids[cptr[x]:cptr[x + 1]]:
                    self._scan(y, fc[y], left_dest[y], k, i)
            else:
                # the character after p on the edge into x
                v = rep[x]
                dv = tdepth[v]
                c = SENTINEL_RANK if k == dv else label[la.ancestor(v, dv - k)]
                start = self._prepare_implicit(x, c)
                self.stats.case_b_scans += 1
                self._scan(x, c, start, k, i)
            i += 1
        witness = [(leaf_trie[lsp[x]], k) for x, k in zip(loci_node, loci_len)]
        self.stats.scans = self.stats.case_a_scans + self.stats.case_b_scans
        return PalindromeResult(
            loci=[Locus(x, k) for x, k in zip(loci_node, loci_len)],
            generator=generator,
            witness=witness,
            mpal_nodes=np.frombuffer(self._out_nodes, dtype=np.int64),
            mpal_lengths=np.frombuffer(self._out_lens, dtype=np.int64),
            stats=self.stats,
        )

    def _emit(self, a: int, b: int, k: int) -> int:
        """Report leaves ``a..b`` (inclusive) as maximal occurrences of
        length ``k``; returns the number of leaves walked over."""
        if a > b:
            return 0
        nodes = self._leaf_trie[a:b + 1]
        count = len(nodes)
        if k == 0:
            internal = self._internal
            nodes = [v for v in nodes if internal[v]]
        self._out_nodes.extend(nodes)
        self._out_lens.extend(repeat(k, len(nodes)))
        return count

    def _scan(self, y: int, c: int, start: int, k: int, pid: int) -> None:
        """Jump-walk over the leaves of ``y`` (the locus of ``pc``)."""
        left, right = self._lsp[y], self._rsp[y]
        stats = self.stats
        if start < 0:
            rep = self._emit(left, right, k)
            stats.reported += rep
            return
        dest, jump = self._dest, self._jump
        pos = start
        curr = dest[pos]
        prev = left - 1
        run = False
        last = pos
        jumps = 0
        rep = 0
        while curr <= right:
            if not run and curr - prev > 1:
                rep += self._emit(prev + 1, curr - 1, k)
            last = pos
            nxt = jump[pos]
            jumps += 1
            run = nxt != pos + 1
            prev = curr
            pos = nxt
            curr = dest[pos]
        if run:
            # the run overshoots right; every leaf up to right has a c-link
            last += right - prev
        else:
            rep += self._emit(prev + 1, right, k)
        stats.jump_uses += jumps
        stats.reported += rep
        if jumps > stats.max_scan_jumps:
            stats.max_scan_jumps = jumps
        if jumps > 3 * (1 + rep):
            stats.jump_bound_violations += 1
        self._locate_cpc(start, last, k, c, pid)

    def _locate_cpc(self, lpos: int, rpos: int, k: int, c: int, pid: int) -> None:
        src = self._src
        leaf_node, trie_leaf = self._leaf_node, self._trie_leaf
        a = leaf_node[trie_leaf[src[lpos]]]
        b = leaf_node[trie_leaf[src[rpos]]]
        u = self.tree.lca(a, b) if a != b else a
        length = k + 2
        if self._sdepth[u] < length:
            raise AssertionError(f"cpc locus above its own length at node {u}")
        self._new_node.append(u)
        self._new_len.append(length)
        self._gen.append((pid, c))

    def _prepare_implicit(self, x: int, c: int) -> int:
        """Left link of ``x`` for the fixed character ``c``, marking
        ``subtree(x)`` the first time it is entered."""
        mark = self._mark
        if self._left is None:
            self._left = [UNSET] * self.tree.size
            self._mark_char = [-1] * self.tree.size
        left = self._left
        if mark[x]:
            if left[x] == UNSET:
                raise AssertionError(f"marked node {x} has no left link")
            if self._mark_char[x] != c:
                raise AssertionError(f"node {x} marked for another character")
            return left[x]
        end = self.tree.subtree_end[x]
        cptr, cids = self._cptr, self._cids
        lsp = self._lsp
        in_ptr, in_src, in_lab = self._in_ptr, self._in_src, self._in_lab
        pos_of = self._pos_of
        mark_char = self._mark_char
        stats = self.stats
        for z in range(end, x - 1, -1):
            if mark[z]:
                stats.double_marks += 1
            mark[z] = 1
            mark_char[z] = c
            stats.marks += 1
            lo, hi = cptr[z], cptr[z + 1]
            if lo == hi:
                kk = lsp[z]
                r = NIL
                for t in range(in_ptr[kk], in_ptr[kk + 1]):
                    if in_lab[t] == c:
                        r = pos_of[in_src[t]]
                        break
                left[z] = r
            else:
                r = NIL
                for w in cids[lo:hi]:
                    if left[w] != NIL:
                        r = left[w]
                        break
                left[z] = r
        return left[x]


def compute_all(tree: SuffixTree, nav: NavIndex) -> PalindromeResult:
    return PalindromeEngine(tree, nav).run()


@dataclass
class Indexes:
    """Everything built from one input trie."""

    trie: Trie
    tree: SuffixTree
    nav: NavIndex
    result: PalindromeResult = None


def build_indexes(trie: Trie) -> Indexes:
    st = attach_sentinel(trie)
    tree = build_suffix_tree(st)
    links = compute_leaf_suffix_links(tree)
    nav = NavIndex(tree, links)
    return Indexes(trie, tree, nav)


def analyze(trie: Trie) -> Indexes:
    idx = build_indexes(trie)
    idx.result = compute_all(idx.tree, idx.nav)
    return idx
