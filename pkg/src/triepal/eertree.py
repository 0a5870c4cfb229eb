"""Edge-sorted eertree (palindromic tree) with suffix links.

Node ids: 0 is the odd root (length -1), 1 the even root (the empty
palindrome), and palindrome ``i`` of the engine's output is node ``i + 1``.
The tree edges come straight from the engine's generators (``p -> cpc``
labeled ``c``).  Suffix links use the fact that the longest proper suffix
palindrome of a palindrome is also its longest proper prefix palindrome,
i.e. the nearest palindromic locus above it in the suffix tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .engine import ODD_ROOT, PalindromeResult
from .lca import nearest_marked
from .suffix_tree import SuffixTree
from .trie import CharTable

ODD = 0
EVEN = 1


def nearest_palindromes(result: PalindromeResult, tree: SuffixTree):
    """Per suffix-tree node, the id of the longest palindrome whose locus
    is on the root path of the node (edge into the node included).

    Also returns, per palindrome, the id of the longest palindrome that is
    a proper prefix of it (-1 for the empty palindrome).
    """
    M = tree.size
    nodes = np.fromiter((loc.node for loc in result.loci), dtype=np.int64, count=result.dpal_count)
    lens = np.fromiter((loc.length for loc in result.loci), dtype=np.int64, count=result.dpal_count)
    ids = np.arange(len(nodes))
    # loci grouped by node, shortest first (at most one implicit one per edge
    # plus possibly the node itself)
    order = np.lexsort((lens, nodes))
    srt_nodes = nodes[order]
    last = np.ones(len(order), dtype=bool)
    last[:-1] = srt_nodes[1:] != srt_nodes[:-1]
    own = np.full(M, -1, dtype=np.int64)
    own[srt_nodes[last]] = ids[order][last]
    anc = nearest_marked(tree.parent, own >= 0)
    nearest = np.where(anc >= 0, own[anc], -1)
    # a locus's proper-prefix palindrome: the previous one on the same node,
    # else the nearest one above the node
    prefix = np.full(len(nodes), -1, dtype=np.int64)
    first = np.ones(len(order), dtype=bool)
    first[1:] = last[:-1]
    prev_same = np.empty(len(order), dtype=np.int64)
    prev_same[1:] = order[:-1]
    par = tree.parent[np.maximum(srt_nodes, 1)]
    above = np.where(srt_nodes == 0, -1, nearest[np.maximum(par, 0)])
    prefix[order] = np.where(first, above, prev_same)
    return nearest, prefix


@dataclass
class Eertree:
    length: np.ndarray
    parent: np.ndarray      # -1 for the two roots
    char: np.ndarray        # label of the edge from the parent, -1 for roots
    link: np.ndarray
    child_ptr: np.ndarray
    child_ids: np.ndarray
    witness: Optional[list] = None   # per node (trie node, length) or None

    @property
    def size(self) -> int:
        return len(self.length)

    def children(self, x: int) -> list:
        ids = self.child_ids[self.child_ptr[x]:self.child_ptr[x + 1]]
        return [(int(self.char[y]), int(y)) for y in ids]

    def parity(self, x: int) -> int:
        return EVEN if self.length[x] % 2 == 0 else ODD

    def palindrome(self, x: int) -> list:
        """Rank string of node ``x``, rebuilt by walking to its root."""
        half = []
        y = x
        while self.parent[y] >= 0:
            half.append(int(self.char[y]))
            y = int(self.parent[y])
        core = half[::-1]
        if y == ODD:
            return core[::-1][:-1] + core if core else []
        return core[::-1] + core

    def suffix_chain(self, x: int) -> list:
        out = [x]
        while x != ODD:
            x = int(self.link[x])
            out.append(x)
        return out


def _csr(parent: np.ndarray, char: np.ndarray):
    m = len(parent)
    kids = np.flatnonzero(parent >= 0)
    kids = kids[np.lexsort((char[kids], parent[kids]))]
    counts = np.bincount(parent[kids], minlength=m)
    ptr = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    return ptr, kids


def build_eertree(result: PalindromeResult, tree: SuffixTree) -> Eertree:
    m = result.dpal_count + 1
    length = np.empty(m, dtype=np.int64)
    length[ODD] = -1
    length[1:] = result.lengths()
    parent = np.full(m, -1, dtype=np.int64)
    char = np.full(m, -1, dtype=np.int64)
    for i, (p, c) in enumerate(result.generator):
        if p == -1:
            continue
        parent[i + 1] = ODD if p == ODD_ROOT else p + 1
        char[i + 1] = c
    _, prefix = nearest_palindromes(result, tree)
    link = np.empty(m, dtype=np.int64)
    link[ODD] = ODD
    link[1:] = prefix + 1     # the empty palindrome maps to -1 + 1 = ODD
    ptr, kids = _csr(parent, char)
    witness = [None] + list(result.witness)
    return Eertree(length, parent, char, link, ptr, kids, witness)


def _sym(table: Optional[CharTable], c: int) -> str:
    return table.char(c) if table is not None else str(c)


def export_eertree(e: Eertree, table: Optional[CharTable] = None,
                   with_witness: bool = False) -> str:
    """Line format: ``N id parity len``, ``E from char to``, ``L from to``
    (and ``W id node len`` when asked).  Nodes by (parity, length, id),
    edges by (from, char)."""
    lines = []
    par = np.where(e.length % 2 == 0, EVEN, ODD)
    order = np.lexsort((np.arange(e.size), e.length, par)).tolist()
    for x in order:
        lines.append(f"N {x} {'even' if par[x] == EVEN else 'odd'} {int(e.length[x])}")
    for x in order:
        for c, y in e.children(x):
            lines.append(f"E {x} {_sym(table, c)} {y}")
    for x in order:
        lines.append(f"L {x} {int(e.link[x])}")
    if with_witness and e.witness is not None:
        for x in order:
            w = e.witness[x]
            if w is not None:
                lines.append(f"W {x} {w[0]} {w[1]}")
    return "\n".join(lines) + "\n"


def load_eertree(text: str, table: Optional[CharTable] = None) -> Eertree:
    """Inverse of :func:`export_eertree`."""
    nodes, edges, links, wit = {}, [], {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        f = raw.split()
        if not f:
            continue
        try:
            if f[0] == "N":
                nodes[int(f[1])] = int(f[3])
            elif f[0] == "E":
                c = table.rank(f[2]) if table is not None else int(f[2])
                edges.append((int(f[1]), c, int(f[3])))
            elif f[0] == "L":
                links[int(f[1])] = int(f[2])
            elif f[0] == "W":
                wit[int(f[1])] = (int(f[2]), int(f[3]))
            else:
                raise ValueError(f"unknown record {f[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    m = len(nodes)
    length = np.array([nodes[i] for i in range(m)], dtype=np.int64)
    parent = np.full(m, -1, dtype=np.int64)
    char = np.full(m, -1, dtype=np.int64)
    for a, c, b in edges:
        parent[b] = a
        char[b] = c
    link = np.array([links[i] for i in range(m)], dtype=np.int64)
    ptr, kids = _csr(parent, char)
    witness = [wit.get(i) for i in range(m)] if wit else None
    return Eertree(length, parent, char, link, ptr, kids, witness)


def eertree_dot(e: Eertree, table: Optional[CharTable] = None) -> str:
    """Graphviz description: tree edges solid, suffix links dashed."""
    out = ["digraph eertree {", "  node [shape=circle];"]
    for x in range(e.size):
        name = "⊥" if x == ODD else ("ε" if x == EVEN else "")
        if not name:
            s = e.palindrome(x)
            name = table.decode(s) if table is not None else " ".join(map(str, s))
        out.append(f'  n{x} [label="{name}"];')
    for x in range(e.size):
        for c, y in e.children(x):
            out.append(f'  n{x} -> n{y} [label="{_sym(table, c)}"];')
    for x in range(e.size):
        out.append(f"  n{x} -> n{int(e.link[x])} [style=dashed, color=gray];")
    out.append("}")
    return "\n".join(out) + "\n"
