"""Brute-force reference answers, by direct character comparison.

Nothing here touches the suffix tree or the engine; every function walks
parent pointers and compares strings.  Quadratic or worse, desk scale only.
"""
from __future__ import annotations

from .engine import empty_occurrence_allowed
from .trie import Trie


def _suffixes(trie: Trie) -> list:
    """``suf(v)`` for every node as a tuple of ranks (root-ward order)."""
    par = trie.parent.tolist()
    lab = trie.label.tolist()
    out = [None] * trie.node_count
    for v in trie.preorder().tolist():
        p = par[v]
        out[v] = () if p < 0 else (lab[v],) + out[p]
    return out


def _is_pal(s) -> bool:
    return s == s[::-1]


def oracle_mpal(trie: Trie) -> set:
    """All maximal palindrome occurrences ``(node, length)``."""
    sufs = _suffixes(trie)
    out = set()
    for v in range(trie.node_count):
        if v == trie.root:
            continue
        s = sufs[v]
        kids = set(trie.childchar(v))
        leaf = not kids
        for k in range(1, len(s) + 1):
            if not _is_pal(s[:k]):
                continue
            if leaf or k == len(s) or s[k] not in kids:
                out.add((v, k))
        if empty_occurrence_allowed(trie, v) and s[0] not in kids:
            out.add((v, 0))
    return out


def oracle_dpal(trie: Trie) -> set:
    """Distinct palindromic substrings as rank tuples (the empty one included)."""
    out = {()}
    for s in _suffixes(trie):
        for k in range(1, len(s) + 1):
            if _is_pal(s[:k]):
                out.add(s[:k])
    return out


def oracle_suffix_dpal(trie: Trie) -> list:
    """Per node, the distinct palindromes of ``suf(v)`` (empty one excluded).

    A substring of ``suf(v)`` either starts at ``v`` or lies in
    ``suf(parent(v))``.
    """
    sufs = _suffixes(trie)
    par = trie.parent.tolist()
    out = [set() for _ in range(trie.node_count)]
    for v in trie.preorder().tolist():
        if par[v] < 0:
            continue
        s = sufs[v]
        out[v] = set(out[par[v]])
        out[v].update(s[:k] for k in range(1, len(s) + 1) if _is_pal(s[:k]))
    return out


def oracle_longest(trie: Trie) -> list:
    """Per node, the length of a longest palindrome in ``suf(v)``: the
    longer of the parent's answer and the longest palindromic prefix."""
    sufs = _suffixes(trie)
    par = trie.parent.tolist()
    out = [0] * trie.node_count
    for v in trie.preorder().tolist():
        if par[v] < 0:
            continue
        s = sufs[v]
        best = max(k for k in range(1, len(s) + 1) if _is_pal(s[:k]))
        out[v] = max(best, out[par[v]])
    return out


def path_string(trie: Trie, u: int, v: int) -> list:
    """``str(u, v)`` for ``v`` an ancestor of ``u``."""
    par, lab = trie.parent.tolist(), trie.label.tolist()
    out = []
    while u != v:
        if u < 0:
            raise ValueError("not an ancestor")
        out.append(lab[u])
        u = par[u]
    return out


def oracle_query_mpal(trie: Trie, u: int, v: int, center: tuple) -> int:
    """Length of the maximal palindrome of ``str(u, v)`` centered at
    ``center`` = ``("node", z)`` or ``("edge", x)``."""
    s = path_string(trie, u, v)
    chain = [u]
    while chain[-1] != v:
        chain.append(int(trie.parent[chain[-1]]))
    kind, w = center
    if kind == "node":
        if w not in chain:
            raise ValueError("center off path")
        a = chain.index(w)
        r = 0
        while a - 1 - r >= 0 and a + r < len(s) and s[a - 1 - r] == s[a + r]:
            r += 1
        return 2 * r
    if w not in chain or w == v:
        raise ValueError("center off path")
    a = chain.index(w)
    r = 0
    while a - 1 - r >= 0 and a + 1 + r < len(s) and s[a - 1 - r] == s[a + 1 + r]:
        r += 1
    return 2 * r + 1


def oracle_eertree_links(pals) -> dict:
    """Longest proper suffix palindrome of each non-empty palindrome."""
    out = {}
    for p in pals:
        p = tuple(p)
        if not p:
            continue
        for i in range(1, len(p) + 1):
            if _is_pal(p[i:]):
                out[p] = p[i:]
                break
    return out


def string_maximal_palindromes(s) -> list:
    """Maximal palindromes of a plain string, one per center, as
    ``(start, length)`` with 0-based start; ``2|s| - 1`` of them."""
    out = []
    m = len(s)
    for c2 in range(2, 2 * m + 1):
        # center (c2 / 2) in 1-based positions
        if c2 % 2 == 0:
            i = j = c2 // 2 - 1
        else:
            i, j = c2 // 2 - 1, c2 // 2
            if s[i] != s[j]:
                out.append((j, 0))
                continue
        while i > 0 and j < m - 1 and s[i - 1] == s[j + 1]:
            i -= 1
            j += 1
        out.append((i, j - i + 1))
    return out
