"""Property checks of the engine and the layers built on it against the
brute-force oracle.  Shared by ``triepal verify`` and the test-suite."""
from __future__ import annotations

import random

from . import oracle
from .eertree import EVEN, ODD, build_eertree
from .engine import Indexes, analyze
from .queries import Center, QueryIndex
from .trie import Trie

EXHAUSTIVE_QUERY_N = 60
SAMPLED_QUERIES = 500


def _occurrence_string(trie: Trie, v: int, k: int) -> tuple:
    return tuple(trie.suffix_ranks(v)[:k])


def check_counts(idx: Indexes) -> str:
    t, r = idx.trie, idx.result
    pairs = r.mpal_pairs()
    if len(set(pairs)) != len(pairs):
        return "duplicate maximal palindrome occurrences"
    if len(pairs) != 2 * t.n - t.leaf_count:
        return f"|MPal| = {len(pairs)}, expected 2n - l = {2 * t.n - t.leaf_count}"
    if r.dpal_count > t.n + 1:
        return f"|DPal| = {r.dpal_count} > n + 1 = {t.n + 1}"
    return ""


def check_mpal(idx: Indexes) -> str:
    got = set(idx.result.mpal_pairs())
    want = oracle.oracle_mpal(idx.trie)
    if got != want:
        return f"missing {sorted(want - got)[:5]}, extra {sorted(got - want)[:5]}"
    return ""


def check_dpal(idx: Indexes) -> str:
    t, r = idx.trie, idx.result
    got = [_occurrence_string(t, v, k) for v, k in r.witness]
    want = oracle.oracle_dpal(t)
    if len(got) != len(set(got)) or set(got) != want:
        return f"{len(set(got))} distinct palindromes reported, oracle has {len(want)}"
    lens = r.lengths()
    if any(a > b for a, b in zip(lens, lens[1:])):
        return "palindromes not discovered in non-decreasing length order"
    return ""


def check_string(idx: Indexes) -> str:
    """On a path trie, compare with the plain-string center expansion."""
    t = idx.trie
    if t.leaf_count > 1:
        return ""
    if t.n == 0:
        return "" if idx.result.mpal_count == 0 else "palindromes in an empty trie"
    leaf = max(range(t.node_count), key=lambda v: t.depth[v])
    s = t.suffix_ranks(leaf)
    # string position i (0-based) is the node at depth depth(leaf) - i
    chain = [leaf]
    while len(chain) < len(s):
        chain.append(int(t.parent[chain[-1]]))
    want = {(chain[i], k) for i, k in oracle.string_maximal_palindromes(s)}
    got = set(idx.result.mpal_pairs())
    if len(got) != 2 * len(s) - 1:
        return f"{len(got)} maximal palindromes on a path of {len(s)} edges"
    if got != want:
        return f"differs from center expansion: {sorted(got ^ want)[:5]}"
    return ""


def check_eertree(idx: Indexes) -> str:
    e = build_eertree(idx.result, idx.tree)
    if e.size != idx.result.dpal_count + 1:
        return f"{e.size} eertree nodes for {idx.result.dpal_count} palindromes"
    if e.link[ODD] != ODD or e.link[EVEN] != ODD:
        return "root suffix links must point to the odd root"
    pals = [tuple(e.palindrome(x)) for x in range(e.size)]
    links = oracle.oracle_eertree_links(pals[EVEN + 1:])
    for x in range(EVEN + 1, e.size):
        if e.length[x] != e.length[e.parent[x]] + 2:
            return f"node {x}: length is not parent length + 2"
        if pals[x] != _occurrence_string(idx.trie, *idx.result.witness[x - 1]):
            return f"node {x}: spelled string differs from its witness"
        if pals[int(e.link[x])] != links[pals[x]] or e.link[x] == ODD:
            return f"node {x}: wrong suffix link"
    for x in range(e.size):
        cs = [c for c, _ in e.children(x)]
        if any(a >= b for a, b in zip(cs, cs[1:])):
            return f"node {x}: edges not strictly sorted"
    return ""


def _ancestors(t: Trie, u: int) -> list:
    out = [u]
    while t.parent[out[-1]] >= 0:
        out.append(int(t.parent[out[-1]]))
    return out


def _all_queries(t: Trie):
    for u in range(t.node_count):
        chain = _ancestors(t, u)
        for j, v in enumerate(chain):
            for z in chain[:j + 1]:
                yield u, v, Center("node", z)
                if z != v:
                    yield u, v, Center("edge", z)


def _sampled_queries(t: Trie, rng: random.Random, count: int):
    for _ in range(count):
        u = rng.randrange(t.node_count)
        chain = _ancestors(t, u)
        j = rng.randrange(len(chain))
        z = chain[rng.randrange(j + 1)]
        if z != chain[j] and rng.random() < 0.5:
            yield u, chain[j], Center("edge", z)
        else:
            yield u, chain[j], Center("node", z)


def check_queries(idx: Indexes, rng=None) -> str:
    t = idx.trie
    q = QueryIndex(idx)
    if t.n <= EXHAUSTIVE_QUERY_N:
        queries = _all_queries(t)
    else:
        queries = _sampled_queries(t, rng or random.Random(0), SAMPLED_QUERIES)
    for u, v, c in queries:
        start, length = q.query_mpal(u, v, c)
        want = oracle.oracle_query_mpal(t, u, v, (c.kind, c.node))
        if length != want:
            return f"query_mpal({u}, {v}, {c}) = {length}, expected {want}"
        s = oracle.path_string(t, start, v)[:length]
        if len(s) != length or s != s[::-1]:
            return f"query_mpal({u}, {v}, {c}) occurrence is not a palindrome"
    per_suffix = oracle.oracle_suffix_dpal(t)
    longest = oracle.oracle_longest(t)
    for u in range(t.node_count):
        got = [_occurrence_string(t, m, k) for m, k in q.query_dpal_suffix(u)]
        if len(got) != len(set(got)) or set(got) != per_suffix[u]:
            return f"query_dpal_suffix({u}) differs from the oracle"
        L, (s, k) = q.longest_palindrome(u)
        if L != longest[u]:
            return f"longest({u}) = {L}, expected {longest[u]}"
        w = _occurrence_string(t, s, k)
        if len(w) != k or w != w[::-1]:
            return f"longest({u}) witness is not a palindrome"
    return ""


def check_jumps(idx: Indexes) -> str:
    st = idx.result.stats
    if st.jump_bound_violations:
        return f"{st.jump_bound_violations} scans used more than 3 * (1 + reported) jumps"
    bound = 3 * (idx.result.mpal_count + st.scans)
    if st.jump_uses > bound:
        return f"{st.jump_uses} jumps > 3 * (|MPal| + scans) = {bound}"
    return ""


def check_marks(idx: Indexes) -> str:
    st = idx.result.stats
    if st.double_marks:
        return f"{st.double_marks} suffix-tree nodes marked twice"
    if st.marks > idx.tree.size:
        return f"{st.marks} marks > {idx.tree.size} suffix-tree nodes"
    return ""


CHECKS = {
    "counts": check_counts,
    "mpal-oracle": check_mpal,
    "dpal-oracle": check_dpal,
    "string": check_string,
    "eertree": check_eertree,
    "queries": check_queries,
    "jumps": check_jumps,
    "marks": check_marks,
}


def run_checks(trie: Trie, names=None, rng=None) -> dict:
    """``{name: failure message}`` (empty message = pass).  An exception
    inside the pipeline fails every requested check."""
    names = list(names or CHECKS)
    try:
        idx = analyze(trie)
    except Exception as exc:   # report, do not crash the whole run
        return {name: f"{type(exc).__name__}: {exc}" for name in names}
    out = {}
    for name in names:
        fn = CHECKS[name]
        try:
            out[name] = fn(idx, rng) if name == "queries" else fn(idx)
        except Exception as exc:
            out[name] = f"{type(exc).__name__}: {exc}"
    return out
