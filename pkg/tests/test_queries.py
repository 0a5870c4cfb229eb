import random

import pytest
from hypothesis import given, settings

from triepal.engine import analyze
from triepal.oracle import (
    _suffixes,
    oracle_longest,
    oracle_query_mpal,
    oracle_suffix_dpal,
    path_string,
)
from triepal.queries import Center, QueryError, QueryIndex

from conftest import tries


def qindex(trie):
    return QueryIndex(analyze(trie))


def test_center_parse():
    assert Center.parse("node:3") == Center("node", 3)
    assert str(Center.parse("edge:2")) == "edge:2"
    for bad in ("vertex:1", "node:", "node:x"):
        with pytest.raises(QueryError):
            Center.parse(bad)


def test_t1_mpal(t1):
    trie, _ = t1
    q = qindex(trie)
    assert q.query_mpal(3, 0, Center("edge", 2)) == (3, 3)
    assert q.query_mpal(3, 1, Center("edge", 2)) == (2, 1)
    assert q.query_mpal(3, 0, Center("node", 1)) == (1, 0)


def test_mpal_errors(t2):
    trie, _ = t2
    q = qindex(trie)
    with pytest.raises(QueryError, match="not an ancestor"):
        q.query_mpal(2, 3, Center("node", 1))
    with pytest.raises(QueryError, match="not on the path"):
        q.query_mpal(2, 0, Center("node", 3))
    with pytest.raises(QueryError, match="not on the path"):
        q.query_mpal(2, 0, Center("edge", 0))
    with pytest.raises(QueryError, match="out of range"):
        q.query_mpal(9, 0, Center("node", 0))


def test_t3_dpal_suffix(t3):
    trie, table = t3
    q = qindex(trie)
    assert q.query_dpal_suffix(2) == [(2, 2), (1, 1)]
    assert q.query_dpal_suffix(0) == []


def test_t3_longest(t3):
    trie, _ = t3
    q = qindex(trie)
    assert [q.longest_palindrome(v)[0] for v in (1, 2, 3)] == [1, 2, 1]
    assert q.longest_palindrome(2)[1] == (2, 2)


@settings(max_examples=60, deadline=None)
@given(tries(max_n=25))
def test_query_mpal_exhaustive(trie):
    q = qindex(trie)
    par = trie.parent.tolist()
    for u in range(trie.node_count):
        chain = [u]
        while par[chain[-1]] >= 0:
            chain.append(par[chain[-1]])
        for i, v in enumerate(chain):
            for z in chain[:i + 1]:
                kinds = ("node", "edge") if z != v else ("node",)
                for kind in kinds:
                    start, length = q.query_mpal(u, v, Center(kind, z))
                    assert length == oracle_query_mpal(trie, u, v, (kind, z))
                    s = path_string(trie, start, v)[:length]
                    assert s == s[::-1]


@settings(max_examples=100, deadline=None)
@given(tries(max_n=60))
def test_dpal_suffix_and_longest(trie):
    q = qindex(trie)
    want = oracle_suffix_dpal(trie)
    longest = oracle_longest(trie)
    sufs = _suffixes(trie)
    for u in range(trie.node_count):
        got = q.query_dpal_suffix(u)
        strings = [tuple(sufs[x][:k]) for x, k in got]
        assert len(set(strings)) == len(strings)
        assert set(strings) == {tuple(p) for p in want[u]}
        L, (w, k) = q.longest_palindrome(u)
        assert L == longest[u] == k
        s = sufs[w][:k]
        assert s == s[::-1]


def test_queries_need_results(t1):
    from triepal.engine import build_indexes
    with pytest.raises(ValueError):
        QueryIndex(build_indexes(t1[0]))


def test_random_long_paths_sampled():
    from triepal.generators import caterpillar_trie
    trie = caterpillar_trie(300, 2, seed=3)
    q = qindex(trie)
    rng = random.Random(1)
    leaves = [v for v in range(trie.node_count) if trie.leaf_flags[v]]
    for _ in range(300):
        u = rng.choice(leaves)
        chain = [u]
        while trie.parent[chain[-1]] >= 0:
            chain.append(int(trie.parent[chain[-1]]))
        i = rng.randrange(len(chain))
        z = rng.choice(chain[:i + 1])
        kind = "node" if z == chain[i] else rng.choice(("node", "edge"))
        assert q.query_mpal(u, chain[i], Center(kind, z))[1] == \
            oracle_query_mpal(trie, u, chain[i], (kind, z))
