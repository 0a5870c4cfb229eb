import numpy as np
import pytest
from hypothesis import given, settings

from triepal.trie import (
    CharTable,
    DuplicateLabelError,
    TrieInputError,
    attach_sentinel,
    build_from_edgelist,
    build_from_strings,
    read_edgelist,
    read_strings,
    write_edgelist,
)

from conftest import tries


def edges_of(trie, table):
    return sorted((v, int(trie.parent[v]), table.char(int(trie.label[v])))
                  for v in range(1, trie.node_count))


def test_strings_t1(t1):
    trie, table = t1
    assert edges_of(trie, table) == [(1, 0, "a"), (2, 1, "b"), (3, 2, "a")]
    assert (trie.n, trie.leaf_count) == (3, 1)


def test_strings_t2(t2):
    trie, table = t2
    assert edges_of(trie, table) == [(1, 0, "b"), (2, 1, "a"), (3, 1, "c")]
    assert (trie.n, trie.leaf_count) == (3, 2)


def test_strings_t3(t3):
    trie, table = t3
    assert edges_of(trie, table) == [(1, 0, "a"), (2, 1, "a"), (3, 1, "b")]
    assert (trie.n, trie.leaf_count) == (3, 2)


def test_strings_duplicates_merge_and_prefix_is_internal():
    trie, table = build_from_strings(["ab", "ab", "b"])
    assert trie.n == 2
    # "b" ends at an internal node
    assert not trie.leaf_flags[1]
    assert table.decode(trie.suffix_ranks(2)) == "ab"


def test_strings_empty_line():
    with pytest.raises(TrieInputError, match="line 2: empty string"):
        build_from_strings(["a", ""])


def test_char_table_ranks():
    table = CharTable.from_chars("cab")
    assert [table.rank(c) for c in "abc"] == [1, 2, 3]
    assert table.char(0) == "$"
    assert table.decode(table.encode("cab")) == "cab"


def test_edgelist_t1():
    trie, table = build_from_edgelist([(1, 0, "a"), (2, 1, "b"), (3, 2, "a")])
    assert edges_of(trie, table) == [(1, 0, "a"), (2, 1, "b"), (3, 2, "a")]


def test_edgelist_duplicate_label():
    with pytest.raises(DuplicateLabelError, match="duplicate sibling label a at node 1"):
        build_from_edgelist([(1, 0, "b"), (2, 1, "a"), (3, 1, "a")])


def test_edgelist_not_a_tree():
    with pytest.raises(TrieInputError, match="not a tree"):
        build_from_edgelist([(1, 0, "a"), (2, 3, "b")])


def test_edgelist_cycle():
    with pytest.raises(TrieInputError, match="not a tree"):
        build_from_edgelist([(1, 2, "a"), (2, 1, "b")])


def test_edgelist_two_parents():
    with pytest.raises(TrieInputError, match="two parents"):
        build_from_edgelist([(1, 0, "a"), (1, 0, "b")])


def test_read_edgelist_line_numbers(tmp_path):
    p = tmp_path / "e.tsv"
    p.write_text("2\n1\t0\ta\n2\tx\tb\n")
    with pytest.raises(TrieInputError, match="line 3"):
        read_edgelist(str(p))
    p.write_text("3\n1\t0\ta\n")
    with pytest.raises(TrieInputError, match="line 1"):
        read_edgelist(str(p))


def test_read_strings_empty_file(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("")
    with pytest.raises(TrieInputError):
        read_strings(str(p))


def test_edgelist_roundtrip(t2):
    trie, table = t2
    again, table2 = read_edgelist(write_edgelist(trie, table).splitlines())
    assert edges_of(again, table2) == edges_of(trie, table)


def test_path_char(t1, t2):
    trie, table = t1
    assert [table.char(trie.path_char(3, k)) for k in (1, 2, 3)] == ["a", "b", "a"]
    assert table.char(trie.path_char(1, 1)) == "a"
    trie2, table2 = t2
    assert table2.char(trie2.path_char(2, 2)) == "b"
    with pytest.raises(IndexError):
        trie.path_char(1, 2)


def test_sentinel(t1, t2):
    st = attach_sentinel(t1[0])
    assert st.size == 4 and st.top == 4
    assert st.path_char(3, 4) == 0
    st2 = attach_sentinel(t2[0])
    sufs = sorted(t2[1].decode(st2.suffix(v)) for v in range(4))
    assert sufs == sorted(["$", "b$", "ab$", "cb$"])


def test_empty_trie():
    trie, _ = build_from_edgelist([])
    assert trie.n == 0 and trie.leaf_count == 0
    assert attach_sentinel(trie).size == 1


@settings(max_examples=60, deadline=None)
@given(tries(max_n=60))
def test_path_char_matches_parent_walk(trie):
    for v in range(trie.node_count):
        walk = trie.suffix_ranks(v)
        assert [trie.path_char(v, k) for k in range(1, len(walk) + 1)] == walk
        assert trie.depth[v] == len(walk)


@settings(max_examples=40, deadline=None)
@given(tries(max_n=120, sigmas=(1, 2, 3)))
def test_level_ancestor_matches_naive(trie):
    la = trie.level_ancestors
    nodes, depths, want = [], [], []
    for v in range(trie.node_count):
        chain = [v]
        while trie.parent[chain[-1]] >= 0:
            chain.append(int(trie.parent[chain[-1]]))
        for u in chain:
            d = int(trie.depth[u])
            assert la.ancestor(v, d) == u
            nodes.append(v)
            depths.append(d)
            want.append(u)
    assert la.ancestors_at(np.array(nodes), np.array(depths)).tolist() == want


def test_level_ancestor_long_path():
    trie, _ = build_from_strings(["ab" * 300])
    la = trie.level_ancestors
    for v in (1, 17, 600):
        for d in (0, 1, v // 2, v):
            assert la.ancestor(v, d) == d     # ids follow depth on a path
