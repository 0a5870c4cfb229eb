from hypothesis import given, settings

from triepal.engine import build_indexes
from triepal.nav import NIL
from triepal.trie import build_from_strings

from conftest import tries


def test_t3_dest_and_jump(t3):
    trie, table = t3
    nav = build_indexes(trie).nav
    a, b = table.rank("a"), table.rank("b")
    inf = nav.inf
    assert nav.dest_sl(a) == [1, 2, inf]
    assert nav.dest_sl(b) == [2, inf]
    # (2, 3) in 1-based positions
    assert nav.jump_array(a) == [1, 2]


def test_single_character_bucket():
    trie, table = build_from_strings(["aaaa", "aa"])
    nav = build_indexes(trie).nav
    # every node with a child, root included
    with_child = sum(1 for v in range(trie.node_count) if not trie.leaf_flags[v])
    assert len(nav.dest_sl(1)) - 1 == with_child == 4


def test_left_dest_examples(t1, t3):
    trie, table = t3
    idx = build_indexes(trie)
    a = idx.tree.locus_of([table.rank("a")]).node
    assert idx.nav.dest[idx.nav.left_dest[a]] == 2
    trie, table = t1
    idx = build_indexes(trie)
    a = idx.tree.locus_of([table.rank("a")]).node
    assert idx.nav.left_dest[a] == NIL


@settings(max_examples=80, deadline=None)
@given(tries(max_n=80))
def test_nav_invariants(trie):
    idx = build_indexes(trie)
    tree, nav = idx.tree, idx.nav
    total = 0
    for c in range(len(nav.group_start)):
        d = nav.dest_sl(c)
        assert d[-1] == nav.inf
        assert all(x < y for x, y in zip(d, d[1:]))
        total += len(d) - 1
        jumps = nav.jump_array(c)
        for i, j in enumerate(jumps):
            assert j > i
            # j ends the run of adjacent leaves starting at i
            assert all(d[t + 1] - d[t] == 1 for t in range(i, j - 1))
            assert j == i + 1 or d[j] - d[j - 1] == 1
            assert j == len(d) - 1 or d[j + 1] - d[j] > 1 or j == i + 1
    assert total == trie.n
    for x in range(1, tree.size):
        c = int(tree.first_char[x])
        lo, hi = int(tree.lspan[x]), int(tree.rspan[x])
        in_span = [i for i in nav.dest_sl(c)[:-1] if lo <= i <= hi]
        p = nav.left_dest[x]
        if in_span:
            assert p != NIL and nav.dest[p] == in_span[0]
        else:
            assert p == NIL
