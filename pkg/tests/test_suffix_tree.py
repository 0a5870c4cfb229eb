import itertools

from hypothesis import given, settings

from triepal.lca import LcaIndex
from triepal.suffix_tree import Locus, build_suffix_tree, compute_leaf_suffix_links
from triepal.trie import attach_sentinel, build_from_strings

from conftest import tries


def stree(trie):
    return build_suffix_tree(attach_sentinel(trie))


def leaf_strings(tree, table):
    return [table.decode(tree.string_of(int(tree.leaf_node[i]))) for i in range(1, tree.num_leaves + 1)]


def test_t1_leaves_and_branching(t1):
    trie, table = t1
    tree = stree(trie)
    assert leaf_strings(tree, table) == ["$", "a$", "aba$", "ba$"]
    a = tree.locus_of([table.rank("a")]).node
    assert tree.sdepth[a] == 1
    kids = [table.decode(tree.string_of(y))[1:] for y in tree.children(a)]
    assert kids == ["$", "ba$"]


def test_single_edge():
    trie, table = build_from_strings(["a"])
    tree = stree(trie)
    assert leaf_strings(tree, table) == ["$", "a$"]
    assert all(tree.is_leaf[y] for y in tree.children(0))


def test_t3_leaves(t3):
    trie, table = t3
    tree = stree(trie)
    assert leaf_strings(tree, table) == ["$", "a$", "aa$", "ba$"]
    a = tree.locus_of([table.rank("a")]).node
    assert [table.decode(tree.string_of(y))[1:] for y in tree.children(a)] == ["$", "a$"]


def test_t1_suffix_links(t1):
    trie, table = t1
    tree = stree(trie)
    links = compute_leaf_suffix_links(tree)
    leaf = {table.decode(tree.string_of(int(tree.leaf_node[i]))): i for i in range(1, 5)}
    assert links.target[leaf["aba$"]] == leaf["ba$"]
    assert links.target[leaf["ba$"]] == leaf["a$"]
    assert links.target[leaf["a$"]] == leaf["$"]
    assert links.target[leaf["$"]] == 0
    assert table.decode(links.in_chars(leaf["a$"])) == "b"
    assert table.decode(links.in_chars(leaf["ba$"])) == "a"


def test_t3_in_chars(t3):
    trie, table = t3
    tree = stree(trie)
    links = compute_leaf_suffix_links(tree)
    assert table.decode(links.in_chars(2)) == "ab"   # leaf "a$"


def test_t1_lca(t1):
    trie, table = t1
    tree = stree(trie)
    leaf = {table.decode(tree.string_of(int(tree.leaf_node[i]))): int(tree.leaf_node[i]) for i in range(1, 5)}
    u = tree.lca(leaf["a$"], leaf["aba$"])
    assert table.decode(tree.string_of(u)) == "a"
    assert tree.lca(leaf["$"], leaf["ba$"]) == 0
    assert tree.lca(u, u) == u


def test_locus_of(t1):
    trie, table = t1
    tree = stree(trie)
    loc = tree.locus_of(table.encode("ab"))
    assert loc.length == 2 and tree.sdepth[loc.node] > 2          # implicit
    assert table.decode(tree.string_of(loc.node)) == "aba$"
    assert tree.locus_of([]) == Locus(0, 0)
    assert tree.locus_of(table.encode("bb")) is None


def test_dump_format(t1):
    trie, table = t1
    lines = stree(trie).dump(table).splitlines()
    assert lines[0] == "0\t-1\t0\t"
    assert "2\t0\t1\ta" in lines


@settings(max_examples=60, deadline=None)
@given(tries(max_n=80))
def test_leaves_are_sorted_suffixes(trie):
    st = attach_sentinel(trie)
    tree = build_suffix_tree(st)
    want = sorted(tuple(st.suffix(v)) for v in range(trie.node_count))
    got = [tuple(tree.string_of(int(tree.leaf_node[i]))) for i in range(1, tree.num_leaves + 1)]
    assert got == want
    assert tree.num_leaves == trie.node_count
    assert tree.size <= 2 * tree.num_leaves
    for x in range(1, tree.size):
        assert tree.sdepth[tree.parent[x]] < tree.sdepth[x]
        if not tree.is_leaf[x]:
            assert len(tree.children(x)) >= 2
        fcs = [tree.first_char[y] for y in tree.children(x)]
        assert fcs == sorted(set(fcs))
    for i in range(1, tree.num_leaves + 1):
        assert tuple(tree.string_of(int(tree.leaf_node[i]))) == tuple(st.suffix(int(tree.leaf_trie[i])))


@settings(max_examples=60, deadline=None)
@given(tries(max_n=80))
def test_suffix_link_invariants(trie):
    tree = stree(trie)
    links = compute_leaf_suffix_links(tree)
    total = 0
    for i in range(1, tree.num_leaves + 1):
        v = int(tree.leaf_trie[i])
        assert sorted(links.in_chars(i)) == sorted(trie.childchar(v))
        total += len(links.in_chars(i))
        p = int(trie.parent[v])
        assert links.target[i] == (0 if p < 0 else tree.trie_leaf[p])
    assert total == trie.n


@settings(max_examples=30, deadline=None)
@given(tries(max_n=50))
def test_lca_exhaustive(trie):
    tree = stree(trie)
    par = tree.parent.tolist()

    def up(x):
        out = [x]
        while par[out[-1]] >= 0:
            out.append(par[out[-1]])
        return out

    for a, b in itertools.combinations_with_replacement(range(tree.size), 2):
        ua = up(a)
        common = set(up(b))
        assert tree.lca(a, b) == next(x for x in ua if x in common)


def test_lca_index_on_plain_tree():
    #        0
    #      1   2
    #     3 4   5
    parent = [-1, 0, 0, 1, 1, 2]
    idx = LcaIndex(parent, order=[0, 1, 3, 4, 2, 5])
    assert idx.lca(3, 4) == 1
    assert idx.lca(3, 5) == 0
    assert idx.lca(4, 1) == 1
