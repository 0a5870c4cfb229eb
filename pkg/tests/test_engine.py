from hypothesis import given, settings

from triepal.engine import analyze, empty_occurrence_allowed
from triepal.oracle import oracle_dpal, oracle_mpal
from triepal.trie import build_from_strings

from conftest import tries


def dpal_strings(idx, table):
    tree = idx.tree
    out = set()
    for loc in idx.result.loci:
        out.add(table.decode(tree.string_of(loc.node)[:loc.length]))
    return out


def test_t1(t1):
    trie, table = t1
    idx = analyze(trie)
    r = idx.result
    assert (r.mpal_count, r.dpal_count) == (5, 4)
    assert dpal_strings(idx, table) == {"", "a", "b", "aba"}
    assert set(r.mpal_pairs()) == oracle_mpal(trie)
    assert (3, 3) in r.mpal_pairs()


def test_t2(t2):
    trie, table = t2
    r = analyze(trie).result
    assert (r.mpal_count, r.dpal_count) == (4, 4)


def test_t3(t3):
    trie, table = t3
    idx = analyze(trie)
    r = idx.result
    assert r.mpal_count == 2 * trie.n - trie.leaf_count
    assert dpal_strings(idx, table) == {"", "a", "b", "aa"}


def test_base_step_single_edge():
    trie, table = build_from_strings(["a"])
    r = analyze(trie).result
    assert r.mpal_pairs() == [(1, 1)]
    assert r.dpal_count == 2


def test_unary_chain():
    trie, table = build_from_strings(["a" * 8])
    idx = analyze(trie)
    r = idx.result
    assert r.dpal_count == 9
    assert sorted(r.lengths()) == list(range(9))
    # internal nodes never keep (v, 0): their child repeats the edge character
    assert set(r.mpal_pairs()) == oracle_mpal(trie)
    assert r.mpal_count == 2 * 8 - 1


def test_empty_occurrence_rule():
    trie, _ = build_from_strings(["a"])
    assert not empty_occurrence_allowed(trie, 0)
    assert not empty_occurrence_allowed(trie, 1)


def test_generators_spell_palindromes(t1):
    trie, table = t1
    idx = analyze(trie)
    r = idx.result
    for pid, (par, c) in enumerate(r.generator):
        if pid == 0:
            continue
        loc = r.loci[pid]
        s = idx.tree.string_of(loc.node)[:loc.length]
        assert s[0] == s[-1] == c
        if par >= 0:
            inner = r.loci[par]
            assert inner.length == loc.length - 2


@settings(max_examples=150, deadline=None)
@given(tries(max_n=60))
def test_matches_oracle(trie):
    idx = analyze(trie)
    r = idx.result
    assert set(r.mpal_pairs()) == oracle_mpal(trie)
    assert r.mpal_count == len(oracle_mpal(trie))
    assert r.mpal_count == 2 * trie.n - trie.leaf_count
    got = {tuple(idx.tree.string_of(l.node)[:l.length]) for l in r.loci}
    assert got == oracle_dpal(trie)
    assert r.dpal_count == len(got)
    lens = r.lengths()
    assert lens == sorted(lens)
    assert r.stats.jump_bound_violations == 0
    assert r.stats.double_marks == 0
