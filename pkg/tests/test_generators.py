import random

import pytest

from triepal.generators import FAMILIES, corpus, random_trie


def sibling_labels_ok(trie):
    seen = set()
    for v in range(1, trie.node_count):
        key = (int(trie.parent[v]), int(trie.label[v]))
        if key in seen:
            return False
        seen.add(key)
    return True


@pytest.mark.parametrize("family", sorted(FAMILIES))
@pytest.mark.parametrize("sigma", [1, 2, 26])
def test_family_shape(family, sigma):
    for n in (0, 1, 5, 40):
        if family != "random" and n == 0:
            continue
        trie = FAMILIES[family](n, sigma, seed=7)
        assert trie.n == n
        assert sibling_labels_ok(trie)
        assert trie.label[1:].min(initial=sigma) >= 1 and trie.label.max() <= sigma


def test_random_is_deterministic():
    a = random_trie(200, 3, seed=5)
    b = random_trie(200, 3, seed=5)
    assert (a.parent == b.parent).all() and (a.label == b.label).all()
    c = random_trie(200, 3, seed=random.Random(5))
    assert (a.parent == c.parent).all()


def test_unary_alphabet_gives_path():
    trie = random_trie(30, 1, seed=1)
    assert trie.height == 30 and trie.leaf_count == 1


def test_path_and_star():
    assert FAMILIES["path"](9, 3, seed=0).height == 9
    star = FAMILIES["star"](10, 4, seed=0)
    assert len(star.children(0)) == 4 and star.leaf_count == 4


def test_corpus_counts_and_names():
    items = list(corpus(10, 20, 0, sigmas=(1, 2)))
    assert len(items) == 10 + 3 * 2 * 5
    assert items[0][0].startswith("random-0-s1")
    assert any(name.startswith("caterpillar") for name, _ in items)
    assert [t.n for _, t in corpus(10, 20, 0, sigmas=(1, 2))] == [t.n for _, t in items]
