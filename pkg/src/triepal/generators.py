"""Seeded random tries and structured families for tests and benchmarks."""
from __future__ import annotations

import random
from array import array

import numpy as np

from .trie import Trie


def _finish(parent: list, label: list) -> Trie:
    return Trie(np.asarray(parent, dtype=np.int64), np.asarray(label, dtype=np.int64), root=0)


def random_trie(n: int, sigma: int, seed=None) -> Trie:
    """Uniform attachment: each new node hangs below a uniformly chosen node
    that still has a free label, with a uniformly chosen free label."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    parent = array("q", [-1])
    label = array("q", [0])
    full = (1 << sigma) - 1
    used = array("q", [0])         # bitmask of labels taken below each node
    open_nodes = [0]
    for v in range(1, n + 1):
        i = rng.randrange(len(open_nodes))
        p = open_nodes[i]
        mask = used[p]
        free = sigma - bin(mask).count("1")
        j = rng.randrange(free)
        c = 0
        while True:
            if not mask >> c & 1:
                if j == 0:
                    break
                j -= 1
            c += 1
        mask |= 1 << c
        used[p] = mask
        if mask == full:
            last = open_nodes.pop()
            if last != p:
                open_nodes[i] = last
        parent.append(p)
        label.append(c + 1)
        used.append(0)
        open_nodes.append(v)
    return _finish(parent, label)


def path_trie(m: int, sigma: int, seed=None) -> Trie:
    """A single path of ``m`` edges with random labels."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    parent = list(range(-1, m))
    label = [0] + [rng.randint(1, sigma) for _ in range(m)]
    return _finish(parent, label)


def star_trie(n: int, sigma: int, seed=None) -> Trie:
    """Up to ``sigma`` arms hanging from the root, grown round-robin."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    arms = min(sigma, n) if n else 0
    parent = [-1]
    label = [0]
    tips = []
    for v in range(1, n + 1):
        a = (v - 1) % arms
        if v <= arms:
            parent.append(0)
            label.append(v)
            tips.append(v)
        else:
            parent.append(tips[a])
            label.append(rng.randint(1, sigma))
            tips[a] = v
    return _finish(parent, label)


def caterpillar_trie(n: int, sigma: int, seed=None) -> Trie:
    """A spine with leaves attached to spine nodes (distinct sibling labels)."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    parent = [-1]
    label = [0]
    spine = 0
    used = {0: set()}
    for v in range(1, n + 1):
        labs = [c for c in range(1, sigma + 1) if c not in used[spine]]
        c = rng.choice(labs)
        used[spine].add(c)
        parent.append(spine)
        label.append(c)
        used[v] = set()
        full = len(used[spine]) == sigma
        if full or rng.random() < 0.5:
            spine = v
    return _finish(parent, label)


FAMILIES = {
    "random": random_trie,
    "path": path_trie,
    "star": star_trie,
    "caterpillar": caterpillar_trie,
}


def corpus(cases: int, max_n: int, seed: int, sigmas=(1, 2, 3, 4, 26)):
    """Yield ``(name, trie)`` pairs: random tries cycling through ``sigmas``
    with sizes up to ``max_n``, then a few structured tries per family."""
    rng = random.Random(seed)
    for i in range(cases):
        sigma = sigmas[i % len(sigmas)]
        n = rng.randint(0, max_n)
        yield f"random-{i}-s{sigma}-n{n}", random_trie(n, sigma, rng)
    for fam in ("path", "star", "caterpillar"):
        for sigma in sigmas:
            for n in (1, 2, 7, max(1, max_n // 2), max_n):
                yield f"{fam}-s{sigma}-n{n}", FAMILIES[fam](n, sigma, rng)
