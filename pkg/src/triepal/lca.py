"""Static range-minimum and lowest-common-ancestor indexes.

The LCA reduction works on a preorder listing: for ``u != v`` with
``pre[u] < pre[v]``, the LCA is the parent of the shallowest node among
preorder positions ``pre[u]+1 .. pre[v]``.
"""
from __future__ import annotations

import numpy as np

from .trie import int_view

_BLOCK = 16


class RangeMin:
    """Argmin over ranges of a static integer array.

    Sparse table over block minima plus in-block prefix/suffix minima;
    queries inside a single block scan at most ``_BLOCK`` entries.
    """

    def __init__(self, values):
        vals = np.asarray(values, dtype=np.int64)
        m = len(vals)
        self.values = int_view(vals)
        nb = max(1, -(-m // _BLOCK))
        padded = np.full(nb * _BLOCK, np.iinfo(np.int64).max // 4, dtype=np.int64)
        padded[:m] = vals
        stride = nb * _BLOCK
        keys = padded * stride + np.arange(stride)
        blocks = keys.reshape(nb, _BLOCK)
        self._prefix = int_view((np.minimum.accumulate(blocks, axis=1) % stride).ravel())
        self._suffix = int_view((np.minimum.accumulate(blocks[:, ::-1], axis=1)[:, ::-1] % stride).ravel())
        level = blocks.min(axis=1)
        table = [level]
        span = 1
        while 2 * span <= nb:
            prev = table[-1]
            table.append(np.minimum(prev[:-span], prev[span:]))
            span *= 2
        self._stride = stride
        self._keys = [int_view(t) for t in table]

    def argmin(self, lo: int, hi: int) -> int:
        """Index of a minimum of ``values[lo..hi]`` (inclusive)."""
        bl, bh = lo // _BLOCK, hi // _BLOCK
        vals = self.values
        if bl == bh:
            best = lo
            for i in range(lo + 1, hi + 1):
                if vals[i] < vals[best]:
                    best = i
            return best
        best = self._suffix[lo]
        cand = self._prefix[hi]
        if vals[cand] < vals[best]:
            best = cand
        if bh - bl > 1:
            a, b = bl + 1, bh - 1
            j = (b - a + 1).bit_length() - 1
            keys = self._keys[j]
            k = min(keys[a], keys[b - (1 << j) + 1])
            cand = k % self._stride
            if vals[cand] < vals[best]:
                best = cand
        return best


def node_depths(parent) -> np.ndarray:
    """Edge count from the root for every node (root marked by parent -1),
    by pointer jumping."""
    par = np.asarray(parent, dtype=np.int64)
    root = par < 0
    nxt = np.where(root, np.arange(len(par)), par)
    depth = (~root).astype(np.int64)
    done = root[nxt]
    while not done.all():
        depth += np.where(done, 0, depth[nxt])
        nxt = nxt[nxt]
        done = root[nxt]
    return depth


def nearest_marked(parent, marked) -> np.ndarray:
    """Per node, the nearest marked ancestor-or-self (-1 if none), by
    pointer jumping."""
    par = np.asarray(parent, dtype=np.int64)
    marked = np.asarray(marked, dtype=bool)
    m = len(par)
    ptr = np.where(marked | (par < 0), np.arange(m), par)
    while True:
        nxt = ptr[ptr]
        if np.array_equal(nxt, ptr):
            break
        ptr = nxt
    return np.where(marked[ptr], ptr, -1)


class LcaIndex:
    """O(1) lowest common ancestor on a static rooted tree.

    ``parent`` maps the root to -1 and ``order`` is a preorder listing.
    ``depth`` must be the number of edges from the root (string depth
    would not do: a node on a sibling branch can be shallower by that
    measure than the child of the answer).
    """

    def __init__(self, parent, depth=None, order=None):
        parent = np.asarray(parent, dtype=np.int64)
        depth = node_depths(parent) if depth is None else np.asarray(depth, dtype=np.int64)
        m = len(parent)
        if order is None:
            order = np.arange(m)
        order = np.asarray(order, dtype=np.int64)
        pos = np.empty(m, dtype=np.int64)
        pos[order] = np.arange(m)
        self._pos = int_view(pos)
        self._order = int_view(order)
        self._parent = int_view(parent)
        self._rmq = RangeMin(depth[order])

    def lca(self, a: int, b: int) -> int:
        if a == b:
            return a
        pa, pb = self._pos[a], self._pos[b]
        if pa > pb:
            pa, pb = pb, pa
        return self._parent[self._order[self._rmq.argmin(pa + 1, pb)]]
