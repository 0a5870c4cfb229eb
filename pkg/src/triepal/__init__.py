"""Maximal and distinct palindromes in tries, with an eertree and path queries.

Typical use::

    from triepal import build_from_strings, analyze
    trie, table = build_from_strings(["aba", "cba"])
    idx = analyze(trie)
    idx.result.mpal_pairs()      # [(node, length), ...]
"""
from .eertree import Eertree, build_eertree, export_eertree, load_eertree
from .engine import Indexes, PalindromeResult, analyze, build_indexes, compute_all
from .queries import Center, QueryError, QueryIndex
from .trie import (
    CharTable,
    DuplicateLabelError,
    Trie,
    TrieInputError,
    attach_sentinel,
    build_from_edgelist,
    build_from_strings,
    read_edgelist,
    read_strings,
)

__version__ = "0.1.0"

__all__ = [
    "CharTable", "Center", "DuplicateLabelError", "Eertree", "Indexes",
    "PalindromeResult", "QueryError", "QueryIndex", "Trie", "TrieInputError",
    "analyze", "attach_sentinel", "build_eertree", "build_from_edgelist",
    "build_from_strings", "build_indexes", "compute_all", "export_eertree",
    "load_eertree", "read_edgelist", "read_strings",
]
