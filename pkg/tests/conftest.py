import numpy as np
import pytest
from hypothesis import strategies as st

from triepal.trie import Trie, build_from_strings

ACCEPTANCE_LINES: list = []


@pytest.fixture
def t1():
    return build_from_strings(["aba"])


@pytest.fixture
def t2():
    return build_from_strings(["ab", "cb"])


@pytest.fixture
def t3():
    return build_from_strings(["aa", "ba"])


@st.composite
def tries(draw, max_n=30, sigmas=(1, 2, 3, 4, 26)):
    """Random tries: each node picks any earlier node with a free label."""
    sigma = draw(st.sampled_from(sigmas))
    n = draw(st.integers(0, max_n))
    parent, label = [-1], [0]
    used = [set()]
    for v in range(1, n + 1):
        open_nodes = [u for u in range(v) if len(used[u]) < sigma]
        p = draw(st.sampled_from(open_nodes))
        c = draw(st.sampled_from([c for c in range(1, sigma + 1) if c not in used[p]]))
        used[p].add(c)
        used.append(set())
        parent.append(p)
        label.append(c)
    return Trie(np.array(parent), np.array(label))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
