"""Shared random corpus.

Pairs cover all four homology-class combinations and 16 to 64 edges per
curve.  Oracle values are computed once per session.
"""
import functools

import pytest

from rp3link import cover_oracle, curves, samples

N_PAIRS = 50
N_KNOTS = 30
SCALE = 4.0


def pair_spec(seed):
    cls1, cls2 = divmod(seed % 4, 2)
    n1 = 16 + (7 * seed) % 49
    n2 = 16 + (13 * seed + 5) % 49
    return n1, n2, cls1, cls2


@functools.lru_cache(maxsize=None)
def corpus_pair(seed):
    n1, n2, c1, c2 = pair_spec(seed)
    return samples.random_pair(seed, n1, n2, c1, c2, scale=SCALE)


@functools.lru_cache(maxsize=None)
def corpus_oracle(seed):
    a, b = corpus_pair(seed)
    return cover_oracle.oracle_degree(a, b, seed)


@functools.lru_cache(maxsize=None)
def corpus_knot(seed):
    return curves.random_curve([1000 + seed], 16 + (5 * seed) % 33, 0, scale=SCALE, name="K")


@functools.lru_cache(maxsize=None)
def corpus_knot_oracle(seed):
    return cover_oracle.oracle_selflink(corpus_knot(seed), seed)


@pytest.fixture(scope="session")
def pairs():
    return [corpus_pair(s) for s in range(N_PAIRS)]


@pytest.fixture(scope="session")
def oracle_degrees():
    return [corpus_oracle(s) for s in range(N_PAIRS)]


@pytest.fixture(scope="session")
def knots():
    return [corpus_knot(s) for s in range(N_KNOTS)]


@pytest.fixture(scope="session")
def knot_oracles():
    return [corpus_knot_oracle(s) for s in range(N_KNOTS)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
