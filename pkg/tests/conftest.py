import random
import sys

import pytest

import oracles
from partialpi.corpus import builtin_corpus, find
from partialpi.subgroups import as_subgroup


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


def entry(name):
    return find(builtin_corpus(), name)


def group(name):
    return entry(name).group()


def G_(name):
    return as_subgroup(group(name))


def as_set(H):
    """Element set of a package Subgroup as 0-indexed tuples."""
    perms = H.index.perms
    return frozenset(tuple(int(v) for v in perms[i]) for i in H.elements)


def oracle_group(e):
    gens = [oracles.parse_cycles(g, e.degree) for g in e.generators]
    return oracles.closure(gens, e.degree)


def small_entries(max_order=200):
    return [e for e in builtin_corpus() if e.expected_order <= max_order]


@pytest.fixture
def rng():
    return random.Random(20261018)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
