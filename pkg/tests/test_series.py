import itertools
import random
from collections import Counter

import pytest

import oracles
from conftest import G_, as_set, entry, oracle_group
from partialpi.errors import NotNormal
from partialpi.series import (
    ChiefSeries,
    chief_series_iter,
    first_chief_series,
    jordan_holder_factor_orders,
    minimal_normal_overgroups,
    quotient,
)
from partialpi.subgroups import (
    all_normal_subgroups,
    cyclic,
    is_abelian,
    is_normal,
    join,
    normalizer,
    sylow_subgroup,
    trivial,
)


def test_quotient_by_trivial_is_regular():
    G = G_("S3")
    q = quotient(G, trivial(G))
    assert q.degree == 6 and q.image.order == 6


def test_quotient_s4_by_v4():
    S4 = G_("S4")
    V = all_normal_subgroups(S4)[1]
    q = quotient(S4, V)
    assert q.image.order == 6 and not is_abelian(q.image)


def test_quotient_by_whole():
    A5 = G_("A5")
    assert quotient(A5, A5).image.order == 1


def test_quotient_requires_normal():
    S3 = G_("S3")
    with pytest.raises(NotNormal):
        quotient(S3, sylow_subgroup(S3, 2))


def test_quotient_homomorphism_and_transport():
    rng = random.Random(11)
    for name in ["S4", "SL23", "GL23", "He3", "S3xS3", "D24", "C2xA4", "F20"]:
        G = G_(name)
        idx = G.index
        for N in all_normal_subgroups(G):
            q = quotient(G, N)
            assert q.image.order * N.order == G.order
            for _ in range(100):
                a, b = rng.randrange(idx.size), rng.randrange(idx.size)
                assert q.map(int(idx.mul(a, b))) == q.map(a) * q.map(b)
            # kernel of the induced map is exactly N
            kern = [int(g) for g in G.elements if q.map(int(g)).is_identity()]
            assert sorted(kern) == sorted(int(x) for x in N.elements)
            for M in all_normal_subgroups(G):
                X = join(G, M, N)
                assert q.preimage_of(q.image_of(X)) == X


def test_minimal_normal_overgroups_examples():
    A5 = G_("A5")
    assert [M.order for M in minimal_normal_overgroups(A5, trivial(A5))] == [60]
    S4 = G_("S4")
    assert [M.order for M in minimal_normal_overgroups(S4, trivial(S4))] == [4]
    Z = G_("Z2^2")
    assert [M.order for M in minimal_normal_overgroups(Z, trivial(Z))] == [2, 2, 2]


def test_minimal_normal_overgroups_require_normal():
    S3 = G_("S3")
    with pytest.raises(NotNormal):
        minimal_normal_overgroups(S3, sylow_subgroup(S3, 2))


def test_chief_series_examples():
    assert [s.factor_orders for s in chief_series_iter(G_("A5"))] == [[60]]
    assert [s.factor_orders for s in chief_series_iter(G_("S4"))] == [[4, 3, 2]]
    assert len(list(chief_series_iter(G_("Z2^2")))) == 3
    assert jordan_holder_factor_orders(first_chief_series(G_("S4"))) == Counter({4: 1, 3: 1, 2: 1})
    assert jordan_holder_factor_orders(first_chief_series(G_("A5"))) == Counter({60: 1})


def test_chief_series_match_oracle():
    for name in ["S4", "Z2^3", "D12", "S3xS3", "C3xS3", "Q8", "C2xA4", "Dic12", "He3", "D16", "C3^2:C2"]:
        e = entry(name)
        G = G_(name)
        mine = [tuple(as_set(T) for T in s.terms()) for s in chief_series_iter(G)]
        theirs = [tuple(s) for s in oracles.chief_series(oracle_group(e), e.degree)]
        assert sorted(map(lambda t: tuple(sorted(map(sorted, t))), mine)) == sorted(
            map(lambda t: tuple(sorted(map(sorted, t))), theirs)
        )
        assert len(mine) == len(set(mine))


def test_chief_steps_certified(corpus):
    for e in corpus:
        G = G_(e.name)
        for s in itertools.islice(chief_series_iter(G), 20):
            if G.order == 1:
                assert len(s) == 0
                continue
            assert s.steps[0].lower.order == 1 and s.steps[-1].upper == G
            for a, b in zip(s.steps, s.steps[1:]):
                assert a.upper == b.lower
            for st in s.steps:
                assert is_normal(G, st.lower) and is_normal(G, st.upper)
                assert st.upper in minimal_normal_overgroups(G, st.lower)


def test_jordan_holder_invariance(corpus):
    checked = 0
    for e in corpus:
        G = G_(e.name)
        series = list(itertools.islice(chief_series_iter(G), 201))
        if len(series) > 200:
            continue
        ref = jordan_holder_factor_orders(series[0])
        assert all(jordan_holder_factor_orders(s) == ref for s in series)
        checked += 1
    assert checked >= 60


def test_chief_series_type_invariants():
    s = first_chief_series(G_("S4"))
    assert isinstance(s, ChiefSeries) and len(s) == 3
    assert [T.order for T in s.terms()] == [1, 4, 12, 24]
    assert s.steps[0].factor_order == 4


def test_normalizer_correspondence_in_quotient():
    # the normalizer of X/A in G/A is N_G(X)/A for A <= X
    for name in ["S4", "GL23", "S3xS3", "D24"]:
        G = G_(name)
        idx = G.index
        for A in all_normal_subgroups(G):
            q = quotient(G, A)
            for x in range(0, idx.size, max(1, idx.size // 12)):
                X = join(G, cyclic(G, x), A)
                assert normalizer(q.image_whole, q.image_of(X)) == q.image_of(normalizer(G, X))
