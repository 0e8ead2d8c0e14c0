"""The partial Pi-property of a subgroup.

``H <= G`` has the property when some chief series ``1 = G_0 < ... < G_n = G``
makes every index ``|G/G_{i-1} : N(HG_{i-1}/G_{i-1} & G_i/G_{i-1})|`` a
``pi``-number, ``pi`` being the primes of that intersection's order.

Each factor is evaluated inside ``G``: with ``K = HA & B`` for the step
``A < B``, the quotient normalizer is ``N_G(K)/A``, so the index is
``|G : N_G(K)|`` and the prime set is that of ``|K/A|``.  The search over
chief series is a memoized DFS over normal subgroups, since whether the rest
of a series can be completed from ``N`` depends on ``N`` alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MemoCapExceeded
from .perm import Group
from .series import ChiefSeries, ChiefStep
from .subgroups import (
    NORMAL_LATTICE_CAP,
    PrimeSet,
    Subgroup,
    _check_inside,
    as_subgroup,
    intersection,
    join,
    minimal_normal_overgroups,
    normalizer,
    trivial,
)


@dataclass(frozen=True)
class PiVerdict:
    holds: bool
    witness: ChiefSeries | None
    explored: int

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class FactorReport:
    """Numbers behind one factor test; ``ok`` is the verdict."""

    intersection_order: int
    index: int
    primes: tuple[int, ...]
    ok: bool


def factor_detail(G: Group | Subgroup, H: Subgroup, A: Subgroup, B: Subgroup) -> FactorReport:
    G = as_subgroup(G)
    K = intersection(G, join(G, H, A), B)
    index = G.order // normalizer(G, K).order
    pi = PrimeSet.of(K.order // A.order)
    return FactorReport(K.order, index, pi.primes, pi.is_pi_number(index))


def factor_condition(G: Group | Subgroup, H: Subgroup, A: Subgroup, B: Subgroup) -> bool:
    """Whether the chief factor ``B/A`` satisfies the index condition for ``H``."""
    return factor_detail(G, H, A, B).ok


def satisfies_partial_pi(G: Group | Subgroup, H: Subgroup, memo_cap: int = NORMAL_LATTICE_CAP) -> PiVerdict:
    G = as_subgroup(G)
    _check_inside(G, H)
    nxt: dict[int, Subgroup | None] = {}

    def reach(N: Subgroup) -> bool:
        if N.order == G.order:
            return True
        if N.key in nxt:
            return nxt[N.key] is not None
        if len(nxt) >= memo_cap:
            raise MemoCapExceeded("pi-property memo", len(nxt) + 1, memo_cap)
        nxt[N.key] = None
        for M in minimal_normal_overgroups(G, N):
            if factor_condition(G, H, N, M) and reach(M):
                nxt[N.key] = M
                return True
        return False

    start = trivial(G)
    if not reach(start):
        return PiVerdict(False, None, len(nxt))
    steps = []
    N = start
    while N.order < G.order:
        M = nxt[N.key]
        steps.append(ChiefStep(N, M))
        N = M
    return PiVerdict(True, ChiefSeries(tuple(steps)), len(nxt))


def satisfies_partial_pi_in(ambient: Group | Subgroup, H: Subgroup, M: Subgroup) -> PiVerdict:
    """The property for ``H`` inside the subgroup ``M`` (chief series of ``M``)."""
    _check_inside(as_subgroup(ambient), M)
    return satisfies_partial_pi(M, H)


def witness_holds(G: Group | Subgroup, H: Subgroup, series: ChiefSeries) -> bool:
    """Replay a chief series through the factor test."""
    return all(factor_condition(G, H, s.lower, s.upper) for s in series.steps)
