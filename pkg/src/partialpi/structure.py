"""Group-class predicates and the supersoluble hypercenters.

Chief-factor based predicates read one deterministic chief series; that the
answer does not depend on the series is checked in the test-suite rather than
per call.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from sympy import factorint, isprime

from .perm import Group
from .series import first_chief_series
from .subgroups import (
    Subgroup,
    _check_inside,
    all_normal_subgroups,
    as_subgroup,
    generate,
    is_normal,
    join,
    minimal_normal_overgroups,
    p_part,
    prime_divisors,
    sylow_subgroup,
    trivial,
)

# normal-subgroup count up to which hypercenters are also certified by a full scan
FULL_SCAN_CAP = 1000


def _p_prime_elements(G: Subgroup, p: int) -> np.ndarray:
    orders = G.index.element_orders[G.elements]
    return G.elements[orders % p != 0]


def p_complement(G: Group | Subgroup, p: int) -> Subgroup | None:
    """The normal ``p``-complement of ``G`` if it exists."""
    G = as_subgroup(G)
    key = ("p_complement", G.key, p)
    if key in G.ambient._cache:
        return G.ambient._cache[key]
    K = generate(G, _p_prime_elements(G, p))
    result = None
    if K.order == G.order // p_part(G.order, p):
        assert is_normal(G, K)
        result = K
    G.ambient._cache[key] = result
    return result


def is_p_nilpotent(G: Group | Subgroup, p: int) -> bool:
    return p_complement(G, p) is not None


def quotient_is_p_nilpotent(G: Group | Subgroup, N: Subgroup, p: int) -> bool:
    """Whether ``G/N`` is ``p``-nilpotent, decided inside ``G``.

    The ``p'``-elements of ``G/N`` are exactly the images of ``p'``-elements
    of ``G``, so ``G/N`` has a normal ``p``-complement iff ``KN/N`` has the
    ``p'``-part of ``|G/N|`` as order, ``K`` generated by the ``p'``-elements.
    """
    G = as_subgroup(G)
    _check_inside(G, N)
    K = generate(G, _p_prime_elements(G, p))
    KN = join(G, K, N)
    q = G.order // N.order
    return KN.order // N.order == q // p_part(q, p)


def _factors(G: Subgroup) -> list[int]:
    return first_chief_series(G).factor_orders


def _is_prime_power(n: int) -> bool:
    return len(factorint(n)) == 1


def is_p_soluble(G: Group | Subgroup, p: int) -> bool:
    G = as_subgroup(G)
    return all(f % p != 0 or p_part(f, p) == f for f in _factors(G))


def is_soluble(G: Group | Subgroup) -> bool:
    G = as_subgroup(G)
    return all(_is_prime_power(f) for f in _factors(G))


def is_supersoluble(G: Group | Subgroup) -> bool:
    G = as_subgroup(G)
    return all(isprime(f) for f in _factors(G))


def is_p_supersoluble(G: Group | Subgroup, p: int) -> bool:
    G = as_subgroup(G)
    return all(f % p != 0 or f == p for f in _factors(G))


def is_nilpotent(G: Group | Subgroup) -> bool:
    G = as_subgroup(G)
    return all(is_normal(G, sylow_subgroup(G, p)) for p in prime_divisors(G.order))


def is_sylow_tower_supersoluble_type(G: Group | Subgroup) -> bool:
    """Sylow subgroups normal in turn, largest prime first.

    The Sylow ``p``-subgroup of ``G/N`` is ``PN/N`` for ``P`` Sylow in ``G``,
    so each step is decided by normality of ``PN`` in ``G``.
    """
    G = as_subgroup(G)
    N = trivial(G)
    for p in sorted(prime_divisors(G.order), reverse=True):
        M = join(G, N, sylow_subgroup(G, p))
        if not is_normal(G, M):
            return False
        N = M
    return N.order == G.order


def _good_u(f: int) -> bool:
    return isprime(f)


def _good_up(p: int) -> Callable[[int], bool]:
    return lambda f: f % p != 0 or f == p


def _hypercentral(G: Subgroup, N: Subgroup, good: Callable[[int], bool]) -> bool:
    """All G-chief factors below ``N`` are good (read from one series through ``N``)."""
    Z = trivial(G)
    while Z.order < N.order:
        M = next(M for M in minimal_normal_overgroups(G, Z) if M.issubset(N))
        if not good(M.order // Z.order):
            return False
        Z = M
    return True


def _hypercenter(G: Subgroup, good: Callable[[int], bool]) -> Subgroup:
    Z = trivial(G)
    while True:
        for M in minimal_normal_overgroups(G, Z):
            if good(M.order // Z.order):
                Z = M
                break
        else:
            break
    normals = all_normal_subgroups(G)
    if len(normals) <= FULL_SCAN_CAP:
        for N in normals:
            if not N.issubset(Z):
                assert not _hypercentral(G, N, good), "hypercenter is not the largest"
    return Z


def hypercenter_U(G: Group | Subgroup) -> Subgroup:
    """Largest normal subgroup all of whose G-chief factors below have prime order."""
    G = as_subgroup(G)
    key = ("Z_U", G.key)
    if key not in G.ambient._cache:
        G.ambient._cache[key] = _hypercenter(G, _good_u)
    return G.ambient._cache[key]


def hypercenter_Up(G: Group | Subgroup, p: int) -> Subgroup:
    """Largest normal subgroup whose G-chief factors below of order divisible by ``p`` have order ``p``."""
    G = as_subgroup(G)
    key = ("Z_Up", G.key, p)
    if key not in G.ambient._cache:
        G.ambient._cache[key] = _hypercenter(G, _good_up(p))
    return G.ambient._cache[key]


@dataclass
class StructureProfile:
    order: int
    factorization: dict[int, int]
    p_nilpotent: dict[int, bool] = field(default_factory=dict)
    p_soluble: dict[int, bool] = field(default_factory=dict)
    p_supersoluble: dict[int, bool] = field(default_factory=dict)
    nilpotent: bool = False
    soluble: bool = False
    supersoluble: bool = False
    sylow_tower_supersoluble_type: bool = False
    hypercenter_U: Subgroup | None = None
    hypercenter_Up: dict[int, Subgroup] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "factorization": {str(p): e for p, e in self.factorization.items()},
            "p_nilpotent": {str(p): v for p, v in self.p_nilpotent.items()},
            "p_soluble": {str(p): v for p, v in self.p_soluble.items()},
            "p_supersoluble": {str(p): v for p, v in self.p_supersoluble.items()},
            "nilpotent": self.nilpotent,
            "soluble": self.soluble,
            "supersoluble": self.supersoluble,
            "sylow_tower_supersoluble_type": self.sylow_tower_supersoluble_type,
            "hypercenter_U_order": self.hypercenter_U.order if self.hypercenter_U else None,
            "hypercenter_Up_order": {str(p): Z.order for p, Z in self.hypercenter_Up.items()},
        }


def structure_profile(G: Group | Subgroup) -> StructureProfile:
    G = as_subgroup(G)
    primes = prime_divisors(G.order)
    prof = StructureProfile(order=G.order, factorization=dict(sorted(factorint(G.order).items())))
    for p in primes:
        prof.p_nilpotent[p] = is_p_nilpotent(G, p)
        prof.p_soluble[p] = is_p_soluble(G, p)
        prof.p_supersoluble[p] = is_p_supersoluble(G, p)
        prof.hypercenter_Up[p] = hypercenter_Up(G, p)
    prof.nilpotent = is_nilpotent(G)
    prof.soluble = is_soluble(G)
    prof.supersoluble = is_supersoluble(G)
    prof.sylow_tower_supersoluble_type = is_sylow_tower_supersoluble_type(G)
    prof.hypercenter_U = hypercenter_U(G)
    return prof
