"""Quotient groups by coset action and enumeration of chief series."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import NotNormal
from .perm import Group, Permutation
from .subgroups import (
    Subgroup,
    _check_inside,
    all_normal_subgroups,
    as_subgroup,
    is_normal,
    minimal_normal_overgroups,
    trivial,
)

__all__ = [
    "ChiefSeries",
    "ChiefStep",
    "QuotientMap",
    "all_normal_subgroups",
    "chief_series_iter",
    "first_chief_series",
    "jordan_holder_factor_orders",
    "minimal_normal_overgroups",
    "quotient",
]


class QuotientMap:
    """``G -> G/N`` realized as the action of ``G`` on the right cosets of ``N``.

    Cosets are numbered by their smallest element (in element-index order),
    which is also the coset representative.
    """

    def __init__(self, source: Subgroup, kernel: Subgroup):
        self.source = source
        self.kernel = kernel
        idx = source.index
        coset_of = np.full(idx.size, -1, dtype=np.intp)
        reps: list[int] = []
        for g in source.elements:
            if coset_of[g] < 0:
                coset_of[idx.mul(g, kernel.elements)] = len(reps)
                reps.append(int(g))
        self.coset_reps = np.asarray(reps, dtype=np.intp)
        self.coset_of = coset_of
        m = len(reps)
        # column c holds the action of reps[c]: coset d -> coset of reps[d]*reps[c]
        action = coset_of[idx.mul(self.coset_reps[:, None], self.coset_reps[None, :])]
        self._rep_images = np.ascontiguousarray(action.T)
        gens = [self._perm_of(int(g)) for g in source.gens] or [Permutation.identity(m)]
        self.image = Group(gens)
        assert self.image.order * kernel.order == source.order, "coset action not faithful on G/N"
        qidx = self.image.index()
        rows = self._rep_images[:, qidx._base].astype(np.int64)
        self._coset_to_image = qidx._lookup_rows(rows)
        self.phi = np.full(idx.size, -1, dtype=np.intp)
        inside = coset_of >= 0
        self.phi[inside] = self._coset_to_image[coset_of[inside]]

    def _perm_of(self, g: int) -> Permutation:
        idx = self.source.index
        img = self.coset_of[idx.mul(self.coset_reps, g)]
        return Permutation._raw(tuple(int(x) for x in img))

    @property
    def degree(self) -> int:
        return len(self.coset_reps)

    def map(self, g: Permutation | int) -> Permutation:
        i = self.source.index.index_of(g) if isinstance(g, Permutation) else int(g)
        if self.coset_of[i] < 0:
            raise ValueError("element is outside the source group")
        return self._perm_of(i)

    @cached_property
    def image_whole(self) -> Subgroup:
        return as_subgroup(self.image)

    def image_of(self, X: Subgroup) -> Subgroup:
        """``XN/N`` as a subgroup of the image group."""
        _check_inside(self.source, X)
        mask = np.zeros(self.image.order, dtype=bool)
        mask[self.phi[X.elements]] = True
        return Subgroup(self.image, mask)

    def preimage_of(self, Y: Subgroup) -> Subgroup:
        if Y.ambient is not self.image:
            raise ValueError("subgroup does not live in the image group")
        inside = self.phi >= 0
        mask = np.zeros(len(self.phi), dtype=bool)
        mask[inside] = Y.mask[self.phi[inside]]
        return Subgroup(self.source.ambient, mask)


def quotient(G: Group | Subgroup, N: Subgroup) -> QuotientMap:
    G = as_subgroup(G)
    _check_inside(G, N)
    if not is_normal(G, N):
        raise NotNormal(f"{N!r} is not normal in {G!r}")
    key = ("quotient", G.key, N.key)
    hit = G.ambient._cache.get(key)
    if hit is None:
        hit = QuotientMap(G, N)
        G.ambient._cache[key] = hit
    return hit


@dataclass(frozen=True)
class ChiefStep:
    lower: Subgroup
    upper: Subgroup

    @property
    def factor_order(self) -> int:
        return self.upper.order // self.lower.order


@dataclass(frozen=True)
class ChiefSeries:
    steps: tuple[ChiefStep, ...]

    def __post_init__(self):
        for a, b in zip(self.steps, self.steps[1:]):
            assert a.upper == b.lower

    @property
    def factor_orders(self) -> list[int]:
        return [s.factor_order for s in self.steps]

    def terms(self) -> list[Subgroup]:
        if not self.steps:
            return []
        return [self.steps[0].lower] + [s.upper for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


def chief_series_iter(G: Group | Subgroup) -> Iterator[ChiefSeries]:
    """Every chief series of ``G``, depth first, in (order, key) branch order."""
    G = as_subgroup(G)
    path: list[ChiefStep] = []

    def walk(N: Subgroup) -> Iterator[ChiefSeries]:
        if N.order == G.order:
            yield ChiefSeries(tuple(path))
            return
        for M in minimal_normal_overgroups(G, N):
            path.append(ChiefStep(N, M))
            yield from walk(M)
            path.pop()

    yield from walk(trivial(G))


def first_chief_series(G: Group | Subgroup) -> ChiefSeries:
    G = as_subgroup(G)
    key = ("first_chief", G.key)
    hit = G.ambient._cache.get(key)
    if hit is None:
        hit = next(chief_series_iter(G))
        G.ambient._cache[key] = hit
    return hit


def jordan_holder_factor_orders(s: ChiefSeries) -> Counter:
    return Counter(s.factor_orders)
