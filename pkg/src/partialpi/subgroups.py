"""Subgroups of an enumerated ambient group and the classical subgroup operators.

A :class:`Subgroup` is a boolean mask over the ambient's
:class:`~partialpi.perm.ElementIndex`; its ``key`` (the mask packed into an
int) is the canonical identity used for hashing, deduplication and
deterministic ordering.  Every operator accepts either a :class:`Group` (meaning
the whole group) or a :class:`Subgroup` wherever a "group" is expected, so
normalizers, normal subgroups etc. can be taken inside any subgroup without
re-enumerating it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint, isprime

from .errors import CapExceeded, LatticeCapExceeded, NotAPGroup, NotASubgroup, NotNormal
from .perm import ElementIndex, Group, Permutation

NORMAL_LATTICE_CAP = 10000


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(set(self.primes)))
        if not all(isprime(p) for p in ps):
            raise ValueError(f"not all prime: {ps}")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def of(cls, n: int) -> "PrimeSet":
        return cls(tuple(factorint(n)))

    def is_pi_number(self, n: int) -> bool:
        """1 is a pi-number for every pi, including the empty set."""
        return all(q in self.primes for q in factorint(n))

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n))


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def _key_of(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


class Subgroup:
    """A subgroup of ``ambient`` stored as an element mask."""

    def __init__(self, ambient: Group, mask: np.ndarray, gens: Sequence[int] | None = None):
        self.ambient = ambient
        mask = np.asarray(mask, dtype=bool)
        mask.flags.writeable = False
        self.mask = mask
        self.key = _key_of(mask)
        self.order = int(mask.sum())
        assert ambient.order % self.order == 0, "Lagrange violated"
        if gens is not None:
            self.__dict__["gens"] = np.asarray(gens, dtype=np.intp)

    @property
    def index(self) -> ElementIndex:
        return self.ambient.index()

    @cached_property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @cached_property
    def gens(self) -> np.ndarray:
        """A small generating set (element indices), largest element orders first."""
        idx = self.index
        els = self.elements
        order = np.argsort(-idx.element_orders[els], kind="stable")
        cur = np.zeros(idx.size, dtype=bool)
        cur[0] = True
        gens: list[int] = []
        count = 1
        for x in els[order]:
            if count == self.order:
                break
            if not cur[x]:
                gens.append(int(x))
                cur = _closure(idx, gens, cur)
                count = int(cur.sum())
        return np.asarray(gens, dtype=np.intp)

    @property
    def generators(self) -> list[Permutation]:
        return [self.index.perm(int(i)) for i in self.gens]

    @cached_property
    def group(self) -> Group:
        """This subgroup as a standalone permutation group."""
        gens = self.generators or [self.ambient.identity()]
        G = Group(gens)
        assert G.order == self.order
        return G

    def __contains__(self, g) -> bool:
        if isinstance(g, Permutation):
            i = self.index.find(g)
            return i is not None and bool(self.mask[i])
        return bool(self.mask[int(g)])

    def issubset(self, other: "Subgroup") -> bool:
        return not np.any(self.mask & ~other.mask)

    def __le__(self, other: "Subgroup") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "Subgroup") -> bool:
        return self.order < other.order and self.issubset(other)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.ambient is self.ambient
            and other.key == self.key
        )

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.order, self.key)

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.ambient!r}>"


def _closure(idx: ElementIndex, gens: Sequence[int], start: np.ndarray | None = None) -> np.ndarray:
    """Mask of the subgroup generated by ``start`` (a subgroup mask) and ``gens``.

    ``gens`` must generate ``start`` together with the new elements.
    """
    if start is None:
        mask = np.zeros(idx.size, dtype=bool)
        mask[0] = True
    else:
        mask = start.copy()
    g = np.asarray(gens, dtype=np.intp)
    if g.size == 0:
        return mask
    frontier = np.flatnonzero(mask)
    while frontier.size:
        prod = idx.mul(frontier[:, None], g[None, :]).ravel()
        new = np.unique(prod[~mask[prod]])
        mask[new] = True
        frontier = new
    return mask


def _memo(G: Subgroup, key: tuple):
    return G.ambient._cache.get(key)


def _store(G: Subgroup, key: tuple, value):
    G.ambient._cache[key] = value
    return value


def as_subgroup(X: Group | Subgroup) -> Subgroup:
    if isinstance(X, Subgroup):
        return X
    cached = X._cache.get("_whole")
    if cached is None:
        idx = X.index()
        gens = [idx.index_of(g) for g in X.generators if not g.is_identity()]
        cached = Subgroup(X, np.ones(idx.size, dtype=bool), gens)
        X._cache["_whole"] = cached
    return cached


def whole(G: Group | Subgroup) -> Subgroup:
    return as_subgroup(G)


def trivial(G: Group | Subgroup) -> Subgroup:
    S = as_subgroup(G)
    mask = np.zeros(S.index.size, dtype=bool)
    mask[0] = True
    return Subgroup(S.ambient, mask, [])


def _check_inside(G: Subgroup, *subs: Subgroup) -> None:
    for S in subs:
        if S.ambient is not G.ambient or not S.issubset(G):
            raise NotASubgroup(f"{S!r} does not lie in {G!r}")


def subgroup(G: Group | Subgroup, gens: Iterable[Permutation | int]) -> Subgroup:
    """Subgroup of ``G`` generated by permutations (or element indices)."""
    G = as_subgroup(G)
    idx = G.index
    ids: list[int] = []
    for g in gens:
        if isinstance(g, Permutation):
            i = idx.find(g)
            if i is None:
                raise NotASubgroup(f"{g} is not in the ambient group")
        else:
            i = int(g)
        if not G.mask[i]:
            raise NotASubgroup(f"{idx.perm(i)} is not in {G!r}")
        if i != 0:
            ids.append(i)
    return Subgroup(G.ambient, _closure(idx, ids), ids)


def generate(G: Group | Subgroup, elements: Iterable[int]) -> Subgroup:
    """Subgroup generated by a (possibly large) set of element indices."""
    G = as_subgroup(G)
    idx = G.index
    cur = np.zeros(idx.size, dtype=bool)
    cur[0] = True
    gens: list[int] = []
    for x in elements:
        x = int(x)
        if not cur[x]:
            gens.append(x)
            cur = _closure(idx, gens, cur)
    return Subgroup(G.ambient, cur, gens)


def cyclic(G: Group | Subgroup, x: int) -> Subgroup:
    return subgroup(G, [x])


def join(ambient: Group | Subgroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """``<A, B>``; equals the set product ``AB`` when ``B`` is normal."""
    amb = as_subgroup(ambient)
    _check_inside(amb, A, B)
    if B.issubset(A):
        return A
    if A.issubset(B):
        return B
    gens = list(A.gens) + list(B.gens)
    J = Subgroup(amb.ambient, _closure(A.index, gens, A.mask), gens)
    if is_normal(amb, B):
        assert J.order * intersection(amb, A, B).order == A.order * B.order
    return J


def intersection(ambient: Group | Subgroup, A: Subgroup, B: Subgroup) -> Subgroup:
    amb = as_subgroup(ambient)
    _check_inside(amb, A, B)
    return Subgroup(amb.ambient, A.mask & B.mask)


def is_normal(G: Group | Subgroup, N: Subgroup) -> bool:
    G = as_subgroup(G)
    _check_inside(G, N)
    if N.order == 1 or N.order == G.order:
        return True
    key = ("is_normal", G.key, N.key)
    hit = _memo(G, key)
    if hit is not None:
        return hit
    c = G.index.conj(N.gens[:, None], G.gens[None, :])
    return _store(G, key, bool(N.mask[c].all()))


def normal_closure(G: Group | Subgroup, S: Subgroup) -> Subgroup:
    """Smallest normal subgroup of ``G`` containing ``S``."""
    G = as_subgroup(G)
    _check_inside(G, S)
    idx = G.index
    mask = S.mask.copy()
    gens = [int(x) for x in S.gens]
    while True:
        els = np.flatnonzero(mask)
        c = idx.conj(els[:, None], G.gens[None, :]).ravel()
        missing = c[~mask[c]]
        if missing.size == 0:
            break
        gens.append(int(missing.min()))
        mask = _closure(idx, gens, mask)
    return Subgroup(G.ambient, mask, gens)


def normalizer(G: Group | Subgroup, H: Subgroup) -> Subgroup:
    """``{g in G : H^g = H}`` by a scan over the elements of ``G``."""
    G = as_subgroup(G)
    _check_inside(G, H)
    key = ("normalizer", G.key, H.key)
    hit = _memo(G, key)
    if hit is not None:
        return hit
    idx = G.index
    els = G.elements
    ok = np.ones(els.size, dtype=bool)
    for h in H.gens:
        ok &= H.mask[idx.conj(h, els)]
    mask = np.zeros(idx.size, dtype=bool)
    mask[els[ok]] = True
    return _store(G, key, Subgroup(G.ambient, mask))


def centralizer(G: Group | Subgroup, H: Subgroup) -> Subgroup:
    G = as_subgroup(G)
    _check_inside(G, H)
    idx = G.index
    els = G.elements
    ok = np.ones(els.size, dtype=bool)
    for h in H.gens:
        ok &= idx.mul(els, h) == idx.mul(h, els)
    mask = np.zeros(idx.size, dtype=bool)
    mask[els[ok]] = True
    return Subgroup(G.ambient, mask)


def center(G: Group | Subgroup) -> Subgroup:
    G = as_subgroup(G)
    return centralizer(G, G)


def is_abelian(G: Group | Subgroup) -> bool:
    G = as_subgroup(G)
    g = G.gens
    idx = G.index
    return bool(np.all(idx.mul(g[:, None], g[None, :]) == idx.mul(g[None, :], g[:, None])))


def derived_subgroup(G: Group | Subgroup) -> Subgroup:
    """Normal closure of the commutators of generator pairs."""
    G = as_subgroup(G)
    key = ("derived", G.key)
    hit = _memo(G, key)
    if hit is not None:
        return hit
    idx = G.index
    g = G.gens
    a, b = np.meshgrid(g, g, indexing="ij")
    comm = idx.mul(idx.mul(idx.inv[a], idx.inv[b]), idx.mul(a, b)).ravel()
    D = normal_closure(G, generate(G, np.unique(comm)))
    return _store(G, key, D)


def sylow_subgroup(G: Group | Subgroup, p: int) -> Subgroup:
    """A Sylow ``p``-subgroup, grown by normalizer ascent from a cyclic one.

    Returns the trivial subgroup when ``p`` does not divide ``|G|``.
    """
    G = as_subgroup(G)
    key = ("sylow", G.key, p)
    hit = _memo(G, key)
    if hit is not None:
        return hit
    idx = G.index
    target = p_part(G.order, p)
    orders = idx.element_orders
    p_elements = (orders > 1) & np.array([is_p_power(int(o), p) for o in orders])
    P = trivial(G)
    while P.order < target:
        N = normalizer(G, P)
        cand = np.flatnonzero(N.mask & ~P.mask & p_elements)
        x = int(cand[0])
        gens = list(P.gens) + [x]
        P = Subgroup(G.ambient, _closure(idx, gens, P.mask), gens)
        assert is_p_power(P.order, p)
    return _store(G, key, P)


def conjugate(H: Subgroup, g: int) -> Subgroup:
    """``g^-1 H g`` for an ambient element index ``g``."""
    idx = H.index
    mask = np.zeros(idx.size, dtype=bool)
    mask[idx.conj(H.elements, g)] = True
    gens = idx.conj(H.gens, g) if len(H.gens) else None
    return Subgroup(H.ambient, mask, gens)


def sylow_subgroups(G: Group | Subgroup, p: int) -> list[Subgroup]:
    """Every Sylow ``p``-subgroup of ``G``, the one from :func:`sylow_subgroup` first."""
    G = as_subgroup(G)
    key = ("sylows", G.key, p)
    hit = _memo(G, key)
    if hit is not None:
        return hit
    P = sylow_subgroup(G, p)
    out = [P]
    seen = {P.key}
    want = G.order // normalizer(G, P).order
    for g in G.elements:
        if len(out) == want:
            break
        Q = conjugate(P, int(g))
        if Q.key not in seen:
            seen.add(Q.key)
            out.append(Q)
    assert len(out) == want
    return _store(G, key, out)


def _require_p_group(P: Subgroup, p: int) -> None:
    if not isprime(p) or not is_p_power(P.order, p):
        raise NotAPGroup(f"order {P.order} is not a power of {p}")


def _power(idx: ElementIndex, x: np.ndarray, k: int) -> np.ndarray:
    result = np.zeros_like(x)
    base = x
    while k:
        if k & 1:
            result = idx.mul(result, base)
        base = idx.mul(base, base)
        k >>= 1
    return result


def frattini_of_p_group(P: Subgroup, p: int) -> Subgroup:
    """``P' P^p``, the Frattini subgroup of a ``p``-group."""
    _require_p_group(P, p)
    key = ("frattini", P.key, p)
    hit = _memo(P, key)
    if hit is not None:
        return hit
    idx = P.index
    powers = np.unique(_power(idx, P.elements, p))
    D = derived_subgroup(P)
    F = generate(P, list(D.gens) + [int(x) for x in powers])
    return _store(P, key, F)


def maximal_subgroups_of_p_group(P: Subgroup, p: int) -> list[Subgroup]:
    """All index-``p`` subgroups: preimages of the hyperplanes of ``P/Phi(P)``."""
    _require_p_group(P, p)
    key = ("maximals", P.key, p)
    hit = _memo(P, key)
    if hit is not None:
        return hit
    if P.order == 1:
        return _store(P, key, [])
    idx = P.index
    Phi = frattini_of_p_group(P, p)
    basis: list[int] = []
    cur = Phi
    for x in P.elements:
        if not cur.mask[x]:
            basis.append(int(x))
            gens = list(cur.gens) + [int(x)]
            cur = Subgroup(P.ambient, _closure(idx, gens, cur.mask), gens)
    d = len(basis)
    assert P.order == Phi.order * p ** d
    coord = np.full((idx.size, d), -1, dtype=np.int64)
    for v in itertools.product(range(p), repeat=d):
        e = np.intp(0)
        for x, k in zip(basis, v):
            e = idx.mul(e, _power(idx, np.intp(x), k))
        coord[idx.mul(e, Phi.elements)] = v
    pc = coord[P.elements]
    out = []
    for f in itertools.product(range(p), repeat=d):
        nz = [c for c in f if c]
        if not nz or nz[0] != 1:
            continue
        ker = (pc @ np.array(f)) % p == 0
        mask = np.zeros(idx.size, dtype=bool)
        mask[P.elements[ker]] = True
        out.append(Subgroup(P.ambient, mask))
    out.sort(key=lambda S: S.sort_key)
    assert len(out) == (p ** d - 1) // (p - 1)
    return _store(P, key, out)


def core(G: Group | Subgroup, H: Subgroup) -> Subgroup:
    """Largest normal subgroup of ``G`` inside ``H`` (intersection of conjugates)."""
    G = as_subgroup(G)
    _check_inside(G, H)
    idx = G.index
    mask = H.mask.copy()
    while True:
        els = np.flatnonzero(mask)
        c = idx.conj(els[:, None], G.gens[None, :])
        keep = mask[c].all(axis=1)
        if keep.all():
            return Subgroup(G.ambient, mask)
        mask[els[~keep]] = False


def o_p(G: Group | Subgroup, p: int) -> Subgroup:
    """Largest normal ``p``-subgroup."""
    G = as_subgroup(G)
    key = ("o_p", G.key, p)
    hit = _memo(G, key)
    if hit is not None:
        return hit
    return _store(G, key, core(G, sylow_subgroup(G, p)))


def o_p_prime(G: Group | Subgroup, p: int) -> Subgroup:
    """Largest normal ``p'``-subgroup, by ascent through ``p'``-order chief factors."""
    G = as_subgroup(G)
    key = ("o_p_prime", G.key, p)
    hit = _memo(G, key)
    if hit is not None:
        return hit
    Z = trivial(G)
    while True:
        for M in minimal_normal_overgroups(G, Z):
            if (M.order // Z.order) % p:
                Z = M
                break
        else:
            break
    assert Z.order % p != 0 and is_normal(G, Z)
    return _store(G, key, Z)


def fitting_subgroup(G: Group | Subgroup) -> Subgroup:
    G = as_subgroup(G)
    F = trivial(G)
    for p in prime_divisors(G.order):
        F = join(G, F, o_p(G, p))
    return F


def minimal_normal_overgroups(G: Group | Subgroup, N: Subgroup) -> list[Subgroup]:
    """All ``M`` normal in ``G`` with ``M/N`` a chief factor, sorted by (order, key)."""
    G = as_subgroup(G)
    _check_inside(G, N)
    key = ("mno", G.key, N.key)
    hit = _memo(G, key)
    if hit is not None:
        return hit
    if not is_normal(G, N):
        raise NotNormal(f"{N!r} is not normal in {G!r}")
    idx = G.index
    done = N.mask.copy()
    cands: dict[int, Subgroup] = {}
    for g in G.elements:
        if done[g]:
            continue
        gens = list(N.gens) + [int(g)]
        S = Subgroup(G.ambient, _closure(idx, gens, N.mask), gens)
        C = normal_closure(G, S)
        cands.setdefault(C.key, C)
        # the whole G-class of the coset gN yields the same closure
        cls = np.unique(idx.conj(g, G.elements))
        done[idx.mul(cls[:, None], N.elements[None, :]).ravel()] = True
    found = list(cands.values())
    minimal = [C for C in found if not any(D.order < C.order and D.issubset(C) for D in found)]
    minimal.sort(key=lambda S: S.sort_key)
    return _store(G, key, minimal)


def all_normal_subgroups(G: Group | Subgroup, cap: int = NORMAL_LATTICE_CAP) -> list[Subgroup]:
    """Every normal subgroup, by breadth-first ascent from the trivial subgroup."""
    G = as_subgroup(G)
    key = ("normals", G.key)
    hit = _memo(G, key)
    if hit is not None:
        if len(hit) > cap:
            raise LatticeCapExceeded("normal subgroups", len(hit), cap)
        return hit
    seen: dict[int, Subgroup] = {}
    T = trivial(G)
    seen[T.key] = T
    frontier = [T]
    while frontier:
        nxt = []
        for N in frontier:
            for M in minimal_normal_overgroups(G, N):
                if M.key not in seen:
                    seen[M.key] = M
                    nxt.append(M)
                    if len(seen) > cap:
                        raise LatticeCapExceeded("normal subgroups", len(seen), cap)
        frontier = nxt
    out = sorted(seen.values(), key=lambda S: S.sort_key)
    return _store(G, key, out)


def pi_of(X: Group | Subgroup) -> PrimeSet:
    return PrimeSet.of(X.order)


def transport(H: Subgroup, M: Subgroup) -> Subgroup:
    """``H`` (inside ``M``) as a subgroup of the standalone group ``M.group``."""
    _check_inside(M, H)
    return subgroup(M.group, H.generators)


COMPLEMENT_SEARCH_CAP = 200000


def complement(G: Group | Subgroup, M: Subgroup, cap: int = COMPLEMENT_SEARCH_CAP) -> Subgroup | None:
    """A complement of the normal subgroup ``M`` in ``G``, or None.

    Every complement is generated by one lift from each coset ``x_i M`` of a
    generating set of ``G/M``; all lift tuples are tried in order.
    """
    G = as_subgroup(G)
    _check_inside(G, M)
    if not is_normal(G, M):
        raise NotNormal(f"{M!r} is not normal in {G!r}")
    idx = G.index
    target = G.order // M.order
    tops: list[int] = []
    cur = M
    for x in G.gens:
        if not cur.mask[x]:
            tops.append(int(x))
            gens = list(cur.gens) + [int(x)]
            cur = Subgroup(G.ambient, _closure(idx, gens, cur.mask), gens)
    tries = M.order ** len(tops)
    if tries > cap:
        raise CapExceeded("complement search", tries, cap)
    lifts = [idx.mul(x, M.elements) for x in tops]
    for choice in itertools.product(*lifts):
        L = _bounded_closure(idx, [int(c) for c in choice], target)
        if L is not None and int(L.sum()) == target and int((L & M.mask).sum()) == 1:
            return Subgroup(G.ambient, L, [int(c) for c in choice if c != 0])
    return None


def _bounded_closure(idx: ElementIndex, gens: Sequence[int], limit: int) -> np.ndarray | None:
    mask = np.zeros(idx.size, dtype=bool)
    mask[0] = True
    count = 1
    g = np.asarray(gens, dtype=np.intp)
    frontier = np.array([0], dtype=np.intp)
    while frontier.size:
        prod = idx.mul(frontier[:, None], g[None, :]).ravel()
        new = np.unique(prod[~mask[prod]])
        count += new.size
        if count > limit:
            return None
        mask[new] = True
        frontier = new
    return mask
