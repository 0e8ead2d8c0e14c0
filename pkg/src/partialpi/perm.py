"""Permutations and permutation groups.

Points are 1-indexed at every public boundary (cycle notation, ``images``);
internally a permutation is a tuple of 0-indexed images.

Products act left to right: ``(a * b)(i) = b(a(i))``.  So
``(1 2 3) * (1 2) == (2 3)``.
"""

from __future__ import annotations

import math
from functools import cached_property
from operator import itemgetter
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    DegreeMismatch,
    MalformedCycle,
    PointOutOfRange,
    RepeatedPoint,
)

MAX_DEGREE = 4096
DEFAULT_CAP = 20000
# full Cayley tables are only materialized below this order
TABLE_CAP = 4096

_element_cap = DEFAULT_CAP


def element_cap() -> int:
    return _element_cap


def set_element_cap(cap: int) -> None:
    global _element_cap
    if cap < 1:
        raise ValueError("cap must be positive")
    _element_cap = cap


def _compose_arrays(a: tuple, b: tuple) -> tuple:
    if len(a) == 1:
        return (0,)
    return itemgetter(*a)(b)


def _invert_array(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


class Permutation:
    """A bijection of ``{1..n}``, immutable and hashable."""

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Sequence[int]):
        n = len(images)
        if not 1 <= n <= MAX_DEGREE:
            raise PointOutOfRange(f"degree {n} outside 1..{MAX_DEGREE}")
        a = tuple(int(x) - 1 for x in images)
        if sorted(a) != list(range(n)):
            raise ValueError(f"not a permutation of 1..{n}: {list(images)}")
        self._a = a
        self._hash = hash(a)

    @classmethod
    def _raw(cls, a: tuple) -> "Permutation":
        p = object.__new__(cls)
        p._a = a
        p._hash = hash(a)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if not 1 <= degree <= MAX_DEGREE:
            raise PointOutOfRange(f"degree {degree} outside 1..{MAX_DEGREE}")
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        a = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= degree:
                    raise PointOutOfRange(f"point {x} outside 1..{degree}")
                if x in seen:
                    raise RepeatedPoint(f"point {x} appears more than once")
                seen.add(x)
            for i, x in enumerate(cyc):
                a[x - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls._raw(tuple(a))

    @property
    def degree(self) -> int:
        return len(self._a)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._a)

    @property
    def array_form(self) -> tuple[int, ...]:
        """0-indexed image table."""
        return self._a

    def __call__(self, point: int) -> int:
        return self._a[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation._raw(tuple(range(self.degree)))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Permutation":
        return Permutation._raw(_invert_array(self._a))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._a))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self._a[i] == i:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self._a[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return order_of_element(self)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._a == other._a

    def __lt__(self, other: "Permutation") -> bool:
        return (self.degree, self._a) < (other.degree, other._a)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation('{self}', degree={self.degree})"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a`` then ``b``."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")
    return Permutation._raw(_compose_arrays(a._a, b._a))


def order_of_element(g: Permutation) -> int:
    return math.lcm(1, *(len(c) for c in g.cycles()))


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse disjoint cycle notation such as ``"(1 2)(3 4 5)"`` or ``"()"``."""
    if not 1 <= degree <= MAX_DEGREE:
        raise PointOutOfRange(f"degree {degree} outside 1..{MAX_DEGREE}")
    s = text.strip()
    if not s:
        raise MalformedCycle("empty permutation text")
    if s[0] == "(" and s[1:].strip() == ")":
        return Permutation.identity(degree)
    cycles = []
    pos = 0
    n = len(s)
    while pos < n:
        if s[pos].isspace():
            pos += 1
            continue
        if s[pos] != "(":
            raise MalformedCycle(f"expected '(' at position {pos} in {text!r}")
        close = s.find(")", pos)
        if close < 0:
            raise MalformedCycle(f"unbalanced parenthesis at position {pos} in {text!r}")
        body = s[pos + 1:close]
        if "(" in body:
            raise MalformedCycle(f"nested parenthesis at position {pos} in {text!r}")
        tokens = body.split()
        if not tokens:
            raise MalformedCycle(f"empty cycle at position {pos} in {text!r}")
        cyc = []
        for tok in tokens:
            if not tok.isdigit():
                raise MalformedCycle(f"non-numeric token {tok!r} in {text!r}")
            cyc.append(int(tok))
        if len(set(cyc)) != len(cyc):
            raise RepeatedPoint(f"repeated point in cycle {body!r}")
        cycles.append(cyc)
        pos = close + 1
    return Permutation.from_cycles(cycles, degree)


class _Level:
    __slots__ = ("point", "gens", "orbit", "trans")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[tuple] = []
        self.orbit: list[int] = []
        self.trans: dict[int, tuple] = {}

    def rebuild(self, n: int) -> None:
        ident = tuple(range(n))
        self.orbit = [self.point]
        self.trans = {self.point: ident}
        i = 0
        while i < len(self.orbit):
            gamma = self.orbit[i]
            u = self.trans[gamma]
            for x in self.gens:
                delta = x[gamma]
                if delta not in self.trans:
                    self.trans[delta] = _compose_arrays(u, x)
                    self.orbit.append(delta)
            i += 1


def _first_moved(a: tuple) -> int:
    for i, x in enumerate(a):
        if i != x:
            return i
    return -1


def _schreier_sims(gens: list[tuple], n: int) -> list[_Level]:
    """Deterministic Schreier-Sims.  Returns one level per base point."""
    levels: list[_Level] = []
    strong = [g for g in gens if _first_moved(g) >= 0]
    if not strong:
        return levels
    base: list[int] = []
    for s in strong:
        if all(s[b] == b for b in base):
            base.append(_first_moved(s))
    for b in base:
        levels.append(_Level(b))
    for i, lvl in enumerate(levels):
        lvl.gens = [s for s in strong if all(s[b] == b for b in base[:i])]
        lvl.rebuild(n)

    def strip(h: tuple, start: int) -> tuple[tuple, int]:
        for j in range(start, len(levels)):
            lvl = levels[j]
            beta = h[lvl.point]
            u = lvl.trans.get(beta)
            if u is None:
                return h, j
            h = _compose_arrays(h, _invert_array(u))
        return h, len(levels)

    i = len(levels) - 1
    while i >= 0:
        lvl = levels[i]
        restart = False
        for beta in lvl.orbit:
            u_beta = lvl.trans[beta]
            for x in lvl.gens:
                gamma = x[beta]
                h = _compose_arrays(_compose_arrays(u_beta, x), _invert_array(lvl.trans[gamma]))
                if _first_moved(h) < 0:
                    continue
                res, j = strip(h, i + 1)
                if j == len(levels):
                    moved = _first_moved(res)
                    if moved < 0:
                        continue
                    levels.append(_Level(moved))
                for lv in levels[i + 1:j + 1]:
                    lv.gens.append(res)
                    lv.rebuild(n)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return levels


class Group:
    """A permutation group given by generators, with a base and strong generating set.

    Immutable after construction.  Element enumeration (``index()``) is lazy.
    """

    def __init__(self, generators: Sequence[Permutation], name: str | None = None):
        gens = list(generators)
        if not gens:
            raise ValueError("at least one generator is required")
        degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degrees {degree} and {g.degree} differ")
        uniq: list[Permutation] = []
        seen: set[Permutation] = set()
        for g in gens:
            if g not in seen:
                seen.add(g)
                uniq.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(uniq)
        self.name = name
        self._levels = _schreier_sims([g._a for g in uniq], degree)
        self.order = math.prod(len(lv.orbit) for lv in self._levels)
        self._cache: dict = {}

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lv.point + 1 for lv in self._levels)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        out: list[Permutation] = []
        seen: set[tuple] = set()
        for lv in self._levels:
            for g in lv.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(Permutation._raw(g))
        return tuple(out)

    @property
    def orbit_lengths(self) -> tuple[int, ...]:
        return tuple(len(lv.orbit) for lv in self._levels)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch(f"degree {g.degree} != group degree {self.degree}")
        h = g._a
        for lvl in self._levels:
            u = lvl.trans.get(h[lvl.point])
            if u is None:
                return False
            h = _compose_arrays(h, _invert_array(u))
        return _first_moved(h) < 0

    __contains__ = contains

    def random_element(self, rng) -> Permutation:
        h = tuple(range(self.degree))
        for lvl in reversed(self._levels):
            h = _compose_arrays(h, lvl.trans[lvl.orbit[rng.randrange(len(lvl.orbit))]])
        return Permutation._raw(h)

    def index(self, cap: int | None = None) -> "ElementIndex":
        cap = element_cap() if cap is None else cap
        if self.order > cap:
            raise CapExceeded("group order", self.order, cap)
        idx = self._cache.get("_index")
        if idx is None:
            idx = ElementIndex(self)
            self._cache["_index"] = idx
        return idx

    def is_enumerable(self, cap: int | None = None) -> bool:
        return self.order <= (element_cap() if cap is None else cap)

    def __repr__(self) -> str:
        label = self.name or "Group"
        return f"<{label}: degree {self.degree}, order {self.order}>"


def group_from_generators(gens: Sequence[Permutation], name: str | None = None) -> Group:
    return Group(gens, name=name)


def contains(G: Group, g: Permutation) -> bool:
    return G.contains(g)


def elements(G: Group, cap: int = DEFAULT_CAP) -> "ElementIndex":
    return G.index(cap)


class ElementIndex:
    """All elements of a group in lexicographic order of their image tables.

    Elements are addressed by position; index 0 is the identity.  Products,
    inverses and element orders are vectorized over index arrays.
    """

    def __init__(self, group: Group):
        self.group = group
        n = group.degree
        dtype = np.int16 if n < 32767 else np.int32
        E = np.arange(n, dtype=dtype)[None, :]
        for lvl in reversed(group._levels):
            U = np.array([lvl.trans[b] for b in lvl.orbit], dtype=dtype)
            # (h * u)(x) = u(h(x))
            E = U[:, E].reshape(-1, n)
        order = np.lexsort(E.T[::-1])
        self.perms = np.ascontiguousarray(E[order])
        self.size = len(self.perms)
        base = [lv.point for lv in group._levels] or [0]
        self._base = np.array(base, dtype=np.intp)
        self._base_images = self.perms[:, self._base].astype(np.int64)
        if float(n) ** len(base) < 2.0 ** 62:
            self._weights = np.array([n ** (len(base) - 1 - j) for j in range(len(base))], dtype=np.int64)
            codes = self._base_images @ self._weights
            self._sorter = np.argsort(codes, kind="stable")
            self._sorted_codes = codes[self._sorter]
            self._dict = None
        else:
            self._weights = None
            self._dict = {row.tobytes(): i for i, row in enumerate(self._base_images)}
        self.inv = self._lookup_rows(np.argsort(self.perms, axis=1)[:, self._base].astype(np.int64))
        self._table: np.ndarray | None = None

    def __len__(self) -> int:
        return self.size

    def _lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        """Indices of the elements whose base images are ``rows`` (shape ``(..., k)``)."""
        if self._dict is not None:
            flat = rows.reshape(-1, rows.shape[-1]).astype(np.int64)
            out = np.array([self._dict[r.tobytes()] for r in flat], dtype=np.intp)
            return out.reshape(rows.shape[:-1])
        codes = rows @ self._weights
        pos = np.searchsorted(self._sorted_codes, codes)
        return self._sorter[pos]

    def index_of(self, g: Permutation) -> int:
        row = np.array([g._a[b] for b in self._base], dtype=np.int64)
        i = int(self._lookup_rows(row[None, :])[0])
        if tuple(self.perms[i]) != g._a:
            raise KeyError(f"{g} is not an element")
        return i

    def find(self, g: Permutation) -> int | None:
        if g.degree != self.group.degree or not self.group.contains(g):
            return None
        return self.index_of(g)

    def perm(self, i: int) -> Permutation:
        return Permutation._raw(tuple(int(x) for x in self.perms[i]))

    @property
    def enumeration(self) -> list[Permutation]:
        return [self.perm(i) for i in range(self.size)]

    @property
    def table(self) -> np.ndarray | None:
        if self._table is None and self.size <= TABLE_CAP:
            ar = np.arange(self.size)
            rows = [self._mul_direct(ar[i:i + 256, None], ar[None, :]) for i in range(0, self.size, 256)]
            self._table = np.concatenate(rows).astype(np.int16 if self.size < 32767 else np.int32)
        return self._table

    def _mul_direct(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        imgs = self.perms[b[..., None], self._base_images[a]]
        return self._lookup_rows(imgs.astype(np.int64))

    def mul(self, a, b) -> np.ndarray:
        """Index of ``a * b`` elementwise (broadcasting)."""
        t = self.table
        if t is not None:
            return t[a, b].astype(np.intp)
        return self._mul_direct(a, b)

    def conj(self, x, g) -> np.ndarray:
        """Index of ``g^-1 x g``."""
        g = np.asarray(g)
        return self.mul(self.mul(self.inv[g], x), g)

    @cached_property
    def element_orders(self) -> np.ndarray:
        ar = np.arange(self.size)
        orders = np.zeros(self.size, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            cur = self.mul(cur, ar)
            k += 1
