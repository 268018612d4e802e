"""Finite-type root systems built from Cartan data.

Conventions
-----------
Nodes are 0-based internally and follow the Bourbaki labelling.  The Cartan
matrix satisfies ``cartan[i][j] = <alpha_j, alpha_i^vee>``, so the simple
reflection acts on the root lattice by
``s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i``.  Roots are integer tuples
in the simple-root basis.

Subsets of nodes are int bitmasks (bit ``i`` set means node ``i`` is present).
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import NonCartan, NotARoot, UnknownType

Root = tuple[int, ...]


# ---------------------------------------------------------------- subsets

def mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(m: int) -> tuple[int, ...]:
    """Sorted node indices of a bitmask."""
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def subset_key(m: int):
    """Total order on subsets: by size, then lexicographically on members."""
    return (m.bit_count(), members(m))


def all_subsets(rank: int) -> list[int]:
    return sorted(range(1 << rank), key=subset_key)


def subsets_of(m: int) -> list[int]:
    subs = []
    s = m
    while True:
        subs.append(s)
        if s == 0:
            break
        s = (s - 1) & m
    return sorted(subs, key=subset_key)


# ---------------------------------------------------------------- Cartan data

def _chain(n: int) -> list[list[int]]:
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
        if i + 1 < n:
            c[i][i + 1] = c[i + 1][i] = -1
    return c


def _link(c, i, j):
    c[i][j] = c[j][i] = -1


def cartan_matrix(letter: str, n: int) -> list[list[int]]:
    """Bourbaki-labelled Cartan matrix of a connected finite-type diagram."""
    letter = letter.upper()
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }
    if not valid.get(letter, False):
        raise UnknownType(f"unsupported Dynkin type {letter}{n}")
    if letter == "A":
        return _chain(n)
    if letter == "B":
        c = _chain(n)
        c[n - 1][n - 2] = -2  # alpha_n short
        return c
    if letter == "C":
        c = _chain(n)
        c[n - 2][n - 1] = -2  # alpha_n long
        return c
    if letter == "D":
        c = _chain(n - 1)
        for row in c:
            row.append(0)
        c.append([0] * n)
        c[n - 1][n - 1] = 2
        _link(c, n - 3, n - 1)  # alpha_n = eps_{n-1} + eps_n hangs off alpha_{n-2}
        return c
    if letter == "E":
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        _link(c, 0, 2)
        _link(c, 1, 3)
        for i in range(2, n - 1):
            _link(c, i, i + 1)
        return c
    if letter == "F":
        c = _chain(4)
        c[2][1] = -2  # alpha_3 short, alpha_2 long
        return c
    c = _chain(2)
    c[0][1] = -3  # G2: alpha_1 short
    return c


def determinant(mat: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def validate_cartan(c: Sequence[Sequence[int]]) -> None:
    n = len(c)
    if any(len(row) != n for row in c):
        raise NonCartan("Cartan matrix must be square")
    for i in range(n):
        if c[i][i] != 2:
            raise NonCartan(f"diagonal entry ({i},{i}) must be 2")
        for j in range(n):
            if i == j:
                continue
            if not isinstance(c[i][j], int) or c[i][j] > 0:
                raise NonCartan(f"off-diagonal entry ({i},{j}) must be a nonpositive integer")
            if (c[i][j] == 0) != (c[j][i] == 0):
                raise NonCartan(f"entries ({i},{j}) and ({j},{i}) must vanish together")
    # finite type: every leading principal minor of every ordering positive;
    # checking all principal minors is cheap at these ranks
    for m in range(1, 1 << n):
        idx = members(m)
        if determinant([[c[i][j] for j in idx] for i in idx]) <= 0:
            raise NonCartan(f"principal minor on nodes {[i + 1 for i in idx]} is not positive")


_COMPONENT = re.compile(r"^([A-Ga-g])(\d+)$")


@dataclass(frozen=True)
class DynkinSpec:
    """A Dynkin diagram given either by type components or an explicit matrix."""

    components: tuple[tuple[str, int], ...] = ()
    cartan: tuple[tuple[int, ...], ...] | None = None
    label: str | None = None

    @classmethod
    def parse(cls, text: str) -> "DynkinSpec":
        """Parse ``"B2"``, ``"A2xA1"`` and similar strings."""
        comps = []
        for part in text.strip().split("x"):
            m = _COMPONENT.match(part.strip())
            if not m:
                raise UnknownType(f"cannot parse Dynkin type {text!r}")
            comps.append((m.group(1).upper(), int(m.group(2))))
        return cls(components=tuple(comps))

    @classmethod
    def from_matrix(cls, matrix, label: str | None = None) -> "DynkinSpec":
        return cls(cartan=tuple(tuple(int(x) for x in row) for row in matrix), label=label)

    @classmethod
    def load_json(cls, path) -> "DynkinSpec":
        with open(path) as fh:
            data = json.load(fh)
        return cls.from_matrix(data, label=f"cartan:{path}")

    @property
    def name(self) -> str:
        if self.cartan is not None:
            return self.label or "cartan"
        return "x".join(f"{l}{n}" for l, n in self.components)

    def matrix(self) -> list[list[int]]:
        if self.cartan is not None:
            c = [list(row) for row in self.cartan]
            validate_cartan(c)
            return c
        if not self.components:
            raise UnknownType("empty Dynkin specification")
        blocks = [cartan_matrix(l, n) for l, n in self.components]
        size = sum(len(b) for b in blocks)
        c = [[0] * size for _ in range(size)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b):
                c[off + i][off:off + len(b)] = row
            off += len(b)
        return c


# ---------------------------------------------------------------- root system

def _is_positive(v: Root) -> bool:
    return any(v) and all(x >= 0 for x in v)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Positive roots, heights and coroots of a finite-type root system.

    Instances are immutable; the Weyl group and other derived data are cached
    lazily on first access.
    """

    name: str
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    coroots: dict = field(repr=False)
    index: dict = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def full(self) -> int:
        return (1 << self.rank) - 1

    def simple_root(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def pairing(self, x: Root, i: int) -> int:
        """``<x, alpha_i^vee>`` for a root-lattice vector ``x``."""
        row = self.cartan[i]
        return sum(row[j] * x[j] for j in range(len(x)) if x[j])

    def reflect(self, i: int, x: Root) -> Root:
        p = self.pairing(x, i)
        if not p:
            return x
        y = list(x)
        y[i] -= p
        return tuple(y)

    def is_root(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        return x in self.index or tuple(-c for c in x) in self.index

    def height(self, beta: Sequence[int]) -> int:
        beta = tuple(beta)
        if not self.is_root(beta):
            raise NotARoot(f"{beta} is not a root of {self.name}")
        return abs(sum(beta))

    def roots_in(self, m: int) -> list[Root]:
        """Positive roots of the parabolic subsystem spanned by ``m``."""
        outside = [i for i in range(self.rank) if not (m >> i) & 1]
        return [r for r in self.positive_roots if all(r[i] == 0 for i in outside)]

    def components(self, m: int | None = None) -> list[int]:
        """Connected components of the subdiagram on ``m`` as bitmasks."""
        if m is None:
            m = self.full
        left = set(members(m))
        comps = []
        while left:
            start = min(left)
            stack, comp = [start], {start}
            while stack:
                i = stack.pop()
                for j in list(left):
                    if j not in comp and self.cartan[i][j] != 0:
                        comp.add(j)
                        stack.append(j)
            left -= comp
            comps.append(mask(comp))
        return sorted(comps, key=subset_key)

    def submatrix(self, m: int) -> list[list[int]]:
        idx = members(m)
        return [[self.cartan[i][j] for j in idx] for i in idx]

    def subsystem(self, m: int) -> "RootSystem":
        """Standalone root system on the nodes of ``m``, relabelled in increasing order."""
        idx = [i + 1 for i in members(m)]
        label = f"{self.name}[{','.join(map(str, idx))}]"
        return _build_from_matrix(self.submatrix(m), label)

    @cached_property
    def exponent_list(self) -> tuple[int, ...]:
        return tuple(exponents(self, self.full))

    @cached_property
    def group_order(self) -> int:
        return math.prod(e + 1 for e in self.exponent_list)


def _build_from_matrix(c: list[list[int]], name: str) -> RootSystem:
    n = len(c)
    cart = tuple(tuple(row) for row in c)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    coroots = {r: r for r in simple}
    roots = set(simple)
    frontier = list(simple)
    limit = 1000  # E8 has 120 positive roots
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                p = sum(cart[i][j] * r[j] for j in range(n))
                if p >= 0:
                    continue
                y = list(r)
                y[i] -= p
                y = tuple(y)
                if y in roots:
                    continue
                # coroot of s_i(r) is s_i(r^vee) on the coroot lattice
                rv = list(coroots[r])
                rv[i] -= sum(rv[k] * cart[k][i] for k in range(n))
                roots.add(y)
                coroots[y] = tuple(rv)
                nxt.append(y)
        frontier = nxt
        if len(roots) > limit:
            raise NonCartan("root closure did not terminate; matrix is not of finite type")
    ordered = tuple(sorted(roots, key=lambda r: (sum(r), r)))
    return RootSystem(
        name=name,
        cartan=cart,
        positive_roots=ordered,
        coroots=coroots,
        index={r: k for k, r in enumerate(ordered)},
    )


def build(spec: DynkinSpec | str) -> RootSystem:
    """Construct the root system of a Dynkin specification or type string."""
    if isinstance(spec, str):
        spec = DynkinSpec.parse(spec)
    return _build_from_matrix(spec.matrix(), spec.name)


def height(rs: RootSystem, beta: Sequence[int]) -> int:
    return rs.height(beta)


def exponents(rs: RootSystem, m: int) -> list[int]:
    """Exponents of the subdiagram ``m`` as the conjugate of the root-height partition."""
    counts: dict[int, int] = {}
    for r in rs.roots_in(m):
        h = sum(r)
        counts[h] = counts.get(h, 0) + 1
    if not counts:
        return []
    parts = [counts.get(h, 0) for h in range(1, max(counts) + 1)]
    return sorted(sum(1 for a in parts if a >= j) for j in range(1, parts[0] + 1))


def highest_root(rs: RootSystem, m: int) -> Root:
    """Highest root of a connected subdiagram."""
    roots = rs.roots_in(m)
    top = roots[-1]
    if any(any(a > b for a, b in zip(r, top)) for r in roots):
        raise ValueError("subdiagram is not connected; no unique highest root")
    return top


def highest_root_product(rs: RootSystem, m: int) -> int:
    prod = 1
    for comp in rs.components(m):
        prod *= math.prod(c for c in highest_root(rs, comp) if c)
    return prod


def cartan_determinant(rs: RootSystem, m: int) -> int:
    return determinant(rs.submatrix(m))
