"""Weyl group elements as integer matrices acting on the root lattice.

An element is stored as the flat row-major tuple of its matrix in the
simple-root basis; column ``j`` is the image of ``alpha_j``.  Equality and
hashing use that tuple only.
"""

from __future__ import annotations

import itertools
import weakref
from typing import Iterable, Sequence

from .errors import GroupTooLarge
from .rootsystem import Root, RootSystem, members, subset_key

DEFAULT_CAP = 200_000


class WeylElement:
    __slots__ = ("group", "m", "_length", "_inverse", "_word", "__weakref__")

    def __init__(self, group: "WeylGroup", m: tuple[int, ...]):
        self.group = group
        self.m = m
        self._length = None
        self._inverse = None
        self._word = None

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.group.multiply(self, other)

    def __repr__(self):
        word = self.word
        return f"W({format_word(word) if word else 'e'})"

    def column(self, i: int) -> Root:
        n = self.group.rank
        return tuple(self.m[r * n + i] for r in range(n))

    def __call__(self, beta: Sequence[int]) -> Root:
        n = self.group.rank
        m = self.m
        return tuple(sum(m[r * n + c] * beta[c] for c in range(n) if beta[c]) for r in range(n))

    def has_right_descent(self, i: int) -> bool:
        """True when ``l(w s_i) < l(w)``, i.e. ``w(alpha_i)`` is negative."""
        n = self.group.rank
        m = self.m
        for r in range(n):
            x = m[r * n + i]
            if x:
                return x < 0
        raise AssertionError("simple root mapped to zero")

    def right_descents(self) -> list[int]:
        return [i for i in range(self.group.rank) if self.has_right_descent(i)]

    def times_simple(self, i: int) -> "WeylElement":
        return self.group.right_simple(self, i)

    @property
    def length(self) -> int:
        if self._length is None:
            self._length = sum(
                1 for r in self.group.rs.positive_roots if any(x < 0 for x in self(r))
            )
        return self._length

    @property
    def inverse(self) -> "WeylElement":
        if self._inverse is None:
            g = self.group
            x, peeled = self, []
            while True:
                for i in range(g.rank):
                    if x.has_right_descent(i):
                        break
                else:
                    break
                x = x.times_simple(i)
                peeled.append(i)
            inv = g.from_word(peeled)
            inv._inverse = self
            inv._length = self._length = len(peeled)
            self._inverse = inv
        return self._inverse

    @property
    def word(self) -> tuple[int, ...]:
        """Lexicographically smallest reduced word (0-based letters)."""
        if self._word is None:
            x = self.inverse
            word = []
            while True:
                for i in range(self.group.rank):
                    if x.has_right_descent(i):
                        break
                else:
                    break
                word.append(i)
                x = x.times_simple(i)
            self._word = tuple(word)
        return self._word

    @property
    def support(self) -> int:
        out = 0
        for i in self.word:
            out |= 1 << i
        return out

    @property
    def is_identity(self) -> bool:
        return self.m == self.group.identity.m


class WeylGroup:
    """Arithmetic and memo tables for the Weyl group of one root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = n = rs.rank
        self.identity = WeylElement(self, tuple(1 if r == c else 0 for r in range(n) for c in range(n)))
        self.identity._length = 0
        self.identity._word = ()
        self.simples = []
        for i in range(n):
            m = list(self.identity.m)
            for j in range(n):
                m[i * n + j] -= rs.cartan[i][j]
            s = WeylElement(self, tuple(m))
            s._length = 1
            s._word = (i,)
            s._inverse = s
            self.simples.append(s)
        self.identity._inverse = self.identity
        self._bruhat: dict = {}
        self._reduced_counts: dict = {}
        self._reflections: dict = {}
        self._longest: dict = {}
        # filled by the localization module
        self._prefix_cache: dict = {}
        self._word_cache: dict = {}

    def __repr__(self):
        return f"WeylGroup({self.rs.name})"

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        n = self.rank
        a, b = u.m, v.m
        out = [0] * (n * n)
        for r in range(n):
            ar = a[r * n:(r + 1) * n]
            for k, x in enumerate(ar):
                if x:
                    bk = k * n
                    for c in range(n):
                        y = b[bk + c]
                        if y:
                            out[r * n + c] += x * y
        w = WeylElement(self, tuple(out))
        return w

    def right_simple(self, w: WeylElement, i: int) -> WeylElement:
        # column j of w s_i is w(alpha_j) - C[i][j] w(alpha_i)
        n = self.rank
        m = list(w.m)
        ci = self.rs.cartan[i]
        col_i = [w.m[r * n + i] for r in range(n)]
        for j in range(n):
            c = ci[j]
            if c:
                for r in range(n):
                    m[r * n + j] -= c * col_i[r]
        out = WeylElement(self, tuple(m))
        if w._length is not None:
            out._length = w._length + (-1 if w.has_right_descent(i) else 1)
        return out

    def from_word(self, word: Iterable[int]) -> WeylElement:
        x = self.identity
        for i in word:
            x = self.right_simple(x, i)
        return x

    def reflection(self, beta: Sequence[int]) -> WeylElement:
        """The reflection ``s_beta`` for a positive root ``beta``."""
        beta = tuple(beta)
        hit = self._reflections.get(beta)
        if hit is not None:
            return hit
        rs = self.rs
        n = self.rank
        cv = rs.coroots[beta]
        # <alpha_j, beta^vee> for each simple root j
        pair = [sum(cv[k] * rs.cartan[k][j] for k in range(n)) for j in range(n)]
        m = [(1 if r == c else 0) - pair[c] * beta[r] for r in range(n) for c in range(n)]
        out = WeylElement(self, tuple(m))
        self._reflections[beta] = out
        return out

    # ------------------------------------------------------------ order

    def bruhat_leq(self, u: WeylElement, w: WeylElement) -> bool:
        lu, lw = u.length, w.length
        if lu > lw:
            return False
        if lu == lw:
            return u.m == w.m
        if lu == 0:
            return True
        key = (u.m, w.m)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        for i in range(self.rank):
            if w.has_right_descent(i):
                break
        ws = w.times_simple(i)
        # lifting property: for s a right descent of w, u <= w iff min(u, us) <= ws
        if u.has_right_descent(i):
            res = self.bruhat_leq(u.times_simple(i), ws)
        else:
            res = self.bruhat_leq(u, ws)
        self._bruhat[key] = res
        return res

    def longest_element(self, m: int) -> WeylElement:
        hit = self._longest.get(m)
        if hit is not None:
            return hit
        nodes = members(m)
        x = self.identity
        while True:
            for i in nodes:
                if not x.has_right_descent(i):
                    x = x.times_simple(i)
                    break
            else:
                break
        self._longest[m] = x
        return x

    def count_reduced_words(self, v: WeylElement) -> int:
        memo = self._reduced_counts

        def count(x: WeylElement) -> int:
            if x.length == 0:
                return 1
            hit = memo.get(x.m)
            if hit is None:
                hit = sum(count(x.times_simple(i)) for i in x.right_descents())
                memo[x.m] = hit
            return hit

        return count(v)

    def coxeter_elements(self, m: int) -> list[WeylElement]:
        seen = {}
        for perm in itertools.permutations(members(m)):
            x = self.from_word(perm)
            seen.setdefault(x.m, x)
        return sorted(seen.values(), key=lambda x: x.word)

    def default_coxeter(self, m: int) -> WeylElement:
        """Product of the simple reflections of ``m`` in increasing node order."""
        return self.from_word(members(m))

    def left_simple(self, i: int, w: WeylElement) -> WeylElement:
        # only row i of s_i w differs: row_i - sum_k C[i][k] row_k
        n = self.rank
        m = list(w.m)
        ci = self.rs.cartan[i]
        for k in range(n):
            c = ci[k]
            if c:
                for col in range(n):
                    m[i * n + col] -= c * w.m[k * n + col]
        return WeylElement(self, tuple(m))

    def enumerate(self, cap: int = DEFAULT_CAP, within: int | None = None) -> list[WeylElement]:
        """All elements of ``W`` (or of the parabolic ``W_within``), by length then word.

        Breadth-first under left multiplication; the canonical word of a new
        element is its smallest left descent followed by the word of the
        element it came from, so words are assembled without extra work.
        """
        nodes = members(self.rs.full if within is None else within)
        order = parabolic_order(self.rs, within)
        if order > cap:
            raise GroupTooLarge(order, cap)
        prev: set = set()
        layer = [self.identity]
        out = [self.identity]
        length = 0
        while layer:
            length += 1
            found: dict = {}
            for x in layer:
                for i in nodes:
                    y = self.left_simple(i, x)
                    if y.m in prev:
                        continue
                    hit = found.get(y.m)
                    if hit is None or i < hit[0]:
                        found[y.m] = (i, x, y)
            nxt = []
            for i, x, y in found.values():
                y._word = (i,) + x.word
                y._length = length
                nxt.append(y)
            nxt.sort(key=lambda y: y.word)
            prev = {x.m for x in layer}
            layer = nxt
            out.extend(nxt)
            if len(out) > cap:
                raise GroupTooLarge(order, cap)
        return out


def parabolic_order(rs: RootSystem, m: int | None = None) -> int:
    from .rootsystem import exponents

    if m is None:
        return rs.group_order
    out = 1
    for e in exponents(rs, m):
        out *= e + 1
    return out


_GROUPS: "weakref.WeakKeyDictionary[RootSystem, WeylGroup]" = weakref.WeakKeyDictionary()


def weyl_group(rs: RootSystem) -> WeylGroup:
    g = _GROUPS.get(rs)
    if g is None:
        g = _GROUPS[rs] = WeylGroup(rs)
    return g


# ---------------------------------------------------------------- module API

def identity(rs: RootSystem) -> WeylElement:
    return weyl_group(rs).identity


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    return weyl_group(rs).simples[i]


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    return u.group.multiply(u, v)


def act_on_root(w: WeylElement, beta: Sequence[int]) -> Root:
    return w(beta)


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    return weyl_group(rs).from_word(word)


def longest_element(rs: RootSystem, m: int) -> WeylElement:
    return weyl_group(rs).longest_element(m)


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    return w.group.bruhat_leq(u, w)


def canonical_reduced_word(w: WeylElement) -> tuple[int, ...]:
    return w.word


def count_reduced_words(v: WeylElement) -> int:
    return v.group.count_reduced_words(v)


def coxeter_elements(rs: RootSystem, m: int) -> list[WeylElement]:
    return weyl_group(rs).coxeter_elements(m)


def is_coxeter(w: WeylElement, m: int) -> bool:
    return w.length == m.bit_count() and w.support == m


def enumerate_group(rs: RootSystem, cap: int = DEFAULT_CAP) -> list[WeylElement]:
    return weyl_group(rs).enumerate(cap)


def reflection(rs: RootSystem, beta: Sequence[int]) -> WeylElement:
    return weyl_group(rs).reflection(beta)


# ---------------------------------------------------------------- words

def format_word(word: Sequence[int]) -> str:
    """1-based comma-separated serialization, e.g. ``(0, 2, 1) -> "1,3,2"``."""
    return ",".join(str(i + 1) for i in word)


def parse_word(text: str, rank: int | None = None) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    word = tuple(int(tok) - 1 for tok in text.split(","))
    if any(i < 0 or (rank is not None and i >= rank) for i in word):
        raise ValueError(f"word {text!r} has letters outside 1..{rank}")
    return word


def sort_elements(elements: Iterable[WeylElement]) -> list[WeylElement]:
    return sorted(elements, key=lambda x: (x.length, x.word))


def subset_sort(masks: Iterable[int]) -> list[int]:
    return sorted(masks, key=subset_key)
