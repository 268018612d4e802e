"""Restrictions of Schubert classes to torus-fixed points, specialized to one variable.

Billey's formula expresses ``sigma_v`` at ``w`` as a sum over reduced subwords
of a reduced word of ``w``; every root is sent to ``ht(root) * t``.  The sum
is evaluated by a dynamic program whose states are the prefixes of ``v``
(elements below ``v`` in right weak order), so the cost is linear in the
word length and never enumerates subsequences.
"""

from __future__ import annotations

import hashlib
import json
import os
from array import array
from dataclasses import dataclass, field
from typing import Sequence

from . import kernels
from .rootsystem import RootSystem
from .scalars import ZERO, GradedScalar
from .weyl import WeylElement, WeylGroup, format_word, weyl_group

# bump whenever a labelling or normalization convention changes
CONVENTION_VERSION = 1


@dataclass
class _Prefixes:
    trans: array
    nstates: int
    target: int


def word_heights(group: WeylGroup, word: Sequence[int]) -> list[int]:
    """Heights of ``s_{b_1}...s_{b_{j-1}}(alpha_{b_j})`` along a reduced word."""
    x = group.identity
    out = []
    for b in word:
        r = x.column(b)
        h = sum(r)
        if h <= 0:
            raise ValueError(f"word {format_word(word)} is not reduced")
        out.append(h)
        x = x.times_simple(b)
    return out


def _prefixes(v: WeylElement) -> _Prefixes:
    cache = v.group._prefix_cache
    hit = cache.get(v.m)
    if hit is not None:
        return hit
    rank = v.group.rank
    v.length  # seeds lengths along the peeling below
    seen = {v.m: v}
    frontier = [v]
    while frontier:
        nxt = []
        for x in frontier:
            for i in x.right_descents():
                y = x.times_simple(i)
                if y.m not in seen:
                    seen[y.m] = y
                    nxt.append(y)
        frontier = nxt
    states = sorted(seen.values(), key=lambda x: x.length)
    index = {x.m: k for k, x in enumerate(states)}
    trans = array("i", [-1]) * (len(states) * rank)
    for k, x in enumerate(states):
        for b in range(rank):
            if not x.has_right_descent(b):
                t = index.get(x.times_simple(b).m)
                if t is not None:
                    trans[k * rank + b] = t
    out = _Prefixes(trans, len(states), index[v.m])
    cache[v.m] = out
    return out


def _word_data(w: WeylElement, word):
    cache = w.group._word_cache
    key = tuple(word)
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = (array("i", key), array("q", word_heights(w.group, key)))
    return hit


def billey_coefficient(v: WeylElement, w: WeylElement, word: Sequence[int] | None = None) -> int:
    """Integer ``b`` with ``sigma_v|_w = b * t^l(v)``."""
    if word is None:
        word = w.word
    elif w.group.from_word(word) != w or len(word) != w.length:
        raise ValueError(f"{format_word(word)} is not a reduced word for {w!r}")
    if v.length > len(word):
        return 0
    pre = _prefixes(v)
    letters, heights = _word_data(w, word)
    return kernels.billey_dp(pre.trans, v.group.rank, letters, heights, pre.nstates, pre.target)


def billey_restrict(v: WeylElement, w: WeylElement, word: Sequence[int] | None = None) -> GradedScalar:
    """``sigma_v`` restricted to the fixed point ``w`` as ``c * t^l(v)``.

    ``word`` overrides the canonical reduced word of ``w``; the value does not
    depend on the choice.
    """
    b = billey_coefficient(v, w, word)
    return GradedScalar(b, v.length) if b else ZERO


@dataclass
class LocalizationTable:
    """Memo of ``(v, w) -> sigma_v|_w`` for one root system."""

    rs: RootSystem
    entries: dict = field(default_factory=dict)
    words: dict = field(default_factory=dict)
    store: "LocalizationCache | None" = None

    def get(self, v: WeylElement, w: WeylElement) -> GradedScalar:
        key = (v.m, w.m)
        hit = self.entries.get(key)
        if hit is None:
            if self.store is not None:
                hit = self.store.restrict(v, w)
            else:
                hit = billey_restrict(v, w)
            self.entries[key] = hit
            self.words[key] = (v.word, w.word)
        return hit

    def to_json(self) -> dict:
        out = {}
        for key, val in self.entries.items():
            vw, ww = self.words[key]
            out[f"{format_word(vw)}|{format_word(ww)}"] = {"coeff": str(val.coeff), "degree": val.degree}
        return {"type": self.rs.name, "convention": CONVENTION_VERSION, "entries": dict(sorted(out.items()))}


def restriction_matrix(rs: RootSystem, rows: Sequence[WeylElement], cols: Sequence[int],
                       table: LocalizationTable | None = None) -> list[list[GradedScalar]]:
    """Entry ``(u, J)`` is ``sigma_u`` restricted to ``w_J``."""
    g = weyl_group(rs)
    if table is None:
        table = LocalizationTable(rs)
    fixed = [g.longest_element(J) for J in cols]
    return [[table.get(u, w) for w in fixed] for u in rows]


class LocalizationCache:
    """On-disk JSON cache of restrictions for one Dynkin type.

    The file name is a content hash of the type and ``CONVENTION_VERSION``,
    so a convention change never reads stale values.
    """

    def __init__(self, directory, type_name: str):
        self.type_name = type_name
        digest = hashlib.sha256(f"{type_name}|{CONVENTION_VERSION}".encode()).hexdigest()[:16]
        self.path = os.path.join(directory, f"localize-{digest}.json")
        self.entries: dict = {}
        self.dirty = False
        if os.path.exists(self.path):
            with open(self.path) as fh:
                data = json.load(fh)
            if data.get("type") == type_name and data.get("convention") == CONVENTION_VERSION:
                self.entries = data.get("entries", {})

    @staticmethod
    def key(v: WeylElement, w: WeylElement) -> str:
        return f"{format_word(v.word)}|{format_word(w.word)}"

    def restrict(self, v: WeylElement, w: WeylElement) -> GradedScalar:
        k = self.key(v, w)
        hit = self.entries.get(k)
        if hit is not None:
            return GradedScalar(int(hit["coeff"]), int(hit["degree"]))
        val = billey_restrict(v, w)
        self.entries[k] = {"coeff": str(val.coeff), "degree": val.degree}
        self.dirty = True
        return val

    def save(self) -> None:
        if not self.dirty:
            return
        os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(
                {"type": self.type_name, "convention": CONVENTION_VERSION,
                 "entries": dict(sorted(self.entries.items()))},
                fh, indent=1,
            )
        os.replace(tmp, self.path)
        self.dirty = False
